# -*- coding: utf-8 -*-
"""
简单的环境检查脚本
"""

import importlib
import os
import sys

REQUIRED_FILES = [
    'main.py',
    'commands.py',
    '.env.example',
    'requirements.txt',
    'config/strategies.json',
    'corpus',
]

DEPENDENCIES = [
    ('ply', 'ply'),
    ('dotenv', 'python-dotenv'),
    ('rich', 'rich'),
    ('pytest', 'pytest'),
    ('hypothesis', 'hypothesis'),
]


def check_environment():
    print("=== acc-kit 环境检查 ===")

    print("Python版本:", sys.version)

    print("\n文件检查:")
    for filename in REQUIRED_FILES:
        if os.path.exists(filename):
            print("✅", filename)
        else:
            print("❌", filename, "(缺失)")

    print("\n环境变量检查:")
    if os.path.exists('.env'):
        print("✅ .env 文件存在")
    else:
        print("⚠️  .env 文件不存在，使用默认配置")

    print("\n依赖检查:")
    missing = 0
    for module, package in DEPENDENCIES:
        try:
            importlib.import_module(module)
            print("✅", package)
        except ImportError:
            missing += 1
            print("❌", package, "未安装")

    print("\n=== 检查完成 ===")
    if missing:
        print("如需安装依赖: pip install -r requirements.txt")
    print("运行测试: python -m pytest")
    print("运行基准: python main.py bench --no-timing")
    return missing == 0


if __name__ == '__main__':
    sys.exit(0 if check_environment() else 1)
