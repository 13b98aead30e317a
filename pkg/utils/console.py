# -*- coding: utf-8 -*-
"""
终端输出工具

stdout 只输出确定性的结果（转储、报告、表格），
提示与诊断统一走 stderr。
"""

from rich.console import Console

_stderr = Console(stderr=True, highlight=False, soft_wrap=True, emoji=False)


def stdout_console() -> Console:
    """结果输出用的控制台：固定宽度，不着色"""
    return Console(width=240, color_system=None, highlight=False, soft_wrap=True, emoji=False)


def emit(lines):
    """逐行写出结果文本"""
    console = stdout_console()
    for line in lines:
        console.print(line, markup=False)


def info(message: str):
    _stderr.print(f"🔍 {message}", markup=False)


def success(message: str):
    _stderr.print(f"✅ {message}", markup=False)


def warning(message: str):
    _stderr.print(f"⚠️  {message}", markup=False)


def error(message: str):
    _stderr.print(f"❌ {message}", markup=False)
