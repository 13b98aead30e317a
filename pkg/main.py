#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
acc-kit - 携带抽象的代码（证书生成与检查）
主程序入口

使用方法：
    python main.py analyze corpus/rectoy.pl --entry "rectoy(N,M):(int,term)"
    python main.py certify corpus/rectoy.pl --entry "rectoy(N,M):(int,term)" \\
        --policy corpus/rectoy.types.apol --reduced -o rectoy.apkg
    python main.py check rectoy.apkg --policy corpus/rectoy.types.apol
    python main.py bench corpus --no-timing
"""

import argparse
import sys

from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

from commands import EXIT_ERROR, run_command  # noqa: E402
from config.logging import setup_logging  # noqa: E402
from config.settings import default_domain, default_jobs, default_strategy  # noqa: E402


def build_parser():
    """构建命令行解析器"""
    parser = argparse.ArgumentParser(prog="acc-kit", description="acc-kit - 证书生成与单遍检查")
    parser.add_argument("--log-level", default=None, help="日志级别 (默认读取 LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command")

    analyze = sub.add_parser("analyze", help="运行分析并输出答案表")
    analyze.add_argument("program", help="程序文件")
    analyze.add_argument("--entry", action="append", default=[], help="入口模式，如 rectoy(N,M):(int,term)")
    analyze.add_argument("--domain", default=default_domain(), help="抽象域 (默认: %(default)s)")
    analyze.add_argument("--strategy", default=default_strategy(), help="队列策略 (默认: %(default)s)")
    analyze.add_argument("--dat", action="store_true", help="同时输出依赖弧表")

    certify = sub.add_parser("certify", help="生成证书并打包")
    certify.add_argument("program", help="程序文件")
    certify.add_argument("--entry", action="append", default=[], help="入口模式")
    certify.add_argument("--policy", help="安全策略文件 (.apol)")
    certify.add_argument("--domain", default=default_domain(), help="抽象域 (默认: %(default)s)")
    certify.add_argument("--strategy", default=default_strategy(), help="队列策略 (默认: %(default)s)")
    kind = certify.add_mutually_exclusive_group()
    kind.add_argument("--full", action="store_true", help="输出完整证书")
    kind.add_argument("--reduced", action="store_true", help="输出约简证书 (默认)")
    certify.add_argument("-o", "--output", help="输出的代码包 (.apkg)")
    certify.add_argument("--embed-policy", action="store_true", help="把安全策略一并写入代码包")

    check = sub.add_parser("check", help="检查代码包")
    check.add_argument("package", help="代码包 (.apkg)")
    check.add_argument("--policy", help="安全策略文件 (.apol)，默认使用包内策略")
    check.add_argument("--strategy", default=None, help="覆盖证书中的队列策略")

    bench = sub.add_parser("bench", help="在语料上对比完整与约简证书")
    bench.add_argument("corpus", nargs="?", default=None, help="语料目录 (默认读取 ACC_KIT_CORPUS)")
    bench.add_argument("--strategies", default=None, help="逗号分隔的策略列表 (默认全部)")
    bench.add_argument("--domain", default=default_domain(), help="抽象域 (默认: %(default)s)")
    bench.add_argument("--csv", default=None, help="另存 CSV")
    bench.add_argument("--no-timing", action="store_true", help="不记录耗时，输出完全确定")
    bench.add_argument("--jobs", type=int, default=default_jobs(), help="并行线程数")
    return parser


def main(argv=None):
    """主函数"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else 0
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    setup_logging(log_level=args.log_level.upper() if args.log_level else None)
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
