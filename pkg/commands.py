# -*- coding: utf-8 -*-
"""
命令处理：analyze / certify / check / bench

每个处理函数接收 argparse 的参数并返回退出码：
0 成功或可信，1 拒绝或违反策略，2 用法、解析、分析、格式错误或文件缺失。
"""

from pathlib import Path

from bench.corpus import CorpusLibrary
from bench.harness import render_table, run_bench, write_csv
from certify.certificate import FULL, REDUCED
from certify.certifier import certify
from check.checker import check_certificate
from config.logging import cli_logger
from config.settings import default_corpus
from domains.registry import get_domain
from engine.analyzer import analyze_f, dump_result
from engine.strategies import registered_strategies
from package.bundle import PackageFile, read_package, write_package
from package.codec import measure, read_policy
from program.canonical import parse_call_pattern
from program.normalize import normalize
from program.parser import parse
from utils import console
from utils.errors import AccError, ParseError, PolicyViolation

logger = cli_logger

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_ERROR = 2


def _read_source(path) -> str:
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - data.rfind(b"\n", 0, e.start)
        raise ParseError(f"源文件不是合法的 UTF-8 文本: 字节 {data[e.start]:#04x}", line, column) from None


def cmd_analyze(args) -> int:
    domain = get_domain(args.domain)
    program = normalize(parse(_read_source(args.program)))
    entries = [parse_call_pattern(text, domain) for text in args.entry]
    result = analyze_f(program, entries, args.strategy, domain)
    console.emit(dump_result(result, with_dat=args.dat))
    return EXIT_OK


def cmd_certify(args) -> int:
    domain = get_domain(args.domain)
    source = _read_source(args.program)
    program = normalize(parse(source))
    entries = [parse_call_pattern(text, domain) for text in args.entry]
    policy = read_policy(args.policy) if args.policy else None
    kind = FULL if args.full else REDUCED

    try:
        run = certify(program, domain, entries, policy, args.strategy, kind=kind)
    except PolicyViolation as e:
        console.error("分析结果不满足安全策略")
        console.emit(e.result.render())
        return EXIT_REJECTED

    output = Path(args.output) if args.output else Path(args.program).with_suffix(".apkg")
    embedded = policy if args.embed_policy else None
    write_package(output, PackageFile(source, run.certificate, embedded))

    size = measure(run.certificate)
    console.emit([
        f"certificate: kind={kind} entries={size.entries} bytes={size.bytes}",
        f"strategy: {run.certificate.strategy_id}",
        f"counters: {run.analysis.counters.render()}",
        f"package: {output}",
    ])
    console.success(f"证书已写入 {output}")
    return EXIT_OK


def cmd_check(args) -> int:
    package = read_package(args.package)
    certificate = package.certificate
    program = parse(package.program_text)
    policy = read_policy(args.policy) if args.policy else package.policy
    if policy is None:
        console.warning("未提供安全策略，按空策略检查")

    report = check_certificate(
        program, certificate.domain_id, None, policy, args.strategy, certificate,
        override=args.strategy is not None,
    )
    console.emit(report.render())
    if report.trusted:
        console.success("证书可信")
        return EXIT_OK
    console.error(f"证书被拒绝: {report.error}")
    return EXIT_REJECTED


def cmd_bench(args) -> int:
    corpus_dir = args.corpus or default_corpus()
    library = CorpusLibrary(corpus_dir)
    if args.strategies:
        strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    else:
        strategies = registered_strategies()
    timing = not args.no_timing

    rows = run_bench(library, strategies, args.domain, jobs=args.jobs, timing=timing)
    render_table(rows, timing=timing, console=console.stdout_console())
    if args.csv:
        write_csv(args.csv, rows, timing=timing)
    failures = [row for row in rows if row.error]
    if failures:
        console.warning(f"{len(failures)} 个基准任务失败或被拒绝")
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "certify": cmd_certify,
    "check": cmd_check,
    "bench": cmd_bench,
}


def run_command(args) -> int:
    """执行子命令，把异常映射为退出码"""
    handler = COMMANDS[args.command]
    try:
        return handler(args)
    except FileNotFoundError as e:
        console.error(f"文件不存在: {e.filename or e}")
        logger.error(f"文件不存在: {e}")
        return EXIT_ERROR
    except AccError as e:
        console.error(str(e))
        logger.error(f"{args.command} 失败: {e}")
        return EXIT_ERROR
    except OSError as e:
        console.error(f"读写失败: {e}")
        logger.error(f"读写失败: {e}")
        return EXIT_ERROR
