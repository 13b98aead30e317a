# -*- coding: utf-8 -*-
"""
基准对比：对语料中每个程序、每个策略生成完整与约简证书，
分别用 checker_f 与 checker_r 检查，统计证书大小与检查工作量。
"""

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import List, Optional, Sequence, Union

from rich import box
from rich.console import Console
from rich.table import Table

from bench.corpus import CorpusLibrary, CorpusProgram
from certify.certificate import FULL, REDUCED
from certify.certifier import certify
from check.checker import checker_f, checker_r
from config.logging import bench_logger
from domains.registry import get_domain
from engine.strategies import get_strategy
from package.codec import byte_ratio, entry_ratio, measure, source_ratio

logger = bench_logger

OVERALL = "overall"
ERROR_WIDTH = 30


@dataclass
class BenchRow:
    program: str
    strategy: str
    domain: str
    fcert_bytes: int = 0
    fcert_entries: int = 0
    rcert_bytes: int = 0
    rcert_entries: int = 0
    fr_bytes: float = 0.0
    fr_entries: Union[float, str] = 0.0
    rs: float = 0.0
    certifier_arcs: int = 0
    checker_f_steps: int = 0
    checker_r_arcs: int = 0
    trusted: bool = False
    certify_time: Optional[float] = None
    checker_f_time: Optional[float] = None
    checker_r_time: Optional[float] = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error


COLUMNS = [f.name for f in fields(BenchRow)]


def _timed(timing, func, *args, **kwargs):
    start = time.perf_counter()
    value = func(*args, **kwargs)
    return value, (time.perf_counter() - start) if timing else None


def bench_program(entry: CorpusProgram, strategy_id: str, domain, timing: bool = True) -> BenchRow:
    """
    对一个程序、一个策略做完整的认证与检查

    Returns:
        BenchRow: 出错时 error 列给出原因，其余列保持默认值
    """
    domain = get_domain(domain)
    row = BenchRow(entry.name, strategy_id, domain.domain_id)
    try:
        program = entry.load()
        entries = entry.entries(domain)
        policy = entry.policy(domain)

        full_run = certify(program, domain, entries, policy, strategy_id, kind=FULL)
        reduced_run, certify_time = _timed(
            timing, certify, program, domain, entries, policy, strategy_id, kind=REDUCED
        )
        full_report, f_time = _timed(
            timing, checker_f, program, domain, entries, policy, strategy_id, full_run.certificate
        )
        reduced_report, r_time = _timed(
            timing, checker_r, program, domain, entries, policy, strategy_id, reduced_run.certificate
        )

        full_size = measure(full_run.certificate)
        reduced_size = measure(reduced_run.certificate)
        row.fcert_bytes, row.fcert_entries = full_size.bytes, full_size.entries
        row.rcert_bytes, row.rcert_entries = reduced_size.bytes, reduced_size.entries
        row.fr_bytes = round(byte_ratio(full_size, reduced_size), 4)
        ratio = entry_ratio(full_size, reduced_size)
        row.fr_entries = ratio if isinstance(ratio, str) else round(ratio, 4)
        row.rs = round(source_ratio(reduced_size, entry.source_bytes()), 4)
        row.certifier_arcs = reduced_run.analysis.counters.arcs
        row.checker_f_steps = full_report.counters.arcs
        row.checker_r_arcs = reduced_report.counters.arcs
        row.trusted = full_report.trusted and reduced_report.trusted
        row.certify_time, row.checker_f_time, row.checker_r_time = certify_time, f_time, r_time
        if not row.trusted:
            error = full_report.error or reduced_report.error
            row.error = f"rejected: {error}"
    except Exception as e:
        logger.error(f"基准程序 {entry.name} [{strategy_id}] 失败: {e}")
        row.error = f"{type(e).__name__}: {e}"
    return row


def run_bench(library: CorpusLibrary, strategies: Sequence[str], domain,
              jobs: int = 1, timing: bool = True) -> List[BenchRow]:
    """
    运行整套基准

    Args:
        library: 语料库
        strategies: 策略标识列表
        domain: 抽象域或 domain-id
        jobs: 并行线程数
        timing: 是否记录耗时

    Returns:
        list: 按 (程序名, 策略顺序) 排列的 BenchRow
    """
    domain = get_domain(domain)
    for strategy_id in strategies:
        get_strategy(strategy_id)
    tasks = [
        (entry, strategy_id)
        for entry in library
        if entry.supports(domain.domain_id)
        for strategy_id in strategies
    ]
    logger.info(f"开始基准: {len(tasks)} 个任务, {jobs} 个线程")

    def work(task):
        entry, strategy_id = task
        return bench_program(entry, strategy_id, domain, timing=timing)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(work, tasks))
    return [work(task) for task in tasks]


def _weighted_mean(values, weights) -> float:
    total = sum(weights)
    if total == 0:
        return sum(values) / len(values) if values else 0.0
    return sum(v * w for v, w in zip(values, weights)) / total


def overall_row(rows: List[BenchRow], timing: bool = True) -> Optional[BenchRow]:
    """
    汇总行：F/R（字节）与 R/S 的加权平均

    权重为 checker_r 耗时；不计时时改用 checker_r 处理的弧数
    """
    good = [r for r in rows if r.ok]
    if not good:
        return None
    if timing:
        weights = [r.checker_r_time or 0.0 for r in good]
    else:
        weights = [r.checker_r_arcs for r in good]
    summary = BenchRow(OVERALL, "-", good[0].domain)
    summary.fcert_bytes = sum(r.fcert_bytes for r in good)
    summary.fcert_entries = sum(r.fcert_entries for r in good)
    summary.rcert_bytes = sum(r.rcert_bytes for r in good)
    summary.rcert_entries = sum(r.rcert_entries for r in good)
    summary.fr_bytes = round(_weighted_mean([r.fr_bytes for r in good], weights), 4)
    summary.fr_entries = "-"
    summary.rs = round(_weighted_mean([r.rs for r in good], weights), 4)
    summary.certifier_arcs = sum(r.certifier_arcs for r in good)
    summary.checker_f_steps = sum(r.checker_f_steps for r in good)
    summary.checker_r_arcs = sum(r.checker_r_arcs for r in good)
    summary.trusted = all(r.trusted for r in good)
    if timing:
        summary.certify_time = sum(r.certify_time or 0.0 for r in good)
        summary.checker_f_time = sum(r.checker_f_time or 0.0 for r in good)
        summary.checker_r_time = sum(r.checker_r_time or 0.0 for r in good)
    return summary


def _display_columns(timing: bool) -> List[str]:
    if timing:
        return COLUMNS
    return [c for c in COLUMNS if not c.endswith("_time")]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def render_table(rows: List[BenchRow], timing: bool = True, console: Optional[Console] = None):
    """用 rich 输出对比表（含汇总行）"""
    if console is None:
        console = Console(width=320, color_system=None, highlight=False, emoji=False)
    columns = _display_columns(timing)
    table = Table(box=box.ASCII, show_lines=False)
    for column in columns:
        if column == "error":
            # 错误信息折行，不挤压其他列
            table.add_column(column, overflow="fold", max_width=ERROR_WIDTH)
        else:
            table.add_column(column, no_wrap=True, min_width=len(column))
    for row in rows:
        table.add_row(*(_cell(getattr(row, c)) for c in columns))
    summary = overall_row(rows, timing=timing)
    if summary is not None:
        table.add_section()
        table.add_row(*(_cell(getattr(summary, c)) for c in columns))
    console.print(table)


def write_csv(path, rows: List[BenchRow], timing: bool = True):
    """按 BenchRow 字段顺序写 CSV，最后一行为汇总行"""
    summary = overall_row(rows, timing=timing)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(COLUMNS)
        for row in rows + ([summary] if summary is not None else []):
            data = asdict(row)
            writer.writerow([_cell(data[c]) for c in COLUMNS])
    logger.info(f"CSV 已写入 {path}: {len(rows)} 行")
