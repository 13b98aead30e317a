# -*- coding: utf-8 -*-
"""
带约简记录的分析器 Analyze_r

在通用分析器上多做两件事：
- 非挂起弧第二次被存入 DAT 时，把它的被调用模式记入 RED
- DAT 中没有依赖弧的 updated 事件（冗余更新）不入队
"""

from typing import Iterable, Set

from config.logging import certify_logger
from engine.analyzer import AnalysisResult, Analyzer
from engine.events import Updated
from program.canonical import CallKey
from program.terms import Program

logger = certify_logger


class ReducingAnalyzer(Analyzer):
    """
    记录相关调用模式集合 RED 的分析器

    Args:
        suppress_redundant: 为 False 时冗余更新照常入队处理（用于对照）
    """

    def __init__(self, program: Program, domain, strategy, record_trace: bool = False,
                 suppress_redundant: bool = True):
        super().__init__(program, domain, strategy, record_trace=record_trace)
        self.suppress_redundant = suppress_redundant
        self.relevant: Set[CallKey] = set()
        self.suppressed = 0

    def _on_multi_traversal(self, slot, callee_key, u):
        if callee_key not in self.relevant:
            logger.debug(f"弧 {slot[0].display()}#{slot[1]}.{slot[2]} 第 {u} 次遍历, 加入 RED: {callee_key.display()}")
        self.relevant.add(callee_key)

    def _enqueue_update(self, key):
        redundant = not self.dat.has_dependents(key)
        if redundant and self.suppress_redundant:
            self.suppressed += 1
            return
        self.queue.push(Updated(key, redundant=redundant))

    def _result(self) -> AnalysisResult:
        result = super()._result()
        assert self.relevant <= set(self.table.keys()), "RED 必须是答案表键的子集"
        # 不可达的调用模式不进入证书
        result.relevant = frozenset(key for key in self.relevant if key in result.table)
        return result


def analyze_r(program: Program, entries: Iterable[CallKey], strategy, domain,
              record_trace: bool = False, suppress_redundant: bool = True) -> AnalysisResult:
    """
    运行约简分析器

    Returns:
        AnalysisResult: result.table 与 analyze_f 相同，result.relevant 为 RED 中可达的部分
    """
    analyzer = ReducingAnalyzer(
        program, domain, strategy,
        record_trace=record_trace,
        suppress_redundant=suppress_redundant,
    )
    return analyzer.run(entries)


def replay_relevant(trace) -> Set[CallKey]:
    """
    按存入轨迹独立重算 RED：统计每个槽位的非挂起存入次数，
    达到两次及以上时记下当时的被调用模式
    """
    counts = {}
    relevant = set()
    for record in trace:
        if record.suspended:
            continue
        counts[record.slot] = counts.get(record.slot, 0) + 1
        if counts[record.slot] >= 2:
            relevant.add(record.callee_key)
    return relevant
