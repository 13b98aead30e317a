# -*- coding: utf-8 -*-
"""
通用不动点分析器 Analyze_f

事件驱动：newcall 建立新的调用模式并为每条规则放入第一条弧，
arc 沿规则体推进一个文字，updated 重新激活依赖于某个调用模式的弧。
每条弧记下遍历时读到的答案版本，updated 只重新激活读到旧版本的弧。
队列耗尽时答案表 AT 中从 Sα 可达的部分即为结果。

ReducingAnalyzer 与 SinglePassChecker 通过覆写 _on_multi_traversal、
_enqueue_update 与 insert_answer_info 复用这里的全部机制。
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, FrozenSet, Iterable, List, Tuple

from config.logging import engine_logger, trace_logger
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution, canonical_variables
from engine.events import ArcEvent, EventQueue, NewCall, Updated
from engine.strategies import get_strategy
from engine.tables import AnswerTable, DependencyArc, DependencyArcTable, Slot
from program.canonical import CallKey, canonicalize, sort_keys
from program.normalize import is_normal
from program.terms import Call, Program, Renaming, Rule, format_predicate, literal_variables
from utils.errors import AnalysisError

logger = engine_logger


@dataclass
class AnalysisCounters:
    """一次运行的工作量计数"""

    events: int = 0
    newcalls: int = 0
    arcs: int = 0
    updates: int = 0
    max_u: int = 0

    def as_dict(self):
        return {
            "events": self.events,
            "newcalls": self.newcalls,
            "arcs": self.arcs,
            "updates": self.updates,
            "max_u": self.max_u,
        }

    def render(self) -> str:
        return " ".join(f"{name}={value}" for name, value in self.as_dict().items())


@dataclass(frozen=True)
class StoreRecord:
    """一次 DAT 存入：槽位、被调用键、是否挂起、存入后的 u"""

    slot: Slot
    callee_key: CallKey
    suspended: bool
    u: int


@dataclass
class AnalysisResult:
    table: AnswerTable
    dat: DependencyArcTable
    counters: AnalysisCounters
    relevant: FrozenSet[CallKey] = frozenset()
    trace: Tuple[StoreRecord, ...] = ()
    domain_id: str = ""
    strategy_id: str = ""


def head_variables(rule: Rule) -> Tuple[str, ...]:
    """规范形式下的头变量序列"""
    return tuple(arg.name for arg in rule.head.args)


def canonical_renaming(names: Tuple[str, ...]) -> Renaming:
    return Renaming(zip(names, canonical_variables(len(names))))


def validate_entries(program: Program, entries: Iterable[CallKey]) -> List[CallKey]:
    """
    检查入口模式 Sα 都指向程序中的谓词，返回排序去重后的列表

    Raises:
        AnalysisError: UnknownPredicate
    """
    keys = sort_keys(set(entries))
    for key in keys:
        if not program.has_predicate(key.predicate_id):
            raise AnalysisError(AnalysisError.UNKNOWN_PREDICATE, format_predicate(key.predicate_id))
    return keys


def evaluate_rule(domain, key: CallKey, rule: Rule,
                  lookup: Callable[[CallKey], AbstractSubstitution]) -> Tuple[AbstractSubstitution, int]:
    """
    在调用模式 key 下从头求值一条规则

    Args:
        domain: 抽象域
        key: 头部调用模式
        rule: 规范形式的规则
        lookup: 体中调用的答案来源，返回以 v1..vn 为作用域的答案

    Returns:
        tuple: (以 v1..vn 为作用域的规则答案, 求值的体文字数)
    """
    heads = head_variables(rule)
    point = domain.aextend(AbstractSubstitution(heads, key.values), rule.variables)
    for steps, literal in enumerate(rule.body, start=1):
        if isinstance(literal, Call):
            callee_key, renaming = canonicalize(literal, point)
            answer = lookup(callee_key)
            if answer.failed:
                return AbstractSubstitution.bottom(key.variables), steps
            local = domain.aextend(answer.renamed(renaming.inverse()), rule.variables)
            point = domain.aconj(point, local)
        else:
            point = domain.aadd(literal, point)
        if point.failed:
            return AbstractSubstitution.bottom(key.variables), steps
    answer = domain.arestrict(point, heads).renamed(canonical_renaming(heads))
    return answer, len(rule.body)


def reachable_table(program: Program, domain, table: AnswerTable, entries: Iterable[CallKey]) -> AnswerTable:
    """
    只保留在最终答案下从 Sα 可达的调用模式

    分析途中由尚未稳定的程序点产生、之后不再被调用的模式会被去掉，
    因此结果与事件顺序无关。不在 table 中的键不会出现在结果里。
    """
    reached = set()
    pending = list(entries)

    def lookup(callee_key):
        pending.append(callee_key)
        answer = table.get(callee_key)
        return answer if answer is not None else AbstractSubstitution.bottom(callee_key.variables)

    while pending:
        key = pending.pop()
        if key in reached or key not in table:
            continue
        reached.add(key)
        for rule in program.rules_for(key.predicate_id):
            evaluate_rule(domain, key, rule, lookup)
    return AnswerTable({key: table.get(key) for key in reached})


class Analyzer:
    """
    Analyze_f 的实现

    Args:
        program: 规范形式的程序
        domain: 抽象域或 domain-id
        strategy: 队列策略或 strategy-id
        record_trace: 是否记录每次 DAT 存入
    """

    def __init__(self, program: Program, domain, strategy, record_trace: bool = False):
        assert is_normal(program), "分析器要求规范形式的程序"
        self.program = program
        self.domain = get_domain(domain)
        self.strategy = get_strategy(strategy)
        self.record_trace = record_trace

        self.table = AnswerTable()
        self.dat = DependencyArcTable()
        self.queue = EventQueue(self.strategy)
        self.counters = AnalysisCounters()
        self.trace: List[StoreRecord] = []
        self._entries: List[CallKey] = []
        self._tracing = trace_logger.isEnabledFor(logging.DEBUG)

    def run(self, entries: Iterable[CallKey]) -> AnalysisResult:
        """
        从入口模式出发运行到队列耗尽

        Args:
            entries: 入口模式 Sα

        Returns:
            AnalysisResult: 答案表、依赖弧表与计数

        Raises:
            AnalysisError: 调用了没有规则的谓词，或遇到未知内建
        """
        keys = validate_entries(self.program, entries)
        self._entries = keys
        for key in keys:
            self.queue.push(NewCall(key))

        while self.queue:
            event = self.queue.pop()
            self.counters.events += 1
            if self._tracing:
                trace_logger.debug(f"[{self.strategy.strategy_id}] {self._describe(event)}")
            if isinstance(event, NewCall):
                self.new_call_pattern(event.key)
            elif isinstance(event, ArcEvent):
                self.process_arc(event.arc)
            else:
                self.add_dependent_rules(event.key)

        self.counters.max_u = self.dat.max_u
        logger.debug(
            f"分析完成 [{self.strategy.strategy_id}/{self.domain.domain_id}]: "
            f"{len(self.table)} 个答案, {self.counters.render()}"
        )
        return self._result()

    def _result(self) -> AnalysisResult:
        table = reachable_table(self.program, self.domain, self.table, self._entries)
        return AnalysisResult(
            table, self.dat, self.counters,
            trace=tuple(self.trace),
            domain_id=self.domain.domain_id,
            strategy_id=self.strategy.strategy_id,
        )

    # ---- 事件处理 ----

    def new_call_pattern(self, key: CallKey):
        if key in self.table:
            return
        rules = self.program.rules_for(key.predicate_id)
        if not rules:
            raise AnalysisError(AnalysisError.UNKNOWN_PREDICATE, format_predicate(key.predicate_id))
        self.counters.newcalls += 1
        self.table.put(key, AbstractSubstitution.bottom(key.variables))

        for rule in self.strategy.order_rules(rules):
            heads = head_variables(rule)
            cp0 = self.domain.aextend(AbstractSubstitution(heads, key.values), rule.variables)
            if not rule.body:
                answer = self.domain.arestrict(cp0, heads).renamed(canonical_renaming(heads))
                self.insert_answer_info(key, answer)
                continue
            first = rule.body[0]
            arc = DependencyArc(
                key, rule.index, 1, cp0, first,
                self.domain.arestrict(cp0, literal_variables(first)),
            )
            self.queue.push(ArcEvent(arc))

    def process_arc(self, arc: DependencyArc):
        self.counters.arcs += 1
        rule = self._rule(arc)
        literal = arc.callee

        if isinstance(literal, Call):
            callee_key, renaming = canonicalize(literal, arc.callee_cp)
            stored = self.dat.get(arc.slot)
            u = stored.u if stored is not None else arc.u
            current = self.table.get(callee_key)
            suspended = current is None or current.failed
            new_u = u if suspended else u + 1

            self.dat.store(replace(arc, u=new_u, seen=self.table.version(callee_key)), callee_key)
            if self.record_trace:
                self.trace.append(StoreRecord(arc.slot, callee_key, suspended, new_u))
            if not suspended and new_u > 1:
                self._on_multi_traversal(arc.slot, callee_key, new_u)

            cp3 = self.get_answer(rule, arc.point, callee_key, renaming)
        else:
            cp3 = self.domain.aadd(literal, arc.point)

        if cp3.failed:
            return

        if arc.position < len(rule.body):
            following = rule.body[arc.position]
            slot = (arc.head_key, arc.rule_index, arc.position + 1)
            existing = self.dat.get(slot)
            continuation = DependencyArc(
                arc.head_key, arc.rule_index, arc.position + 1, cp3, following,
                self.domain.arestrict(cp3, literal_variables(following)),
                existing.u if existing is not None else 0,
            )
            self.queue.push(ArcEvent(continuation))
        else:
            heads = head_variables(rule)
            answer = self.domain.arestrict(cp3, heads).renamed(canonical_renaming(heads))
            self.insert_answer_info(arc.head_key, answer)

    def get_answer(self, rule: Rule, point: AbstractSubstitution, callee_key: CallKey,
                   renaming: Renaming) -> AbstractSubstitution:
        """把被调用模式的答案换回调用处的变量并与程序点替换合取"""
        answer = self.lookup_answer(callee_key)
        if answer.failed:
            return AbstractSubstitution.bottom(rule.variables)
        local = answer.renamed(renaming.inverse())
        return self.domain.aconj(point, self.domain.aextend(local, rule.variables))

    def lookup_answer(self, key: CallKey) -> AbstractSubstitution:
        answer = self.table.get(key)
        if answer is None:
            self.queue.push(NewCall(key))
            return AbstractSubstitution.bottom(key.variables)
        return answer

    def insert_answer_info(self, key: CallKey, answer: AbstractSubstitution):
        previous = self.table.get(key)
        merged = self.domain.alub(answer, previous)
        if merged != previous:
            assert self.domain.leq(previous, merged), "答案只能单调增长"
            self.table.put(key, merged)
            self._enqueue_update(key)

    def add_dependent_rules(self, key: CallKey):
        self.counters.updates += 1
        version = self.table.version(key)
        for arc in self.dat.dependents(key):
            # 已读到当前答案的弧不再激活
            if arc.seen != version:
                self.queue.push(ArcEvent(arc, relaunch=True))

    # ---- 供子类覆写的钩子 ----

    def _on_multi_traversal(self, slot: Slot, callee_key: CallKey, u: int):
        """非挂起弧第二次及以后被存入时调用"""

    def _enqueue_update(self, key: CallKey):
        self.queue.push(Updated(key, redundant=not self.dat.has_dependents(key)))

    # ---- 内部工具 ----

    def _rule(self, arc: DependencyArc) -> Rule:
        return self.program.rules_for(arc.head_key.predicate_id)[arc.rule_index - 1]

    @staticmethod
    def _describe(event) -> str:
        if isinstance(event, NewCall):
            return f"newcall {event.key.display()}"
        if isinstance(event, ArcEvent):
            tag = "relaunch" if event.relaunch else "arc"
            return f"{tag} {event.arc.display()}"
        tag = "updated(redundant)" if event.redundant else "updated"
        return f"{tag} {event.key.display()}"


def analyze_f(program: Program, entries: Iterable[CallKey], strategy, domain,
              record_trace: bool = False) -> AnalysisResult:
    """
    运行通用分析器

    Args:
        program: 规范形式的程序
        entries: 入口模式 Sα
        strategy: 队列策略 Ω
        domain: 抽象域
        record_trace: 是否记录 DAT 存入轨迹

    Returns:
        AnalysisResult: result.table 即 Analyze_f 的答案表
    """
    return Analyzer(program, domain, strategy, record_trace=record_trace).run(entries)


def dump_result(result: AnalysisResult, with_dat: bool = False) -> List[str]:
    """答案表（可选依赖弧表）与计数的确定性文本转储"""
    lines = [f"% answer table ({result.domain_id}, {result.strategy_id})"]
    lines.extend(result.table.dump())
    if with_dat:
        lines.append("% dependency arcs")
        lines.extend(result.dat.dump())
    lines.append(f"% counters: {result.counters.render()}")
    return lines

