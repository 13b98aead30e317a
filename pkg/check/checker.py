# -*- coding: utf-8 -*-
"""
证书检查器

- checker_r：单遍检查约简证书。复用约简分析器的全部机制，
  任何弧第二次非挂起遍历即报 RecomputationRequired，
  证书中的答案在第一次得到非 ⊥ 部分答案时直接装入答案表。
- checker_f：把完整证书当作答案表作用一次抽象算子，要求结果不变。

两者在分析之前先做包一致性检查，之后重新生成验证条件 FCert ⊑ I_α。
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from certify.certificate import FULL, Certificate
from certify.policy import PolicyResult, SafetyPolicy, check_policy, empty_policy
from certify.reducer import ReducingAnalyzer
from config.logging import check_logger
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution
from engine.analyzer import AnalysisCounters, AnalysisResult, validate_entries
from engine.oracle import one_round
from engine.strategies import get_strategy
from engine.tables import AnswerTable
from program.canonical import CallKey, format_call_pattern
from program.normalize import normalize
from program.terms import Program
from utils.errors import (
    AccError,
    AnswerMismatch,
    CheckError,
    PackageMismatch,
    PolicyViolation,
    RecomputationRequired,
)

logger = check_logger

TRUSTED = "trusted"
REJECTED = "rejected"


class SinglePassChecker(ReducingAnalyzer):
    """
    单遍检查器 Checking_r

    运行结束后，证书中的每个条目都必须出现在重建出的（可达部分的）答案表中，
    且它实际算出的部分答案之并必须恰好等于证书中的答案。

    Args:
        certificate: 约简证书（完整证书同样可用）
    """

    def __init__(self, program: Program, domain, strategy, certificate: Certificate,
                 record_trace: bool = False):
        super().__init__(program, domain, strategy, record_trace=record_trace)
        self.certificate = certificate
        self._fixpoints = dict(certificate.entries)
        self._computed: Dict[CallKey, AbstractSubstitution] = {}

    def _on_multi_traversal(self, slot, callee_key, u):
        logger.info(f"弧需要第二次遍历: {slot[0].display()} rule {slot[1]} position {slot[2]}")
        raise RecomputationRequired(slot, u)

    def insert_answer_info(self, key, answer):
        fixpoint = self._fixpoints.get(key)
        if fixpoint is not None:
            if self.domain.alub(answer, fixpoint) != fixpoint:
                raise AnswerMismatch(key, answer, fixpoint)
            self._computed[key] = self.domain.alub(answer, self._computed.get(key, self.table.get(key)))
        previous = self.table.get(key)
        merged = self.domain.alub(answer, previous)
        if merged != previous:
            if fixpoint is not None and previous.failed:
                merged = fixpoint
            assert self.domain.leq(previous, merged), "答案只能单调增长"
            self.table.put(key, merged)
            self._enqueue_update(key)

    def _result(self) -> AnalysisResult:
        result = super()._result()
        for key, fixpoint in sorted(self._fixpoints.items(), key=lambda item: item[0].sort_key()):
            if key not in result.table:
                raise AnswerMismatch(key, None, fixpoint)
            computed = self._computed.get(key, self.table.get(key))
            if computed != fixpoint:
                raise AnswerMismatch(key, computed, fixpoint)
        return result


def checking_r(program: Program, entries: Iterable[CallKey], strategy, certificate: Certificate,
               domain) -> AnalysisResult:
    """
    单遍重建完整答案表

    Returns:
        AnalysisResult: result.table 为重建出的 FCert

    Raises:
        RecomputationRequired: 某条弧需要第二次遍历
        AnswerMismatch: 算出的部分答案超出证书中的答案
    """
    checker = SinglePassChecker(program, domain, strategy, certificate)
    result = checker.run(entries)
    assert result.counters.max_u <= 1, "单遍检查中 u 不能超过 1"
    return result


@dataclass
class CheckReport:
    """
    检查结论

    verdict 为 trusted 时 error 为空且策略检查通过
    """

    verdict: str
    kind: str
    domain_id: str
    strategy_id: str
    table: Optional[AnswerTable] = None
    policy_result: Optional[PolicyResult] = None
    counters: AnalysisCounters = field(default_factory=AnalysisCounters)
    error: Optional[AccError] = None

    @property
    def trusted(self) -> bool:
        return self.verdict == TRUSTED

    def render(self) -> List[str]:
        return render_report(self)


def render_report(report: CheckReport) -> List[str]:
    """检查结论的确定性文本形式"""
    lines = [
        f"verdict: {report.verdict}",
        f"kind: {report.kind}",
        f"domain: {report.domain_id}",
        f"strategy: {report.strategy_id}",
        f"counters: {report.counters.render()}",
    ]
    if report.policy_result is not None:
        lines.extend(report.policy_result.render())
    if report.table is not None:
        lines.append("% reconstructed table")
        lines.extend(report.table.dump())
    if report.error is not None:
        lines.append(f"error: {report.error}")
    return lines


def validate_package(program: Program, domain, entries: Optional[Iterable[CallKey]],
                     certificate: Certificate, strategy_id: Optional[str] = None,
                     require_kind: Optional[str] = None):
    """
    包一致性检查，依次比较摘要、抽象域、入口模式、策略与证书类型

    Args:
        strategy_id: 检查方约定的策略；None 表示采用证书中的策略，不做比较
        require_kind: 要求的证书类型；None 表示不限

    Raises:
        PackageMismatch: 任一项不一致
    """
    domain = get_domain(domain)
    if certificate.digest != program.source_digest:
        raise PackageMismatch("digest", f"{certificate.digest[:12]} != {program.source_digest[:12]}")
    if certificate.domain_id != domain.domain_id:
        raise PackageMismatch("domain-id", f"{certificate.domain_id} != {domain.domain_id}")
    if entries is not None and set(entries) != set(certificate.entry_points):
        expected = ", ".join(format_call_pattern(k) for k in certificate.entry_points)
        raise PackageMismatch("entries", f"certificate: {expected}")
    if strategy_id is not None and strategy_id != certificate.strategy_id:
        raise PackageMismatch("strategy-id", f"{certificate.strategy_id} != {strategy_id}")
    if require_kind is not None and certificate.kind != require_kind:
        raise PackageMismatch("kind", f"{certificate.kind} != {require_kind}")


def _prepare(program, domain, entries, policy, strategy, certificate, override):
    domain = get_domain(domain)
    program = normalize(program)
    entries = list(entries) if entries is not None else None
    if policy is None:
        policy = empty_policy(domain)
    if override and strategy is not None:
        chosen = get_strategy(strategy)
        expected = None
    else:
        chosen = get_strategy(strategy if strategy is not None else certificate.strategy_id)
        expected = chosen.strategy_id
    return domain, program, entries, policy, chosen, expected


def _conclude(report: CheckReport, policy: SafetyPolicy, domain) -> CheckReport:
    report.policy_result = check_policy(report.table, policy, domain)
    if report.policy_result.passed:
        report.verdict = TRUSTED
    else:
        report.error = PolicyViolation(report.policy_result)
    logger.info(f"检查结论 [{report.kind}/{report.strategy_id}]: {report.verdict}")
    return report


def checker_r(program: Program, domain, entries: Optional[Iterable[CallKey]],
              policy: Optional[SafetyPolicy], strategy, certificate: Certificate,
              override: bool = False) -> CheckReport:
    """
    Checker_r：单遍检查并重新生成验证条件

    Args:
        program: 包中的程序
        domain: 抽象域或 domain-id
        entries: 约定的入口模式；None 时采用证书中的 Sα
        policy: 安全策略；None 视为空策略
        strategy: 检查方的队列策略；None 时采用证书中的策略
        certificate: 待检查的证书
        override: 为 True 时用 strategy 覆盖证书中的策略，不做一致性比较

    Returns:
        CheckReport: 检查结论；拒绝原因见 report.error
    """
    domain, program, entries, policy, chosen, expected = _prepare(
        program, domain, entries, policy, strategy, certificate, override
    )
    report = CheckReport(REJECTED, certificate.kind, domain.domain_id, chosen.strategy_id)
    try:
        validate_package(program, domain, entries, certificate, expected)
        seeds = validate_entries(program, entries if entries is not None else certificate.entry_points)
        result = checking_r(program, seeds, chosen, certificate, domain)
    except CheckError as e:
        logger.info(f"证书被拒绝: {e}")
        report.error = e
        return report
    report.table = result.table
    report.counters = result.counters
    return _conclude(report, policy, domain)


def checker_f(program: Program, domain, entries: Optional[Iterable[CallKey]],
              policy: Optional[SafetyPolicy], strategy, certificate: Certificate,
              override: bool = False) -> CheckReport:
    """
    Checker_f：完整证书的不动点检验

    以证书为答案表作用一次抽象算子，任何条目变化、缺失的 Sα 键
    或缺失的体调用模式都判为 AnswerMismatch。
    """
    domain, program, entries, policy, chosen, expected = _prepare(
        program, domain, entries, policy, strategy, certificate, override
    )
    report = CheckReport(REJECTED, certificate.kind, domain.domain_id, chosen.strategy_id)
    try:
        validate_package(program, domain, entries, certificate, expected, require_kind=FULL)
        seeds = validate_entries(program, entries if entries is not None else certificate.entry_points)
        table = certificate.as_table()
        round_result = one_round(program, domain, table, seeds)
        report.counters = AnalysisCounters(
            events=round_result.evaluations, arcs=round_result.literals
        )
        for key in seeds:
            if key not in table:
                raise AnswerMismatch(key, round_result.table.get(key), None)
        for key in round_result.missing:
            raise AnswerMismatch(key, round_result.table.get(key), None)
        for key, answer in round_result.table.items():
            if answer != table.get(key):
                raise AnswerMismatch(key, answer, table.get(key))
    except CheckError as e:
        logger.info(f"证书被拒绝: {e}")
        report.error = e
        return report
    report.table = table
    return _conclude(report, policy, domain)


def check_certificate(program: Program, domain, entries: Optional[Iterable[CallKey]],
                      policy: Optional[SafetyPolicy], strategy, certificate: Certificate,
                      override: bool = False) -> CheckReport:
    """按证书类型选择 checker_f 或 checker_r"""
    checker = checker_f if certificate.kind == FULL else checker_r
    return checker(program, domain, entries, policy, strategy, certificate, override=override)
