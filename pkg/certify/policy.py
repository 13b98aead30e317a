# -*- coding: utf-8 -*-
"""
安全策略 I_α 与验证条件 Cert ⊑ I_α
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from certify.certificate import Entry, sort_entries
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution
from program.canonical import CallKey
from utils.errors import DomainMismatch

PASS = "pass"
VACUOUS = "vacuous"
VIOLATION = "violation"


@dataclass(frozen=True)
class SafetyPolicy:
    """安全策略：与证书条目同形的 A:CP ↦ AP 列表"""

    domain_id: str
    entries: Tuple[Entry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", sort_entries(self.entries))

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class PolicyFinding:
    key: CallKey
    policy_answer: AbstractSubstitution
    table_answer: Optional[AbstractSubstitution]
    status: str

    def render(self) -> str:
        actual = self.table_answer.tuple_form() if self.table_answer is not None else "missing"
        return f"{self.status}\t{self.key.display()}\t{actual} <= {self.policy_answer.tuple_form()}"


@dataclass
class PolicyResult:
    domain_id: str
    findings: List[PolicyFinding] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def violations(self) -> List[PolicyFinding]:
        return [f for f in self.findings if f.status == VIOLATION]

    def render(self) -> List[str]:
        head = "pass" if self.passed else f"violation ({len(self.violations)})"
        return [f"policy: {head}"] + ["  " + f.render() for f in self.findings]


def check_policy(table, policy: SafetyPolicy, domain) -> PolicyResult:
    """
    检查答案表是否满足安全策略

    Args:
        table: 答案表或证书（需要提供 get）
        policy: 安全策略
        domain: 抽象域或 domain-id

    Returns:
        PolicyResult: 每个策略条目一条结论；表中缺失的键按 ⊥ 处理，记为 vacuous

    Raises:
        DomainMismatch: 策略的抽象域与 domain 不一致
    """
    domain = get_domain(domain)
    if policy.domain_id != domain.domain_id:
        raise DomainMismatch(domain.domain_id, policy.domain_id)

    result = PolicyResult(policy.domain_id)
    for key, bound in policy.entries:
        answer = table.get(key)
        if answer is None:
            status = VACUOUS
        elif domain.leq(answer, bound):
            status = PASS
        else:
            status = VIOLATION
        result.findings.append(PolicyFinding(key, bound, answer, status))
    return result


def empty_policy(domain) -> SafetyPolicy:
    return SafetyPolicy(get_domain(domain).domain_id)


def policy_from_entries(domain, entries: Iterable[Entry]) -> SafetyPolicy:
    return SafetyPolicy(get_domain(domain).domain_id, tuple(entries))
