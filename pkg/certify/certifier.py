# -*- coding: utf-8 -*-
"""
认证器 Certifier_f / Certifier_r

两者都先对完整答案表检查安全策略；通过后分别输出整张表或 RED 条目。
"""

from dataclasses import dataclass
from typing import Iterable, Optional

from certify.certificate import FULL, REDUCED, Certificate, make_certificate
from certify.policy import PolicyResult, SafetyPolicy, check_policy, empty_policy
from certify.reducer import analyze_r
from config.logging import certify_logger
from domains.registry import get_domain
from engine.analyzer import AnalysisResult, analyze_f
from engine.strategies import get_strategy
from program.canonical import CallKey
from program.normalize import normalize
from program.terms import Program
from utils.errors import PolicyViolation

logger = certify_logger


@dataclass
class CertificationRun:
    """一次认证的全部产物，bench 需要其中的计数"""

    certificate: Certificate
    analysis: AnalysisResult
    policy_result: PolicyResult


def certify(program: Program, domain, entries: Iterable[CallKey],
            policy: Optional[SafetyPolicy], strategy, kind: str = REDUCED) -> CertificationRun:
    """
    分析程序并生成证书

    Args:
        program: 程序（未规范化的会先规范化）
        domain: 抽象域或 domain-id
        entries: 入口模式 Sα
        policy: 安全策略；None 视为空策略
        strategy: 队列策略或 strategy-id
        kind: full 或 reduced

    Returns:
        CertificationRun: 证书、分析结果与策略检查结果

    Raises:
        PolicyViolation: 完整答案表不满足策略
        AnalysisError: 分析失败
        DomainMismatch: 策略与抽象域不一致
    """
    domain = get_domain(domain)
    strategy = get_strategy(strategy)
    program = normalize(program)
    entries = list(entries)
    if policy is None:
        policy = empty_policy(domain)

    if kind == FULL:
        analysis = analyze_f(program, entries, strategy, domain)
        keys = None
    else:
        analysis = analyze_r(program, entries, strategy, domain)
        keys = analysis.relevant

    policy_result = check_policy(analysis.table, policy, domain)
    if not policy_result.passed:
        logger.warning(f"策略检查未通过: {len(policy_result.violations)} 个条目违反策略")
        raise PolicyViolation(policy_result)

    certificate = make_certificate(
        kind, analysis.table, domain.domain_id, strategy.strategy_id,
        program.source_digest, entries, keys,
    )
    logger.info(
        f"证书生成完成 [{kind}/{strategy.strategy_id}/{domain.domain_id}]: "
        f"{len(certificate)}/{len(analysis.table)} 个条目"
    )
    return CertificationRun(certificate, analysis, policy_result)


def certifier_f(program: Program, domain, entries: Iterable[CallKey],
                policy: Optional[SafetyPolicy], strategy) -> Certificate:
    """完整证书 FCert"""
    return certify(program, domain, entries, policy, strategy, kind=FULL).certificate


def certifier_r(program: Program, domain, entries: Iterable[CallKey],
                policy: Optional[SafetyPolicy], strategy) -> Certificate:
    """约简证书 RCert"""
    return certify(program, domain, entries, policy, strategy, kind=REDUCED).certificate
