# -*- coding: utf-8 -*-
"""
抽象算子的单轮求值与 Kleene 迭代

one_round 不经过事件队列：对表中（以及 Sα 中）的每个调用模式，
按文本顺序重新求值它的全部规则，体中调用的答案一律从输入表读取。
它既是分析器的独立对照，也是 checker_f 的不动点检验。
"""

from dataclasses import dataclass, field
from typing import Iterable, List

from config.logging import engine_logger
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution
from engine.analyzer import evaluate_rule, reachable_table
from engine.tables import AnswerTable
from program.canonical import CallKey, sort_keys
from program.terms import Program, format_predicate
from utils.errors import AnalysisError

logger = engine_logger


@dataclass
class RoundResult:
    """
    单轮求值的结果

    Args:
        table: 求值得到的新表
        missing: 体中出现但输入表里没有的调用模式（按 ⊥ 处理）
        evaluations: 求值的规则数
        literals: 求值的体文字数
    """

    table: AnswerTable
    missing: List[CallKey] = field(default_factory=list)
    evaluations: int = 0
    literals: int = 0


def one_round(program: Program, domain, table: AnswerTable, entries: Iterable[CallKey] = ()) -> RoundResult:
    """
    把抽象算子作用一次

    Args:
        program: 规范形式的程序
        domain: 抽象域或 domain-id
        table: 输入答案表
        entries: 入口模式 Sα，不在表中的也会被求值

    Returns:
        RoundResult: 新表、缺失的调用模式与求值计数

    Raises:
        AnalysisError: 表中的调用模式指向没有规则的谓词
    """
    domain = get_domain(domain)
    keys = sort_keys(set(table.keys()) | set(entries))
    missing = {}
    result = AnswerTable()
    evaluations = 0
    literals = 0

    def lookup(callee_key):
        answer = table.get(callee_key)
        if answer is None:
            missing.setdefault(callee_key, None)
            return AbstractSubstitution.bottom(callee_key.variables)
        return answer

    for key in keys:
        rules = program.rules_for(key.predicate_id)
        if not rules:
            raise AnalysisError(AnalysisError.UNKNOWN_PREDICATE, format_predicate(key.predicate_id))
        answer = AbstractSubstitution.bottom(key.variables)
        for rule in rules:
            evaluations += 1
            rule_answer, steps = evaluate_rule(domain, key, rule, lookup)
            literals += steps
            answer = domain.alub(rule_answer, answer)
        result.put(key, answer)

    for key in missing:
        if key not in result:
            result.put(key, AbstractSubstitution.bottom(key.variables))

    return RoundResult(result, sort_keys(missing), evaluations, literals)


def kleene(program: Program, domain, entries: Iterable[CallKey], max_rounds: int = 10000) -> AnswerTable:
    """
    从空表出发迭代 one_round 直到表不再变化

    Args:
        program: 规范形式的程序
        domain: 抽象域或 domain-id
        entries: 入口模式 Sα
        max_rounds: 迭代上限，超过时抛出 RuntimeError

    Returns:
        AnswerTable: 最小不动点，只含从 Sα 可达的调用模式
    """
    domain = get_domain(domain)
    entries = list(entries)
    table = AnswerTable()
    for rounds in range(1, max_rounds + 1):
        current = one_round(program, domain, table, entries).table
        if current == table:
            logger.debug(f"Kleene 迭代在第 {rounds} 轮收敛: {len(table)} 个答案")
            return reachable_table(program, domain, table, entries)
        table = current
    raise RuntimeError(f"Kleene 迭代 {max_rounds} 轮内未收敛")
