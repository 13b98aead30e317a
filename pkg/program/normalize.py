# -*- coding: utf-8 -*-
"""
程序规范化

规范形式：
- 原子调用的参数是两两不同的变量，非变量参数展开为调用前的合一约束
- 同一谓词的所有规则共用一个头变量序列（基本形式）
- 合一约束左侧为变量，is 的结果为变量
"""

from typing import Dict, List, Set, Tuple

from config.logging import program_logger
from program.terms import Builtin, Call, Program, Rule, Unify, Var, rename_term

logger = program_logger


FRESH_PREFIX = "X"


class _FreshNames:
    """按规则生成 X0, X1, ...，跳过规则中已使用的名字"""

    def __init__(self, used: Set[str]):
        self._used = set(used)
        self._counter = 0

    def __call__(self) -> str:
        while True:
            name = f"{FRESH_PREFIX}{self._counter}"
            self._counter += 1
            if name not in self._used:
                self._used.add(name)
                return name


def _base_head(rules: Tuple[Rule, ...]) -> Tuple[str, ...]:
    """谓词的基本头变量序列：取第一条规则的头（若已是不同变量），否则用 X0..Xn-1"""
    first = rules[0].head
    names = [a.name for a in first.args if isinstance(a, Var)]
    if len(names) == first.arity and len(set(names)) == len(names):
        return tuple(names)
    return tuple(f"{FRESH_PREFIX}{i}" for i in range(first.arity))


def _normalize_rule(rule: Rule, base: Tuple[str, ...]) -> Rule:
    fresh = _FreshNames(set(rule.variables) | set(base))

    # 头部：首次出现的变量映射到基本形式的对应位置
    mapping: Dict[str, str] = {}
    pending: List[Tuple[int, object]] = []
    for position, arg in enumerate(rule.head.args):
        if isinstance(arg, Var) and arg.name not in mapping:
            mapping[arg.name] = base[position]
        else:
            pending.append((position, arg))

    # 与基本形式同名但不是头变量的体变量必须换名
    targets = set(base)
    for name in rule.variables:
        if name not in mapping and name in targets:
            mapping[name] = fresh()

    def rename(term):
        return rename_term(term, mapping)

    body: List = [Unify(Var(base[position]), rename(arg)) for position, arg in pending]
    for literal in rule.body:
        body.extend(_normalize_literal(literal, rename, fresh))

    head = Call(rule.head.predicate, tuple(Var(name) for name in base))
    return Rule(rule.index, head, tuple(_orient(l) for l in body))


def _normalize_literal(literal, rename, fresh):
    if isinstance(literal, Call):
        args = [rename(a) for a in literal.args]
        prefix = []
        seen = set()
        flat = []
        for arg in args:
            if isinstance(arg, Var) and arg.name not in seen:
                seen.add(arg.name)
                flat.append(arg)
            else:
                name = fresh()
                prefix.append(Unify(Var(name), arg))
                flat.append(Var(name))
        return prefix + [Call(literal.predicate, tuple(flat))]
    if isinstance(literal, Unify):
        return [Unify(rename(literal.left), rename(literal.right))]
    result, expr = (rename(a) for a in literal.args)
    if isinstance(result, Var):
        return [Builtin(literal.name, (result, expr))]
    name = fresh()
    return [Builtin(literal.name, (Var(name), expr)), Unify(Var(name), result)]


def _orient(literal):
    """让合一约束左侧成为变量"""
    if not isinstance(literal, Unify) or isinstance(literal.left, Var):
        return literal
    if isinstance(literal.right, Var):
        return Unify(literal.right, literal.left)
    return literal


def _split_ground_unify(body, fresh):
    """两侧都不是变量的合一拆成 Xn = t1, Xn = t2"""
    result = []
    for literal in body:
        if isinstance(literal, Unify) and not isinstance(literal.left, Var):
            name = fresh()
            result.append(Unify(Var(name), literal.left))
            result.append(Unify(Var(name), literal.right))
        else:
            result.append(literal)
    return tuple(result)


def normalize(program: Program) -> Program:
    """
    规范化程序（幂等）

    Args:
        program: parse 得到的程序

    Returns:
        Program: 规范形式的程序，源摘要保持不变
    """
    predicates = {}
    for predicate_id, rules in program.predicates.items():
        base = _base_head(rules)
        normalized = []
        for rule in rules:
            rule = _normalize_rule(rule, base)
            fresh = _FreshNames(set(rule.variables))
            normalized.append(Rule(rule.index, rule.head, _split_ground_unify(rule.body, fresh)))
        predicates[predicate_id] = tuple(normalized)
    logger.debug(f"规范化完成: {len(predicates)} 个谓词")
    return Program(predicates, program.source_digest)


def is_normal(program: Program) -> bool:
    """检查程序是否已是规范形式"""
    for rules in program.predicates.values():
        heads = {rule.head for rule in rules}
        if len(heads) != 1:
            return False
        head = next(iter(heads))
        names = [a.name for a in head.args if isinstance(a, Var)]
        if len(names) != head.arity or len(set(names)) != len(names):
            return False
        for rule in rules:
            for literal in rule.body:
                if isinstance(literal, Call):
                    args = literal.args
                    if not all(isinstance(a, Var) for a in args) or len(set(args)) != len(args):
                        return False
                elif isinstance(literal, Unify):
                    if not isinstance(literal.left, Var):
                        return False
                elif not isinstance(literal.args[0], Var):
                    return False
    return True
