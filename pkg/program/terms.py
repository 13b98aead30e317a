# -*- coding: utf-8 -*-
"""
程序中间表示
项、文字、规则与程序的不可变数据结构，以及变量重命名
"""

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Dict, Iterable, Iterator, List, Tuple, Union

NIL = "[]"
CONS = "[|]"


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Int:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Float:
    value: Decimal

    def __str__(self):
        return format(self.value, "f")


@dataclass(frozen=True)
class Struct:
    """复合项；原子是元数为 0 的复合项"""

    functor: str
    args: Tuple["Term", ...] = ()

    @property
    def arity(self):
        return len(self.args)


Term = Union[Var, Int, Float, Struct]


def make_list(items: Iterable[Term], tail: Term = None) -> Term:
    """由元素序列构造列表项"""
    result = Struct(NIL) if tail is None else tail
    for item in reversed(list(items)):
        result = Struct(CONS, (item, result))
    return result


def term_variables(term: Term) -> List[str]:
    """
    按首次出现顺序收集项中的变量名

    Args:
        term: 任意项

    Returns:
        list: 去重后的变量名列表
    """
    seen: Dict[str, None] = {}
    for name in _walk_variables(term):
        seen.setdefault(name, None)
    return list(seen)


def _walk_variables(term: Term) -> Iterator[str]:
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, Struct):
        for arg in term.args:
            yield from _walk_variables(arg)


def rename_term(term: Term, mapping) -> Term:
    """按映射重命名项中的变量，未出现在映射中的变量保持不变"""
    if isinstance(term, Var):
        return Var(mapping.get(term.name, term.name))
    if isinstance(term, Struct) and term.args:
        return Struct(term.functor, tuple(rename_term(a, mapping) for a in term.args))
    return term


@dataclass(frozen=True)
class Call:
    """谓词调用（原子文字）"""

    predicate: str
    args: Tuple[Term, ...] = ()

    @property
    def arity(self):
        return len(self.args)

    @property
    def predicate_id(self):
        return (self.predicate, len(self.args))


@dataclass(frozen=True)
class Unify:
    """合一约束 left = right；规范化后 left 总是变量"""

    left: Term
    right: Term


@dataclass(frozen=True)
class Builtin:
    """内建约束，目前只有 is/2：args = (结果, 算术表达式)"""

    name: str
    args: Tuple[Term, ...]

    @property
    def arity(self):
        return len(self.args)


Literal = Union[Call, Unify, Builtin]


def literal_variables(literal: Literal) -> List[str]:
    """按首次出现顺序返回文字中的变量名"""
    if isinstance(literal, Unify):
        terms = (literal.left, literal.right)
    else:
        terms = literal.args
    seen: Dict[str, None] = {}
    for term in terms:
        for name in term_variables(term):
            seen.setdefault(name, None)
    return list(seen)


@dataclass(frozen=True)
class Rule:
    """
    规则 H_k :- B_k1, ..., B_kn

    index 是该规则在所属谓词内的序号（从 1 开始，按文本顺序）
    """

    index: int
    head: Call
    body: Tuple[Literal, ...] = ()

    @property
    def predicate_id(self):
        return self.head.predicate_id

    @property
    def head_variables(self) -> Tuple[str, ...]:
        return tuple(term_variables(Struct(self.head.predicate, self.head.args)))

    @property
    def variables(self) -> Tuple[str, ...]:
        """规则中全部变量，头部在前，其余按体中首次出现顺序"""
        seen: Dict[str, None] = {}
        for name in self.head_variables:
            seen.setdefault(name, None)
        for literal in self.body:
            for name in literal_variables(literal):
                seen.setdefault(name, None)
        return tuple(seen)


PredicateId = Tuple[str, int]


def format_predicate(predicate_id: PredicateId) -> str:
    name, arity = predicate_id
    return f"{name}/{arity}"


@dataclass(frozen=True)
class Program:
    """
    程序：谓词到有序规则列表的映射

    predicates 的迭代顺序为谓词在源文本中首次出现的顺序
    """

    predicates: Dict[PredicateId, Tuple[Rule, ...]] = field(default_factory=dict)
    source_digest: str = ""

    def rules_for(self, predicate_id: PredicateId) -> Tuple[Rule, ...]:
        return self.predicates.get(predicate_id, ())

    def has_predicate(self, predicate_id: PredicateId) -> bool:
        return predicate_id in self.predicates

    def all_rules(self) -> Iterator[Rule]:
        for rules in self.predicates.values():
            yield from rules


class Renaming:
    """
    变量名之间的双射 σ，可求逆 σ⁻¹
    """

    def __init__(self, pairs):
        self._forward = dict(pairs)
        if len(set(self._forward.values())) != len(self._forward):
            raise ValueError("重命名必须是双射")

    def __call__(self, name: str) -> str:
        return self._forward.get(name, name)

    def __eq__(self, other):
        return isinstance(other, Renaming) and self._forward == other._forward

    def __hash__(self):
        return hash(frozenset(self._forward.items()))

    def __repr__(self):
        body = ", ".join(f"{k}->{v}" for k, v in self._forward.items())
        return f"Renaming({body})"

    def inverse(self) -> "Renaming":
        return Renaming((v, k) for k, v in self._forward.items())
