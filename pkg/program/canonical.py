# -*- coding: utf-8 -*-
"""
调用模式的规范键

变量按在参数表中首次出现的顺序编号为 v1..vn，
因此仅差一个重命名的两个调用模式得到相同的键。
"""

import re
from dataclasses import dataclass
from typing import Tuple

from domains.substitution import AbstractSubstitution, canonical_variables
from program.terms import Call, Renaming, Var
from utils.errors import ParseError


@dataclass(frozen=True)
class CallKey:
    """规范化的抽象原子 A:CP"""

    predicate: str
    arity: int
    values: Tuple

    @property
    def predicate_id(self):
        return (self.predicate, self.arity)

    @property
    def variables(self) -> Tuple[str, ...]:
        return canonical_variables(self.arity)

    def cp_form(self) -> str:
        return "(" + ",".join(v.value for v in self.values) + ")"

    def sort_key(self):
        return (self.predicate, self.arity, tuple(v.value for v in self.values))

    def display(self) -> str:
        return f"{self.predicate}/{self.arity} {self.cp_form()}"

    def __str__(self):
        return self.display()


def sort_keys(keys):
    return sorted(keys, key=CallKey.sort_key)


def canonicalize(call: Call, cp: AbstractSubstitution):
    """
    计算原子调用的规范键

    Args:
        call: 参数为两两不同变量的原子调用
        cp: 作用域覆盖调用变量的抽象替换（不能是 ⊥）

    Returns:
        tuple: (CallKey, Renaming)，重命名把调用变量映射到 v1..vn
    """
    names = [arg.name for arg in call.args]
    assert len(set(names)) == len(names), f"调用参数必须是不同变量: {call}"
    assert not cp.failed, "调用模式不能是 ⊥"
    assert cp.covers(names), f"替换作用域 {cp.scope} 未覆盖 {names}"
    renaming = Renaming(zip(names, canonical_variables(len(names))))
    key = CallKey(call.predicate, len(names), tuple(cp.value(n) for n in names))
    return key, renaming


_PATTERN = re.compile(r"^\s*([a-z][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*:\s*(\(.*\))\s*$")
_VARIABLE = re.compile(r"[A-Z_][A-Za-z0-9_]*")


def parse_call_pattern(text: str, domain) -> CallKey:
    """
    解析入口模式，例如 "rectoy(N,M):(int,term)"

    Raises:
        ParseError: 格式错误、变量重复或格值非法
    """
    match = _PATTERN.match(text)
    if not match:
        raise ParseError(f"无法解析调用模式: {text!r}")
    predicate, args_text, cp_text = match.groups()
    names = [a.strip() for a in args_text.split(",")] if args_text and args_text.strip() else []
    if not all(_VARIABLE.fullmatch(n) for n in names):
        raise ParseError(f"调用模式的参数必须是变量: {text!r}")
    if len(set(names)) != len(names):
        raise ParseError(f"调用模式的参数变量必须两两不同: {text!r}")
    try:
        cp = domain.parse_tuple(cp_text, names)
    except ValueError as e:
        raise ParseError(f"{text!r}: {e}") from None
    if cp.failed:
        raise ParseError(f"调用模式不能是 bot: {text!r}")
    key, _ = canonicalize(Call(predicate, tuple(Var(n) for n in names)), cp)
    return key


def format_call_pattern(key: CallKey) -> str:
    args = ",".join(key.variables)
    head = f"{key.predicate}({args})" if key.arity else key.predicate
    return f"{head}:{key.cp_form()}"
