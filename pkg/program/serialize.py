# -*- coding: utf-8 -*-
"""
程序的规范序列化与源摘要

规范文本按谓词首次出现顺序、谓词内按规则顺序输出，单空格分隔，\n 换行。
"""

import hashlib

from program.terms import CONS, NIL, Builtin, Call, Float, Int, Struct, Unify, Var

DIGEST_ALGORITHM = "sha256"

_BINARY_OPERATORS = {"+", "-", "*"}


def format_term(term) -> str:
    if isinstance(term, (Var, Int, Float)):
        return str(term)
    if term.functor == NIL and not term.args:
        return "[]"
    if term.functor == CONS and term.arity == 2:
        return _format_list(term)
    if not term.args:
        return term.functor
    return f"{term.functor}({', '.join(format_term(a) for a in term.args)})"


def _format_list(term) -> str:
    items = []
    while isinstance(term, Struct) and term.functor == CONS and term.arity == 2:
        items.append(format_term(term.args[0]))
        term = term.args[1]
    if isinstance(term, Struct) and term.functor == NIL and not term.args:
        return f"[{', '.join(items)}]"
    return f"[{', '.join(items)}|{format_term(term)}]"


def format_expression(expr) -> str:
    """算术表达式；嵌套的运算一律加括号"""
    if isinstance(expr, Struct) and expr.functor in _BINARY_OPERATORS and expr.arity == 2:
        left, right = (_operand(a) for a in expr.args)
        return f"{left} {expr.functor} {right}"
    if isinstance(expr, Struct) and expr.functor == "-" and expr.arity == 1:
        return f"-{_operand(expr.args[0])}"
    return format_term(expr)


def _operand(expr) -> str:
    if isinstance(expr, Struct) and expr.functor in _BINARY_OPERATORS and expr.arity in (1, 2):
        return f"({format_expression(expr)})"
    if isinstance(expr, (Int, Float)) and expr.value < 0:
        return f"({format_term(expr)})"
    return format_expression(expr)


def format_literal(literal) -> str:
    if isinstance(literal, Call):
        return format_term(Struct(literal.predicate, literal.args))
    if isinstance(literal, Unify):
        return f"{format_term(literal.left)} = {format_term(literal.right)}"
    if isinstance(literal, Builtin) and literal.name == "is":
        result, expr = literal.args
        return f"{format_term(result)} is {format_expression(expr)}"
    return format_term(Struct(literal.name, literal.args))


def format_rule(rule) -> str:
    head = format_literal(rule.head)
    if not rule.body:
        return f"{head}."
    return f"{head} :- {', '.join(format_literal(l) for l in rule.body)}."


def serialize(program) -> str:
    """
    规范序列化程序

    Args:
        program: Program

    Returns:
        str: 每条规则一行，以 \n 结尾；空程序为空串
    """
    return "".join(f"{format_rule(rule)}\n" for rule in program.all_rules())


def compute_digest(program) -> str:
    return hashlib.new(DIGEST_ALGORITHM, serialize(program).encode("utf-8")).hexdigest()
