# -*- coding: utf-8 -*-
"""
类型域 types-v1：⊥ ⊑ int ⊑ real ⊑ term
"""

from enum import Enum
from itertools import product

from domains.base import ChainDomain
from program.terms import Float, Int, Struct


class TypeValue(Enum):
    BOTTOM = "bot"
    INT = "int"
    REAL = "real"
    TERM = "term"


_ARITHMETIC = ("+/2", "-/2", "*/2")


def _arithmetic_result(operands):
    # 有 term 则 term，否则有 real 则 real
    if TypeValue.TERM in operands:
        return TypeValue.TERM
    if TypeValue.REAL in operands:
        return TypeValue.REAL
    return TypeValue.INT


def _build_signature_table():
    numeric = (TypeValue.INT, TypeValue.REAL, TypeValue.TERM)
    table = {}
    for op in _ARITHMETIC:
        for operands in product(numeric, repeat=2):
            table[(op, operands)] = _arithmetic_result(operands)
    for operand in numeric:
        table[("-/1", (operand,))] = _arithmetic_result((operand,))
    return table


class TypeDomain(ChainDomain):
    """
    类型格上的抽象域

    结构不做递归类型推导：X = f(...) 与 term 取下确界
    """

    domain_id = "types-v1"
    chain = (TypeValue.BOTTOM, TypeValue.INT, TypeValue.REAL, TypeValue.TERM)
    signature_table = _build_signature_table()

    def constant_value(self, constant):
        if isinstance(constant, Int):
            return TypeValue.INT
        if isinstance(constant, Float):
            return TypeValue.REAL
        return TypeValue.TERM

    def _add_binding(self, name, term, cp):
        if isinstance(term, Struct):
            target = TypeValue.TERM
        else:
            target = self.constant_value(term)
        return self._refine(cp, {name: self.glb_value(cp.value(name), target)})
