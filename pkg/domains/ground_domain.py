# -*- coding: utf-8 -*-
"""
基础性（groundness）域 ground-v1：⊥ ⊑ ground ⊑ any
"""

from enum import Enum
from itertools import product

from domains.base import ChainDomain, struct_variables


class Groundness(Enum):
    BOTTOM = "bot"
    GROUND = "ground"
    ANY = "any"


def _build_signature_table():
    table = {}
    levels = (Groundness.GROUND, Groundness.ANY)
    for op in ("+/2", "-/2", "*/2"):
        for operands in product(levels, repeat=2):
            ground = all(v is Groundness.GROUND for v in operands)
            table[(op, operands)] = Groundness.GROUND if ground else Groundness.ANY
    for operand in levels:
        table[("-/1", (operand,))] = operand
    return table


class GroundnessDomain(ChainDomain):
    domain_id = "ground-v1"
    chain = (Groundness.BOTTOM, Groundness.GROUND, Groundness.ANY)
    signature_table = _build_signature_table()

    def constant_value(self, constant):
        return Groundness.GROUND

    def _add_binding(self, name, term, cp):
        names = struct_variables(term)
        updates = {}
        if all(cp.value(v) is Groundness.GROUND for v in names):
            updates[name] = Groundness.GROUND
        if cp.value(name) is Groundness.GROUND or updates:
            # X 已是基项，则 t 中所有变量都是基项
            for v in names:
                updates[v] = Groundness.GROUND
        if not updates:
            return cp
        updates = {v: self.glb_value(cp.value(v), g) for v, g in updates.items()}
        return self._refine(cp, updates)
