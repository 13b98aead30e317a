# -*- coding: utf-8 -*-
"""
答案表 AT 与依赖弧表 DAT

两张表都是替换语义：同一个键至多一条记录。
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from domains.substitution import AbstractSubstitution
from program.canonical import CallKey, sort_keys
from program.serialize import format_literal


class AnswerTable:
    """规范调用模式到答案模式的映射"""

    def __init__(self, entries=None):
        self._entries: Dict[CallKey, AbstractSubstitution] = dict(entries or {})
        self._versions: Dict[CallKey, int] = {}

    def get(self, key: CallKey) -> Optional[AbstractSubstitution]:
        return self._entries.get(key)

    def put(self, key: CallKey, answer: AbstractSubstitution):
        self._entries[key] = answer
        self._versions[key] = self._versions.get(key, 0) + 1

    def version(self, key: CallKey) -> int:
        """key 的答案被写入的次数，未写入为 0"""
        return self._versions.get(key, 0)

    def __contains__(self, key):
        return key in self._entries

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, AnswerTable):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"AnswerTable({len(self)} entries)"

    def keys(self) -> List[CallKey]:
        return sort_keys(self._entries)

    def items(self) -> List[Tuple[CallKey, AbstractSubstitution]]:
        return [(key, self._entries[key]) for key in self.keys()]

    def as_dict(self) -> Dict[CallKey, AbstractSubstitution]:
        return dict(self._entries)

    def dump(self) -> List[str]:
        """按规范键排序的文本转储"""
        return [f"{key.display()} -> {answer.tuple_form()}" for key, answer in self.items()]


Slot = Tuple[CallKey, int, int]


def slot_sort_key(slot: Slot):
    head_key, rule_index, position = slot
    return (head_key.sort_key(), rule_index, position)


@dataclass(frozen=True)
class DependencyArc:
    """
    依赖弧 H_k:CP0 ⇒ [CP1] B_k,i:CP2

    Args:
        head_key: 头部调用模式 H:CP0 的规范键
        rule_index: 规则序号 k
        position: 体文字位置 i（从 1 开始）
        point: 程序点替换 CP1（作用域为规则全部变量）
        callee: 体文字 B_k,i
        callee_cp: 调用替换 CP2
        u: 遍历计数
        seen: 弧最近一次遍历时读到的被调用者答案版本
    """

    head_key: CallKey
    rule_index: int
    position: int
    point: AbstractSubstitution
    callee: object
    callee_cp: AbstractSubstitution
    u: int = 0
    seen: int = field(default=0, compare=False)

    @property
    def slot(self) -> Slot:
        return (self.head_key, self.rule_index, self.position)

    def display(self) -> str:
        return (
            f"{self.head_key.display()} rule {self.rule_index} pos {self.position}"
            f" => {format_literal(self.callee)} {self.callee_cp.tuple_form()} u={self.u}"
        )


class DependencyArcTable:
    """依赖弧表，按 (规则序号, 位置, 头部调用模式) 存放，并按被调用键建索引"""

    def __init__(self):
        self._arcs: Dict[Slot, DependencyArc] = {}
        self._callee_of: Dict[Slot, CallKey] = {}
        self._by_callee: Dict[CallKey, Set[Slot]] = {}

    def get(self, slot: Slot) -> Optional[DependencyArc]:
        return self._arcs.get(slot)

    def store(self, arc: DependencyArc, callee_key: CallKey):
        """存入弧，替换同一槽位上的旧弧；遍历计数不得减少"""
        slot = arc.slot
        previous = self._arcs.get(slot)
        assert previous is None or arc.u >= previous.u, "遍历计数 u 不能减少"
        old_callee = self._callee_of.get(slot)
        if old_callee is not None and old_callee != callee_key:
            self._by_callee[old_callee].discard(slot)
        self._arcs[slot] = arc
        self._callee_of[slot] = callee_key
        self._by_callee.setdefault(callee_key, set()).add(slot)

    def dependents(self, key: CallKey) -> List[DependencyArc]:
        """DAT|_{A:CP}：被调用键为 key 的全部弧"""
        slots = sorted(self._by_callee.get(key, ()), key=slot_sort_key)
        return [self._arcs[slot] for slot in slots]

    def has_dependents(self, key: CallKey) -> bool:
        return bool(self._by_callee.get(key))

    def __len__(self):
        return len(self._arcs)

    def __iter__(self) -> Iterator[DependencyArc]:
        for slot in sorted(self._arcs, key=slot_sort_key):
            yield self._arcs[slot]

    @property
    def max_u(self) -> int:
        return max((arc.u for arc in self._arcs.values()), default=0)

    def dump(self) -> List[str]:
        return [arc.display() for arc in self]
