# -*- coding: utf-8 -*-
"""
事件与优先事件队列

事件有三种：newcall、arc、updated。队列按 (策略给出的等级, 插入序号) 出队，
同一去重键的事件在队列中至多一个。
"""

import heapq
import itertools
from dataclasses import dataclass

from engine.tables import DependencyArc
from program.canonical import CallKey


@dataclass(frozen=True)
class NewCall:
    key: CallKey

    rank_class = "newcall"

    @property
    def dedup_key(self):
        return ("newcall", self.key)


@dataclass(frozen=True)
class ArcEvent:
    arc: DependencyArc
    relaunch: bool = False

    @property
    def rank_class(self):
        return "relaunch" if self.relaunch else "arc"

    @property
    def dedup_key(self):
        return ("arc", self.arc.slot)


@dataclass(frozen=True)
class Updated:
    key: CallKey
    redundant: bool = False

    @property
    def rank_class(self):
        return "redundant_updated" if self.redundant else "updated"

    @property
    def dedup_key(self):
        return ("updated", self.key)


class EventQueue:
    """
    基于 heapq 的事件队列

    - arc 事件：新加入的替换队列中的旧事件（重新计算等级与序号）
    - 重新激活的弧：槽位上已有排队的弧时被吸收，排队的弧出队时读取最新答案
    - newcall / updated 事件：队列中已有同键事件时吸收新事件
    """

    _REMOVED = None

    def __init__(self, strategy):
        self._strategy = strategy
        self._heap = []
        self._live = {}
        self._counter = itertools.count()

    def push(self, event) -> bool:
        """
        加入事件

        Returns:
            bool: 事件是否进入队列（被吸收时为 False）
        """
        key = event.dedup_key
        existing = self._live.get(key)
        if existing is not None:
            if not isinstance(event, ArcEvent) or event.relaunch:
                return False
            existing[-1] = self._REMOVED
        entry = [self._strategy.rank(event), next(self._counter), event]
        self._live[key] = entry
        heapq.heappush(self._heap, entry)
        return True

    def pop(self):
        while self._heap:
            rank, seq, event = heapq.heappop(self._heap)
            if event is not self._REMOVED:
                del self._live[event.dedup_key]
                return event
        raise IndexError("事件队列为空")

    def __len__(self):
        return len(self._live)

    def __bool__(self):
        return bool(self._live)
