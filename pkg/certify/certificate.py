# -*- coding: utf-8 -*-
"""
证书：完整证书 FCert 是分析得到的整张答案表，
约简证书 RCert 只保留 RED 中调用模式对应的条目。
"""

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Tuple

from domains.substitution import AbstractSubstitution
from engine.tables import AnswerTable
from program.canonical import CallKey, sort_keys
from program.serialize import DIGEST_ALGORITHM

FULL = "full"
REDUCED = "reduced"
KINDS = (FULL, REDUCED)

Entry = Tuple[CallKey, AbstractSubstitution]


def sort_entries(entries: Iterable[Entry]) -> Tuple[Entry, ...]:
    entries = dict(entries)
    return tuple((key, entries[key]) for key in sort_keys(entries))


@dataclass(frozen=True)
class Certificate:
    """
    证书

    Args:
        kind: full 或 reduced
        domain_id: 抽象域标识
        strategy_id: 生成证书时使用的队列策略
        digest: 程序源摘要（十六进制）
        entry_points: 入口模式 Sα
        entries: 答案条目 A:CP ↦ AP，按规范键排序
        algorithm: 摘要算法名
    """

    kind: str
    domain_id: str
    strategy_id: str
    digest: str
    entry_points: Tuple[CallKey, ...] = ()
    entries: Tuple[Entry, ...] = ()
    algorithm: str = DIGEST_ALGORITHM

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"未知的证书类型: {self.kind}")
        object.__setattr__(self, "entry_points", tuple(sort_keys(set(self.entry_points))))
        object.__setattr__(self, "entries", sort_entries(self.entries))

    def get(self, key: CallKey) -> Optional[AbstractSubstitution]:
        for entry_key, answer in self.entries:
            if entry_key == key:
                return answer
        return None

    def keys(self):
        return [key for key, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return any(entry_key == key for entry_key, _ in self.entries)

    def as_table(self) -> AnswerTable:
        return AnswerTable(dict(self.entries))

    def with_entries(self, entries: Iterable[Entry]) -> "Certificate":
        return replace(self, entries=tuple(entries))


def make_certificate(kind: str, table: AnswerTable, domain_id: str, strategy_id: str,
                     digest: str, entry_points: Iterable[CallKey],
                     keys: Optional[Iterable[CallKey]] = None) -> Certificate:
    """
    从答案表构造证书

    Args:
        keys: 只保留这些调用模式（约简证书传入 RED）；None 表示整张表
    """
    if keys is None:
        entries = table.items()
    else:
        keys = set(keys)
        entries = [(key, answer) for key, answer in table.items() if key in keys]
    return Certificate(kind, domain_id, strategy_id, digest, tuple(entry_points), tuple(entries))
