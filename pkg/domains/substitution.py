# -*- coding: utf-8 -*-
"""
抽象替换：变量到格值的有限映射，另用 failed 标志表示 ⊥ 替换
"""

from typing import Dict, Iterable, Tuple


class AbstractSubstitution:
    """
    抽象替换（CP / AP）

    Args:
        scope: 有序变量序列
        values: 与 scope 对齐的格值序列
        failed: 是否为 ⊥ 替换（此时 values 为空）
    """

    __slots__ = ("scope", "values", "failed", "_index")

    def __init__(self, scope: Iterable[str], values: Iterable = (), failed: bool = False):
        scope = tuple(scope)
        values = () if failed else tuple(values)
        if not failed and len(values) != len(scope):
            raise ValueError(f"作用域与取值长度不一致: {scope} / {values}")
        if len(set(scope)) != len(scope):
            raise ValueError(f"作用域中有重复变量: {scope}")
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "failed", failed)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(scope)})

    def __setattr__(self, name, value):
        raise AttributeError("AbstractSubstitution 不可变")

    @classmethod
    def bottom(cls, scope: Iterable[str] = ()) -> "AbstractSubstitution":
        return cls(scope, failed=True)

    def value(self, name: str):
        assert not self.failed, "⊥ 替换没有取值"
        return self.values[self._index[name]]

    def covers(self, names: Iterable[str]) -> bool:
        return all(name in self._index for name in names)

    def as_dict(self) -> Dict[str, object]:
        return dict(zip(self.scope, self.values))

    def with_values(self, updates: Dict[str, object]) -> "AbstractSubstitution":
        mapping = self.as_dict()
        mapping.update(updates)
        return AbstractSubstitution(self.scope, (mapping[n] for n in self.scope))

    def renamed(self, renaming) -> "AbstractSubstitution":
        """按重命名映射变量名，取值不变"""
        scope = tuple(renaming(name) for name in self.scope)
        if self.failed:
            return AbstractSubstitution.bottom(scope)
        return AbstractSubstitution(scope, self.values)

    def tuple_form(self) -> str:
        """⟨t1..tn⟩ 的文本形式，例如 (int,term)；⊥ 写作 bot"""
        if self.failed:
            return "bot"
        return "(" + ",".join(v.value for v in self.values) + ")"

    def _key(self):
        if self.failed:
            return (True,)
        return (False, frozenset(zip(self.scope, self.values)))

    def __eq__(self, other):
        if not isinstance(other, AbstractSubstitution):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.failed:
            return "⊥"
        body = ", ".join(f"{n}/{v.value}" for n, v in zip(self.scope, self.values))
        return "{" + body + "}"


def canonical_variables(arity: int) -> Tuple[str, ...]:
    """规范变量 v1..vn"""
    return tuple(f"v{i}" for i in range(1, arity + 1))
