# -*- coding: utf-8 -*-
"""
抽象域接口

分析器只通过这里的五个操作（arestrict、aextend、aadd、aconj、alub）
以及序关系 leq 访问抽象域。ChainDomain 为全序格（链）提供通用实现。
"""

from abc import ABC, abstractmethod
from typing import Dict, Iterable, Sequence, Tuple

from domains.substitution import AbstractSubstitution
from program.terms import Builtin, Float, Int, Struct, Unify, Var, literal_variables, term_variables
from utils.errors import AnalysisError


class AbstractDomain(ABC):
    """
    抽象域 D_α

    子类需要给出 domain_id 与内建签名表 signature_table
    """

    domain_id: str = ""
    signature_table: Dict[Tuple[str, Tuple], object] = {}

    @abstractmethod
    def arestrict(self, cp: AbstractSubstitution, variables: Sequence[str]) -> AbstractSubstitution:
        """把抽象替换限制到变量集合 V 上"""

    @abstractmethod
    def aextend(self, cp: AbstractSubstitution, variables: Sequence[str]) -> AbstractSubstitution:
        """把抽象替换扩展到变量集合 V 上，新变量取顶元"""

    @abstractmethod
    def aadd(self, constraint, cp: AbstractSubstitution) -> AbstractSubstitution:
        """把约束加入当前描述"""

    @abstractmethod
    def aconj(self, left: AbstractSubstitution, right: AbstractSubstitution) -> AbstractSubstitution:
        """抽象合取"""

    @abstractmethod
    def alub(self, left: AbstractSubstitution, right: AbstractSubstitution) -> AbstractSubstitution:
        """抽象析取（最小上界）"""

    @abstractmethod
    def leq(self, left: AbstractSubstitution, right: AbstractSubstitution) -> bool:
        """偏序 ⊑"""


class ChainDomain(AbstractDomain):
    """
    全序格上的抽象域

    chain 从 ⊥ 开始按 ⊑ 递增排列；取值为 Enum 成员，value 为其文本名
    """

    chain: Tuple = ()

    def __init__(self):
        self._rank = {value: i for i, value in enumerate(self.chain)}
        self._by_name = {value.value: value for value in self.chain}

    # ---- 格值运算 ----

    @property
    def bottom(self):
        return self.chain[0]

    @property
    def top(self):
        return self.chain[-1]

    @property
    def values(self) -> Tuple:
        """除 ⊥ 以外的全部格值"""
        return self.chain[1:]

    def leq_value(self, a, b) -> bool:
        return self._rank[a] <= self._rank[b]

    def lub_value(self, a, b):
        return a if self._rank[a] >= self._rank[b] else b

    def glb_value(self, a, b):
        return a if self._rank[a] <= self._rank[b] else b

    def parse_value(self, text: str):
        try:
            return self._by_name[text]
        except KeyError:
            raise ValueError(f"{self.domain_id} 中没有格值 {text!r}") from None

    def parse_tuple(self, text: str, scope: Sequence[str]) -> AbstractSubstitution:
        """解析 (v1,...,vn) 或 bot"""
        text = text.strip()
        if text == "bot":
            return AbstractSubstitution.bottom(scope)
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"非法的元组: {text!r}")
        inner = text[1:-1].strip()
        names = [part.strip() for part in inner.split(",")] if inner else []
        if len(names) != len(scope):
            raise ValueError(f"元组长度 {len(names)} 与元数 {len(scope)} 不符")
        values = [self.parse_value(name) for name in names]
        if self.bottom in values:
            raise ValueError("元组中不能出现 bot")
        return AbstractSubstitution(scope, values)

    # ---- 抽象替换 ----

    def make(self, scope: Sequence[str], values: Iterable) -> AbstractSubstitution:
        """构造替换；任一变量取 ⊥ 时整体为 ⊥"""
        values = tuple(values)
        if self.bottom in values:
            return AbstractSubstitution.bottom(scope)
        return AbstractSubstitution(scope, values)

    def top_substitution(self, scope: Sequence[str]) -> AbstractSubstitution:
        return AbstractSubstitution(scope, (self.top,) * len(tuple(scope)))

    def arestrict(self, cp, variables):
        variables = tuple(variables)
        if cp.failed:
            return AbstractSubstitution.bottom(variables)
        assert cp.covers(variables), f"限制的变量 {variables} 不在作用域 {cp.scope} 内"
        return AbstractSubstitution(variables, (cp.value(v) for v in variables))

    def aextend(self, cp, variables):
        variables = tuple(variables)
        if cp.failed:
            return AbstractSubstitution.bottom(variables)
        assert set(cp.scope) <= set(variables), f"扩展目标 {variables} 未覆盖 {cp.scope}"
        current = cp.as_dict()
        return AbstractSubstitution(variables, (current.get(v, self.top) for v in variables))

    def aconj(self, left, right):
        if left.failed or right.failed:
            return AbstractSubstitution.bottom(left.scope)
        assert set(left.scope) == set(right.scope), "aconj 要求作用域相同"
        other = right.as_dict()
        return self.make(left.scope, (self.glb_value(v, other[n]) for n, v in zip(left.scope, left.values)))

    def alub(self, left, right):
        if left.failed:
            return right
        if right.failed:
            return left
        assert set(left.scope) == set(right.scope), "alub 要求作用域相同"
        other = right.as_dict()
        return AbstractSubstitution(
            left.scope, (self.lub_value(v, other[n]) for n, v in zip(left.scope, left.values))
        )

    def leq(self, left, right):
        if left.failed:
            return True
        if right.failed:
            return False
        assert set(left.scope) == set(right.scope), "leq 要求作用域相同"
        other = right.as_dict()
        return all(self.leq_value(v, other[n]) for n, v in zip(left.scope, left.values))

    def aadd(self, constraint, cp):
        if isinstance(constraint, Builtin):
            if constraint.name != "is" or constraint.arity != 2:
                raise AnalysisError(AnalysisError.UNKNOWN_BUILTIN, f"{constraint.name}/{constraint.arity}")
        elif not isinstance(constraint, Unify):
            raise TypeError(f"aadd 只接受约束文字: {constraint!r}")
        if cp.failed:
            return cp
        assert cp.covers(literal_variables(constraint)), "约束变量不在作用域内"
        if isinstance(constraint, Builtin):
            return self._add_is(constraint.args[0], constraint.args[1], cp)
        left, right = constraint.left, constraint.right
        assert isinstance(left, Var), "规范化后合一约束左侧必须是变量"
        if isinstance(right, Var):
            meet = self.glb_value(cp.value(left.name), cp.value(right.name))
            return self._refine(cp, {left.name: meet, right.name: meet})
        return self._add_binding(left.name, right, cp)

    def _refine(self, cp, updates: Dict[str, object]) -> AbstractSubstitution:
        if self.bottom in updates.values():
            return AbstractSubstitution.bottom(cp.scope)
        return cp.with_values(updates)

    def _add_is(self, result, expr, cp):
        assert isinstance(result, Var), "规范化后 is 的结果必须是变量"
        value = self.evaluate(expr, cp)
        return self._refine(cp, {result.name: self.glb_value(cp.value(result.name), value)})

    def evaluate(self, expr, cp):
        """按签名表求算术表达式的抽象值"""
        if isinstance(expr, Var):
            return cp.value(expr.name)
        if isinstance(expr, (Int, Float)):
            return self.constant_value(expr)
        if isinstance(expr, Struct):
            args = tuple(self.evaluate(a, cp) for a in expr.args)
            try:
                return self.signature_table[(f"{expr.functor}/{expr.arity}", args)]
            except KeyError:
                raise AnalysisError(AnalysisError.UNKNOWN_BUILTIN, f"{expr.functor}/{expr.arity}") from None
        raise TypeError(f"无法求值: {expr!r}")

    @abstractmethod
    def constant_value(self, constant):
        """数值常量的抽象值"""

    @abstractmethod
    def _add_binding(self, name: str, term, cp) -> AbstractSubstitution:
        """处理 X = t（t 不是变量）"""


def struct_variables(term) -> Tuple[str, ...]:
    return tuple(term_variables(term))
