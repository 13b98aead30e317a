# -*- coding: utf-8 -*-
"""
队列处理策略 Ω 及其注册表

策略定义放在 config/strategies.json 中，每个策略给出规则入队顺序
和事件类别到优先等级的映射；等级越小越先出队，同级按插入顺序。
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List

from config.logging import engine_logger
from utils.errors import UnknownStrategy

logger = engine_logger

RANK_CLASSES = ("newcall", "arc", "relaunch", "updated", "redundant_updated")


@dataclass(frozen=True)
class QueueStrategy:
    """
    队列处理策略

    Args:
        strategy_id: 稳定的策略标识
        description: 说明
        rule_order: textual 或 reverse
        ranks: 事件类别到等级的映射
    """

    strategy_id: str
    description: str = ""
    rule_order: str = "textual"
    ranks: Dict[str, int] = field(default_factory=dict)

    def rank(self, event) -> int:
        return self.ranks[event.rank_class]

    def order_rules(self, rules):
        if self.rule_order == "reverse":
            return tuple(reversed(rules))
        return tuple(rules)


class StrategyLibrary:
    """策略库"""

    def __init__(self, config_path=None):
        """
        初始化策略库

        Args:
            config_path: 配置文件路径，默认使用项目内的config/strategies.json
        """
        if config_path is None:
            current_dir = Path(__file__).parent.parent
            config_path = current_dir / "config" / "strategies.json"

        with open(config_path, "r", encoding="utf-8") as f:
            self.config = json.load(f)

        self._strategies: Dict[str, QueueStrategy] = {}
        self._reserved = set()
        for item in self.config.get("strategies", []):
            if not item.get("enabled", True):
                self._reserved.add(item["id"])
                continue
            ranks = dict(item["ranks"])
            missing = [c for c in RANK_CLASSES if c not in ranks]
            if missing:
                raise ValueError(f"策略 {item['id']} 缺少事件类别等级: {missing}")
            if item.get("rule_order", "textual") not in ("textual", "reverse"):
                raise ValueError(f"策略 {item['id']} 的 rule_order 非法")
            self._strategies[item["id"]] = QueueStrategy(
                strategy_id=item["id"],
                description=item.get("description", ""),
                rule_order=item.get("rule_order", "textual"),
                ranks=ranks,
            )
        logger.debug(f"策略库初始化完成: {list(self._strategies)}")

    def get(self, strategy_id) -> QueueStrategy:
        """
        根据标识获取策略

        Args:
            strategy_id: 策略标识；传入 QueueStrategy 时原样返回

        Returns:
            QueueStrategy: 策略

        Raises:
            UnknownStrategy: 未注册或保留未启用
        """
        if isinstance(strategy_id, QueueStrategy):
            return strategy_id
        if strategy_id in self._strategies:
            return self._strategies[strategy_id]
        raise UnknownStrategy(strategy_id, reserved=strategy_id in self._reserved)

    def strategy_ids(self) -> List[str]:
        return list(self._strategies)


_default_library = None


def default_library() -> StrategyLibrary:
    global _default_library
    if _default_library is None:
        _default_library = StrategyLibrary()
    return _default_library


def get_strategy(strategy_id) -> QueueStrategy:
    return default_library().get(strategy_id)


def registered_strategies() -> List[str]:
    return default_library().strategy_ids()
