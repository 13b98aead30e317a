# -*- coding: utf-8 -*-
"""
运行配置：从环境变量（.env）读取默认值
"""

import os
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent


def default_domain() -> str:
    return os.getenv("ACC_KIT_DOMAIN", "types-v1")


def default_strategy() -> str:
    return os.getenv("ACC_KIT_STRATEGY", "textual-fifo")


def default_corpus() -> Path:
    return Path(os.getenv("ACC_KIT_CORPUS", PROJECT_ROOT / "corpus"))


def default_jobs() -> int:
    try:
        return max(1, int(os.getenv("ACC_KIT_JOBS", "1")))
    except ValueError:
        return 1
