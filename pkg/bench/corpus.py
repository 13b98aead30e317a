# -*- coding: utf-8 -*-
"""
基准语料库管理

语料目录中每个程序 <name>.pl 配一个同名 JSON 侧车文件，
给出各抽象域下的入口模式与安全策略文件。
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from certify.policy import SafetyPolicy, empty_policy
from config.logging import bench_logger
from config.settings import default_corpus
from domains.registry import get_domain
from package.codec import read_policy
from program.canonical import CallKey, parse_call_pattern
from program.normalize import normalize
from program.parser import parse
from program.terms import Program

logger = bench_logger


@dataclass
class CorpusProgram:
    """语料中的一个程序"""

    name: str
    path: Path
    description: str = ""
    recursive: bool = False
    domains: Dict[str, dict] = field(default_factory=dict)

    @property
    def source(self) -> str:
        return self.path.read_text(encoding="utf-8")

    def source_bytes(self) -> int:
        return len(self.path.read_bytes())

    def load(self) -> Program:
        """解析并规范化"""
        return normalize(parse(self.source))

    def supports(self, domain_id: str) -> bool:
        return domain_id in self.domains

    def entries(self, domain) -> List[CallKey]:
        domain = get_domain(domain)
        texts = self.domains.get(domain.domain_id, {}).get("entries", [])
        return [parse_call_pattern(text, domain) for text in texts]

    def policy(self, domain) -> SafetyPolicy:
        domain = get_domain(domain)
        name = self.domains.get(domain.domain_id, {}).get("policy")
        if not name:
            return empty_policy(domain)
        return read_policy(self.path.parent / name)


class CorpusLibrary:
    """语料库"""

    def __init__(self, corpus_dir=None):
        """
        初始化语料库

        Args:
            corpus_dir: 语料目录，默认取 ACC_KIT_CORPUS 或项目内的 corpus/
        """
        if corpus_dir is None:
            corpus_dir = default_corpus()
        self.corpus_dir = Path(corpus_dir)
        if not self.corpus_dir.is_dir():
            raise FileNotFoundError(f"语料目录不存在: {self.corpus_dir}")

        self.programs: Dict[str, CorpusProgram] = {}
        for sidecar in sorted(self.corpus_dir.glob("*.json")):
            with open(sidecar, "r", encoding="utf-8") as f:
                config = json.load(f)
            name = config.get("name", sidecar.stem)
            source = self.corpus_dir / config.get("source", f"{sidecar.stem}.pl")
            if not source.exists():
                logger.warning(f"侧车文件 {sidecar.name} 指向的程序不存在: {source.name}")
                continue
            self.programs[name] = CorpusProgram(
                name=name,
                path=source,
                description=config.get("description", ""),
                recursive=bool(config.get("recursive", False)),
                domains=config.get("domains", {}),
            )
        logger.debug(f"语料库加载完成: {list(self.programs)}")

    def names(self) -> List[str]:
        return sorted(self.programs)

    def get(self, name: str) -> Optional[CorpusProgram]:
        return self.programs.get(name)

    def __iter__(self):
        for name in self.names():
            yield self.programs[name]

    def __len__(self):
        return len(self.programs)
