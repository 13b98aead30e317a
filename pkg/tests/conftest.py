# -*- coding: utf-8 -*-
"""测试公共夹具"""

import logging
from pathlib import Path

import pytest

from bench.corpus import CorpusLibrary
from domains.registry import get_domain
from domains.substitution import canonical_variables
from engine.strategies import registered_strategies
from program.canonical import parse_call_pattern
from program.normalize import normalize
from program.parser import parse

CORPUS_DIR = Path(__file__).parent.parent / "corpus"

QP_SOURCE = """\
q(X) :- p(X).
p(X) :- X = 1.0.
p(X) :- X = 1.
"""

RECTOY_SOURCE = """\
rectoy(N, M) :- N = 0, M = 0.
rectoy(N, M) :- N1 is N - 1, rectoy(N1, R), M is N1 + R.
"""

STRATEGIES = registered_strategies()
DOMAINS = ["types-v1", "ground-v1"]


def load(source: str):
    return normalize(parse(source))


def key(text: str, domain="types-v1"):
    return parse_call_pattern(text, get_domain(domain))


def answer(domain, text: str, arity: int):
    return get_domain(domain).parse_tuple(text, canonical_variables(arity))


@pytest.fixture(scope="session")
def corpus():
    return CorpusLibrary(CORPUS_DIR)


@pytest.fixture
def types():
    return get_domain("types-v1")


@pytest.fixture
def ground():
    return get_domain("ground-v1")


@pytest.fixture
def qp():
    return load(QP_SOURCE)


@pytest.fixture
def rectoy():
    return load(RECTOY_SOURCE)


@pytest.fixture
def log_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ACC_KIT_LOG_DIR", str(tmp_path / "logs"))
    yield tmp_path / "logs"
    for logger in (logging.getLogger(), logging.getLogger("acc.trace")):
        for handler in logger.handlers[:]:
            logger.removeHandler(handler)
            handler.close()
