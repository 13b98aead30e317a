# -*- coding: utf-8 -*-
"""
证书 (.acert) 与安全策略 (.apol) 的文本编解码

每行一个字段或条目，字段之间用制表符分隔，条目按规范键排序，
相同的值总是编码为相同的字节。
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from certify.certificate import KINDS, Certificate
from certify.policy import SafetyPolicy
from config.logging import package_logger
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution, canonical_variables
from program.canonical import CallKey
from utils.errors import FormatError

logger = package_logger


CERTIFICATE_MAGIC = "%acert"
POLICY_MAGIC = "%apol"
FORMAT_VERSION = "1"

_PREDICATE = re.compile(r"[a-z][A-Za-z0-9_]*")
_HEX = re.compile(r"[0-9a-f]+")


def _key_fields(key: CallKey) -> List[str]:
    return [key.predicate, str(key.arity), key.cp_form()]


def _entry_line(tag: str, key: CallKey, answer: AbstractSubstitution) -> str:
    return "\t".join([tag] + _key_fields(key) + [answer.tuple_form()])


def encode(certificate: Certificate) -> bytes:
    """证书编码为 .acert 字节"""
    lines = [
        f"{CERTIFICATE_MAGIC} {FORMAT_VERSION}",
        f"kind\t{certificate.kind}",
        f"domain\t{certificate.domain_id}",
        f"strategy\t{certificate.strategy_id}",
        f"digest\t{certificate.algorithm}\t{certificate.digest}",
    ]
    lines.extend("\t".join(["entry"] + _key_fields(key)) for key in certificate.entry_points)
    lines.append(f"entries\t{len(certificate.entries)}")
    lines.extend(_entry_line("answer", key, answer) for key, answer in certificate.entries)
    return ("\n".join(lines) + "\n").encode("utf-8")


def encode_policy(policy: SafetyPolicy) -> bytes:
    """安全策略编码为 .apol 字节"""
    lines = [
        f"{POLICY_MAGIC} {FORMAT_VERSION}",
        f"domain\t{policy.domain_id}",
        f"entries\t{len(policy.entries)}",
    ]
    lines.extend(_entry_line("policy", key, answer) for key, answer in policy.entries)
    return ("\n".join(lines) + "\n").encode("utf-8")


class _LineReader:
    """按行读取，读完时报 truncation，字段不符时报 malformed"""

    def __init__(self, data: bytes, magic: str):
        if not data:
            raise FormatError("truncation", "empty input")
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError("malformed", f"not UTF-8: {e}") from None
        if not text.endswith("\n"):
            raise FormatError("truncation", "missing final newline")
        self._lines = text[:-1].split("\n")
        self._index = 0

        header = self.next_line()
        if not header.startswith(magic):
            raise FormatError("malformed", f"expected {magic} header")
        version = header[len(magic):].strip()
        if version != FORMAT_VERSION:
            raise FormatError("version", f"unsupported version {version!r}")

    def next_line(self) -> str:
        if self._index >= len(self._lines):
            raise FormatError("truncation", f"unexpected end after line {self._index}")
        line = self._lines[self._index]
        self._index += 1
        return line

    def peek_tag(self) -> Optional[str]:
        if self._index >= len(self._lines):
            return None
        return self._lines[self._index].split("\t", 1)[0]

    def fields(self, tag: str, count: int) -> List[str]:
        line = self.next_line()
        parts = line.split("\t")
        if parts[0] != tag or len(parts) != count + 1:
            raise FormatError("malformed", f"line {self._index}: expected {tag!r} with {count} fields")
        return parts[1:]

    def count(self) -> int:
        (text,) = self.fields("entries", 1)
        if not text.isdigit():
            raise FormatError("malformed", f"line {self._index}: bad entry count {text!r}")
        return int(text)

    def finish(self):
        if self._index != len(self._lines):
            raise FormatError("malformed", f"trailing data at line {self._index + 1}")


def _parse_key(domain, predicate: str, arity_text: str, cp_text: str) -> CallKey:
    if not _PREDICATE.fullmatch(predicate) or not arity_text.isdigit():
        raise FormatError("malformed", f"bad key {predicate}/{arity_text}")
    arity = int(arity_text)
    try:
        cp = domain.parse_tuple(cp_text, canonical_variables(arity))
    except ValueError as e:
        raise FormatError("malformed", str(e)) from None
    if cp.failed:
        raise FormatError("malformed", f"call pattern of {predicate}/{arity} is bot")
    return CallKey(predicate, arity, cp.values)


def _parse_answer(domain, key: CallKey, text: str) -> AbstractSubstitution:
    try:
        return domain.parse_tuple(text, key.variables)
    except ValueError as e:
        raise FormatError("malformed", str(e)) from None


def _read_entries(reader: _LineReader, domain, tag: str) -> Tuple[Tuple[CallKey, AbstractSubstitution], ...]:
    entries = {}
    for _ in range(reader.count()):
        predicate, arity, cp, ap = reader.fields(tag, 4)
        key = _parse_key(domain, predicate, arity, cp)
        if key in entries:
            raise FormatError("malformed", f"duplicate entry {key.display()}")
        entries[key] = _parse_answer(domain, key, ap)
    return tuple(entries.items())


def decode(data: bytes) -> Certificate:
    """
    解码 .acert 字节

    Raises:
        FormatError: version、truncation 或 malformed
        UnknownDomain: 证书中的抽象域未注册
    """
    reader = _LineReader(data, CERTIFICATE_MAGIC)
    (kind,) = reader.fields("kind", 1)
    if kind not in KINDS:
        raise FormatError("malformed", f"unknown kind {kind!r}")
    (domain_id,) = reader.fields("domain", 1)
    domain = get_domain(domain_id)
    (strategy_id,) = reader.fields("strategy", 1)
    algorithm, digest = reader.fields("digest", 2)
    if not _HEX.fullmatch(digest):
        raise FormatError("malformed", "digest is not lowercase hex")

    entry_points = []
    while reader.peek_tag() == "entry":
        entry_points.append(_parse_key(domain, *reader.fields("entry", 3)))
    entries = _read_entries(reader, domain, "answer")
    reader.finish()
    return Certificate(kind, domain_id, strategy_id, digest, tuple(entry_points), entries, algorithm)


def decode_policy(data: bytes) -> SafetyPolicy:
    """
    解码 .apol 字节

    Raises:
        FormatError: version、truncation 或 malformed
    """
    reader = _LineReader(data, POLICY_MAGIC)
    (domain_id,) = reader.fields("domain", 1)
    domain = get_domain(domain_id)
    entries = _read_entries(reader, domain, "policy")
    reader.finish()
    return SafetyPolicy(domain_id, entries)


@dataclass(frozen=True)
class SizeReport:
    bytes: int
    entries: int


def measure(certificate: Certificate) -> SizeReport:
    return SizeReport(len(encode(certificate)), len(certificate))


def entry_ratio(full: SizeReport, reduced: SizeReport) -> Union[float, str]:
    """条目数之比 F/R；约简证书为空时返回 "empty" """
    if reduced.entries == 0:
        return "empty"
    return full.entries / reduced.entries


def byte_ratio(full: SizeReport, reduced: SizeReport) -> float:
    """字节数之比 F/R"""
    return full.bytes / reduced.bytes


def source_ratio(report: SizeReport, source_bytes: int) -> float:
    """证书字节数与源程序字节数之比 R/S"""
    if source_bytes == 0:
        return 0.0
    return report.bytes / source_bytes


def read_policy(path) -> SafetyPolicy:
    with open(path, "rb") as f:
        policy = decode_policy(f.read())
    logger.debug(f"读取策略 {path}: {len(policy)} 个条目")
    return policy
