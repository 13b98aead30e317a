# -*- coding: utf-8 -*-
"""
代码包 .apkg：程序源文本与证书（可选策略）按长度前缀分段拼接

    %apkg 1
    program <len>
    <bytes>
    certificate <len>
    <bytes>
    policy <len>        （可选）
    <bytes>
"""

from dataclasses import dataclass
from typing import Optional

from certify.certificate import Certificate
from certify.policy import SafetyPolicy
from config.logging import package_logger
from package.codec import decode, decode_policy, encode, encode_policy
from utils.errors import FormatError

logger = package_logger

PACKAGE_HEADER = b"%apkg 1\n"
_MAGIC = b"%apkg"
_SECTIONS = ("program", "certificate", "policy")


@dataclass(frozen=True)
class PackageFile:
    program_text: str
    certificate: Certificate
    policy: Optional[SafetyPolicy] = None


def _section(name: str, payload: bytes) -> bytes:
    return f"{name} {len(payload)}\n".encode("ascii") + payload + b"\n"


def encode_package(package: PackageFile) -> bytes:
    parts = [
        PACKAGE_HEADER,
        _section("program", package.program_text.encode("utf-8")),
        _section("certificate", encode(package.certificate)),
    ]
    if package.policy is not None:
        parts.append(_section("policy", encode_policy(package.policy)))
    return b"".join(parts)


def decode_package(data: bytes) -> PackageFile:
    """
    解码 .apkg 字节

    Raises:
        FormatError: version、truncation 或 malformed
    """
    if not data:
        raise FormatError("truncation", "empty package")
    newline = data.find(b"\n")
    if newline < 0:
        raise FormatError("truncation", "missing header line")
    header = data[:newline + 1]
    if not header.startswith(_MAGIC):
        raise FormatError("malformed", "expected %apkg header")
    if header != PACKAGE_HEADER:
        raise FormatError("version", f"unsupported package header {header.strip()!r}")

    sections = {}
    position = newline + 1
    while position < len(data):
        end = data.find(b"\n", position)
        if end < 0:
            raise FormatError("truncation", "incomplete section header")
        try:
            name, length_text = data[position:end].decode("ascii").split(" ")
        except (UnicodeDecodeError, ValueError):
            raise FormatError("malformed", f"bad section header at byte {position}") from None
        if name not in _SECTIONS or not length_text.isdigit():
            raise FormatError("malformed", f"bad section header {name!r}")
        expected = _SECTIONS[len(sections)] if len(sections) < len(_SECTIONS) else None
        if name != expected:
            raise FormatError("malformed", f"unexpected section {name!r}")
        start = end + 1
        stop = start + int(length_text)
        if stop + 1 > len(data):
            raise FormatError("truncation", f"section {name} cut short")
        if data[stop:stop + 1] != b"\n":
            raise FormatError("malformed", f"section {name} not terminated")
        sections[name] = data[start:stop]
        position = stop + 1

    if "certificate" not in sections:
        raise FormatError("truncation", "missing certificate section")
    try:
        program_text = sections["program"].decode("utf-8")
    except UnicodeDecodeError:
        raise FormatError("malformed", "program text is not UTF-8") from None
    policy = decode_policy(sections["policy"]) if "policy" in sections else None
    return PackageFile(program_text, decode(sections["certificate"]), policy)


def write_package(path, package: PackageFile):
    data = encode_package(package)
    with open(path, "wb") as f:
        f.write(data)
    logger.info(f"写入代码包 {path}: {len(data)} 字节")


def read_package(path) -> PackageFile:
    with open(path, "rb") as f:
        return decode_package(f.read())
