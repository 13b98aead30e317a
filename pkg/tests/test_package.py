# -*- coding: utf-8 -*-
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from certify.certificate import KINDS, Certificate
from certify.certifier import certifier_f, certifier_r
from certify.policy import SafetyPolicy
from conftest import DOMAINS, STRATEGIES, answer, key
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution, canonical_variables
from package.bundle import PackageFile, decode_package, encode_package, read_package, write_package
from package.codec import (
    byte_ratio,
    decode,
    decode_policy,
    encode,
    encode_policy,
    entry_ratio,
    measure,
    read_policy,
    source_ratio,
)
from program.canonical import CallKey
from utils.errors import FormatError, UnknownDomain

PREDICATES = ["p", "q", "rectoy", "app_end", "x1"]


@st.composite
def call_keys(draw, domain):
    arity = draw(st.integers(min_value=0, max_value=3))
    values = draw(st.lists(st.sampled_from(domain.values), min_size=arity, max_size=arity))
    return CallKey(draw(st.sampled_from(PREDICATES)), arity, tuple(values))


@st.composite
def certificates(draw):
    domain = get_domain(draw(st.sampled_from(DOMAINS)))
    keys = draw(st.lists(call_keys(domain), max_size=6, unique=True))
    entries = []
    for call_key in keys:
        scope = canonical_variables(call_key.arity)
        if draw(st.booleans()):
            values = draw(st.lists(st.sampled_from(domain.values),
                                   min_size=call_key.arity, max_size=call_key.arity))
            entries.append((call_key, AbstractSubstitution(scope, values)))
        else:
            entries.append((call_key, AbstractSubstitution.bottom(scope)))
    entry_points = draw(st.lists(call_keys(domain), max_size=2, unique=True))
    return Certificate(
        kind=draw(st.sampled_from(KINDS)),
        domain_id=domain.domain_id,
        strategy_id=draw(st.sampled_from(STRATEGIES)),
        digest=draw(st.text(alphabet="0123456789abcdef", min_size=1, max_size=64)),
        entry_points=tuple(entry_points),
        entries=tuple(entries),
    )


@settings(max_examples=1000)
@given(certificates())
def test_certificate_codec_round_trip(certificate):
    data = encode(certificate)
    assert decode(data) == certificate
    assert encode(decode(data)) == data


def test_policy_codec_round_trip(types):
    policy = SafetyPolicy("types-v1", (
        (key("q(X):(term)"), answer("types-v1", "(real)", 1)),
        (key("rectoy(N,M):(int,term)"), answer("types-v1", "(int,real)", 2)),
    ))
    data = encode_policy(policy)
    assert data.decode("utf-8").splitlines()[:3] == ["%apol 1", "domain\ttypes-v1", "entries\t2"]
    assert decode_policy(data) == policy


def test_certificate_layout(rectoy):
    certificate = certifier_f(rectoy, "types-v1", [key("rectoy(N,M):(int,term)")], None, "textual-fifo")
    lines = encode(certificate).decode("utf-8").split("\n")
    assert lines == [
        "%acert 1",
        "kind\tfull",
        "domain\ttypes-v1",
        "strategy\ttextual-fifo",
        f"digest\tsha256\t{rectoy.source_digest}",
        "entry\trectoy\t2\t(int,term)",
        "entries\t1",
        "answer\trectoy\t2\t(int,term)\t(int,int)",
        "",
    ]


@pytest.mark.parametrize("domain_id", DOMAINS)
def test_certification_is_byte_stable(corpus, domain_id):
    for entry in corpus:
        entries = entry.entries(domain_id)
        first = encode(certifier_r(entry.load(), domain_id, entries, None, "textual-fifo"))
        second = encode(certifier_r(entry.load(), domain_id, entries, None, "textual-fifo"))
        assert first == second, entry.name


class TestDecodeErrors:
    def valid(self, qp):
        return encode(certifier_r(qp, "types-v1", [key("q(X):(term)")], None, "reverse-rules"))

    def test_empty_input(self):
        with pytest.raises(FormatError) as info:
            decode(b"")
        assert info.value.reason == "truncation"

    def test_cut_short(self, qp):
        data = self.valid(qp)
        with pytest.raises(FormatError) as info:
            decode(data[: data.rindex(b"answer")])
        assert info.value.reason == "truncation"

    def test_missing_final_newline(self, qp):
        with pytest.raises(FormatError) as info:
            decode(self.valid(qp)[:-1])
        assert info.value.reason == "truncation"

    def test_version(self, qp):
        with pytest.raises(FormatError) as info:
            decode(self.valid(qp).replace(b"%acert 1", b"%acert 2", 1))
        assert info.value.reason == "version"

    @pytest.mark.parametrize("old, new", [
        (b"kind\treduced", b"kind\tpartial"),
        (b"(real)\n", b"(bool)\n"),
        (b"entries\t1", b"entries\tone"),
        (b"%acert", b"%apol"),
        (b"\tsha256\t", b"\tsha256\tXYZ"),
    ])
    def test_malformed(self, qp, old, new):
        data = self.valid(qp)
        assert old in data
        with pytest.raises(FormatError) as info:
            decode(data.replace(old, new, 1))
        assert info.value.reason == "malformed"

    def test_trailing_data(self, qp):
        with pytest.raises(FormatError) as info:
            decode(self.valid(qp) + b"extra\n")
        assert info.value.reason == "malformed"

    def test_not_utf8(self):
        with pytest.raises(FormatError) as info:
            decode(b"\xff\xfe\n")
        assert info.value.reason == "malformed"

    def test_unknown_domain(self, qp):
        with pytest.raises(UnknownDomain):
            decode(self.valid(qp).replace(b"types-v1", b"sharing-v1"))


class TestBundle:
    def test_round_trip_with_policy(self, qp, tmp_path, corpus):
        source = corpus.get("qp").source
        certificate = certifier_r(qp, "types-v1", [key("q(X):(term)")], None, "reverse-rules")
        policy = read_policy(corpus.get("qp").path.parent / "qp.types.apol")
        path = tmp_path / "qp.apkg"
        write_package(path, PackageFile(source, certificate, policy))
        package = read_package(path)
        assert package.program_text == source
        assert package.certificate == certificate
        assert package.policy == policy

    def test_policy_is_optional(self, qp):
        certificate = certifier_r(qp, "types-v1", [key("q(X):(term)")], None, "textual-fifo")
        data = encode_package(PackageFile("q(X) :- p(X).\n", certificate))
        assert data.startswith(b"%apkg 1\nprogram 14\nq(X) :- p(X).\n\ncertificate ")
        assert decode_package(data).policy is None

    def test_errors(self, qp):
        certificate = certifier_r(qp, "types-v1", [key("q(X):(term)")], None, "textual-fifo")
        data = encode_package(PackageFile("q(X) :- p(X).\n", certificate))
        with pytest.raises(FormatError) as info:
            decode_package(b"")
        assert info.value.reason == "truncation"
        with pytest.raises(FormatError) as info:
            decode_package(data[:-5])
        assert info.value.reason == "truncation"
        with pytest.raises(FormatError) as info:
            decode_package(data.replace(b"%apkg 1", b"%apkg 9", 1))
        assert info.value.reason == "version"
        with pytest.raises(FormatError) as info:
            decode_package(b"%apkg 1\ncertificate 0\n\n")
        assert info.value.reason == "malformed"


def test_measure_and_ratios(rectoy):
    entries = [key("rectoy(N,M):(int,term)")]
    full = measure(certifier_f(rectoy, "types-v1", entries, None, "textual-fifo"))
    reduced = measure(certifier_r(rectoy, "types-v1", entries, None, "textual-fifo"))
    assert (full.entries, reduced.entries) == (1, 0)
    assert reduced.bytes < full.bytes
    assert entry_ratio(full, reduced) == "empty"
    assert byte_ratio(full, reduced) == full.bytes / reduced.bytes
    assert source_ratio(reduced, 0) == 0.0
    assert source_ratio(reduced, reduced.bytes) == 1.0
