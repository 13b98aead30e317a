# -*- coding: utf-8 -*-
import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domains.registry import get_domain
from program.canonical import format_call_pattern, parse_call_pattern
from program.normalize import is_normal, normalize
from program.parser import parse
from program.serialize import serialize
from utils.errors import ParseError


def normal_text(source: str) -> str:
    return serialize(normalize(parse(source)))


def test_nrev_is_put_in_base_form():
    source = "nrev([], []).\nnrev([H|T], R) :- nrev(T, RT), append(RT, [H], R).\n"
    assert normal_text(source) == (
        "nrev(X0, X1) :- X0 = [], X1 = [].\n"
        "nrev(X0, X1) :- X0 = [H|T], nrev(T, RT), X2 = [H], append(RT, X2, X1).\n"
    )


def test_unify_is_oriented():
    assert normal_text("p(X) :- 1 = X.") == "p(X) :- X = 1.\n"


def test_unify_between_two_terms_gets_fresh_variable():
    assert normal_text("p(X) :- a = b.") == "p(X) :- X0 = a, X0 = b.\n"


def test_repeated_call_argument():
    assert normal_text("p(X) :- q(X, X).\nq(A, B).") == "p(X) :- X0 = X, q(X, X0).\nq(A, B).\n"


def test_repeated_head_variable():
    assert normal_text("p(X, X).") == "p(X0, X1) :- X1 = X0.\n"


def test_is_with_non_variable_result():
    assert normal_text("p(X) :- 3 is X + 1.") == "p(X) :- X0 is X + 1, X0 = 3.\n"


def test_rules_share_head_of_first_rule():
    text = normal_text("r(A, B) :- A = 1, B = 2.\nr(C, D) :- C = D.\n")
    assert text == "r(A, B) :- A = 1, B = 2.\nr(A, B) :- A = B.\n"


def test_body_variable_clashing_with_base_head_is_renamed():
    text = normal_text("r(A, B) :- A = B.\nr(B, C) :- A = C.\n")
    assert text == "r(A, B) :- A = B.\nr(A, B) :- X0 = B.\n"


def test_normalize_is_idempotent_and_keeps_digest(corpus):
    for entry in corpus:
        parsed = parse(entry.source)
        once = normalize(parsed)
        assert is_normal(once)
        assert normalize(once) == once
        assert once.source_digest == parsed.source_digest


def test_parsed_program_with_structure_args_is_not_normal():
    assert not is_normal(parse("p(f(X)) :- q(X).\nq(Y)."))


_names = st.lists(
    st.text(alphabet=string.ascii_uppercase, min_size=1, max_size=3),
    min_size=1, max_size=4, unique=True,
)


@given(names=_names, data=st.data())
def test_call_pattern_key_is_invariant_under_renaming(names, data):
    domain = get_domain("types-v1")
    values = data.draw(st.lists(
        st.sampled_from([v.value for v in domain.values]), min_size=len(names), max_size=len(names)
    ))
    renamed = data.draw(st.permutations(names))
    cp = "(" + ",".join(values) + ")"
    first = parse_call_pattern(f"p({','.join(names)}):{cp}", domain)
    second = parse_call_pattern(f"p({','.join(renamed)}):{cp}", domain)
    assert first == second
    assert format_call_pattern(first) == f"p({','.join(first.variables)}):{cp}"


def test_call_pattern_errors():
    domain = get_domain("types-v1")
    with pytest.raises(ParseError):
        parse_call_pattern("p(X,X):(int,int)", domain)
    with pytest.raises(ParseError):
        parse_call_pattern("p(X):(int,int)", domain)
    with pytest.raises(ParseError):
        parse_call_pattern("p(X):(bool)", domain)
    with pytest.raises(ParseError):
        parse_call_pattern("p(a):(int)", domain)
    with pytest.raises(ParseError):
        parse_call_pattern("p(X):bot", domain)
