# -*- coding: utf-8 -*-
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domains.ground_domain import Groundness
from domains.registry import get_domain, registered_domains
from domains.substitution import AbstractSubstitution
from domains.type_domain import TypeValue
from program.terms import Builtin, Float, Int, Renaming, Struct, Unify, Var
from utils.errors import AnalysisError, UnknownDomain

SCOPE = ("A", "B", "C")


def substitutions(domain_id):
    domain = get_domain(domain_id)
    bottom = st.just(AbstractSubstitution.bottom(SCOPE))
    regular = st.lists(st.sampled_from(domain.values), min_size=len(SCOPE), max_size=len(SCOPE)).map(
        lambda values: AbstractSubstitution(SCOPE, values)
    )
    return st.one_of(bottom, regular)


@pytest.mark.parametrize("domain_id", ["types-v1", "ground-v1"])
def test_lattice_laws(domain_id):
    domain = get_domain(domain_id)

    @given(substitutions(domain_id), substitutions(domain_id), substitutions(domain_id))
    def laws(a, b, c):
        assert domain.alub(a, b) == domain.alub(b, a)
        assert domain.alub(a, a) == a
        assert domain.alub(domain.alub(a, b), c) == domain.alub(a, domain.alub(b, c))
        assert domain.leq(a, domain.alub(a, b))
        assert domain.leq(domain.aconj(a, b), a)
        assert domain.leq(domain.aconj(a, b), b)
        assert domain.leq(a, a)
        if domain.leq(a, b) and domain.leq(b, a):
            assert a == b
        if domain.leq(a, b):
            assert domain.alub(a, b) == b

    laws()


def constraints():
    variables = st.sampled_from([Var(name) for name in SCOPE])
    constants = st.one_of(
        st.integers(0, 9).map(Int),
        st.sampled_from(["0.5", "2.0"]).map(lambda text: Float(Decimal(text))),
        st.just(Struct("a")),
    )
    operand = st.one_of(variables, st.integers(0, 9).map(Int))
    expressions = st.one_of(
        operand,
        st.tuples(st.sampled_from(["+", "-", "*"]), operand, operand).map(lambda t: Struct(t[0], (t[1], t[2]))),
        operand.map(lambda e: Struct("-", (e,))),
    )
    return st.one_of(
        st.tuples(variables, st.one_of(variables, constants)).map(lambda t: Unify(*t)),
        st.tuples(variables, variables, variables).map(lambda t: Unify(t[0], Struct("f", (t[1], t[2])))),
        st.tuples(variables, expressions).map(lambda t: Builtin("is", t)),
    )


@pytest.mark.parametrize("domain_id", ["types-v1", "ground-v1"])
def test_aadd_only_refines(domain_id):
    domain = get_domain(domain_id)

    @given(constraints(), substitutions(domain_id))
    def reductive(constraint, cp):
        result = domain.aadd(constraint, cp)
        assert result.scope == cp.scope
        assert domain.leq(result, cp)

    reductive()


def test_registry():
    assert set(registered_domains()) == {"types-v1", "ground-v1"}
    domain = get_domain("types-v1")
    assert get_domain(domain) is domain
    with pytest.raises(UnknownDomain):
        get_domain("nope")


def test_substitution_is_immutable():
    cp = AbstractSubstitution(("X",), (TypeValue.INT,))
    with pytest.raises(AttributeError):
        cp.values = ()
    with pytest.raises(ValueError):
        AbstractSubstitution(("X", "X"), (TypeValue.INT, TypeValue.INT))


def test_renamed_keeps_values():
    cp = AbstractSubstitution(("X", "Y"), (TypeValue.INT, TypeValue.TERM))
    renamed = cp.renamed(Renaming([("X", "v1"), ("Y", "v2")]))
    assert renamed.scope == ("v1", "v2")
    assert renamed.tuple_form() == "(int,term)"
    assert AbstractSubstitution.bottom(("X",)).tuple_form() == "bot"


def test_restrict_and_extend(types):
    cp = AbstractSubstitution(("A", "B"), (TypeValue.INT, TypeValue.REAL))
    restricted = types.arestrict(cp, ["B"])
    assert restricted.as_dict() == {"B": TypeValue.REAL}
    extended = types.aextend(restricted, ["A", "B"])
    assert extended.as_dict() == {"A": TypeValue.TERM, "B": TypeValue.REAL}
    assert types.arestrict(AbstractSubstitution.bottom(("A", "B")), ["A"]).failed


def test_parse_tuple(types):
    cp = types.parse_tuple("(int, term)", ("v1", "v2"))
    assert cp.values == (TypeValue.INT, TypeValue.TERM)
    assert types.parse_tuple("bot", ("v1",)).failed
    with pytest.raises(ValueError):
        types.parse_tuple("(bot)", ("v1",))
    with pytest.raises(ValueError):
        types.parse_tuple("(int)", ("v1", "v2"))
    with pytest.raises(ValueError):
        types.parse_tuple("int", ("v1",))


class TestTypeDomain:
    def test_unify_with_constant(self, types):
        cp = types.top_substitution(("X",))
        assert types.aadd(Unify(Var("X"), Int(1)), cp).value("X") is TypeValue.INT
        assert types.aadd(Unify(Var("X"), Float(Decimal("1.0"))), cp).value("X") is TypeValue.REAL
        assert types.aadd(Unify(Var("X"), Struct("a")), cp).value("X") is TypeValue.TERM

    def test_unify_variables_meet(self, types):
        cp = AbstractSubstitution(("X", "Y"), (TypeValue.INT, TypeValue.TERM))
        result = types.aadd(Unify(Var("X"), Var("Y")), cp)
        assert result.values == (TypeValue.INT, TypeValue.INT)

    def test_arithmetic_promotes_to_real(self, types):
        cp = AbstractSubstitution(("X", "Y"), (TypeValue.INT, TypeValue.TERM))
        expr = Struct("+", (Var("X"), Float(Decimal("1.0"))))
        assert types.aadd(Builtin("is", (Var("Y"), expr)), cp).value("Y") is TypeValue.REAL
        expr = Struct("*", (Var("X"), Int(2)))
        assert types.aadd(Builtin("is", (Var("Y"), expr)), cp).value("Y") is TypeValue.INT

    def test_unary_minus(self, types):
        cp = AbstractSubstitution(("X", "Y"), (TypeValue.REAL, TypeValue.TERM))
        expr = Struct("-", (Var("X"),))
        assert types.aadd(Builtin("is", (Var("Y"), expr)), cp).value("Y") is TypeValue.REAL

    def test_unknown_evaluable_functor(self, types):
        cp = AbstractSubstitution(("X", "Y"), (TypeValue.INT, TypeValue.TERM))
        with pytest.raises(AnalysisError) as info:
            types.aadd(Builtin("is", (Var("Y"), Struct("max", (Var("X"), Int(1))))), cp)
        assert info.value.kind == AnalysisError.UNKNOWN_BUILTIN

    def test_unknown_builtin(self, types):
        with pytest.raises(AnalysisError):
            types.aadd(Builtin("succ", (Var("X"), Var("Y"))), types.top_substitution(("X", "Y")))

    def test_bottom_is_absorbing(self, types):
        bottom = AbstractSubstitution.bottom(("X",))
        assert types.aadd(Unify(Var("X"), Int(1)), bottom).failed


class TestGroundnessDomain:
    def test_ground_arguments_make_structure_ground(self, ground):
        cp = AbstractSubstitution(("X", "Y", "Z"), (Groundness.ANY, Groundness.GROUND, Groundness.GROUND))
        result = ground.aadd(Unify(Var("X"), Struct("f", (Var("Y"), Var("Z")))), cp)
        assert result.value("X") is Groundness.GROUND

    def test_ground_structure_grounds_arguments(self, ground):
        cp = AbstractSubstitution(("X", "Y"), (Groundness.GROUND, Groundness.ANY))
        result = ground.aadd(Unify(Var("X"), Struct("f", (Var("Y"),))), cp)
        assert result.value("Y") is Groundness.GROUND

    def test_no_information_leaves_substitution(self, ground):
        cp = AbstractSubstitution(("X", "Y"), (Groundness.ANY, Groundness.ANY))
        assert ground.aadd(Unify(Var("X"), Struct("f", (Var("Y"),))), cp) == cp

    def test_constants_are_ground(self, ground):
        cp = ground.top_substitution(("X",))
        assert ground.aadd(Unify(Var("X"), Int(3)), cp).value("X") is Groundness.GROUND
        assert ground.aadd(Unify(Var("X"), Struct("[]")), cp).value("X") is Groundness.GROUND

    def test_arithmetic(self, ground):
        cp = AbstractSubstitution(("X", "Y"), (Groundness.GROUND, Groundness.ANY))
        expr = Struct("-", (Var("X"), Int(1)))
        assert ground.aadd(Builtin("is", (Var("Y"), expr)), cp).value("Y") is Groundness.GROUND
        cp = AbstractSubstitution(("X", "Y"), (Groundness.ANY, Groundness.ANY))
        assert ground.aadd(Builtin("is", (Var("Y"), expr)), cp).value("Y") is Groundness.ANY
