import random

import pytest
from hypothesis import given, settings, strategies as st

from locprime import harness, oracle
from locprime.description import parse_context
from locprime.errors import ContextMismatch, MissingSecondIdeal, NotPrimeElement
from locprime.functors import NotRepresentable, gamma_module, lambda_
from locprime.module import annihilator_ideal, cyclic, from_invariants, quotient, ring_module, submodule
from locprime.predicates import (
    GLOBAL_KINDS,
    LOCAL_KINDS,
    PredicateKind as K,
    format_witness,
    global_predicate,
    holds,
    local_predicate,
    predicate_on_localization,
)
from locprime.ring import make_context


@pytest.fixture
def x2():
    ctx = make_context("poly", 2, [0, 0, 1])
    return ctx, ring_module(ctx)


def test_polynomial_example(x2):
    ctx, M = x2
    I, J = ctx.ideal([0, 0, 1]), ctx.ideal([0, 1])
    assert holds(M, K.I_PRIME, I)
    assert holds(M, K.IJ_PRIME, I, J)
    assert not holds(M, K.I_PRIME, J)
    assert not global_predicate(M, K.WEAKLY_PRIME).holds


def test_z6_reduced_not_prime(Z6):
    M, I = ring_module(Z6), Z6.ideal(3)
    v = local_predicate(M, K.I_PRIME, I)
    assert not v.holds and v.witness == (2,)
    assert format_witness(M, K.I_PRIME, v.witness) == "[2]"
    assert holds(M, K.I_REDUCED, I)
    assert holds(M, K.I_COREDUCED, I)
    assert not holds(M, K.I_COPRIME, I)
    assert not holds(M, K.I_TORSION, I)


def test_zero_ideal_is_trivially_prime(Z, Z6):
    for M in (ring_module(Z6), cyclic(Z, 10), from_invariants(Z, [2, 4], 1)):
        assert holds(M, K.I_PRIME, M.context.zero_ideal)


def test_coprime_examples(Z):
    assert holds(cyclic(Z, 4), K.IJ_COPRIME, Z.ideal(4), Z.ideal(3))
    assert not global_predicate(cyclic(Z, 4), K.WEAKLY_COPRIME).holds
    assert not holds(ring_module(Z), K.I_COPRIME, Z.ideal(2))


def test_global_examples(Z):
    Z5 = make_context("int", None, 5)
    assert global_predicate(ring_module(Z5), K.PRIME).holds
    v = global_predicate(ring_module(Z), K.PRIME)
    assert v.holds and v.evidence.startswith("reduction set")
    Z6 = make_context("int", None, 6)
    v = global_predicate(ring_module(Z6), K.PRIME)
    assert not v.holds and v.witness.generator == 2
    assert v.evidence == "all ideals (1),(2),(3),(6)"


def test_complete_on_free_module(Z):
    v = local_predicate(ring_module(Z), K.I_COMPLETE, Z.ideal(2))
    assert not v.holds and "not representable" in v.evidence


def test_localization_examples(Z):
    M = cyclic(Z, 6)
    assert predicate_on_localization(M, K.I_PRIME, Z.ideal(3), None, 3).holds
    assert predicate_on_localization(M, K.I_PRIME, Z.ideal(3), None, 2).holds
    zero = from_invariants(Z)
    for kind in LOCAL_KINDS:
        J = Z.ideal(5) if kind.needs_pair else None
        assert predicate_on_localization(zero, kind, Z.ideal(2), J, 7).holds
    with pytest.raises(NotPrimeElement):
        predicate_on_localization(M, K.I_PRIME, Z.ideal(3), None, 4)


def test_argument_errors(Z, Z6):
    with pytest.raises(MissingSecondIdeal):
        local_predicate(cyclic(Z, 6), K.IJ_PRIME, Z.ideal(2))
    with pytest.raises(ContextMismatch):
        local_predicate(cyclic(Z, 6), K.I_PRIME, Z6.ideal(2))
    with pytest.raises(ValueError):
        local_predicate(cyclic(Z, 6), K.PRIME, Z.ideal(2))


cases = st.tuples(
    st.sampled_from(["Z/12", "Z/36", "Z/30", "F2[x]/[0,1,0,1]", "F3[x]/[0,0,1]", "Z", "F3[x]"]),
    st.integers(0, 2 ** 32),
)


def _case(ctx_text, seed):
    ctx = parse_context(ctx_text)
    rng = random.Random(seed)
    return rng, ctx, harness.generate_module(rng, "small", ctx)


@settings(max_examples=80, deadline=None)
@given(cases)
def test_verdicts_and_witnesses_match_definitions(case):
    rng, ctx, M = _case(*case)
    ideals = harness.ideal_candidates(ctx, M)
    for kind in LOCAL_KINDS:
        for I in ideals:
            J = rng.choice(ideals) if kind.needs_pair else None
            v = local_predicate(M, kind, I, J)
            assert v.holds == oracle.local_predicate(M, kind, I.generator, None if J is None else J.generator)
            if not v.holds:
                assert oracle.check_witness(M, kind, I, J, v)


@settings(max_examples=40, deadline=None)
@given(cases)
def test_global_verdicts_match_definitions(case):
    rng, ctx, M = _case(*case)
    if ctx.modulus is None:
        return
    for kind in GLOBAL_KINDS:
        assert global_predicate(M, kind).holds == oracle.global_predicate(M, kind)
    assert global_predicate(M, K.COPRIME).holds == oracle.elementwise_coprime(M)


@settings(max_examples=80, deadline=None)
@given(cases)
def test_chart_and_transfer_laws(case):
    rng, ctx, M = _case(*case)
    ideals = harness.ideal_candidates(ctx, M)
    assert holds(M, K.I_PRIME, annihilator_ideal(M))
    S = submodule(M, harness.random_submodule(rng, M, harness.PROFILES["small"]))
    for I in ideals:
        J = rng.choice(ideals)
        if holds(M, K.I_PRIME, I):
            assert holds(M, K.IJ_PRIME, I, J) and holds(M, K.I_REDUCED, I)
            assert holds(S.module(), K.I_PRIME, I)
            assert holds(gamma_module(M, I), K.I_COPRIME, I)
        if holds(M, K.I_COPRIME, I):
            assert holds(M, K.IJ_COPRIME, I, J) and holds(M, K.I_COREDUCED, I)
            assert holds(quotient(M, S), K.I_COPRIME, I)
            L = lambda_(M, I)
            if not isinstance(L, NotRepresentable):
                assert holds(L, K.I_PRIME, I)
