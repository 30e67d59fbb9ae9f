import random

import pytest
from hypothesis import given, settings, strategies as st

from locprime import harness, oracle
from locprime.description import parse_context
from locprime.errors import NotPrimeElement, QuotientContextUnsupported
from locprime.functors import (
    NotRepresentable,
    gamma,
    hom_module,
    lambda_,
    localize,
    localize_ideal,
    tensor_module,
    tensor_quotient,
)
from locprime.module import (
    annihilator_submodule,
    cyclic,
    direct_sum,
    from_invariants,
    is_isomorphic,
    quotient,
    ring_module,
    scalar_submodule,
    submodule,
)
from locprime.predicates import PredicateKind as K, holds
from locprime.ring import make_context


def test_gamma_examples(Z):
    assert sorted(x[0] for x in gamma(cyclic(Z, 6), Z.ideal(3)).elements()) == [0, 2, 4]
    assert gamma(ring_module(Z), Z.ideal(2)).is_zero
    M = direct_sum(ring_module(Z), cyclic(Z, 4))
    assert gamma(M, Z.ideal(0)).is_whole


def test_lambda_examples(Z):
    L = lambda_(cyclic(Z, 12), Z.ideal(2))
    assert L.torsion_factors == (4,) and L.size() == 4
    assert lambda_(cyclic(Z, 12), Z.ideal(1)).is_zero
    out = lambda_(ring_module(Z), Z.ideal(2))
    assert isinstance(out, NotRepresentable)
    assert "free rank" in out.reason and out.stabilization_bound_tried >= 1
    # zero and unit ideals are always representable
    assert is_isomorphic(lambda_(ring_module(Z), Z.ideal(0)), ring_module(Z))


def test_hom_examples(Z):
    assert hom_module(cyclic(Z, 4), cyclic(Z, 6)).torsion_factors == (2,)
    M = direct_sum(ring_module(Z), cyclic(Z, 10))
    assert is_isomorphic(hom_module(ring_module(Z), M), M)
    assert hom_module(cyclic(Z, 2), cyclic(Z, 3)).is_zero
    assert hom_module(cyclic(Z, 4), ring_module(Z)).is_zero


def test_tensor_examples(Z, Z6):
    assert tensor_module(cyclic(Z, 4), cyclic(Z, 6)).torsion_factors == (2,)
    M6 = ring_module(Z6)
    assert is_isomorphic(tensor_quotient(Z6.ideal(6), M6), M6)
    M = direct_sum(ring_module(Z), cyclic(Z, 9))
    assert is_isomorphic(tensor_module(M, ring_module(Z)), M)


def test_localize_examples(Z):
    L = localize(cyclic(Z, 6), 2)
    assert L.local_factors == (1,) and L.free_rank == 0
    assert localize(cyclic(Z, 6), 5).is_zero
    L = localize(direct_sum(ring_module(Z), cyclic(Z, 4)), 2)
    assert (L.free_rank, L.local_factors) == (1, (2,))
    with pytest.raises(NotPrimeElement):
        localize(cyclic(Z, 6), 6)


def test_localize_quotient_context_rejected(Z6):
    with pytest.raises(QuotientContextUnsupported):
        localize(ring_module(Z6), 2)


def test_localize_ideal(Z):
    assert localize_ideal(Z.ideal(12), 2).exponent == 2
    assert localize_ideal(Z.ideal(3), 2).is_unit
    assert localize_ideal(Z.ideal(0), 2).is_zero


def test_localization_multiplicativity(Z):
    for n in range(2, 80):
        M = direct_sum(cyclic(Z, n), cyclic(Z, 2 * n))
        size = 1
        for p in harness.prime_factors(Z, n * 2):
            size *= p ** sum(localize(M, p).local_factors)
        assert size == M.size()


contexts = st.sampled_from(["Z/12", "Z/36", "Z/30", "F2[x]/[0,1,0,1]", "F3[x]/[0,0,1]", "Z", "F2[x]"])


def _case(ctx_text, seed):
    ctx = parse_context(ctx_text)
    rng = random.Random(seed)
    M = harness.generate_module(rng, "small", ctx)
    return rng, ctx, M


@settings(max_examples=60, deadline=None)
@given(contexts, st.integers(0, 2 ** 32))
def test_gamma_and_lambda_match_oracle(ctx_text, seed):
    rng, ctx, M = _case(ctx_text, seed)
    for I in harness.ideal_candidates(ctx, M):
        G = gamma(M, I)
        assert frozenset(G.elements()) == oracle.gamma(M, I.generator)
        L = lambda_(M, I)
        assert oracle.matches(L, oracle.lambda_signature(M, I.generator))
        # left exactness: the torsion of S is S meet the torsion of M
        S = submodule(M, harness.random_submodule(rng, M, harness.PROFILES["small"]))
        meet = frozenset(S.elements()) & frozenset(G.elements())
        assert gamma(S.module(), I).size() == len(meet)


@settings(max_examples=60, deadline=None)
@given(contexts, st.integers(0, 2 ** 32))
def test_reduced_and_coreduced_special_cases(ctx_text, seed):
    rng, ctx, M = _case(ctx_text, seed)
    for I in harness.ideal_candidates(ctx, M):
        if holds(M, K.I_REDUCED, I):
            assert gamma(M, I) == annihilator_submodule(M, I)
        if holds(M, K.I_COREDUCED, I):
            assert is_isomorphic(lambda_(M, I), quotient(M, scalar_submodule(M, I)))


@settings(max_examples=40, deadline=None)
@given(contexts, st.integers(0, 2 ** 32))
def test_hom_and_tensor_match_enumeration(ctx_text, seed):
    rng, ctx, M = _case(ctx_text, seed)
    N = harness.generate_module(rng, "small", ctx)
    if M.size() > oracle.HOM_TENSOR_BOUND or N.size() > oracle.HOM_TENSOR_BOUND:
        return
    assert oracle.matches(hom_module(M, N), oracle.hom_signature(M, N))
    assert oracle.matches(tensor_module(M, N), oracle.tensor_signature(M, N))


def test_hom_over_quotient_context():
    ctx = make_context("int", None, 12)
    M, N = from_invariants(ctx, [4]), from_invariants(ctx, [6, 12])
    assert hom_module(M, N).torsion_factors == (2, 4)
