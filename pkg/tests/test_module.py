import random

import pytest
from hypothesis import given, settings, strategies as st

from locprime import harness, oracle
from locprime.errors import AmbientMismatch, DimensionMismatch, InfiniteModule, SizeBoundExceeded
from locprime.linalg import Matrix
from locprime.module import (
    annihilator_ideal,
    colon_submodule,
    cyclic,
    direct_sum,
    from_invariants,
    is_isomorphic,
    present,
    quotient,
    ring_module,
    scalar_submodule,
    submodule,
    submodule_relate,
    zero_submodule,
)
from locprime.ring import ZZ, Relation, enumerate_ideals, ideal_compare, make_context


def elems(S):
    return sorted(x[0] for x in S.elements())


def test_present_examples(Z):
    assert present(Z, 1, Matrix.from_rows(ZZ, [[6]])).torsion_factors == (6,)
    assert present(Z, 2, Matrix.from_rows(ZZ, [[2, 0], [0, 3]])).torsion_factors == (6,)
    free = present(Z, 1, Matrix.zeros(ZZ, 0, 1))
    assert free.free_rank == 1 and free.torsion_factors == ()
    with pytest.raises(DimensionMismatch):
        present(Z, 2, Matrix.from_rows(ZZ, [[1]]))


def test_quotient_context_appends_modulus(Z6):
    assert ring_module(Z6).torsion_factors == (6,)
    assert present(Z6, 2, Matrix.from_rows(ZZ, [[4, 0]])).torsion_factors == (2, 6)


def test_is_isomorphic(Z):
    Z2, Z3 = cyclic(Z, 2), cyclic(Z, 3)
    assert is_isomorphic(direct_sum(Z2, Z3), cyclic(Z, 6))
    assert not is_isomorphic(ring_module(Z), Z2)
    assert is_isomorphic(from_invariants(Z), from_invariants(Z))


def test_submodules(Z):
    M = cyclic(Z, 6)
    assert elems(submodule(M, [(2,)])) == [0, 2, 4]
    assert submodule(M, []).is_zero
    assert submodule(M, [(1,)]).is_whole
    with pytest.raises(DimensionMismatch):
        submodule(M, [(1, 2)])


def test_quotient(Z):
    M = cyclic(Z, 6)
    assert quotient(M, submodule(M, [(2,)])).torsion_factors == (2,)
    assert is_isomorphic(quotient(M, zero_submodule(M)), M)
    assert quotient(M, submodule(M, [(1,)])).is_zero
    with pytest.raises(AmbientMismatch):
        quotient(M, submodule(cyclic(Z, 4), [(1,)]))


def test_scalar_and_colon(Z):
    M = cyclic(Z, 6)
    assert elems(scalar_submodule(M, Z.ideal(3))) == [0, 3]
    assert scalar_submodule(M, Z.ideal(6)).is_zero
    assert scalar_submodule(M, Z.ideal(1)).is_whole
    zero = zero_submodule(M)
    assert elems(colon_submodule(M, zero, Z.ideal(3))) == [0, 2, 4]
    assert colon_submodule(M, zero, Z.ideal(1)).is_zero
    assert elems(colon_submodule(cyclic(Z, 4), zero_submodule(cyclic(Z, 4)), Z.ideal(2))) == [0, 2]
    # the zero ideal sends everything into any submodule
    assert colon_submodule(M, zero, Z.ideal(0)).is_whole


def test_annihilator_ideal(Z):
    assert annihilator_ideal(direct_sum(cyclic(Z, 6), cyclic(Z, 4))).generator == 12
    assert annihilator_ideal(ring_module(Z)).is_zero
    assert annihilator_ideal(from_invariants(Z)).is_unit


def test_submodule_relate(Z):
    M = cyclic(Z, 6)
    A = submodule(M, [(2,)])
    assert submodule_relate(A, zero_submodule(M)) is Relation.SUPERSET
    assert submodule_relate(A, submodule(M, [(4,), (2,)])) is Relation.EQUAL
    assert submodule_relate(A, submodule(M, [(3,)])) is Relation.INCOMPARABLE


def test_direct_sum(Z):
    assert direct_sum(ring_module(Z), cyclic(Z, 4)).invariants.free_rank == 1
    assert direct_sum(ring_module(Z), cyclic(Z, 4)).torsion_factors == (4,)
    assert is_isomorphic(direct_sum(cyclic(Z, 5), from_invariants(Z)), cyclic(Z, 5))


def test_enumerate_elements(Z):
    assert len(list(cyclic(Z, 6).enumerate_elements())) == 6
    F = make_context("poly", 2, [0, 0, 1])
    assert sorted(x[0] for x in ring_module(F).enumerate_elements()) == [(), (0, 1), (1,), (1, 1)]
    with pytest.raises(InfiniteModule):
        list(ring_module(Z).enumerate_elements())
    with pytest.raises(SizeBoundExceeded):
        list(cyclic(Z, 100).enumerate_elements(bound=50))


def test_canonical_generators(Z):
    M = cyclic(Z, 6)
    assert submodule(M, [(4,)]).canonical_generators == ((2,),)


finite_case = st.tuples(st.sampled_from(["Z/12", "Z/36", "F2[x]/[0,0,1]", "Z", "F3[x]"]), st.integers(0, 2 ** 32))


def _finite(ctx_text, seed):
    from locprime.description import parse_context

    ctx = parse_context(ctx_text)
    rng = random.Random(seed)
    M = harness.generate_module(rng, "small", ctx)
    return rng, ctx, M


@settings(max_examples=60, deadline=None)
@given(finite_case)
def test_lagrange_and_colon_monotonicity(case):
    rng, ctx, M = _finite(*case)
    ideals = harness.ideal_candidates(ctx, M)
    for I in ideals:
        S = scalar_submodule(M, I)
        assert S.size() * quotient(M, S).size() == M.size()
        assert frozenset(S.elements()) == oracle.scalar_multiples(M, I.generator)
        for J in ideals:
            if ideal_compare(I, J) in (Relation.EQUAL, Relation.SUBSET):
                zero = zero_submodule(M)
                assert colon_submodule(M, zero, I).size() >= colon_submodule(M, zero, J).size()


@settings(max_examples=60, deadline=None)
@given(finite_case)
def test_invariants_survive_scrambling(case):
    rng, ctx, M = _finite(*case)
    N = harness.scramble(rng, M, harness.PROFILES["small"])
    assert N.invariants == M.invariants


@settings(max_examples=40, deadline=None)
@given(finite_case)
def test_quotient_kills_submodule(case):
    rng, ctx, M = _finite(*case)
    S = submodule(M, harness.random_submodule(rng, M, harness.PROFILES["small"]))
    Q = quotient(M, S)
    for g in S.generators:
        # the surjection is the identity on coordinates
        assert Q.is_zero_element(Q.element(g))


def test_ideal_lattice_quotients():
    ctx = make_context("int", None, 12)
    for I in enumerate_ideals(ctx):
        S = scalar_submodule(ring_module(ctx), I)
        assert S.size() == 12 // I.generator
