"""Local and global primeness / coprimeness predicates with witnesses.

Every local predicate is decided through a submodule characterization
(annihilators, scalar multiples, the torsion and completion functors) and
compared extensionally.  Failing verdicts carry a concrete witness: an
element, a pair of elements, or an ideal (pair) for the global kinds.

Setting ``LOCPRIME_CROSS_CHECK=1`` (the test suite does) makes every local
verdict on a small finite module re-derived by the brute-force oracle.
"""
from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .errors import ContextMismatch, MissingSecondIdeal
from .functors import (
    LocalIdeal,
    LocalizedModule,
    NotRepresentable,
    gamma,
    lambda_,
    localize,
    localize_ideal,
)
from .module import (
    PresentedModule,
    Submodule,
    annihilator_submodule,
    is_isomorphic,
    scalar_submodule,
)
from .ring import Ideal, enumerate_ideals, ideal_power, ideal_product

WITNESS_SEARCH_BOUND = 256
CROSS_CHECK_BOUND = 64


class PredicateKind(enum.Enum):
    I_PRIME = "IPrime"
    IJ_PRIME = "IJPrime"
    I_REDUCED = "IReduced"
    I_COPRIME = "ICoprime"
    IJ_COPRIME = "IJCoprime"
    I_COREDUCED = "ICoreduced"
    I_TORSION = "ITorsion"
    I_COMPLETE = "IComplete"
    PRIME = "Prime"
    WEAKLY_PRIME = "WeaklyPrime"
    REDUCED = "Reduced"
    COPRIME = "Coprime"
    WEAKLY_COPRIME = "WeaklyCoprime"
    COREDUCED = "Coreduced"

    @property
    def is_local(self) -> bool:
        return self in LOCAL_KINDS

    @property
    def needs_pair(self) -> bool:
        return self in (PredicateKind.IJ_PRIME, PredicateKind.IJ_COPRIME,
                        PredicateKind.WEAKLY_PRIME, PredicateKind.WEAKLY_COPRIME)


K = PredicateKind
LOCAL_KINDS = (K.I_PRIME, K.IJ_PRIME, K.I_REDUCED, K.I_COPRIME,
               K.IJ_COPRIME, K.I_COREDUCED, K.I_TORSION, K.I_COMPLETE)
GLOBAL_KINDS = (K.PRIME, K.WEAKLY_PRIME, K.REDUCED, K.COPRIME, K.WEAKLY_COPRIME, K.COREDUCED)
# global kind -> local kind it quantifies
GLOBAL_TO_LOCAL = {
    K.PRIME: K.I_PRIME,
    K.WEAKLY_PRIME: K.IJ_PRIME,
    K.REDUCED: K.I_REDUCED,
    K.COPRIME: K.I_COPRIME,
    K.WEAKLY_COPRIME: K.IJ_COPRIME,
    K.COREDUCED: K.I_COREDUCED,
}


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None
    evidence: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds


def _cross_check_enabled() -> bool:
    return os.environ.get("LOCPRIME_CROSS_CHECK", "0") not in ("", "0")


# -- witness search ------------------------------------------------------

def _search(M: PresentedModule, accept: Callable[[tuple], bool], candidates) -> tuple:
    """First element satisfying ``accept``: enumeration order when small, else structural."""
    size = M.size()
    if size is not None and size <= WITNESS_SEARCH_BOUND:
        for x in M.enumerate_elements():
            if accept(x):
                return x
    for x in candidates:
        if accept(x):
            return x
    raise AssertionError("no witness found for a failing predicate")


def _outside_both(M, inner: Submodule, a: Submodule, b: Submodule) -> tuple:
    """Element of ``inner`` in neither ``a`` nor ``b`` (both proper in ``inner``)."""
    gens = list(inner.generators)
    extra = []
    ga = next((x for x in gens if x not in a), None)
    gb = next((x for x in gens if x not in b), None)
    if ga is not None and gb is not None:
        extra.append(M.add(ga, gb))
    return _search(M, lambda x: x in inner and x not in a and x not in b, gens + extra)


def _basis(M):
    return [M.basis(j) for j in range(M.ngens)]


# -- local predicates ----------------------------------------------------

def _i_prime(M, I, J):
    A = annihilator_submodule(M, I)
    if A.is_zero:
        return Verdict(True, evidence="(0:_M I) = 0")
    if A.is_whole():
        return Verdict(True, evidence="(0:_M I) = M")
    m = _search(M, lambda x: x in A and not M.is_zero_element(x), list(A.generators))
    return Verdict(False, m, "(0:_M I) is neither 0 nor M")


def _ij_prime(M, I, J):
    A = annihilator_submodule(M, ideal_product(I, J))
    B = annihilator_submodule(M, I)
    C = annihilator_submodule(M, J)
    if A == B:
        return Verdict(True, evidence="(0:_M IJ) = (0:_M I)")
    if A == C:
        return Verdict(True, evidence="(0:_M IJ) = (0:_M J)")
    return Verdict(False, _outside_both(M, A, B, C), "(0:_M IJ) differs from (0:_M I) and (0:_M J)")


def _i_reduced(M, I, J):
    A = annihilator_submodule(M, I)
    B = annihilator_submodule(M, ideal_power(I, 2))
    if A == B:
        return Verdict(True, evidence="(0:_M I) = (0:_M I^2)")
    m = _search(M, lambda x: x in B and x not in A, list(B.generators))
    return Verdict(False, m, "(0:_M I) != (0:_M I^2)")


def _i_coprime(M, I, J):
    S = scalar_submodule(M, I)
    if S.is_zero:
        return Verdict(True, evidence="IM = 0")
    if S.is_whole():
        return Verdict(True, evidence="IM = M")
    inside = _search(M, lambda x: x in S and not M.is_zero_element(x), list(S.generators))
    outside = _search(M, lambda x: x not in S, _basis(M))
    return Verdict(False, (inside, outside), "IM is neither 0 nor M")


def _ij_coprime(M, I, J):
    IJM = scalar_submodule(M, ideal_product(I, J))
    IM = scalar_submodule(M, I)
    JM = scalar_submodule(M, J)
    if IJM == IM:
        return Verdict(True, evidence="IJM = IM")
    if IJM == JM:
        return Verdict(True, evidence="IJM = JM")
    x = _search(M, lambda v: v in IM and v not in IJM, list(IM.generators))
    y = _search(M, lambda v: v in JM and v not in IJM, list(JM.generators))
    return Verdict(False, (x, y), "IJM differs from IM and JM")


def _i_coreduced(M, I, J):
    A = scalar_submodule(M, I)
    B = scalar_submodule(M, ideal_power(I, 2))
    if A == B:
        return Verdict(True, evidence="IM = I^2 M")
    m = _search(M, lambda x: x in A and x not in B, list(A.generators))
    return Verdict(False, m, "IM != I^2 M")


def _i_torsion(M, I, J):
    G = gamma(M, I)
    if G.is_whole():
        return Verdict(True, evidence="Γ_I(M) = M")
    m = _search(M, lambda x: x not in G, _basis(M))
    return Verdict(False, m, "Γ_I(M) != M")


def _i_complete(M, I, J):
    L = lambda_(M, I)
    if isinstance(L, NotRepresentable):
        return Verdict(False, None, f"Λ_I(M) not representable: {L.reason}")
    if is_isomorphic(L, M):
        return Verdict(True, evidence="Λ_I(M) ≅ M")
    return Verdict(False, None, f"Λ_I(M) ≅ {L} but M ≅ {M}")


_LOCAL = {
    K.I_PRIME: _i_prime,
    K.IJ_PRIME: _ij_prime,
    K.I_REDUCED: _i_reduced,
    K.I_COPRIME: _i_coprime,
    K.IJ_COPRIME: _ij_coprime,
    K.I_COREDUCED: _i_coreduced,
    K.I_TORSION: _i_torsion,
    K.I_COMPLETE: _i_complete,
}


def local_predicate(M: PresentedModule, kind: PredicateKind, I: Ideal, J: Optional[Ideal] = None) -> Verdict:
    kind = PredicateKind(kind)
    if not kind.is_local:
        raise ValueError(f"{kind.value} is a global predicate")
    for ideal in (I, J):
        if ideal is not None and ideal.context != M.context:
            raise ContextMismatch(f"ideal over {ideal.context}, module over {M.context}")
    if kind.needs_pair and J is None:
        raise MissingSecondIdeal(f"{kind.value} needs two ideals")
    verdict = _LOCAL[kind](M, I, J)
    if _cross_check_enabled():
        size = M.size()
        if size is not None and size <= CROSS_CHECK_BOUND:
            from . import oracle

            expected = oracle.local_predicate(M, kind, I.generator, None if J is None else J.generator)
            if expected != verdict.holds:
                raise AssertionError(
                    f"{kind.value} on {M} with {I}{'' if J is None else ', ' + str(J)}: "
                    f"fast path {verdict.holds}, oracle {expected}"
                )
            if not verdict.holds and not oracle.check_witness(M, kind, I, J, verdict):
                raise AssertionError(f"witness {verdict.witness!r} for {kind.value} does not re-check")
    return verdict


def holds(M: PresentedModule, kind, I: Ideal, J: Optional[Ideal] = None) -> bool:
    return local_predicate(M, kind, I, J).holds


# -- global predicates ---------------------------------------------------

def quantifier_range(M: PresentedModule) -> list[Ideal]:
    """Ideals a global predicate is quantified over for this module."""
    ctx = M.context
    if ctx.modulus is not None:
        return enumerate_ideals(ctx)
    return enumerate_ideals(ctx, exponent=M.exponent())


def global_predicate(M: PresentedModule, kind: PredicateKind) -> Verdict:
    kind = PredicateKind(kind)
    if kind.is_local:
        raise ValueError(f"{kind.value} is a local predicate")
    ideals = quantifier_range(M)
    local = GLOBAL_TO_LOCAL[kind]
    where = "all ideals" if M.context.modulus is not None else "reduction set"
    evidence = f"{where} " + ",".join(str(I) for I in ideals)
    if kind.needs_pair:
        for I, J in itertools.combinations_with_replacement(ideals, 2):
            if not local_predicate(M, local, I, J).holds:
                return Verdict(False, (I, J), evidence)
    else:
        for I in ideals:
            if not local_predicate(M, local, I).holds:
                return Verdict(False, I, evidence)
    return Verdict(True, None, evidence)


# -- predicates over a localization -------------------------------------

INF = float("inf")


def _exp(L: LocalIdeal) -> float:
    return INF if L.exponent is None else L.exponent


class _LocalModel:
    """A module over a discrete valuation ring as free and cyclic summands.

    Annihilators and scalar multiples of such a module are direct sums of
    submodules of the summands, so a submodule is stored as one level per
    summand: level ``j`` means ``p^j`` times the summand.
    """

    def __init__(self, L: LocalizedModule):
        self.free = L.free_rank
        self.exps = tuple(L.local_factors)

    def zero(self):
        return (INF,) * self.free + self.exps

    def whole(self):
        return (0,) * (self.free + len(self.exps))

    def ann(self, a):
        free = (0 if a == INF else INF,) * self.free
        return free + tuple(0 if a == INF else max(e - a, 0) for e in self.exps)

    def mult(self, a):
        return (a,) * self.free + tuple(min(a, e) for e in self.exps)

    def torsion(self, a):
        if a == 0:
            return self.zero()
        if a == INF:
            return self.whole()
        return (INF,) * self.free + (0,) * len(self.exps)

    def complete(self, a) -> bool:
        if a == 0:
            return self.zero() == self.whole()
        return a == INF or self.free == 0


def _local_verdict(model: _LocalModel, kind: PredicateKind, a, b) -> bool:
    z, w = model.zero(), model.whole()
    if kind is K.I_PRIME:
        return model.ann(a) in (z, w)
    if kind is K.IJ_PRIME:
        return model.ann(a + b) in (model.ann(a), model.ann(b))
    if kind is K.I_REDUCED:
        return model.ann(a) == model.ann(2 * a)
    if kind is K.I_COPRIME:
        return model.mult(a) in (z, w)
    if kind is K.IJ_COPRIME:
        return model.mult(a + b) in (model.mult(a), model.mult(b))
    if kind is K.I_COREDUCED:
        return model.mult(a) == model.mult(2 * a)
    if kind is K.I_TORSION:
        return model.torsion(a) == w
    if kind is K.I_COMPLETE:
        return model.complete(a)
    raise ValueError(kind)


def predicate_on_localization(M: PresentedModule, kind: PredicateKind, I: Optional[Ideal],
                              J: Optional[Ideal], p) -> Verdict:
    """Evaluate ``kind`` on ``(M_p, I_p[, J_p])`` over the local ring at ``p``."""
    kind = PredicateKind(kind)
    Mp = localize(M, p)
    model = _LocalModel(Mp)
    if kind.is_local:
        if kind.needs_pair and J is None:
            raise MissingSecondIdeal(f"{kind.value} needs two ideals")
        a = _exp(localize_ideal(I, p))
        b = _exp(localize_ideal(J, p)) if J is not None else None
        ok = _local_verdict(model, kind, a, b)
        return Verdict(ok, None, f"M_p = {Mp}, I_p exponent {a}" + ("" if b is None else f", J_p exponent {b}"))
    # ideals of the local ring: 0 and (p^a); beyond the largest exponent + 1 nothing changes
    top = max(model.exps, default=0) + 1
    ideals = [INF] + list(range(top + 1))
    local = GLOBAL_TO_LOCAL[kind]
    pairs = itertools.combinations_with_replacement(ideals, 2) if kind.needs_pair else ((a, None) for a in ideals)
    for a, b in pairs:
        if not _local_verdict(model, local, a, b):
            return Verdict(False, (a, b) if kind.needs_pair else a, f"M_p = {Mp}")
    return Verdict(True, None, f"M_p = {Mp}")


def format_witness(M: PresentedModule, kind: PredicateKind, witness) -> Optional[str]:
    """Human-readable witness: an element, an element pair, an ideal or an ideal pair."""
    if witness is None:
        return None
    kind = PredicateKind(kind)
    R = M.context.base

    def elem(v):
        return "[" + ", ".join(R.fmt(c) for c in v) + "]"

    if not kind.is_local:
        if kind.needs_pair:
            return f"({witness[0]}, {witness[1]})"
        return str(witness)
    if kind in (K.I_COPRIME, K.IJ_COPRIME):
        return f"{elem(witness[0])} / {elem(witness[1])}"
    return elem(witness)
