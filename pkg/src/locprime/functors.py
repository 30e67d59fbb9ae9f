"""Torsion, completion, Hom, tensor and localization of presented modules.

Hom and tensor are computed up to isomorphism from invariant factors.  The
two exact special cases the predicates inspect element-wise,
``Hom(R/I, M) = (0 :_M I)`` and ``R/I ⊗ M = M/IM``, are exposed separately.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import ContextMismatch, NotPrimeElement, QuotientContextUnsupported
from .module import (
    PresentedModule,
    Submodule,
    annihilator_submodule,
    from_invariants,
    quotient,
    scalar_submodule,
)
from .ring import Element, Ideal, ideal_power, is_prime_element


@dataclass(frozen=True)
class NotRepresentable:
    """Λ_I(M) exists but is not finitely presented over the base ring."""

    reason: str
    stabilization_bound_tried: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class LocalizedModule:
    """``R_p^free_rank ⊕ ⊕ R_p/(p^e)`` up to isomorphism."""

    prime: Element
    free_rank: int
    local_factors: tuple

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.local_factors


@dataclass(frozen=True)
class LocalIdeal:
    """An ideal of the local ring at ``prime``: ``(p^exponent)``, or zero when exponent is None."""

    prime: Element
    exponent: Optional[int]

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def is_unit(self) -> bool:
        return self.exponent == 0


def _check(M: PresentedModule, I: Ideal):
    if M.context != I.context:
        raise ContextMismatch(f"ideal over {I.context}, module over {M.context}")


def _check_pair(M: PresentedModule, N: PresentedModule):
    if M.context != N.context:
        raise ContextMismatch(f"modules over {M.context} and {N.context}")


def gamma(M: PresentedModule, I: Ideal) -> Submodule:
    """Γ_I(M): the union of the ascending chain ``(0 :_M I^k)``."""
    _check(M, I)
    prev = annihilator_submodule(M, I)
    k = 1
    while True:
        k += 1
        cur = annihilator_submodule(M, ideal_power(I, k))
        if cur == prev:
            return cur
        prev = cur


def gamma_module(M: PresentedModule, I: Ideal) -> PresentedModule:
    return gamma(M, I).module()


def power_chain(M: PresentedModule, I: Ideal, steps: int) -> list[Submodule]:
    """``[I M, I^2 M, ..., I^steps M]``."""
    return [scalar_submodule(M, ideal_power(I, k)) for k in range(1, steps + 1)]


def lambda_(M: PresentedModule, I: Ideal) -> Union[PresentedModule, NotRepresentable]:
    """Λ_I(M) as ``M / I^k M`` once the chain ``I^k M`` stabilises.

    The chain stabilises whenever ``M`` is torsion or ``I`` is zero or the
    unit ideal.  Otherwise the free part is completed to something like the
    p-adic integers and a :class:`NotRepresentable` value is returned.
    """
    _check(M, I)
    R = M.context.base
    if M.free_rank and not (I.is_zero or I.is_unit):
        tried = 4
        chain = power_chain(M, I, tried)
        assert all(a != b for a, b in zip(chain, chain[1:]))
        return NotRepresentable(
            f"positive free rank {M.free_rank} with proper nonzero ideal ({R.fmt(I.generator)}): "
            "I^k M never stabilises",
            tried,
        )
    prev = scalar_submodule(M, I)
    k = 1
    while True:
        k += 1
        cur = scalar_submodule(M, ideal_power(I, k))
        if cur == prev:
            return quotient(M, cur)
        prev = cur


# the public name mirrors the functor; ``lambda`` itself is a keyword
completion = lambda_


def hom_quotient(I: Ideal, M: PresentedModule) -> Submodule:
    """``Hom(R/I, M)`` realised exactly as ``(0 :_M I)``."""
    return annihilator_submodule(M, I)


def tensor_quotient(I: Ideal, M: PresentedModule) -> PresentedModule:
    """``R/I ⊗ M`` realised exactly as ``M / IM``."""
    return quotient(M, scalar_submodule(M, I))


def _cyclic_parts(M: PresentedModule):
    R = M.context.base
    return list(M.torsion_factors) + [R.zero] * M.free_rank


def hom_module(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """``Hom(M, N)`` up to isomorphism, summand by summand."""
    _check_pair(M, N)
    R = M.context.base
    factors, free = [], 0
    for a in _cyclic_parts(M):
        for b in _cyclic_parts(N):
            if R.is_zero(a):
                if R.is_zero(b):
                    free += 1
                else:
                    factors.append(b)
            elif not R.is_zero(b):
                factors.append(R.gcd(a, b))
            # Hom(R/(a), R) = 0 for a != 0 contributes nothing
    factors = [d for d in factors if not R.is_unit(d)]
    return from_invariants(M.context, factors, free)


def tensor_module(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """``M ⊗ N`` up to isomorphism, summand by summand."""
    _check_pair(M, N)
    R = M.context.base
    factors, free = [], 0
    for a in _cyclic_parts(M):
        for b in _cyclic_parts(N):
            if R.is_zero(a) and R.is_zero(b):
                free += 1
            else:
                factors.append(R.gcd(a, b))
    factors = [d for d in factors if not R.is_unit(d)]
    return from_invariants(M.context, factors, free)


def _check_prime(M_or_ctx, p):
    ctx = M_or_ctx.context if hasattr(M_or_ctx, "context") else M_or_ctx
    if ctx.modulus is not None:
        raise QuotientContextUnsupported("localization is computed over the base domain")
    R = ctx.base
    p = R.canonical(R.coerce(p))
    if R.is_zero(p) or R.is_unit(p) or not is_prime_element(ctx, p):
        raise NotPrimeElement(f"{R.fmt(p)} is not irreducible")
    return p


def localize(M: PresentedModule, p) -> LocalizedModule:
    p = _check_prime(M, p)
    R = M.context.base
    exps = []
    for d in M.torsion_factors:
        v = R.valuation(p, d)
        if v:
            exps.append(v)
    return LocalizedModule(p, M.free_rank, tuple(sorted(exps)))


def localize_ideal(I: Ideal, p) -> LocalIdeal:
    p = _check_prime(I.context, p)
    R = I.context.base
    if R.is_zero(I.generator):
        return LocalIdeal(p, None)
    return LocalIdeal(p, R.valuation(p, I.generator))
