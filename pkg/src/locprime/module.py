"""Finitely presented modules over a ring context, and their submodules.

A module with ``g`` generators is ``R^g`` modulo the row span of its
relation matrix.  In a quotient context the rows ``modulus * e_i`` are
appended implicitly, so one code path serves ``Z`` and ``Z/n`` alike.
Elements are coordinate tuples; :meth:`PresentedModule.reduce` maps them to
canonical coset representatives using the Hermite form of the relations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Optional, Sequence

from .errors import (
    AmbientMismatch,
    ContextMismatch,
    DimensionMismatch,
    InfiniteModule,
    SizeBoundExceeded,
)
from .linalg import Matrix, _hermite_cached, right_kernel, smith_normal_form, solve_membership
from .ring import Ideal, Relation, RingContext

DEFAULT_ELEMENT_BOUND = 1 << 16


@dataclass(frozen=True)
class InvariantFactors:
    torsion_factors: tuple
    free_rank: int


@dataclass(frozen=True)
class PresentedModule:
    context: RingContext
    ngens: int
    relations: Matrix
    invariants: InvariantFactors = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.relations.ncols != self.ngens:
            raise DimensionMismatch(
                f"relation matrix has {self.relations.ncols} columns for {self.ngens} generators"
            )
        R = self.context.base
        diag = smith_normal_form(self.full_relations).diagonal
        nonzero = [d for d in diag if not R.is_zero(d)]
        torsion = tuple(d for d in nonzero if not R.is_unit(d))
        object.__setattr__(self, "invariants", InvariantFactors(torsion, self.ngens - len(nonzero)))

    @cached_property
    def full_relations(self) -> Matrix:
        ctx = self.context
        if ctx.modulus is None:
            return self.relations
        R = ctx.base
        extra = tuple(
            tuple(ctx.modulus if i == j else R.zero for j in range(self.ngens))
            for i in range(self.ngens)
        )
        return Matrix(R, self.relations.rows + extra, self.ngens)

    @cached_property
    def _hermite(self):
        h, _, rank, pivots = _hermite_cached(self.context.base, self.full_relations.rows, self.ngens)
        return h[:rank], pivots

    # -- structure --------------------------------------------------------
    @property
    def free_rank(self) -> int:
        return self.invariants.free_rank

    @property
    def torsion_factors(self) -> tuple:
        return self.invariants.torsion_factors

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def size(self) -> Optional[int]:
        if self.free_rank:
            return None
        R = self.context.base
        return math.prod(R.quotient_size(d) for d in self.torsion_factors)

    def exponent(self):
        """Generator of the annihilator of the torsion part (1 if there is none)."""
        R = self.context.base
        return self.torsion_factors[-1] if self.torsion_factors else R.one

    # -- elements ---------------------------------------------------------
    def zero(self) -> tuple:
        return (self.context.base.zero,) * self.ngens

    def basis(self, j: int) -> tuple:
        R = self.context.base
        return tuple(R.one if i == j else R.zero for i in range(self.ngens))

    def element(self, coords: Sequence) -> tuple:
        if len(coords) != self.ngens:
            raise DimensionMismatch(f"element of length {len(coords)} in a module with {self.ngens} generators")
        return self.reduce(tuple(self.context.base.coerce(c) for c in coords))

    def reduce(self, v: Sequence) -> tuple:
        R = self.context.base
        v = list(v)
        rows, pivots = self._hermite
        for row, c in zip(rows, pivots):
            if R.is_zero(v[c]):
                continue
            q = R.divmod(v[c], row[c])[0]
            if not R.is_zero(q):
                v = [R.sub(x, R.mul(q, y)) for x, y in zip(v, row)]
        return tuple(v)

    def add(self, x, y) -> tuple:
        R = self.context.base
        return self.reduce([R.add(a, b) for a, b in zip(x, y)])

    def neg(self, x) -> tuple:
        R = self.context.base
        return self.reduce([R.neg(a) for a in x])

    def scale(self, r, x) -> tuple:
        R = self.context.base
        return self.reduce([R.mul(r, a) for a in x])

    def is_zero_element(self, x) -> bool:
        return all(self.context.base.is_zero(a) for a in self.reduce(x))

    def enumerate_elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> Iterator[tuple]:
        """Every element once, as canonical coset representatives in product order."""
        if self.free_rank:
            raise InfiniteModule(f"module has free rank {self.free_rank}")
        n = self.size()
        if n > bound:
            raise SizeBoundExceeded(f"module has {n} elements, bound is {bound}")
        R = self.context.base
        rows, _ = self._hermite
        ranges = [list(R.residues(rows[k][k])) for k in range(self.ngens)]
        return iter(itertools.product(*ranges))

    def __str__(self) -> str:
        R = self.context.base
        parts = [f"R/({R.fmt(d)})" for d in self.torsion_factors] + ["R"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def present(ctx: RingContext, g: int, relations) -> PresentedModule:
    R = ctx.base
    if isinstance(relations, Matrix):
        rel = relations
    else:
        rows = [tuple(R.coerce(x) for x in r) for r in relations]
        rel = Matrix.from_rows(R, rows, g)
    return PresentedModule(ctx, g, rel)


def from_invariants(ctx: RingContext, factors: Sequence = (), free_rank: int = 0) -> PresentedModule:
    """Direct sum of cyclic modules ``R/(d)`` and ``free_rank`` copies of ``R``."""
    R = ctx.base
    factors = [R.coerce(d) for d in factors]
    g = len(factors) + free_rank
    rows = [tuple(d if i == j else R.zero for j in range(g)) for i, d in enumerate(factors)]
    return present(ctx, g, Matrix.from_rows(R, rows, g))


def cyclic(ctx: RingContext, d) -> PresentedModule:
    return from_invariants(ctx, [d])


def ring_module(ctx: RingContext) -> PresentedModule:
    """The ring as a module over itself."""
    return from_invariants(ctx, [], 1)


def is_isomorphic(M: PresentedModule, N: PresentedModule) -> bool:
    if M.context != N.context:
        raise ContextMismatch(f"modules over {M.context} and {N.context}")
    return M.invariants == N.invariants


def direct_sum(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    if M.context != N.context:
        raise ContextMismatch(f"modules over {M.context} and {N.context}")
    R = M.context.base
    g, h = M.ngens, N.ngens
    rows = [r + (R.zero,) * h for r in M.relations.rows]
    rows += [(R.zero,) * g + r for r in N.relations.rows]
    return present(M.context, g + h, Matrix.from_rows(R, rows, g + h))


def annihilator_ideal(M: PresentedModule) -> Ideal:
    ctx = M.context
    if M.free_rank:
        return ctx.zero_ideal
    if not M.torsion_factors:
        return ctx.unit_ideal
    return Ideal(ctx, ctx.normalize_generator(M.torsion_factors[-1]))


@dataclass(frozen=True, eq=False)
class Submodule:
    """Submodule given by generators; equality is extensional."""

    ambient: PresentedModule
    generators: tuple

    @cached_property
    def span(self) -> Matrix:
        M = self.ambient
        cols = list(self.generators) + list(M.full_relations.rows)
        return Matrix.from_columns(M.context.base, cols, M.ngens)

    @cached_property
    def key(self) -> tuple:
        """Reduced Hermite basis of the preimage lattice: a canonical form."""
        M = self.ambient
        rows = tuple(self.generators) + M.full_relations.rows
        h, _, rank, _ = _hermite_cached(M.context.base, rows, M.ngens)
        return h[:rank]

    @cached_property
    def canonical_generators(self) -> tuple:
        """Generators read off the Hermite basis, reduced in the ambient module."""
        M = self.ambient
        out = []
        for row in self.key:
            r = M.reduce(row)
            if r != M.zero() and r not in out:
                out.append(r)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ambient == other.ambient and self.key == other.key

    def __hash__(self):
        return hash((self.ambient, self.key))

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient.ngens:
            raise DimensionMismatch("element length does not match the ambient module")
        return solve_membership(self.span, tuple(x)) is not None

    __contains__ = contains

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def is_whole(self) -> bool:
        M = self.ambient
        return all(self.contains(M.basis(j)) for j in range(M.ngens))

    def elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> list:
        return [x for x in self.ambient.enumerate_elements(bound) if self.contains(x)]

    def size(self) -> Optional[int]:
        return self.module().size()

    def module(self) -> PresentedModule:
        """Re-present as a module over the same context (quotient of a free cover)."""
        return _submodule_as_module(self.ambient, self.generators)

    def __str__(self) -> str:
        R = self.ambient.context.base
        if not self.generators:
            return "<0>"
        return "<" + ", ".join("(" + ",".join(R.fmt(a) for a in g) + ")" for g in self.generators) + ">"


@lru_cache(maxsize=4096)
def _submodule_as_module(M: PresentedModule, gens: tuple) -> PresentedModule:
    R = M.context.base
    k = len(gens)
    if k == 0:
        return present(M.context, 0, Matrix(R, (), 0))
    cols = list(gens) + list(M.full_relations.rows)
    K = right_kernel(Matrix.from_columns(R, cols, M.ngens))
    rels = [tuple(c[:k]) for c in K.columns()]
    rels = [r for r in rels if any(not R.is_zero(x) for x in r)]
    return present(M.context, k, Matrix.from_rows(R, rels, k))


def submodule(M: PresentedModule, gens: Sequence[Sequence]) -> Submodule:
    out = []
    seen = set()
    for v in gens:
        if len(v) != M.ngens:
            raise DimensionMismatch(f"generator of length {len(v)} in a module with {M.ngens} generators")
        r = M.element(v)
        if r != M.zero() and r not in seen:
            seen.add(r)
            out.append(r)
    return Submodule(M, tuple(out))


def whole(M: PresentedModule) -> Submodule:
    return submodule(M, [M.basis(j) for j in range(M.ngens)])


def zero_submodule(M: PresentedModule) -> Submodule:
    return Submodule(M, ())


def quotient(M: PresentedModule, S: Submodule) -> PresentedModule:
    if S.ambient != M:
        raise AmbientMismatch("submodule does not live in this module")
    R = M.context.base
    rows = M.relations.rows + tuple(S.generators)
    return present(M.context, M.ngens, Matrix.from_rows(R, rows, M.ngens))


def _check_ideal(M: PresentedModule, I: Ideal):
    if I.context != M.context:
        raise ContextMismatch(f"ideal over {I.context}, module over {M.context}")


def scalar_submodule(M: PresentedModule, I: Ideal) -> Submodule:
    """``IM``."""
    _check_ideal(M, I)
    a = I.generator
    return submodule(M, [M.scale(a, M.basis(j)) for j in range(M.ngens)])


def colon_submodule(M: PresentedModule, S: Submodule, I: Ideal) -> Submodule:
    """``(S :_M I) = {m : I m ⊆ S}``."""
    if S.ambient != M:
        raise AmbientMismatch("submodule does not live in this module")
    _check_ideal(M, I)
    return _colon(M, S.generators, I.generator)


@lru_cache(maxsize=8192)
def _colon(M: PresentedModule, sgens: tuple, a) -> Submodule:
    R = M.context.base
    g = M.ngens
    if R.is_zero(a):
        return whole(M)
    cols = [tuple(a if i == j else R.zero for i in range(g)) for j in range(g)]
    cols += list(sgens) + list(M.full_relations.rows)
    K = right_kernel(Matrix.from_columns(R, cols, g))
    return submodule(M, [c[:g] for c in K.columns()])


def annihilator_submodule(M: PresentedModule, I: Ideal) -> Submodule:
    """``(0 :_M I)``."""
    return colon_submodule(M, zero_submodule(M), I)


def contains_submodule(A: Submodule, B: Submodule) -> bool:
    """``A ⊇ B``."""
    if A.ambient != B.ambient:
        raise AmbientMismatch("submodules of different modules")
    return all(A.contains(x) for x in B.generators)


def submodule_relate(A: Submodule, B: Submodule) -> Relation:
    return Relation.from_containments(contains_submodule(A, B), contains_submodule(B, A))


def submodule_sum(A: Submodule, B: Submodule) -> Submodule:
    if A.ambient != B.ambient:
        raise AmbientMismatch("submodules of different modules")
    return submodule(A.ambient, list(A.generators) + list(B.generators))
