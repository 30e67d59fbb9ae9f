"""Brute-force reference implementations over finite modules.

Nothing here touches the Smith form or invariant factors: modules are
enumerated element by element (canonical cosets via the Hermite form), and
every predicate is the literal definition quantified over elements.  Module
valued answers (Λ, Hom, tensor) come back as a :class:`Signature`, the
counts ``|X[f]| = #{x : f x = 0}`` over all divisors ``f`` of an exponent of
``X``; those counts pin down a finite module up to isomorphism.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from . import _kernels
from .errors import InfiniteIdealLattice, SizeBoundExceeded
from .linalg import _hermite_cached
from .module import PresentedModule
from .predicates import PredicateKind, Verdict
from .ring import Ideal, PolynomialRing

DEFAULT_BOUND = 64
HOM_TENSOR_BOUND = 36

K = PredicateKind


def _scalar(x):
    return x.generator if isinstance(x, Ideal) else x


class FiniteTable:
    """Element table of a finite module with cached scalar actions."""

    def __init__(self, M: PresentedModule, bound: int = DEFAULT_BOUND):
        size = M.size()
        if size is not None and size > bound:
            raise SizeBoundExceeded(f"module has {size} elements, oracle bound is {bound}")
        self.module = M
        self.elements = list(M.enumerate_elements(bound))
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.n = len(self.elements)
        self._acts: dict = {}
        self._add = None

    def act(self, r) -> np.ndarray:
        r = _scalar(r)
        arr = self._acts.get(r)
        if arr is None:
            M = self.module
            if isinstance(M.context.base, PolynomialRing) and len(r) > 2:
                # Horner: r*m = x*(...) + c*m, read off the x-action and the addition table
                add, ax = self.add_table(), self.act((0, 1))
                arr = np.full(self.n, self.index[M.zero()], dtype=np.int64)
                for c in reversed(r):
                    arr = ax[arr]
                    if c:
                        arr = add[arr, self.act((c,))]
            else:
                arr = np.fromiter((self.index[M.scale(r, x)] for x in self.elements), dtype=np.int64,
                                  count=self.n)
            self._acts[r] = arr
        return arr

    def add_table(self) -> np.ndarray:
        if self._add is None:
            M = self.module
            tab = np.empty((self.n, self.n), dtype=np.int64)
            for i, x in enumerate(self.elements):
                for j in range(i, self.n):
                    tab[i, j] = tab[j, i] = self.index[M.add(x, self.elements[j])]
            self._add = tab
        return self._add

    def killed(self, r) -> np.ndarray:
        return self.act(r) == 0

    def image(self, r) -> frozenset:
        return frozenset(self.act(r).tolist())

    def to_elements(self, idx) -> frozenset:
        return frozenset(self.elements[i] for i in idx)


_TABLES: dict = {}


def table(M: PresentedModule, bound: int = DEFAULT_BOUND) -> FiniteTable:
    key = (M, bound)
    t = _TABLES.get(key)
    if t is None:
        if len(_TABLES) > 2048:
            _TABLES.clear()
        t = _TABLES[key] = FiniteTable(M, bound)
    return t


@dataclass(frozen=True)
class Signature:
    size: int
    killed: tuple  # ((f, |X[f]|), ...)

    def counts(self) -> dict:
        return dict(self.killed)


def module_signature(P: PresentedModule, fs) -> Signature:
    """Signature of a fast-path module, read off its invariant factors."""
    R = P.context.base
    if P.free_rank:
        raise SizeBoundExceeded("infinite module has no finite signature")
    killed = []
    for f in fs:
        killed.append((f, math.prod(R.quotient_size(R.gcd(f, d)) for d in P.torsion_factors)))
    return Signature(P.size(), tuple(killed))


def matches(P: PresentedModule, sig: Signature) -> bool:
    """Whether a fast-path module has the oracle's signature (hence its isomorphism type)."""
    if P.free_rank:
        return False
    return module_signature(P, [f for f, _ in sig.killed]) == sig


# -- elementwise functors ----------------------------------------------

def annihilator(M: PresentedModule, a, bound: int = DEFAULT_BOUND) -> frozenset:
    T = table(M, bound)
    return T.to_elements(np.flatnonzero(T.killed(a)))


def scalar_multiples(M: PresentedModule, a, bound: int = DEFAULT_BOUND) -> frozenset:
    T = table(M, bound)
    return T.to_elements(T.image(a))


def _torsion_mask(T: FiniteTable, a) -> np.ndarray:
    act = T.act(a)
    cur = np.arange(T.n)
    hit = cur == 0
    for _ in range(T.n):
        cur = act[cur]
        hit |= cur == 0
    return hit


def gamma(M: PresentedModule, a, bound: int = DEFAULT_BOUND) -> frozenset:
    T = table(M, bound)
    return T.to_elements(np.flatnonzero(_torsion_mask(T, a)))


def exponent(M: PresentedModule, bound: int = DEFAULT_BOUND):
    """Canonical generator of ``(0 :_R M)`` by search over ring elements."""
    T = table(M, bound)
    R = M.context.base
    if isinstance(R, PolynomialRing):
        top = round(math.log(T.n, R.characteristic)) if T.n > 1 else 0
        candidates = (f for d in range(top + 1) for f in R.monic(d))
    else:
        candidates = (r for r in range(1, T.n + 1) if T.n % r == 0)
    for r in candidates:
        if T.killed(r).all():
            return r
    raise AssertionError("a finite module is killed by some element")


def _chain(T: FiniteTable, a):
    """Sets ``a^k M`` for k = 1.. until two consecutive ones agree."""
    act = T.act(a)
    cur = act.copy()
    chain = [frozenset(cur.tolist())]
    while True:
        cur = act[cur]
        nxt = frozenset(cur.tolist())
        chain.append(nxt)
        if nxt == chain[-2]:
            return chain


def lambda_signature(M: PresentedModule, a, bound: int = DEFAULT_BOUND) -> Signature:
    """Λ_a(M) as the compatible sequences of the tower ``M/a^k M``."""
    T = table(M, bound)
    add = T.add_table()
    chain = _chain(T, a)
    levels = [np.array(sorted(S), dtype=np.int64) for S in chain]
    coset = np.stack([add[:, S].min(axis=1) for S in levels], axis=1)  # (n, K)
    seqs: dict = {}
    for m in range(T.n):
        seqs.setdefault(tuple(coset[m].tolist()), m)
    R = M.context.base
    killed = []
    for f in R.divisors(exponent(M, bound)):
        act = T.act(f)
        count = 0
        for rep in seqs.values():
            fm = act[rep]
            if all(coset[fm, k] == 0 for k in range(len(levels))):
                count += 1
        killed.append((f, count))
    return Signature(len(seqs), tuple(killed))


def hom_signature(M: PresentedModule, N: PresentedModule, bound: int = HOM_TENSOR_BOUND,
                  backend: Optional[str] = None, fs=None) -> Signature:
    """Hom(M, N) by walking all generator images that respect every relation of M.

    ``fs`` overrides the test scalars (default: divisors of the exponent of N).
    """
    TN = table(N, bound)
    R = M.context.base
    rels = M.full_relations.rows
    coefs = sorted({c for row in rels for c in row}, key=R.sort_key)
    cidx = {c: i for i, c in enumerate(coefs)}
    acts = np.stack([TN.act(c) for c in coefs]) if coefs else np.zeros((0, TN.n), dtype=np.int64)
    coef = np.array([[cidx[c] for c in row] for row in rels], dtype=np.int64).reshape(len(rels), M.ngens)
    last = np.array(
        [max((j for j, c in enumerate(row) if not R.is_zero(c)), default=-1) for row in rels],
        dtype=np.int64,
    )
    keep = last >= 0
    coef, last = coef[keep], last[keep]
    if fs is None:
        fs = R.divisors(exponent(N, bound))
    kill = np.stack([TN.killed(f) for f in fs])
    counts = _kernels.hom_count(TN.add_table(), acts, coef, last, kill, backend=backend)
    return Signature(int(counts[-1]), tuple((f, int(c)) for f, c in zip(fs, counts[:-1])))


def _tensor_rows(M: PresentedModule, N: PresentedModule) -> list:
    R = M.context.base
    g, h = M.ngens, N.ngens
    rows = []
    for r in M.full_relations.rows:
        for j in range(h):
            v = [R.zero] * (g * h)
            for i in range(g):
                v[i * h + j] = r[i]
            rows.append(tuple(v))
    for s in N.full_relations.rows:
        for i in range(g):
            v = [R.zero] * (g * h)
            for j in range(h):
                v[i * h + j] = s[j]
            rows.append(tuple(v))
    return rows


def _index(R, rows: list, ncols: int) -> Optional[int]:
    """``|R^ncols / span(rows)|`` from the Hermite diagonal, ``None`` if infinite."""
    h, _, rank, pivots = _hermite_cached(R, tuple(rows), ncols)
    if rank < ncols:
        return None
    return math.prod(R.quotient_size(h[k][pivots[k]]) for k in range(rank))


def tensor_signature(M: PresentedModule, N: PresentedModule, bound: int = HOM_TENSOR_BOUND) -> Signature:
    """M ⊗ N as the free module on generator pairs modulo bilinearity relations.

    ``|T[f]| = |T / fT|`` for a finite module, and ``|T / fT|`` is the index
    of the relation lattice enlarged by ``f`` times the identity.
    """
    for X in (M, N):
        if X.size() is not None and X.size() > bound:
            raise SizeBoundExceeded(f"module has {X.size()} elements, bound is {bound}")
    R = M.context.base
    n = M.ngens * N.ngens
    rows = _tensor_rows(M, N)
    e = R.gcd(exponent(M, bound), exponent(N, bound))

    def quotient_by(f):
        extra = [tuple(f if i == j else R.zero for j in range(n)) for i in range(n)]
        return _index(R, rows + extra, n) if n else 1

    killed = tuple((f, quotient_by(f)) for f in R.divisors(e))
    return Signature(quotient_by(e), killed)


# -- definitional predicates -------------------------------------------

def local_predicate(M: PresentedModule, kind, a, b=None, bound: int = DEFAULT_BOUND) -> bool:
    kind = PredicateKind(kind)
    a = _scalar(a)
    b = _scalar(b) if b is not None else None
    T = table(M, bound)
    R = M.context.base
    elems = range(T.n)
    if kind is K.I_PRIME:
        ka = T.killed(a)
        IM_zero = bool(ka.all())
        return all((not ka[m]) or m == 0 or IM_zero for m in elems)
    if kind is K.IJ_PRIME:
        kab, ka, kb = T.killed(R.mul(a, b)), T.killed(a), T.killed(b)
        return all((not kab[m]) or ka[m] or kb[m] for m in elems)
    if kind is K.I_REDUCED:
        ka2, ka = T.killed(R.mul(a, a)), T.killed(a)
        return all((not ka2[m]) or ka[m] for m in elems)
    if kind is K.I_COPRIME:
        IM = T.image(a)
        return IM == {0} or len(IM) == T.n
    if kind is K.IJ_COPRIME:
        IJM = T.image(R.mul(a, b))
        return IJM == T.image(a) or IJM == T.image(b)
    if kind is K.I_COREDUCED:
        return T.image(a) == T.image(R.mul(a, a))
    if kind is K.I_TORSION:
        return bool(_torsion_mask(T, a).all())
    if kind is K.I_COMPLETE:
        return lambda_signature(M, a, bound).size == T.n
    raise ValueError(f"{kind.value} is not a local predicate")


def ideal_representatives(ctx) -> list:
    """One generator per distinct ideal of a finite quotient ring, found element-wise."""
    if ctx.modulus is None:
        raise InfiniteIdealLattice(f"{ctx} has infinitely many ideals")
    R = ctx.base
    elems = list(ctx.elements())
    seen, reps = set(), []
    for r in elems:
        ideal = frozenset(ctx.reduce(R.mul(r, s)) for s in elems)
        if ideal not in seen:
            seen.add(ideal)
            reps.append(r)
    return reps


def global_predicate(M: PresentedModule, kind, bound: int = DEFAULT_BOUND) -> bool:
    from .predicates import GLOBAL_TO_LOCAL

    kind = PredicateKind(kind)
    local = GLOBAL_TO_LOCAL[kind]
    reps = ideal_representatives(M.context)
    if kind.needs_pair:
        return all(local_predicate(M, local, a, b, bound)
                   for a, b in itertools.combinations_with_replacement(reps, 2))
    return all(local_predicate(M, local, a, None, bound) for a in reps)


def elementwise_coprime(M: PresentedModule, bound: int = DEFAULT_BOUND) -> bool:
    """For every ring element r: rM = 0 or rM = M."""
    T = table(M, bound)
    for r in M.context.elements():
        image = T.image(r)
        if image != {0} and len(image) != T.n:
            return False
    return True


def check_witness(M: PresentedModule, kind, I, J, verdict: Verdict, bound: int = DEFAULT_BOUND) -> bool:
    """Re-check a failing verdict's witness against the definitions."""
    kind = PredicateKind(kind)
    if verdict.holds:
        return False
    if not kind.is_local:
        w = verdict.witness
        from .predicates import GLOBAL_TO_LOCAL

        local = GLOBAL_TO_LOCAL[kind]
        if kind.needs_pair:
            return not local_predicate(M, local, w[0], w[1], bound)
        return not local_predicate(M, local, w, None, bound)
    T = table(M, bound)
    R = M.context.base
    a = _scalar(I)
    b = _scalar(J) if J is not None else None
    w = verdict.witness

    def idx(x):
        return T.index[M.reduce(x)]

    if kind is K.I_PRIME:
        m = idx(w)
        return m != 0 and T.killed(a)[m] and not T.killed(a).all()
    if kind is K.IJ_PRIME:
        m = idx(w)
        return T.killed(R.mul(a, b))[m] and not T.killed(a)[m] and not T.killed(b)[m]
    if kind is K.I_REDUCED:
        m = idx(w)
        return T.killed(R.mul(a, a))[m] and not T.killed(a)[m]
    if kind is K.I_COPRIME:
        x, y = map(idx, w)
        IM = T.image(a)
        return x != 0 and x in IM and y not in IM
    if kind is K.IJ_COPRIME:
        x, y = map(idx, w)
        IJM = T.image(R.mul(a, b))
        return x in T.image(a) and x not in IJM and y in T.image(b) and y not in IJM
    if kind is K.I_COREDUCED:
        m = idx(w)
        return m in T.image(a) and m not in T.image(R.mul(a, a))
    if kind is K.I_TORSION:
        return not _torsion_mask(T, a)[idx(w)]
    if kind is K.I_COMPLETE:
        return not local_predicate(M, kind, a, None, bound)
    return False


# -- query front end ---------------------------------------------------

@dataclass(frozen=True)
class OracleQuery:
    target: str
    args: tuple
    bound: Optional[int] = None


_TARGETS = {
    "annihilator": (annihilator, DEFAULT_BOUND),
    "annihilator_ideal": (exponent, DEFAULT_BOUND),
    "scalar_submodule": (scalar_multiples, DEFAULT_BOUND),
    "gamma": (gamma, DEFAULT_BOUND),
    "lambda": (lambda_signature, DEFAULT_BOUND),
    "hom": (hom_signature, HOM_TENSOR_BOUND),
    "tensor": (tensor_signature, HOM_TENSOR_BOUND),
    "local_predicate": (local_predicate, DEFAULT_BOUND),
    "global_predicate": (global_predicate, DEFAULT_BOUND),
}


def oracle_evaluate(q: OracleQuery) -> Any:
    try:
        fn, default = _TARGETS[q.target]
    except KeyError:
        raise ValueError(f"unknown oracle target {q.target!r}") from None
    return fn(*q.args, bound=q.bound or default)
