"""Brute-force enumeration kernels for the oracle.

The Hom oracle walks every assignment of generator images in the target
module, pruning as soon as a relation is fully assigned.  That walk is the
one genuinely hot loop in the package, so it is compiled with numba when
available.  ``LOCPRIME_NUMBA=0`` forces the pure-numpy path, which
vectorises the innermost level instead.

All arrays are int64 indices into an element table of the target module:
``add[x, y]`` is the index of ``x + y`` and ``acts[c, x]`` the index of
``c * x`` for the c-th distinct relation coefficient.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("LOCPRIME_NUMBA", "1") not in ("0", "")


def _hom_count_loop(add, acts, coef, last, kill):
    n = add.shape[0]
    nrel, g = coef.shape
    nf = kill.shape[0]
    counts = np.zeros(nf + 1, dtype=np.int64)
    if g == 0:
        counts[:] = 1
        return counts
    sums = np.zeros((g + 1, nrel), dtype=np.int64)
    flags = np.ones((g + 1, nf), dtype=np.bool_)
    choice = np.full(g, -1, dtype=np.int64)
    j = 0
    while j >= 0:
        choice[j] += 1
        if choice[j] == n:
            choice[j] = -1
            j -= 1
            continue
        v = choice[j]
        ok = True
        for r in range(nrel):
            s = add[sums[j, r], acts[coef[r, j], v]]
            sums[j + 1, r] = s
            if last[r] == j and s != 0:
                ok = False
                break
        if not ok:
            continue
        for f in range(nf):
            flags[j + 1, f] = flags[j, f] and kill[f, v]
        if j == g - 1:
            counts[nf] += 1
            for f in range(nf):
                if flags[j + 1, f]:
                    counts[f] += 1
        else:
            j += 1
    return counts


def _hom_count_numpy(add, acts, coef, last, kill):
    n = add.shape[0]
    nrel, g = coef.shape
    nf = kill.shape[0]
    counts = np.zeros(nf + 1, dtype=np.int64)
    if g == 0:
        counts[:] = 1
        return counts

    def descend(j, sums, flags):
        # images of every candidate value for generator j, per relation
        new = add[sums[:, None], acts[coef[:, j]]]
        closing = last == j
        ok = np.all(new[closing] == 0, axis=0) if closing.any() else np.ones(n, dtype=np.bool_)
        if j == g - 1:
            counts[nf] += int(ok.sum())
            counts[:nf] += (flags[:, None] & kill & ok[None, :]).sum(axis=1)
            return
        for v in np.flatnonzero(ok):
            descend(j + 1, new[:, v], flags & kill[:, v])

    descend(0, np.zeros(nrel, dtype=np.int64), np.ones(nf, dtype=np.bool_))
    return counts


if USE_NUMBA:
    _hom_count_jit = numba.njit(cache=True)(_hom_count_loop)
else:
    _hom_count_jit = None


def hom_count(add, acts, coef, last, kill, backend: str | None = None):
    """Count homomorphisms, and those killed by each test scalar.

    Returns ``counts`` with ``counts[f]`` the number of homomorphisms whose
    images are all killed by scalar ``f`` and ``counts[-1]`` the total.
    """
    args = tuple(np.ascontiguousarray(a) for a in (add, acts, coef, last))
    kill = np.ascontiguousarray(kill, dtype=np.bool_)
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    if backend == "numba":
        if _hom_count_jit is None:
            raise RuntimeError("numba backend requested but unavailable")
        return _hom_count_jit(*args, kill)
    if backend == "numpy":
        return _hom_count_numpy(*args, kill)
    if backend == "python":
        return _hom_count_loop(*args, kill)
    raise ValueError(f"unknown backend {backend!r}")
