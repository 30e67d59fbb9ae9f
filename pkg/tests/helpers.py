"""Shared checks used by unit and acceptance tests."""
import random

from locprime.linalg import Matrix, smith_normal_form
from locprime.ring import PolynomialRing


def random_matrix(rng: random.Random, R, rows: int, cols: int) -> Matrix:
    if isinstance(R, PolynomialRing):
        p = R.characteristic
        entry = lambda: R.coerce([rng.randrange(p) for _ in range(rng.randint(0, 5))])
    else:
        entry = lambda: rng.randint(-50, 50)
    # some structure: occasionally a zero row or a repeated row
    out = [[entry() for _ in range(cols)] for _ in range(rows)]
    if rows > 1 and rng.random() < 0.2:
        out[-1] = list(out[0])
    return Matrix.from_rows(R, out, cols)


def smith_problems(A: Matrix) -> list[str]:
    """Everything wrong with the Smith decomposition of A; empty when it checks out."""
    R = A.ring
    S = smith_normal_form(A)
    problems = []
    if S.U @ A @ S.V != S.D:
        problems.append("U*A*V != D")
    if not S.D.is_diagonal():
        problems.append("D not diagonal")
    for name, X in (("U", S.U), ("V", S.V)):
        if not R.is_unit(X.det()):
            problems.append(f"det {name} is not a unit")
    d = S.D.diagonal()
    for a, b in zip(d, d[1:]):
        if not R.divides(a, b):
            problems.append(f"{R.fmt(a)} does not divide {R.fmt(b)}")
    if any(R.canonical(x) != x for x in d):
        problems.append("diagonal not canonical")
    return problems
