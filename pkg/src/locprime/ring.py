"""Base Euclidean domains, ring contexts and principal-ideal arithmetic.

Two base domains are realised: the integers and univariate polynomials over
a prime field F_p.  Integer elements are plain Python ``int``; polynomial
elements are tuples of coefficients in ascending degree with no trailing
zeros (the zero polynomial is ``()``).  A :class:`RingContext` optionally
carries a modulus, in which case everything built on it lives over the
quotient ring ``base/(modulus)``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .errors import (
    ContextMismatch,
    ElementOutsideContext,
    InfiniteIdealLattice,
    NonPrimeCharacteristic,
    QuotientContextUnsupported,
    UnitOrZeroElement,
    UnitOrZeroModulus,
)

Poly = tuple
Element = Union[int, Poly]

INTEGERS = "Integers"
POLYNOMIALS = "PolynomialsOverPrimeField"


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class BaseRing:
    """Arithmetic of a Euclidean domain.  Subclasses fix the element encoding."""

    kind: str
    characteristic: Optional[int]
    zero: Element
    one: Element

    # -- arithmetic -----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def norm(self, a) -> int:
        """Euclidean size; only compared between nonzero elements."""
        raise NotImplementedError

    def normalize(self, a):
        """Return ``(c, u)`` with ``c = u*a`` the canonical associate, ``u`` a unit."""
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    # -- derived operations --------------------------------------------
    def canonical(self, a):
        return self.normalize(a)[0]

    def pow(self, a, k: int):
        result = self.one
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def divides(self, a, b) -> bool:
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.mod(b, a))

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ArithmeticError(f"{self.fmt(b)} does not divide {self.fmt(a)}")
        return q

    def gcd(self, a, b):
        while not self.is_zero(b):
            a, b = b, self.mod(a, b)
        return self.canonical(a)

    def xgcd(self, a, b):
        """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` canonical."""
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        t0, t1 = self.zero, self.one
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        g, u = self.normalize(r0)
        return g, self.mul(u, s0), self.mul(u, t0)

    def lcm(self, a, b):
        if self.is_zero(a) or self.is_zero(b):
            return self.zero
        return self.canonical(self.exact_div(self.mul(a, b), self.gcd(a, b)))

    def valuation(self, p, a) -> int:
        """Multiplicity of ``p`` in nonzero ``a`` by repeated division."""
        if self.is_zero(a):
            raise UnitOrZeroElement("valuation of zero is infinite")
        k = 0
        while True:
            q, r = self.divmod(a, p)
            if not self.is_zero(r):
                return k
            a, k = q, k + 1

    def quotient_size(self, d) -> Optional[int]:
        """Cardinality of ``base/(d)``; ``None`` when ``d`` is zero."""
        raise NotImplementedError

    def residues(self, d) -> Iterator:
        """Canonical remainders modulo nonzero ``d`` in enumeration order."""
        raise NotImplementedError

    def divisors(self, d) -> list:
        raise NotImplementedError

    def irreducibles(self) -> Iterator:
        """Canonical irreducibles in increasing norm order."""
        raise NotImplementedError

    def is_irreducible(self, e) -> bool:
        raise NotImplementedError

    def sort_key(self, a):
        raise NotImplementedError

    def fmt(self, a) -> str:
        raise NotImplementedError

    def to_json(self, a):
        raise NotImplementedError

    def name(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name()


@dataclass(frozen=True, repr=False)
class IntegerRing(BaseRing):
    kind: str = INTEGERS
    characteristic: Optional[int] = None

    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def divmod(self, a, b):
        return divmod(a, b)

    def norm(self, a):
        return abs(a)

    def normalize(self, a):
        return (a, 1) if a >= 0 else (-a, -1)

    def is_unit(self, a):
        return a == 1 or a == -1

    def pow(self, a, k):
        return a ** k

    def gcd(self, a, b):
        return math.gcd(a, b)

    def coerce(self, x):
        if isinstance(x, bool):
            raise ElementOutsideContext(f"not an integer: {x!r}")
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            try:
                return int(x.strip(), 10)
            except ValueError:
                pass
        raise ElementOutsideContext(f"not an integer: {x!r}")

    def from_int(self, n):
        return n

    def quotient_size(self, d):
        return abs(d) if d else None

    def residues(self, d):
        return iter(range(abs(d)))

    def divisors(self, d):
        d = abs(d)
        if d == 0:
            raise UnitOrZeroElement("zero has infinitely many divisors")
        small, large = [], []
        f = 1
        while f * f <= d:
            if d % f == 0:
                small.append(f)
                if f * f != d:
                    large.append(d // f)
            f += 1
        return small + large[::-1]

    def irreducibles(self):
        return (n for n in itertools.count(2) if _is_prime_int(n))

    def is_irreducible(self, e):
        return _is_prime_int(abs(e))

    def sort_key(self, a):
        return (abs(a), a)

    def fmt(self, a):
        return str(a)

    def to_json(self, a):
        return str(a)

    def name(self):
        return "Z"


def _trim(coeffs: list) -> Poly:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


# Small finite modules hit the same few products and divisions over and over.
@lru_cache(maxsize=1 << 16)
def _poly_mul(p: int, a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


@lru_cache(maxsize=1 << 16)
def _poly_divmod(p: int, a: Poly, b: Poly) -> tuple:
    inv = pow(b[-1], p - 2, p)
    rem = list(a)
    db = len(b) - 1
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c:
            f = (c * inv) % p
            quot[k - db] = f
            for j in range(db + 1):
                rem[k - db + j] = (rem[k - db + j] - f * b[j]) % p
    return _trim(quot), _trim(rem[:db])


@dataclass(frozen=True, repr=False)
class PolynomialRing(BaseRing):
    """F_p[x] with coefficient tuples in ascending degree."""

    characteristic: int = 2
    kind: str = POLYNOMIALS

    zero = ()
    one = (1,)

    def _trim(self, coeffs) -> Poly:
        coeffs = tuple(coeffs)
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        return coeffs[:n]

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        p = self.characteristic
        if len(a) < len(b):
            a, b = b, a
        out = [(x + y) % p for x, y in zip(a, b)]
        out += a[len(b):]
        return self._trim(out)

    def neg(self, a):
        p = self.characteristic
        return tuple((-c) % p for c in a)

    def sub(self, a, b):
        if not b:
            return a
        p = self.characteristic
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return self._trim((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        return _poly_mul(self.characteristic, a, b)

    def scale(self, c: int, a):
        p = self.characteristic
        return self._trim((c * x) % p for x in a)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return (), tuple(a)
        return _poly_divmod(self.characteristic, a, b)

    def norm(self, a):
        return len(a) - 1

    def normalize(self, a):
        if not a:
            return (), (1,)
        p = self.characteristic
        inv = pow(a[-1], p - 2, p)
        return self.scale(inv, a), (inv,)

    def is_unit(self, a):
        return len(a) == 1

    def coerce(self, x):
        if isinstance(x, (list, tuple)) and all(
            isinstance(c, int) and not isinstance(c, bool) for c in x
        ):
            return self._trim(c % self.characteristic for c in x)
        raise ElementOutsideContext(
            f"polynomial elements are coefficient arrays, got {x!r}"
        )

    def from_int(self, n):
        return self._trim([n % self.characteristic])

    def degree(self, a) -> int:
        return len(a) - 1

    def quotient_size(self, d):
        return self.characteristic ** (len(d) - 1) if d else None

    def residues(self, d):
        n = len(d) - 1
        p = self.characteristic
        for k in range(p ** n):
            digits = []
            for _ in range(n):
                k, r = divmod(k, p)
                digits.append(r)
            yield self._trim(digits)

    def monic(self, degree: int) -> Iterator[Poly]:
        p = self.characteristic
        for low in itertools.product(range(p), repeat=degree):
            yield tuple(reversed(low)) + (1,) if degree else (1,)

    def divisors(self, d):
        if not d:
            raise UnitOrZeroElement("zero has infinitely many divisors")
        out = []
        for deg in range(len(d)):
            out.extend(f for f in self.monic(deg) if not self.mod(d, f))
        return out

    def irreducibles(self):
        for deg in itertools.count(1):
            for f in self.monic(deg):
                if self.is_irreducible(f):
                    yield f

    def is_irreducible(self, e):
        deg = len(e) - 1
        if deg < 1:
            return False
        for k in range(1, deg // 2 + 1):
            for f in self.monic(k):
                if not self.mod(e, f):
                    return False
        return True

    def sort_key(self, a):
        return (len(a), tuple(reversed(a)))

    def fmt(self, a):
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms)

    def to_json(self, a):
        return list(a)

    def name(self):
        return f"F{self.characteristic}[x]"


ZZ = IntegerRing()


@lru_cache(maxsize=None)
def polynomial_ring(p: int) -> PolynomialRing:
    if not (_is_prime_int(p) and p < 2 ** 31):
        raise NonPrimeCharacteristic(f"characteristic must be a prime < 2^31, got {p}")
    return PolynomialRing(p)


@dataclass(frozen=True)
class RingContext:
    """A base domain with an optional modulus fixing the coefficient ring."""

    base: BaseRing
    modulus: Optional[Element] = None

    @property
    def is_quotient(self) -> bool:
        return self.modulus is not None

    def element(self, x) -> Element:
        return self.base.coerce(x)

    def reduce(self, a) -> Element:
        """Canonical residue of ``a`` modulo the modulus (identity in the base)."""
        if self.modulus is None:
            return a
        return self.base.mod(a, self.modulus)

    def normalize_generator(self, g) -> Element:
        R = self.base
        if self.modulus is None:
            return R.canonical(g)
        return R.gcd(g, self.modulus)

    def ideal(self, *gens) -> "Ideal":
        return ideal_from_generators(self, list(gens))

    @property
    def zero_ideal(self) -> "Ideal":
        return Ideal(self, self.normalize_generator(self.base.zero))

    @property
    def unit_ideal(self) -> "Ideal":
        return Ideal(self, self.base.one)

    def size(self) -> Optional[int]:
        if self.modulus is None:
            return None
        return self.base.quotient_size(self.modulus)

    def elements(self) -> Iterator[Element]:
        """All residues of the finite quotient ring."""
        if self.modulus is None:
            raise InfiniteIdealLattice(f"{self} is infinite")
        return self.base.residues(self.modulus)

    def without_modulus(self) -> "RingContext":
        return RingContext(self.base)

    def __str__(self) -> str:
        if self.modulus is None:
            return self.base.name()
        R = self.base
        if isinstance(R, IntegerRing):
            return f"Z/{self.modulus}"
        return f"{R.name()}/({R.fmt(self.modulus)})"


def make_context(kind: str, characteristic: Optional[int] = None, modulus=None) -> RingContext:
    if kind in (INTEGERS, "int", "Z"):
        if characteristic is not None:
            raise NonPrimeCharacteristic("the integers carry no characteristic")
        base: BaseRing = ZZ
    elif kind in (POLYNOMIALS, "poly"):
        if characteristic is None:
            raise NonPrimeCharacteristic("polynomial contexts need a characteristic")
        base = polynomial_ring(characteristic)
    else:
        raise ValueError(f"unknown ring kind {kind!r}")
    if modulus is None:
        return RingContext(base)
    m = base.coerce(modulus)
    if base.is_zero(m) or base.is_unit(m):
        raise UnitOrZeroModulus(f"modulus must be nonzero and non-unit, got {base.fmt(m)}")
    return RingContext(base, base.canonical(m))


@dataclass(frozen=True)
class Ideal:
    context: RingContext
    generator: Element

    @property
    def is_zero(self) -> bool:
        return self.generator == self.context.normalize_generator(self.context.base.zero)

    @property
    def is_unit(self) -> bool:
        return self.generator == self.context.base.one

    def __str__(self) -> str:
        return f"({self.context.base.fmt(self.generator)})"


def ideal_from_generators(ctx: RingContext, gens: Sequence) -> Ideal:
    if not gens:
        raise ValueError("an ideal needs at least one generator")
    R = ctx.base
    g = R.zero
    for x in gens:
        g = R.gcd(g, ctx.element(x))
    return Ideal(ctx, ctx.normalize_generator(g))


def _same_context(I: Ideal, J: Ideal) -> RingContext:
    if I.context != J.context:
        raise ContextMismatch(f"ideals live in {I.context} and {J.context}")
    return I.context


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    ctx = _same_context(I, J)
    return Ideal(ctx, ctx.normalize_generator(ctx.base.mul(I.generator, J.generator)))


def ideal_power(I: Ideal, k: int) -> Ideal:
    if k < 1:
        raise ValueError("ideal powers need a positive exponent")
    ctx = I.context
    return Ideal(ctx, ctx.normalize_generator(ctx.base.pow(I.generator, k)))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    ctx = _same_context(I, J)
    return Ideal(ctx, ctx.normalize_generator(ctx.base.gcd(I.generator, J.generator)))


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    ctx = _same_context(I, J)
    return Ideal(ctx, ctx.normalize_generator(ctx.base.lcm(I.generator, J.generator)))


def ideal_combine(op: str, I: Ideal, arg) -> Ideal:
    if op == "power":
        return ideal_power(I, arg)
    ops = {"product": ideal_product, "sum": ideal_sum, "intersection": ideal_intersection}
    try:
        return ops[op](I, arg)
    except KeyError:
        raise ValueError(f"unknown ideal operation {op!r}") from None


class Relation(enum.Enum):
    """Containment between two ideals or submodules, read from the first one."""

    EQUAL = "equal"
    SUPERSET = "superset"   # first contains second
    SUBSET = "subset"       # second contains first
    INCOMPARABLE = "incomparable"

    @classmethod
    def from_containments(cls, first_has_second: bool, second_has_first: bool) -> "Relation":
        if first_has_second and second_has_first:
            return cls.EQUAL
        if first_has_second:
            return cls.SUPERSET
        if second_has_first:
            return cls.SUBSET
        return cls.INCOMPARABLE


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """``I ⊇ J``."""
    ctx = _same_context(I, J)
    return ctx.base.divides(I.generator, J.generator)


def ideal_compare(I: Ideal, J: Ideal) -> Relation:
    return Relation.from_containments(ideal_contains(I, J), ideal_contains(J, I))


def smallest_irreducible_coprime(base: BaseRing, e) -> Element:
    for q in base.irreducibles():
        if base.is_unit(base.gcd(q, e)):
            return q
    raise AssertionError("unreachable: infinitely many irreducibles")


def enumerate_ideals(ctx: RingContext, exponent=None) -> list[Ideal]:
    """All ideals of a quotient context, or the finite reduction set of a base one.

    For a base context the caller supplies the exponent ``e`` of the torsion
    part of the module under test; the returned set is ``(0)``, every divisor
    of ``e`` and ``(q)`` for the smallest irreducible ``q`` coprime to ``e``.
    Any ideal acts on such a module exactly like one of these.
    """
    R = ctx.base
    if ctx.modulus is not None:
        gens = R.divisors(ctx.modulus)
    elif exponent is not None:
        e = R.canonical(R.coerce(exponent))
        if R.is_zero(e):
            raise UnitOrZeroElement("the torsion exponent is nonzero by definition")
        gens = R.divisors(e) + [smallest_irreducible_coprime(R, e), R.zero]
    else:
        raise InfiniteIdealLattice(f"{ctx} has infinitely many ideals; pass a reduction exponent")
    gens = sorted(set(gens), key=lambda g: (R.is_zero(g), R.sort_key(g)))
    return [Ideal(ctx, g) for g in gens]


def is_prime_element(ctx: RingContext, e) -> bool:
    if ctx.modulus is not None:
        raise QuotientContextUnsupported("irreducibility is decided in the base domain")
    R = ctx.base
    e = R.coerce(e)
    if R.is_zero(e) or R.is_unit(e):
        raise UnitOrZeroElement(f"{R.fmt(e)} is zero or a unit")
    return R.is_irreducible(e)


def is_prime_ideal(I: Ideal) -> bool:
    """Whether ``I`` is a prime ideal of its (possibly quotient) ring."""
    R = I.context.base
    g = I.generator
    if R.is_zero(g):
        return I.context.modulus is None
    if R.is_unit(g):
        return False
    return R.is_irreducible(g)
