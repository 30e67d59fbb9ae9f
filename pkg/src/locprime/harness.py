"""Seeded campaigns that check module-theoretic laws case by case.

Every law is an implication (or an equivalence) evaluated on sampled
``(context, modules, ideals)`` cases.  Case ``i`` of a campaign draws from
its own stream ``Random(f"{law}:{seed}:{i}")``, so a single failing case can
be regenerated from ``(law, seed, case_index)`` alone and two runs with the
same configuration produce identical reports apart from ``runtime``.
"""
from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Optional

from . import oracle
from .description import context_string, describe
from .errors import UnknownLaw
from .functors import NotRepresentable, gamma, gamma_module, hom_module, lambda_, tensor_module
from .module import (
    PresentedModule,
    Submodule,
    annihilator_ideal,
    annihilator_submodule,
    cyclic,
    from_invariants,
    present,
    quotient,
    scalar_submodule,
    submodule,
)
from .predicates import (
    PredicateKind,
    format_witness,
    global_predicate,
    local_predicate,
    predicate_on_localization,
)
from .ring import (
    Ideal,
    IntegerRing,
    RingContext,
    enumerate_ideals,
    ideal_power,
    make_context,
    smallest_irreducible_coprime,
)

K = PredicateKind


# -- configuration --------------------------------------------------------

@dataclass(frozen=True)
class SizeProfile:
    min_gens: int = 1
    max_gens: int = 4
    max_entry: int = 24       # |a| bound for integer entries
    max_degree: int = 3       # degree bound for polynomial entries
    finite: bool = False      # reject modules with a free part
    max_size: Optional[int] = None


PROFILES = {
    "default": SizeProfile(),
    "finite": SizeProfile(finite=True, max_size=4096),
    "small": SizeProfile(max_gens=3, max_entry=12, max_degree=2, finite=True, max_size=64),
}


def default_contexts() -> list[RingContext]:
    ctxs = [make_context("int")]
    ctxs += [make_context("int", None, n) for n in (4, 6, 8, 9, 12, 30, 36)]
    ctxs += [make_context("poly", 2), make_context("poly", 3)]
    ctxs += [make_context("poly", 2, [0, 0, 1]), make_context("poly", 2, [0, 1, 0, 1]),
             make_context("poly", 3, [0, 0, 1])]
    return ctxs


def family(ctx: RingContext) -> str:
    integer = isinstance(ctx.base, IntegerRing)
    if ctx.modulus is None:
        return "Z" if integer else "Fp[x]"
    return "Z/n" if integer else "Fp[x]/(f)"


@dataclass(frozen=True)
class CampaignConfig:
    law: str
    seed: int = 0
    case_count: int = 100
    size_profile: SizeProfile | str = "default"
    context_set: Optional[tuple] = None
    oracle_bound: int = oracle.DEFAULT_BOUND
    sweep: bool = True  # run the law's exhaustive sweep (if any) before the random cases

    def profile(self) -> SizeProfile:
        p = self.size_profile
        return PROFILES[p] if isinstance(p, str) else p

    def contexts(self) -> list[RingContext]:
        return list(self.context_set) if self.context_set else default_contexts()


@dataclass
class Violation:
    case_index: int
    claim: str
    expected: str
    got: str
    witness: Optional[str]
    case: dict

    def to_dict(self) -> dict:
        return {"case_index": self.case_index, "claim": self.claim, "expected": self.expected,
                "got": self.got, "witness": self.witness, "case": self.case}


@dataclass
class Report:
    law: str
    seed: int
    cases_run: int
    violations: list
    runtime: float
    oracle_cross_checks_run: int
    notes: dict = field(default_factory=dict)
    table: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, include_runtime: bool = True) -> dict:
        out = {
            "law": self.law,
            "seed": self.seed,
            "cases_run": self.cases_run,
            "violations": [v.to_dict() for v in self.violations],
            "oracle_cross_checks_run": self.oracle_cross_checks_run,
            "notes": dict(sorted(self.notes.items())),
            "status": "pass" if self.passed else "fail",
        }
        if self.table:
            out["table"] = self.table
        if include_runtime:
            out["runtime"] = round(self.runtime, 3)
        return out


# -- cases ----------------------------------------------------------------

@dataclass
class Case:
    context: RingContext
    modules: dict                  # name -> PresentedModule
    ideals: dict                   # name -> Ideal
    extra: dict = field(default_factory=dict)  # e.g. {"P": generator coordinates}

    @property
    def M(self) -> PresentedModule:
        return self.modules["M"]

    @property
    def I(self) -> Ideal:
        return self.ideals["I"]

    @property
    def J(self) -> Ideal:
        return self.ideals.get("J", self.ideals["I"])

    def describe(self) -> dict:
        R = self.context.base
        out = {"context": context_string(self.context)}
        for name, X in self.modules.items():
            d = describe(X)
            out[name] = d["module"]
        out["ring"] = describe(self.M)["ring"]
        out["ideals"] = {k: [R.to_json(I.generator)] for k, I in self.ideals.items()}
        for k, gens in self.extra.items():
            out[k] = [[R.to_json(x) for x in g] for g in gens]
        return out


@dataclass
class Outcome:
    failures: list = field(default_factory=list)   # (claim, expected, got, witness)
    oracle_checks: int = 0
    tags: list = field(default_factory=list)        # counters for the report notes

    def require(self, claim: str, hyp: bool, concl: bool, witness=None):
        if hyp:
            self.tags.append(f"hypothesis held: {claim}")
            if not concl:
                self.failures.append((claim, "true", "false", None if witness is None else str(witness)))

    def equal(self, claim: str, expected, got, witness=None):
        if expected != got:
            self.failures.append((claim, str(expected), str(got), None if witness is None else str(witness)))


# -- cached predicate calls ------------------------------------------------

@functools.lru_cache(maxsize=65536)
def lp(M: PresentedModule, kind: PredicateKind, I: Ideal, J: Optional[Ideal] = None) -> bool:
    return local_predicate(M, kind, I, J if kind.needs_pair else None).holds


@functools.lru_cache(maxsize=16384)
def gp(M: PresentedModule, kind: PredicateKind) -> bool:
    return global_predicate(M, kind).holds


GLOBAL_RANGE_LIMIT = 4096


def global_feasible(M: PresentedModule) -> bool:
    """Whether the quantifier range of a global predicate is small enough to walk."""
    ctx = M.context
    if ctx.modulus is not None:
        return True
    e = M.exponent()
    return ctx.base.quotient_size(e) <= GLOBAL_RANGE_LIMIT


# -- random generation ----------------------------------------------------

@functools.lru_cache(maxsize=None)
def _ring_elements(ctx: RingContext) -> tuple:
    return tuple(ctx.elements())


def random_element(rng: random.Random, ctx: RingContext, profile: SizeProfile):
    R = ctx.base
    if ctx.modulus is not None:
        return rng.choice(_ring_elements(ctx))
    if isinstance(R, IntegerRing):
        return rng.randint(-profile.max_entry, profile.max_entry)
    deg = rng.randint(-1, profile.max_degree)
    return R.coerce([rng.randrange(R.characteristic) for _ in range(deg + 1)])


def random_factor(rng: random.Random, ctx: RingContext, profile: SizeProfile):
    """A candidate invariant factor: any residue in a quotient, a nonzero non-unit otherwise."""
    R = ctx.base
    if ctx.modulus is not None:
        return rng.choice(_ring_elements(ctx))
    if isinstance(R, IntegerRing):
        return rng.randint(2, profile.max_entry)
    deg = rng.randint(1, profile.max_degree)
    p = R.characteristic
    return R.coerce([rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)])


def scramble(rng: random.Random, M: PresentedModule, profile: SizeProfile) -> PresentedModule:
    """An isomorphic presentation: relations times a random unimodular matrix, plus row mixing."""
    ctx, R, g = M.context, M.context.base, M.ngens
    rows = [list(r) for r in M.relations.rows]
    if g >= 2:
        small = replace(profile, max_entry=3, max_degree=1)
        for _ in range(g):
            i, j = rng.sample(range(g), 2)
            c = random_element(rng, ctx.without_modulus(), small)
            for r in rows:
                r[j] = R.add(r[j], R.mul(c, r[i]))
    if len(rows) >= 2:
        i, j = rng.sample(range(len(rows)), 2)
        rows[j] = [R.add(a, b) for a, b in zip(rows[j], rows[i])]
    return present(ctx, g, rows)


def _acceptable(M: PresentedModule, profile: SizeProfile) -> bool:
    if profile.finite and M.free_rank:
        return False
    if profile.max_size is not None:
        size = M.size()
        return size is not None and size <= profile.max_size
    return True


def generate_module(rng: random.Random, profile: SizeProfile | str, ctx: RingContext) -> PresentedModule:
    """Sample a module: a random relation matrix or an invariant-factor list, half each."""
    if isinstance(profile, str):
        profile = PROFILES[profile]
    g = rng.randint(profile.min_gens, profile.max_gens)
    for attempt in range(200):
        if attempt and attempt % 20 == 0:
            g = max(profile.min_gens, g - 1)
        if g == 0:
            M = from_invariants(ctx, [])
        elif rng.random() < 0.5:
            lo = g if profile.finite else 0
            nrows = rng.randint(lo, g + 1)
            rows = [[random_element(rng, ctx, profile) for _ in range(g)] for _ in range(nrows)]
            M = present(ctx, g, rows)
        else:
            free = 0
            if not profile.finite and ctx.modulus is None and rng.random() < 0.25:
                free = 1
            M = from_invariants(ctx, [random_factor(rng, ctx, profile) for _ in range(g - free)], free)
            if rng.random() < 0.5:
                M = scramble(rng, M, profile)
        if _acceptable(M, profile):
            return M
    return from_invariants(ctx, [])


def ideal_candidates(ctx: RingContext, M: PresentedModule) -> list[Ideal]:
    """Ideals worth testing against ``M``: all of them in a quotient, a reduction set otherwise."""
    if ctx.modulus is not None:
        return enumerate_ideals(ctx)
    R = ctx.base
    e = M.exponent()
    gens = {R.zero, R.one, smallest_irreducible_coprime(R, e)}
    gens.update(M.torsion_factors)
    if R.quotient_size(e) <= GLOBAL_RANGE_LIMIT:
        gens.update(R.divisors(e))
    gens = sorted(gens, key=lambda g: (R.is_zero(g), R.sort_key(g)))
    return [Ideal(ctx, ctx.normalize_generator(g)) for g in gens]


def sample_ideal(rng: random.Random, ctx: RingContext, M: PresentedModule, profile: SizeProfile) -> Ideal:
    if ctx.modulus is None and rng.random() < 0.25:
        return ctx.ideal(random_element(rng, ctx, profile))
    return rng.choice(ideal_candidates(ctx, M))


def random_submodule(rng: random.Random, M: PresentedModule, profile: SizeProfile) -> tuple:
    """Generators (coordinate tuples) of a random submodule of ``M``."""
    ctx = M.context
    k = rng.randint(0, 2)
    return tuple(M.reduce([random_element(rng, ctx, profile) for _ in range(M.ngens)]) for _ in range(k))


def prime_factors(ctx: RingContext, d) -> list:
    """Distinct irreducible factors (canonical) of a nonzero element of the base domain."""
    R = ctx.base
    d = R.canonical(d)
    out = []
    if R.is_zero(d):
        return out
    for q in R.irreducibles():
        if R.is_unit(d):
            break
        if R.norm(q) ** 2 > R.norm(d) and isinstance(R, IntegerRing):
            out.append(R.canonical(d))
            break
        if not isinstance(R, IntegerRing) and 2 * R.degree(q) > R.degree(d):
            out.append(R.canonical(d))
            break
        if R.divides(q, d):
            out.append(q)
            while R.divides(q, d):
                d = R.exact_div(d, q)
    return out


def relevant_primes(case: Case) -> list:
    """Primes dividing the torsion and the ideals, plus one coprime to all of them."""
    ctx = case.context
    R = ctx.base
    data = list(case.M.torsion_factors) + [I.generator for I in case.ideals.values()]
    ps = []
    for d in data:
        if not R.is_zero(d):
            for q in prime_factors(ctx, d):
                if q not in ps:
                    ps.append(q)
    prod = R.one
    for q in ps:
        prod = R.mul(prod, q)
    ps.append(smallest_irreducible_coprime(R, prod))
    return ps


# -- laws -------------------------------------------------------------------

Sampler = Callable[[random.Random, RingContext, SizeProfile, CampaignConfig], Optional[Case]]
Checker = Callable[[Case, CampaignConfig], Outcome]


@dataclass(frozen=True)
class Law:
    name: str
    sample: Sampler
    check: Checker
    contexts: Callable[[RingContext], bool] = lambda ctx: True
    finite: bool = False           # restrict sampling to finite modules
    oracle_sized: bool = False     # cap module size at the oracle bound
    sweep: Optional[Callable[[CampaignConfig], Iterator[Case]]] = None
    max_attempts: int = 1          # rejection-sampling budget per case


def _sample_basic(rng, ctx, profile, cfg, pair=True, sub=False) -> Case:
    M = generate_module(rng, profile, ctx)
    I = sample_ideal(rng, ctx, M, profile)
    ideals = {"I": I}
    if pair:
        ideals["J"] = sample_ideal(rng, ctx, M, profile)
    extra = {"P": random_submodule(rng, M, profile)} if sub else {}
    return Case(ctx, {"M": M}, ideals, extra)


def _sub(case: Case) -> Submodule:
    return submodule(case.M, case.extra.get("P", ()))


# chart of prime implications

def _check_chart_prime(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I, J, ctx = case.M, case.I, case.J, case.context
    out = Outcome()
    ip = lp(M, K.I_PRIME, I)
    out.require("IPrime(M,I) => IJPrime(M,I,J)", ip, lp(M, K.IJ_PRIME, I, J))
    out.require("IPrime(M,I) => IReduced(M,I)", ip, lp(M, K.I_REDUCED, I))
    out.require("IJPrime(M,I,J) => IJPrime(M,J,I)", lp(M, K.IJ_PRIME, I, J), lp(M, K.IJ_PRIME, J, I))
    if global_feasible(M):
        pr, wp = gp(M, K.PRIME), gp(M, K.WEAKLY_PRIME)
        out.require("Prime(M) => WeaklyPrime(M)", pr, wp)
        out.require("WeaklyPrime(M) => Reduced(M)", wp, gp(M, K.REDUCED))
        out.require("Prime(M) => IPrime(M,I)", pr, lp(M, K.I_PRIME, I))
    else:
        out.tags.append("global chain skipped: quantifier range too large")
    Q = quotient(M, _sub(case))
    A = annihilator_ideal(Q)
    out.require("IPrime(M/P,I) => IReduced(M/P,I)", lp(Q, K.I_PRIME, I), lp(Q, K.I_REDUCED, I))
    out.require("IJPrime(M/P,I,J) => IJPrime(R/(P:M),I,J)", lp(Q, K.IJ_PRIME, I, J),
                lp(cyclic(ctx, A.generator), K.IJ_PRIME, I, J))
    out.require("M/P is (P:M)-prime", True, lp(Q, K.I_PRIME, A))
    out.require("R/I is I-prime", True, lp(cyclic(ctx, I.generator), K.I_PRIME, I))
    return out


def _check_chart_coprime(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I, J = case.M, case.I, case.J
    out = Outcome()
    ic = lp(M, K.I_COPRIME, I)
    out.require("ICoprime(M,I) => IJCoprime(M,I,J)", ic, lp(M, K.IJ_COPRIME, I, J))
    out.require("ICoprime(M,I) => ICoreduced(M,I)", ic, lp(M, K.I_COREDUCED, I))
    if global_feasible(M):
        cp = gp(M, K.COPRIME)
        wc = gp(M, K.WEAKLY_COPRIME)
        out.require("Coprime(M) => WeaklyCoprime(M)", cp, wc)
        out.require("WeaklyCoprime(M) => Coreduced(M)", wc, gp(M, K.COREDUCED))
        out.require("Coprime(M) => ICoprime(M,I)", cp, ic)
        out.require("Coprime(M) => ICoprime(M,J)", cp, lp(M, K.I_COPRIME, J))
    else:
        out.tags.append("global chain skipped: quantifier range too large")
    return out


def _sweep_cyclic(cfg: CampaignConfig) -> Iterator[Case]:
    """Z/n over itself for 2 <= n <= 60 with every ordered pair of ideals."""
    for n in range(2, 61):
        ctx = make_context("int", None, n)
        M = from_invariants(ctx, [], 1)
        ideals = enumerate_ideals(ctx)
        for I, J in itertools.product(ideals, repeat=2):
            P = tuple(v for v in scalar_submodule(M, J).generators)
            yield Case(ctx, {"M": M}, {"I": I, "J": J}, {"P": P})


# closure laws

def _check_closure_sub(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I, J = case.M, case.I, case.J
    S = _sub(case).module()
    out = Outcome()
    out.require("IPrime(M,I) => IPrime(S,I)", lp(M, K.I_PRIME, I), lp(S, K.I_PRIME, I))
    out.require("IJPrime(M,I,J) => IJPrime(S,I,J)", lp(M, K.IJ_PRIME, I, J), lp(S, K.IJ_PRIME, I, J))
    return out


def _check_closure_img(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I, J = case.M, case.I, case.J
    Q = quotient(M, _sub(case))
    out = Outcome()
    out.require("ICoprime(M,I) => ICoprime(M/S,I)", lp(M, K.I_COPRIME, I), lp(Q, K.I_COPRIME, I))
    out.require("IJCoprime(M,I,J) => IJCoprime(M/S,I,J)", lp(M, K.IJ_COPRIME, I, J), lp(Q, K.IJ_COPRIME, I, J))
    return out


def _check_closure_loc(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I, J = case.M, case.I, case.J
    out = Outcome()
    primes = relevant_primes(case)
    R = case.context.base
    for kind in (K.I_PRIME, K.IJ_PRIME, K.I_COPRIME, K.IJ_COPRIME):
        if not lp(M, kind, I, J):
            continue
        for p in primes:
            v = predicate_on_localization(M, kind, I, J if kind.needs_pair else None, p)
            out.require(f"{kind.value}(M) => {kind.value}(M_p)", True, v.holds, f"p = {R.fmt(p)}: {v.evidence}")
    if global_feasible(M):
        for kind in (K.PRIME, K.WEAKLY_PRIME, K.COPRIME, K.WEAKLY_COPRIME):
            if not gp(M, kind):
                continue
            for p in primes:
                v = predicate_on_localization(M, kind, None, None, p)
                out.require(f"{kind.value}(M) => {kind.value}(M_p)", True, v.holds, f"p = {R.fmt(p)}: {v.evidence}")
    return out


def _check_functor_images(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I = case.M, case.I
    out = Outcome()
    if lp(M, K.I_PRIME, I):
        G = gamma_module(M, I)
        out.require("IPrime(M,I) => ICoprime(Gamma_I(M),I)", True, lp(G, K.I_COPRIME, I))
    if lp(M, K.I_COPRIME, I):
        L = lambda_(M, I)
        if isinstance(L, NotRepresentable):
            out.tags.append("lambda not representable")
        else:
            out.require("ICoprime(M,I) => IPrime(Lambda_I(M),I)", True, lp(L, K.I_PRIME, I))
    return out


def _check_annihilator_prime(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I = case.M, case.I
    out = Outcome()
    out.require("M is (0:_R M)-prime", True, lp(M, K.I_PRIME, annihilator_ideal(M)))
    Q = quotient(M, _sub(case))
    out.require("M/P is (P:_R M)-prime", True, lp(Q, K.I_PRIME, annihilator_ideal(Q)))
    out.require("R/I is I-prime", True, lp(cyclic(case.context, I.generator), K.I_PRIME, I))
    return out


def _check_torsion_corollary(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I = case.M, case.I
    out = Outcome()
    hyp = lp(M, K.I_PRIME, I) and not annihilator_submodule(M, I).is_zero
    out.require("IPrime(M,I) and (0:_M I) != 0 => ITorsion(M,I)", hyp, lp(M, K.I_TORSION, I))
    return out


def _check_global_coprime(case: Case, cfg: CampaignConfig) -> Outcome:
    M = case.M
    out = Outcome(oracle_checks=1)
    out.equal("elementwise coprime <=> idealwise coprime",
              oracle.elementwise_coprime(M, cfg.oracle_bound), gp(M, K.COPRIME))
    return out


# GM adjunction and MGM equivalence

def _split_factors(rng, ctx, a, profile, count: int, inside: bool) -> list:
    """Factors all dividing ``a`` (so IX = 0), or all coprime to ``a`` (so IX = X)."""
    R = ctx.base
    out = []
    for _ in range(200):
        if len(out) == count:
            break
        d = random_factor(rng, ctx, profile)
        if ctx.modulus is not None:
            d = R.gcd(d, ctx.modulus)
        if R.is_zero(d) or R.is_unit(d):
            continue
        if inside and not R.is_zero(a):
            d = R.gcd(d, a)
            if R.is_unit(d):
                continue
        if not inside and not R.is_unit(R.gcd(d, a)):
            continue
        out.append(d)
    return out


def _constructive(rng, ctx, I: Ideal, profile) -> PresentedModule:
    """A module killed by I or with IM = M: both I-prime and I-coprime (or on the coprime side)."""
    R = ctx.base
    inside = rng.random() < 0.5 or R.is_unit(I.generator)
    a = I.generator
    if ctx.modulus is not None and R.is_zero(a):
        a = ctx.modulus
    M = from_invariants(ctx, _split_factors(rng, ctx, a, profile, rng.randint(1, profile.max_gens), inside))
    return scramble(rng, M, profile) if rng.random() < 0.5 else M


def _idempotent_ideals(ctx: RingContext) -> list[Ideal]:
    if ctx.modulus is None:
        return [ctx.zero_ideal, ctx.unit_ideal]
    return [I for I in enumerate_ideals(ctx) if ideal_power(I, 2) == I]


def _sample_gm(rng, ctx, profile, cfg) -> Optional[Case]:
    route = rng.random()
    R = ctx.base
    if route < 0.4:
        # rejection sampling on fully random modules
        M = generate_module(rng, profile, ctx)
        I = sample_ideal(rng, ctx, M, profile)
        N = generate_module(rng, profile, ctx)
        if not (lp(M, K.I_COPRIME, I) and lp(N, K.I_PRIME, I)):
            return None
    elif route < 0.7 or ctx.modulus is None:
        # IM = IN = 0 or the coprime side, built from the ideal outward
        I = rng.choice(ideal_candidates(ctx, from_invariants(ctx, [random_factor(rng, ctx, profile)])))
        if R.is_zero(I.generator) and ctx.modulus is None:
            M = generate_module(rng, profile, ctx)
            N = generate_module(rng, profile, ctx)
        else:
            M = _constructive(rng, ctx, I, profile)
            N = _constructive(rng, ctx, I, profile)
    else:
        # idempotent ideals: any module is I-coreduced, and the coprime ones are plentiful
        I = rng.choice(_idempotent_ideals(ctx))
        M = generate_module(rng, profile, ctx)
        N = generate_module(rng, profile, ctx)
    if not (lp(M, K.I_COPRIME, I) and lp(N, K.I_PRIME, I)):
        return None
    return Case(ctx, {"M": M, "N": N}, {"I": I}, {})


def _check_gm(case: Case, cfg: CampaignConfig) -> Outcome:
    M, N, I = case.M, case.modules["N"], case.I
    out = Outcome()
    if not (lp(M, K.I_COPRIME, I) and lp(N, K.I_PRIME, I)):
        return out
    L = lambda_(M, I)
    if isinstance(L, NotRepresentable):
        out.failures.append(("Lambda_I(M) representable for I-coprime M", "module", "NotRepresentable", L.reason))
        return out
    G = gamma_module(N, I)
    left, right = hom_module(L, N), hom_module(M, G)
    out.require("Hom(Lambda_I M, N) ~ Hom(M, Gamma_I N)", True, left.invariants == right.invariants,
                f"{left} vs {right}")
    small = all(X.size() is not None and X.size() <= oracle.HOM_TENSOR_BOUND for X in (N, G)) and \
        all(X.free_rank == 0 for X in (L, M))
    if small:
        R = case.context.base
        fs = R.divisors(R.lcm(oracle.exponent(N), oracle.exponent(G)))
        sl, sr = oracle.hom_signature(L, N, fs=fs), oracle.hom_signature(M, G, fs=fs)
        out.oracle_checks += 1
        out.equal("oracle: Hom(Lambda_I M, N) ~ Hom(M, Gamma_I N)", sl.counts(), sr.counts())
        out.equal("oracle: Hom(Lambda_I M, N) matches fast path", True, oracle.matches(left, sl))
    return out


def _check_mgm(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I = case.M, case.I
    out = Outcome()
    five = {
        "IPrime and ITorsion": lp(M, K.I_PRIME, I) and lp(M, K.I_TORSION, I),
        "ICoprime and IComplete": lp(M, K.I_COPRIME, I) and lp(M, K.I_COMPLETE, I),
        "IReduced and ITorsion": lp(M, K.I_REDUCED, I) and lp(M, K.I_TORSION, I),
        "ICoreduced and IComplete": lp(M, K.I_COREDUCED, I) and lp(M, K.I_COMPLETE, I),
    }
    im_zero = scalar_submodule(M, I).is_zero
    if im_zero:
        out.tags.append("IM = 0")
    for name, v in five.items():
        out.equal(f"{name} <=> IM = 0", im_zero, v)
    return out


def _sample_mgm(rng, ctx, profile, cfg) -> Case:
    # a third of the cases are built to satisfy IM = 0 so both sides get exercised
    if rng.random() < 1 / 3:
        I = rng.choice(ideal_candidates(ctx, from_invariants(ctx, [random_factor(rng, ctx, profile)])))
        a = I.generator
        R = ctx.base
        if ctx.modulus is not None and R.is_zero(a):
            a = ctx.modulus
        if not R.is_zero(a):
            M = from_invariants(ctx, _split_factors(rng, ctx, a, profile, rng.randint(1, profile.max_gens), True))
            return Case(ctx, {"M": M}, {"I": I}, {})
    return _sample_basic(rng, ctx, profile, cfg, pair=False)


# Hom transfers

def _sample_hom(rng, ctx, profile, cfg) -> Case:
    if rng.random() < 0.5:
        M = generate_module(rng, profile, ctx)
        I = sample_ideal(rng, ctx, M, profile)
    else:
        I = rng.choice(ideal_candidates(ctx, from_invariants(ctx, [random_factor(rng, ctx, profile)])))
        R = ctx.base
        if R.is_zero(I.generator) and ctx.modulus is None:
            M = generate_module(rng, profile, ctx)
        else:
            M = _constructive(rng, ctx, I, profile)
    J = sample_ideal(rng, ctx, M, profile)
    N = generate_module(rng, profile, ctx)
    return Case(ctx, {"M": M, "N": N}, {"I": I, "J": J}, {"k": ((rng.randint(1, 2),),)})


def _injective(case: Case) -> PresentedModule:
    return from_invariants(case.context, [], case.extra.get("k", ((1,),))[0][0])


def _check_hom_fwd(case: Case, cfg: CampaignConfig) -> Outcome:
    M, N, I, J = case.M, case.modules["N"], case.I, case.J
    out = Outcome()
    H = hom_module(M, N)
    out.require("IJCoprime(M,I,J) => IJPrime(Hom(M,N),I,J)", lp(M, K.IJ_COPRIME, I, J), lp(H, K.IJ_PRIME, I, J))
    if global_feasible(M) and global_feasible(H):
        out.require("Coprime(M) => Prime(Hom(M,N))", gp(M, K.COPRIME), gp(H, K.PRIME))
    if case.context.modulus is not None:
        # R^k over a finite principal ideal ring is an injective cogenerator
        E = _injective(case)
        HE = hom_module(M, E)
        out.require("IJPrime(Hom(M,E),I,J) => IJCoprime(M,I,J) for E injective cogenerator",
                    lp(HE, K.IJ_PRIME, I, J), lp(M, K.IJ_COPRIME, I, J))
        out.require("Prime(Hom(M,E)) => Coprime(M) for E injective cogenerator",
                    gp(HE, K.PRIME), gp(M, K.COPRIME))
    return out


def _check_hom_inj(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I, J = case.M, case.I, case.J
    E = _injective(case)
    out = Outcome()
    HE = hom_module(M, E)
    out.require("IJPrime(M,I,J) => IJCoprime(Hom(M,E),I,J) for E injective",
                lp(M, K.IJ_PRIME, I, J), lp(HE, K.IJ_COPRIME, I, J))
    out.require("Prime(M) => Coprime(Hom(M,E))", gp(M, K.PRIME), gp(HE, K.COPRIME))
    # E is an injective cogenerator and a progenerator at once
    out.require("IReduced(E,I) => ICoreduced(E,I)", lp(E, K.I_REDUCED, I), lp(E, K.I_COREDUCED, I))
    out.require("IJPrime(E,I,J) => IJCoprime(E,I,J)", lp(E, K.IJ_PRIME, I, J), lp(E, K.IJ_COPRIME, I, J))
    out.require("ICoreduced(E,I) => IReduced(E,I)", lp(E, K.I_COREDUCED, I), lp(E, K.I_REDUCED, I))
    out.require("IJCoprime(E,I,J) => IJPrime(E,I,J)", lp(E, K.IJ_COPRIME, I, J), lp(E, K.IJ_PRIME, I, J))
    out.require("Reduced(E) => Coreduced(E)", gp(E, K.REDUCED), gp(E, K.COREDUCED))
    out.require("WeaklyPrime(E) => WeaklyCoprime(E)", gp(E, K.WEAKLY_PRIME), gp(E, K.WEAKLY_COPRIME))
    out.require("Coreduced(E) => Reduced(E)", gp(E, K.COREDUCED), gp(E, K.REDUCED))
    out.require("WeaklyCoprime(E) => WeaklyPrime(E)", gp(E, K.WEAKLY_COPRIME), gp(E, K.WEAKLY_PRIME))
    return out


# oracle comparisons

def _sample_oracle(rng, ctx, profile, cfg) -> Case:
    case = _sample_basic(rng, ctx, profile, cfg, pair=True)
    small = replace(profile, max_size=oracle.HOM_TENSOR_BOUND)
    case.modules["N"] = generate_module(rng, small, ctx)
    return case


def _characterizations(case: Case, cfg: CampaignConfig, out: Outcome):
    M, I, J, bound = case.M, case.I, case.J, cfg.oracle_bound
    for kind in (K.I_PRIME, K.IJ_PRIME, K.I_REDUCED, K.I_COPRIME, K.IJ_COPRIME,
                 K.I_COREDUCED, K.I_TORSION, K.I_COMPLETE):
        Jk = J if kind.needs_pair else None
        v = local_predicate(M, kind, I, Jk)
        expected = oracle.local_predicate(M, kind, I, Jk, bound)
        out.oracle_checks += 1
        out.equal(f"{kind.value} fast path == definition", expected, v.holds, v.witness)
        if not v.holds:
            out.equal(f"{kind.value} witness re-checks", True, oracle.check_witness(M, kind, I, Jk, v, bound),
                      v.witness)
    if case.context.modulus is not None:
        for kind in (K.PRIME, K.WEAKLY_PRIME, K.REDUCED, K.COPRIME, K.WEAKLY_COPRIME, K.COREDUCED):
            v = global_predicate(M, kind)
            out.oracle_checks += 1
            out.equal(f"{kind.value} fast path == definition", oracle.global_predicate(M, kind, bound), v.holds)
            if not v.holds:
                out.equal(f"{kind.value} witness re-checks", True,
                          oracle.check_witness(M, kind, None, None, v, bound), v.witness)
        out.oracle_checks += 1
        out.equal("elementwise coprime <=> idealwise coprime",
                  oracle.elementwise_coprime(M, bound), gp(M, K.COPRIME))


def _check_characterization(case: Case, cfg: CampaignConfig) -> Outcome:
    out = Outcome()
    _characterizations(case, cfg, out)
    return out


def _functor_checks(case: Case, cfg: CampaignConfig, out: Outcome):
    M, I, bound = case.M, case.I, cfg.oracle_bound
    a = I.generator
    out.oracle_checks += 6
    out.equal("annihilator (0:_M I)", oracle.annihilator(M, a, bound),
              frozenset(annihilator_submodule(M, I).elements()))
    out.equal("scalar submodule IM", oracle.scalar_multiples(M, a, bound),
              frozenset(scalar_submodule(M, I).elements()))
    out.equal("torsion Gamma_I(M)", oracle.gamma(M, a, bound), frozenset(gamma(M, I).elements()))
    out.equal("annihilator ideal (0:_R M)", oracle.exponent(M, bound), annihilator_ideal(M).generator)
    L = lambda_(M, I)
    sig = oracle.lambda_signature(M, a, bound)
    out.equal("completion Lambda_I(M)", True, not isinstance(L, NotRepresentable) and oracle.matches(L, sig), sig)
    N = case.modules.get("N")
    if N is not None and N.size() <= oracle.HOM_TENSOR_BOUND:
        sig = oracle.hom_signature(M, N)
        out.equal("Hom(M,N)", True, oracle.matches(hom_module(M, N), sig), sig)
        if M.size() <= oracle.HOM_TENSOR_BOUND:
            out.oracle_checks += 1
            sig = oracle.tensor_signature(M, N)
            out.equal("M tensor N", True, oracle.matches(tensor_module(M, N), sig), sig)


def _check_oracle(case: Case, cfg: CampaignConfig) -> Outcome:
    out = Outcome()
    _functor_checks(case, cfg, out)
    _characterizations(case, cfg, out)
    return out


def invariant_chains(ctx: RingContext, bound: int) -> Iterator[tuple]:
    """Every finite module up to isomorphism with at most ``bound`` elements, as d1 | d2 | ..."""
    R = ctx.base
    if ctx.modulus is not None:
        pool = [d for d in R.divisors(ctx.modulus) if not R.is_unit(d)]
    elif isinstance(R, IntegerRing):
        pool = list(range(2, bound + 1))
    else:
        pool = [f for deg in range(1, 8) if R.characteristic ** deg <= bound for f in R.monic(deg)]

    def extend(chain, size):
        yield chain
        last = chain[-1] if chain else None
        for d in pool:
            s = size * R.quotient_size(d)
            if s > bound:
                continue
            if last is not None and not R.divides(last, d):
                continue
            yield from extend(chain + (d,), s)

    yield from extend((), 1)


def _sweep_small(cfg: CampaignConfig) -> Iterator[Case]:
    """Every module of at most 16 elements in each context against every candidate ideal.

    The second ideal and the second module rotate through their candidates.
    """
    for ctx in cfg.contexts():
        chains = list(invariant_chains(ctx, 16))
        for c, chain in enumerate(chains):
            M = from_invariants(ctx, chain)
            ideals = ideal_candidates(ctx, M)
            for k, I in enumerate(ideals):
                J = ideals[(k + c + 1) % len(ideals)]
                N = from_invariants(ctx, chains[(c + k) % len(chains)])
                yield Case(ctx, {"M": M, "N": N}, {"I": I, "J": J}, {})


def _check_lambda_contract(case: Case, cfg: CampaignConfig) -> Outcome:
    M, I = case.M, case.I
    out = Outcome()
    L = lambda_(M, I)
    if M.free_rank and not (I.is_zero or I.is_unit):
        out.equal("Lambda_I(M) NotRepresentable for free M and proper nonzero I", True,
                  isinstance(L, NotRepresentable))
        return out
    out.equal("Lambda_I(M) representable", True, not isinstance(L, NotRepresentable), L)
    if M.free_rank == 0 and M.size() <= cfg.oracle_bound and not isinstance(L, NotRepresentable):
        out.oracle_checks += 1
        sig = oracle.lambda_signature(M, I.generator, cfg.oracle_bound)
        out.equal("Lambda_I(M) equals the inverse limit", True, oracle.matches(L, sig), sig)
    return out


def _sweep_lambda(cfg: CampaignConfig) -> Iterator[Case]:
    Z = make_context("int")
    yield Case(Z, {"M": from_invariants(Z, [], 1)}, {"I": Z.ideal(2)}, {})


# pinned examples

@dataclass(frozen=True)
class Pinned:
    example: str
    context: RingContext
    factors: tuple
    free_rank: int
    kind: PredicateKind
    I: object
    J: object
    expected: bool


def pinned_table() -> list[Pinned]:
    F2 = make_context("poly", 2)
    Z = make_context("int")
    Z6 = make_context("int", None, 6)
    Z5 = make_context("int", None, 5)
    x, x2 = (0, 1), (0, 0, 1)
    return [
        Pinned("exIp-P", F2, (x2,), 0, K.I_PRIME, x2, None, True),
        Pinned("exIp-P", F2, (x2,), 0, K.IJ_PRIME, x2, x, True),
        Pinned("exIp-P", F2, (x2,), 0, K.I_PRIME, x, None, False),
        Pinned("exIp-P", F2, (x2,), 0, K.PRIME, None, None, False),
        Pinned("exIp-P", F2, (x2,), 0, K.WEAKLY_PRIME, None, None, False),
        Pinned("exIr-Ip", Z6, (), 1, K.I_REDUCED, 3, None, True),
        Pinned("exIr-Ip", Z6, (), 1, K.I_PRIME, 3, None, False),
        Pinned("exICp1", Z, (6,), 0, K.I_COPRIME, 6, None, True),
        Pinned("exICp1", Z, (6,), 0, K.I_COPRIME, 2, None, False),
        Pinned("exICp1", Z, (6,), 0, K.COPRIME, None, None, False),
        Pinned("exIcp3", Z, (4,), 0, K.IJ_COPRIME, 4, 3, True),
        Pinned("exIcp3", Z, (4,), 0, K.I_COREDUCED, 2, None, False),
        Pinned("exIcp3", Z, (4,), 0, K.WEAKLY_COPRIME, None, None, False),
        Pinned("exIJCp-ICp", Z, (), 1, K.IJ_COPRIME, 2, 1, True),
        Pinned("exIJCp-ICp", Z, (), 1, K.I_COPRIME, 2, None, False),
        Pinned("exIcor-Icp", Z6, (), 1, K.I_COREDUCED, 3, None, True),
        Pinned("exIcor-Icp", Z6, (), 1, K.I_COPRIME, 3, None, False),
        Pinned("trivially 0-prime", Z6, (), 1, K.I_PRIME, 0, None, True),
        Pinned("vacuously R-prime", Z6, (), 1, K.I_PRIME, 1, None, True),
        Pinned("simple module", Z5, (), 1, K.PRIME, None, None, True),
        Pinned("integers", Z, (), 1, K.PRIME, None, None, True),
        Pinned("Z/6 not prime", Z6, (), 1, K.PRIME, None, None, False),
    ]


def evaluate_pinned(row: Pinned):
    M = from_invariants(row.context, row.factors, row.free_rank)
    if row.kind.is_local:
        I = row.context.ideal(row.I)
        J = row.context.ideal(row.J) if row.J is not None else None
        return M, I, J, local_predicate(M, row.kind, I, J)
    return M, None, None, global_predicate(M, row.kind)


def _run_pinned(cfg: CampaignConfig, report: Report):
    for idx, row in enumerate(pinned_table()):
        M, I, J, v = evaluate_pinned(row)
        ideals = ", ".join(str(X) for X in (I, J) if X is not None)
        report.table.append({
            "example": row.example, "context": context_string(row.context), "module": str(M),
            "predicate": row.kind.value, "ideals": ideals, "expected": row.expected, "got": v.holds,
            "witness": format_witness(M, row.kind, v.witness),
        })
        report.cases_run += 1
        if v.holds != row.expected:
            report.violations.append(Violation(idx, f"{row.example}: {row.kind.value}({ideals})",
                                               str(row.expected), str(v.holds), None,
                                               {"context": context_string(row.context)}))
    # the annihilator in exIr-Ip, read element by element
    Z6 = make_context("int", None, 6)
    M = from_invariants(Z6, [], 1)
    got = sorted(x[0] for x in annihilator_submodule(M, Z6.ideal(3)).elements())
    report.table.append({"example": "exIr-Ip", "context": "Z/6", "module": str(M),
                         "predicate": "(0:_M I)", "ideals": "(3)", "expected": [0, 2, 4], "got": got,
                         "witness": None})
    report.cases_run += 1
    if got != [0, 2, 4]:
        report.violations.append(Violation(len(report.table), "exIr-Ip: (0:_M 3Z_6)", "[0, 2, 4]",
                                           str(got), None, {"context": "Z/6"}))


def _is_base(ctx: RingContext) -> bool:
    return ctx.modulus is None


def _is_quotient(ctx: RingContext) -> bool:
    return ctx.modulus is not None


LAWS: dict[str, Law] = {
    law.name: law
    for law in [
        Law("chart_prime", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, sub=True), _check_chart_prime,
            sweep=_sweep_cyclic),
        Law("chart_coprime", _sample_basic, _check_chart_coprime, sweep=_sweep_cyclic),
        Law("closure_sub", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, sub=True), _check_closure_sub),
        Law("closure_img", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, sub=True), _check_closure_img),
        Law("closure_loc", _sample_basic, _check_closure_loc, contexts=_is_base),
        Law("functor_images", _sample_mgm, _check_functor_images),
        Law("gm_adjunction", _sample_gm, _check_gm, finite=True, max_attempts=50),
        Law("mgm_equivalence", _sample_mgm, _check_mgm),
        Law("hom_transfer_fwd", _sample_hom, _check_hom_fwd, finite=True),
        Law("hom_transfer_inj", _sample_hom, _check_hom_inj, contexts=_is_quotient),
        Law("characterization_xcheck", _sample_basic, _check_characterization, finite=True, oracle_sized=True),
        Law("oracle_equivalence", _sample_oracle, _check_oracle, finite=True, oracle_sized=True,
            sweep=_sweep_small),
        Law("annihilator_prime", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, pair=False, sub=True),
            _check_annihilator_prime),
        Law("torsion_corollary", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, pair=False),
            _check_torsion_corollary),
        Law("global_coprime", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, pair=False),
            _check_global_coprime, contexts=_is_quotient, finite=True, oracle_sized=True),
        Law("lambda_contract", lambda r, c, p, cfg: _sample_basic(r, c, p, cfg, pair=False),
            _check_lambda_contract, sweep=_sweep_lambda),
        Law("pinned_examples", lambda r, c, p, cfg: None, lambda case, cfg: Outcome()),
    ]
}

LAW_NAMES = tuple(LAWS)


# -- running ---------------------------------------------------------------

def _shrink(law: Law, case: Case, cfg: CampaignConfig) -> tuple[Case, bool]:
    """Divide invariant factors by their prime factors while the violation persists."""
    if case.extra.get("P"):
        return case, False
    shrunk = False
    progress = True
    while progress:
        progress = False
        for name, X in case.modules.items():
            if X.context.modulus is not None:
                factors = [X.context.base.gcd(d, X.context.modulus) for d in X.torsion_factors]
            else:
                factors = list(X.torsion_factors)
            R = X.context.base
            for i, d in enumerate(factors):
                for q in prime_factors(X.context.without_modulus(), d):
                    smaller = factors[:i] + [R.exact_div(d, q)] + factors[i + 1:]
                    Y = from_invariants(X.context, [f for f in smaller if not R.is_unit(f)], X.free_rank)
                    trial = Case(case.context, {**case.modules, name: Y}, case.ideals, case.extra)
                    try:
                        failed = bool(law.check(trial, cfg).failures)
                    except Exception:  # a shrunk case that no longer evaluates is not a witness
                        failed = False
                    if failed:
                        case, shrunk, progress = trial, True, True
                        break
                if progress:
                    break
            if progress:
                break
    return case, shrunk


def _case_streams(cfg: CampaignConfig, law: Law) -> Iterator[tuple[int, RingContext, random.Random]]:
    """Round-robin over context families, then over the contexts in each family."""
    ctxs = [c for c in cfg.contexts() if law.contexts(c)]
    fams: dict[str, list] = {}
    for c in ctxs:
        fams.setdefault(family(c), []).append(c)
    groups = list(fams.values())
    for i in itertools.count():
        if not groups:
            return
        g = groups[i % len(groups)]
        yield i, g[(i // len(groups)) % len(g)], random.Random(f"{law.name}:{cfg.seed}:{i}")


def run_campaign(cfg: CampaignConfig) -> Report:
    try:
        law = LAWS[cfg.law]
    except KeyError:
        raise UnknownLaw(cfg.law) from None
    start = time.perf_counter()
    report = Report(cfg.law, cfg.seed, 0, [], 0.0, 0)
    tags: dict[str, int] = {}

    def record(index: int, case: Case, out: Outcome):
        report.cases_run += 1
        report.oracle_cross_checks_run += out.oracle_checks
        for t in out.tags:
            tags[t] = tags.get(t, 0) + 1
        if out.failures:
            small, shrunk = _shrink(law, case, cfg)
            final = law.check(small, cfg) if shrunk else out
            desc = small.describe()
            desc.update({"law": cfg.law, "seed": cfg.seed, "case_index": index, "shrunk": shrunk})
            for claim, expected, got, witness in (final.failures or out.failures):
                report.violations.append(Violation(index, claim, expected, got, witness, desc))

    if cfg.law == "pinned_examples":
        _run_pinned(cfg, report)
    else:
        if cfg.sweep and law.sweep is not None:
            for j, case in enumerate(law.sweep(cfg)):
                record(-1 - j, case, law.check(case, cfg))
            tags["sweep cases"] = report.cases_run
        profile = cfg.profile()
        if law.finite:
            profile = replace(profile, finite=True, max_size=profile.max_size or 4096)
        if law.oracle_sized:
            profile = replace(profile, max_size=min(profile.max_size or cfg.oracle_bound, cfg.oracle_bound))
        done = rejected = 0
        streams = _case_streams(cfg, law)
        while done < cfg.case_count:
            try:
                i, ctx, rng = next(streams)
            except StopIteration:
                report.notes["no applicable contexts"] = True
                break
            case = None
            for _ in range(law.max_attempts):
                case = law.sample(rng, ctx, profile, cfg)
                if case is not None:
                    break
                rejected += 1
            if case is None:
                if i > 50 * max(cfg.case_count, 1):
                    report.notes["gave up after attempts"] = i
                    break
                continue
            record(i, case, law.check(case, cfg))
            done += 1
        if rejected:
            tags["rejected samples"] = rejected
    report.violations.sort(key=lambda v: (v.case_index, v.claim))
    report.notes.update(tags)
    report.runtime = time.perf_counter() - start
    return report
