"""Locally prime and locally coprime modules over Euclidean domains.

Finitely presented modules over Z and F_p[x] (optionally modulo a fixed
element), the torsion and completion functors Γ_I and Λ_I, Hom, tensor and
localization, every local and global primeness predicate with witnesses,
an independent brute-force oracle and a seeded law-checking harness.
"""
from .errors import *  # noqa: F401,F403
from .functors import (
    LocalIdeal,
    LocalizedModule,
    NotRepresentable,
    completion,
    gamma,
    gamma_module,
    hom_module,
    hom_quotient,
    lambda_,
    localize,
    localize_ideal,
    tensor_module,
    tensor_quotient,
)
from .linalg import (
    Matrix,
    SmithDecomposition,
    hermite_form,
    hermite_form_and_kernel,
    right_kernel,
    smith_normal_form,
    solve_membership,
)
from .module import (
    InvariantFactors,
    PresentedModule,
    Submodule,
    annihilator_ideal,
    annihilator_submodule,
    colon_submodule,
    contains_submodule,
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
    submodule_sum,
)
from .predicates import (
    PredicateKind,
    Verdict,
    global_predicate,
    local_predicate,
    predicate_on_localization,
)
from .ring import (
    ZZ,
    Ideal,
    Relation,
    RingContext,
    enumerate_ideals,
    ideal_combine,
    ideal_compare,
    ideal_contains,
    ideal_from_generators,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_prime_element,
    is_prime_ideal,
    make_context,
    polynomial_ring,
)

__version__ = "0.1.0"
