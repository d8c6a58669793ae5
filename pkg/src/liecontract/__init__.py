"""Exact Lie algebra contractions and polynomial Casimir invariants."""

from .algebra import (
    AlgebraElement,
    BasisChange,
    LieAlgebra,
    abelian,
    bracket,
    change_basis,
    dumps_algebra,
    jacobi_check,
    load_algebra,
    loads_algebra,
    make_algebra,
    same_structure,
    save_algebra,
    structure_differences,
    subalgebra,
    trivial_central_extension,
)
from .catalog import builtin_algebra, builtin_names, list_builtins, load_builtin
from .contraction import (
    GradedScaling,
    ScaledAlgebra,
    contract,
    contract_and_compare,
    contraction_limit,
    parse_relabel,
    parse_scale,
    rescale,
)
from .errors import *  # noqa: F401,F403
from .invariants import (
    ContractedInvariant,
    DiffOperator,
    InvariantBasis,
    coadjoint_operator,
    coadjoint_operators,
    contract_invariant,
    evaluate_at_rest,
    invariant_count,
    invariant_ledger,
    invariant_space,
    is_invariant,
    new_invariants,
)
from .linalg import RationalMatrix, generic_rank, nullspace
from .poly import (
    EpsilonSeries,
    MultiPoly,
    eps_coefficient,
    eps_limit,
    format_poly,
    parse_poly,
    poly_add,
    poly_mul,
    poly_partial,
    poly_substitute,
)
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"
