"""Exact invariant theory for cyclic groups of prime order over F_p.

Build module specs with `parse_module_spec`, then compute graded
invariant bases, Noether numbers, coinvariant Hilbert functions and
lead-term certificates; everything is exact linear algebra mod p.
"""

__version__ = "0.1.0"

from .action import (
    build_F,
    build_F_transfer_expansion,
    delta,
    is_in_A,
    lower_bound_witness,
    orbit_product,
    sigma,
    sigma_power,
    transfer,
)
from .coinv import (
    CertificateReport,
    CoinvariantReport,
    coinvariant_bound,
    coinvariant_profile,
    hilbert_ideal_dimension,
    leadterm_certificate,
)
from .engine import (
    DEFAULT_COLUMN_CAP,
    GradedInvariantBasis,
    InvariantEngine,
    NoetherReport,
    decomposable_dimension,
    engine_for,
    invariant_basis,
    invariant_dimension_bruteforce,
    is_indecomposable,
    noether_number,
)
from .errors import (
    AmbientMismatchError,
    BlockTooLargeError,
    ModuleSpecSyntaxError,
    PreconditionError,
    SizeBudgetError,
    TheoremViolationError,
    ZeroPolynomialError,
    ZpinvError,
)
from .expected import BUILTIN_CATALOG, CatalogEntry, ExpectedBeta, expected_beta
from .field import FpScalar, is_prime
from .linalg import Echelon, FpMatrix, kernel_basis, rank
from .modspec import ModuleSpec, VariableId, parse_module_spec
from .monomial import Monomial, enumerate_monomials, monomial_count
from .polynomial import Polynomial, lead_term, poly_arith

__all__ = [
    "AmbientMismatchError",
    "BUILTIN_CATALOG",
    "BlockTooLargeError",
    "CatalogEntry",
    "CertificateReport",
    "CoinvariantReport",
    "DEFAULT_COLUMN_CAP",
    "Echelon",
    "ExpectedBeta",
    "FpMatrix",
    "FpScalar",
    "GradedInvariantBasis",
    "InvariantEngine",
    "ModuleSpec",
    "ModuleSpecSyntaxError",
    "Monomial",
    "NoetherReport",
    "Polynomial",
    "PreconditionError",
    "SizeBudgetError",
    "TheoremViolationError",
    "VariableId",
    "ZeroPolynomialError",
    "ZpinvError",
    "build_F",
    "build_F_transfer_expansion",
    "coinvariant_bound",
    "coinvariant_profile",
    "decomposable_dimension",
    "delta",
    "engine_for",
    "enumerate_monomials",
    "expected_beta",
    "hilbert_ideal_dimension",
    "invariant_basis",
    "invariant_dimension_bruteforce",
    "is_in_A",
    "is_indecomposable",
    "is_prime",
    "kernel_basis",
    "lead_term",
    "leadterm_certificate",
    "lower_bound_witness",
    "monomial_count",
    "noether_number",
    "orbit_product",
    "parse_module_spec",
    "poly_arith",
    "rank",
    "sigma",
    "sigma_power",
    "transfer",
]
