"""Exact and numerical comparison of the Kuo and Thom quantities.

The package computes both quantities for polynomial map germs, compares
their orders exactly along arcs, estimates Lojasiewicz-type exponents on
shrinking spheres, and renders numerical verdicts for the classical
sufficiency conditions and their Sigma-relative versions.  Symbolic work
is exact over the rationals; every numerical verdict carries an explicit
evidence-not-proof caveat.
"""

from .poly import (
    INF,
    ParseError,
    Polynomial,
    UniPoly,
    compose_arc,
    parse_polynomial,
    parse_unipoly,
)
from .quantities import (
    KTEvaluation,
    MapGerm,
    MinorCache,
    build_minors,
    determinant,
    eval_uvwhg,
    ideal_generators_kuo,
    ideal_generators_thom,
    kuo_m1_at_least,
    kuo_polynomial,
    kuo_value,
    kuo_value_exact,
    kuo_values,
    map_germ,
    rho_polynomial,
    thom_polynomial,
    thom_value,
    thom_value_exact,
    thom_values,
)
from .arcs import (
    Arc,
    OrderLedger,
    ProbeReport,
    ProbeRow,
    arc_generator,
    equivalence_probe,
    kuo_order,
    ledger,
    ord_uni,
    parse_arc,
    probe_csv,
    thom_order,
)
from .lojasiewicz import (
    CAVEAT_NUMERICAL,
    ConditionVerdict,
    ExponentEstimate,
    RadialScan,
    ScanConfig,
    check_condition_ktilde,
    check_kuiper_kuo,
    check_kuo,
    check_kuo_inequality,
    check_thom_inequality,
    estimate_exponent,
    fit_loglog,
    horn_membership,
    min_on_sphere,
    ratio_stability_probe,
    scan_spheres,
    sufficiency_degree_estimate,
)
from .relative import (
    AlgebraicSet,
    CoordinateSubspaceUnion,
    EllipticityReport,
    JetMismatchError,
    RelativeScanConfig,
    RelativeVerdict,
    SigmaSet,
    UnsupportedSigmaError,
    check_compatibility,
    check_relative,
    deformation,
    distance,
    jets_equal_on_sigma,
    parse_sigma,
    sigma_elliptic_probe,
)
from .seeds import subsystem_seed

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ParseError",
    "Polynomial",
    "UniPoly",
    "compose_arc",
    "parse_polynomial",
    "parse_unipoly",
    "KTEvaluation",
    "MapGerm",
    "MinorCache",
    "build_minors",
    "determinant",
    "eval_uvwhg",
    "ideal_generators_kuo",
    "ideal_generators_thom",
    "kuo_m1_at_least",
    "kuo_polynomial",
    "kuo_value",
    "kuo_value_exact",
    "kuo_values",
    "map_germ",
    "rho_polynomial",
    "thom_polynomial",
    "thom_value",
    "thom_value_exact",
    "thom_values",
    "Arc",
    "OrderLedger",
    "ProbeReport",
    "ProbeRow",
    "arc_generator",
    "equivalence_probe",
    "kuo_order",
    "ledger",
    "ord_uni",
    "parse_arc",
    "probe_csv",
    "thom_order",
    "CAVEAT_NUMERICAL",
    "ConditionVerdict",
    "ExponentEstimate",
    "RadialScan",
    "ScanConfig",
    "check_condition_ktilde",
    "check_kuiper_kuo",
    "check_kuo",
    "check_kuo_inequality",
    "check_thom_inequality",
    "estimate_exponent",
    "fit_loglog",
    "horn_membership",
    "min_on_sphere",
    "ratio_stability_probe",
    "scan_spheres",
    "sufficiency_degree_estimate",
    "AlgebraicSet",
    "CoordinateSubspaceUnion",
    "EllipticityReport",
    "JetMismatchError",
    "RelativeScanConfig",
    "RelativeVerdict",
    "SigmaSet",
    "UnsupportedSigmaError",
    "check_compatibility",
    "check_relative",
    "deformation",
    "distance",
    "jets_equal_on_sigma",
    "parse_sigma",
    "sigma_elliptic_probe",
    "subsystem_seed",
    "__version__",
]
