"""Exact cohomology of degree-one generated CDGA models.

Lie algebra (Chevalley-Eilenberg) and explicit-differential models, Betti
numbers with representatives, symplectic and cosymplectic Lefschetz maps,
triple Massey products and Betti-number constructions for blow-ups and
mapping tori.  All arithmetic is over the rationals.
"""

from ._accel import backend
from .cdga import (
    CDGA,
    AlgebraMap,
    LieAlgebra,
    ce_differential,
    check_d_squared,
    circle_product,
    differential,
    direct_sum,
    is_derivation,
    is_nilpotent,
    is_unimodular,
    semidirect_extend,
)
from .cohomology import CohomologyClass, CohomologyRing, cohomology, cup, induced_map, primitive, reduce
from .corpus import AlgebraSpec, parse, registry, registry_names
from .errors import CdgaError
from .exterior import Form, Vector, contract, evaluate, format_form, parse_form, power, wedge
from .lefschetz import (
    algebraic_1_lefschetz,
    cosymplectic_map,
    k_cosymplectic_lefschetz,
    symplectic_lefschetz,
    xi_invariant_cohomology,
)
from .massey import MasseyValue, formality, hasegawa_verdict, massey_scan, triple_massey
from .report import AnalysisReport, report
from .structures import algebraic_reeb, reeb, validate_cosymplectic, validate_symplectic
from .topology import AutomorphismAction, blowup_betti, kunneth_betti, mapping_torus_betti

__version__ = "0.1.0"

__all__ = [
    "AlgebraMap",
    "AlgebraSpec",
    "AnalysisReport",
    "AutomorphismAction",
    "CDGA",
    "CdgaError",
    "CohomologyClass",
    "CohomologyRing",
    "Form",
    "LieAlgebra",
    "MasseyValue",
    "Vector",
    "algebraic_1_lefschetz",
    "algebraic_reeb",
    "backend",
    "blowup_betti",
    "ce_differential",
    "check_d_squared",
    "circle_product",
    "cohomology",
    "contract",
    "cosymplectic_map",
    "cup",
    "differential",
    "direct_sum",
    "evaluate",
    "format_form",
    "formality",
    "hasegawa_verdict",
    "induced_map",
    "is_derivation",
    "is_nilpotent",
    "is_unimodular",
    "k_cosymplectic_lefschetz",
    "kunneth_betti",
    "mapping_torus_betti",
    "massey_scan",
    "parse",
    "parse_form",
    "power",
    "primitive",
    "reduce",
    "reeb",
    "registry",
    "registry_names",
    "report",
    "semidirect_extend",
    "symplectic_lefschetz",
    "triple_massey",
    "validate_cosymplectic",
    "validate_symplectic",
    "wedge",
    "xi_invariant_cohomology",
]
