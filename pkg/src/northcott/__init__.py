"""Exact Weil heights, Northcott sets, conductor-discriminant towers, and
height-based dynamics over Q."""

from .dynamics import (
    HeightBounds,
    PreperiodicReport,
    PreperiodicResult,
    RationalMap,
    check_property_P_instance,
    classify_R,
    height_constants,
    is_preperiodic,
    preperiodic_points,
    validate_height_constants,
)
from .enumeration import BogomolovReport, NorthcottSet, bogomolov_scan, enumerate_bounded
from .errors import BudgetError, DomainError, VerificationError
from .fields import (
    AbelianField,
    DirichletCharacter,
    compositum,
    cyclic_subfield_of_cyclotomic,
    cyclotomic_field,
    discriminant as field_discriminant,
    intersection,
    local_degree,
    max_ramified_prime,
    quadratic_field,
    rational_field,
    relative_discriminant_norm,
    subfield_lattice,
)
from .heights import (
    AlgebraicNumber,
    HeightInterval,
    PoleError,
    algebraic_eval,
    mahler_measure,
    weil_height,
)
from .isolation import Disk, isolate_roots
from .parsing import ParseError
from .polycore import (
    IntPoly,
    cyclotomic,
    discriminant,
    factor,
    resultant,
    root_of_unity_order,
)
from .towers import (
    GroupSpec,
    StepReport,
    TowerSpec,
    build_tower_cond2,
    tower_certificate,
    verify_certificate,
    verify_tower,
    widmer_step_quantity,
)

__all__ = [
    "AbelianField",
    "AlgebraicNumber",
    "BogomolovReport",
    "BudgetError",
    "DirichletCharacter",
    "Disk",
    "DomainError",
    "GroupSpec",
    "HeightBounds",
    "HeightInterval",
    "IntPoly",
    "NorthcottSet",
    "ParseError",
    "PoleError",
    "PreperiodicReport",
    "PreperiodicResult",
    "RationalMap",
    "StepReport",
    "TowerSpec",
    "VerificationError",
    "algebraic_eval",
    "bogomolov_scan",
    "build_tower_cond2",
    "check_property_P_instance",
    "classify_R",
    "compositum",
    "cyclic_subfield_of_cyclotomic",
    "cyclotomic",
    "cyclotomic_field",
    "discriminant",
    "enumerate_bounded",
    "factor",
    "field_discriminant",
    "height_constants",
    "intersection",
    "is_preperiodic",
    "isolate_roots",
    "local_degree",
    "mahler_measure",
    "max_ramified_prime",
    "preperiodic_points",
    "quadratic_field",
    "rational_field",
    "relative_discriminant_norm",
    "resultant",
    "root_of_unity_order",
    "subfield_lattice",
    "tower_certificate",
    "validate_height_constants",
    "verify_certificate",
    "verify_tower",
    "weil_height",
    "widmer_step_quantity",
]

__version__ = "0.1.0"
