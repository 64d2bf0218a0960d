"""recipalg: exact algebra of reciprocal maps over F_q[t].

Builds Drinfeld modules from reciprocal maps, presents the graded rings
behind the compactified moduli of rank-r Drinfeld modules with (t^n)-level
structure, and verifies the attached identities, free-basis statements and
cusp-form dimension formulas at desk scale.
"""

__version__ = "0.1.0"

from . import errors
from .fields import (
    ExtensionField,
    FiniteField,
    RatFunc,
    RatFuncField,
    TranscendentalField,
    ext_invert,
    field_create,
    ratfunc_arith,
    sample,
)
from .levelmod import (
    FqSubspace,
    GroupU,
    LinearMapFq,
    ModuleSpace,
    Submodule,
    divisors,
    free_submodule_count,
    free_submodules,
    group_U,
    plain_space,
    prefix_space,
    subspace_maps,
)
from .symalg import (
    FactoredRational,
    FracContext,
    PolyContext,
    SparsePoly,
    TauPoly,
    UniPoly,
    fr_arith,
    fr_eval,
    tau_compose,
    to_tau,
)
