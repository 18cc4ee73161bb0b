"""Exact Virasoro singular vectors, density projections and fusion rules at c = 25."""

from .density import DensityParams, density_act, ff_squared, project_f
from .exact import Poly, as_rational, rational_roots
from .fusion import FusionTable, clebsch_gordan, correlation_coefficients, fusion_bound, fusion_table
from .verma import (
    DegenerateKernel,
    SingularVectorCache,
    VermaModule,
    VermaVector,
    act_generator,
    kac_weight,
    minimal_charge,
    singular_vector,
    vacuum_simple,
)
from .vir_core import Operator, PBWMonomial, bracket, operator_combine, partitions
from .zhu import (
    IdealGenerator,
    ReductionContext,
    fusion_generator,
    hom_dim,
    monomial_reduction,
    reduction_coincidence,
    wang_rewrite,
)

__version__ = "0.1.0"
