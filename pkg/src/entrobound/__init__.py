"""Continuity bounds for entropies of classical distributions and quantum states
under mean or energy constraints, with tools that check them numerically."""

from .classical import (
    MeanConstraint,
    classical_alpha_gt1_bounds,
    classical_renyi_tsallis_bound,
    continuous_renyi_tsallis_bound,
    extremal_joint,
    extremal_marginal,
    fano_bound,
    shannon_continuity_bound,
)
from .dist import (
    DiscreteDistribution,
    JointDistribution,
    WeightSequence,
    binary_entropy,
    conditional_entropy,
    geometric,
    maximal_coupling,
    renyi_entropy,
    shannon_entropy,
    total_variation,
    tsallis_entropy,
)
from .errors import (
    ConfigurationError,
    DomainError,
    EntroboundError,
    NumericalError,
    ParseError,
    PreconditionError,
    TruncationError,
)
from .logbase import log_base
from .qbounds import (
    ApproxBoundInputs,
    RenyiCondition,
    UniversalConstant,
    approx_trace_bound,
    moment_bound_f1,
    moment_bound_falpha,
    quantum_renyi_tsallis_bound,
    renyi_alpha_gt1_bound,
    tsallis_lipschitz_bound,
    vn_continuity_bound,
    winter_bound_alpha,
    winter_bound_general,
    winter_bound_number_op,
)
from .quantum import (
    DensityMatrix,
    HamiltonianSpec,
    energy,
    fidelity,
    gibbs_state_number_op,
    passive_state,
    quantum_renyi,
    quantum_tsallis,
    schatten_norm,
    trace_distance,
    von_neumann_entropy,
)
from .report import BoundReport
from .rng import CounterRNG

__version__ = "0.1.0"
