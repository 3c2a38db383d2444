"""Exact algebra of self-progressive choice models.

Progressive decomposition of random choice functions, lattice verification
and closure over choice models, the choice-overload axiom systems and the
minimal extension of rational choice, the cumulative inequality polytope,
and identification of the primitive ordering from revealed betweenness.
"""

from .core import (
    ChoiceDomain,
    ChoiceError,
    ChoiceFunction,
    Comparison,
    DomainMismatchError,
    GuardError,
    PrimitiveOrderings,
    compare,
    join,
    meet,
    restrict_ordering,
)
from .models import (
    ChoiceModel,
    LatticeWitness,
    MixtureWitness,
    SetContingentUtility,
    ThetaViolation,
    argmax_model,
    enumerate_rational,
    is_chain,
    is_lattice,
    is_mixture_closed,
    is_single_crossing,
    lattice_closure,
    rationalize,
    satisfies_theta,
    set_contingent_representation,
    theta_model,
)
from .random_choice import (
    CumulativeRCF,
    ProgressiveRepresentation,
    RThetaViolation,
    RandomChoiceFunction,
    compose,
    cumulative,
    decompose_progressive,
    decompose_theta,
    deterministic,
    in_delta,
    satisfies_rtheta,
)
from .polytope import (
    ConstraintSystem,
    build_constraints,
    enumerate_vertices,
    function_vertex,
    heller_check,
    vertex_function,
)
from .identify import (
    AxiomReport,
    BetweennessRelation,
    betweenness,
    check_axioms,
    find_agreeing_ordering,
    identify_primitive,
    local_ordering,
)
from .generators import (
    LotteryGrid,
    SimilarityAgent,
    gen_krs,
    gen_random_model,
    gen_satisficing,
    gen_similarity,
)
from .oracle import (
    EnumerationBudget,
    all_choice_functions,
    all_orderings,
    exact_feasible,
    feasible_by_elimination,
    naive_self_progressive,
)

__version__ = "0.1.0"
