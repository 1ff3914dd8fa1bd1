"""Hidden-correlation measures for single qudits split into artificial subsystems."""
from .classical import (
    as_probs,
    conditional_information,
    correlation_defect,
    marginal,
    mutual_information,
    normalize,
    product_distribution,
    shannon_entropy,
)
from .errors import DomainError, InvalidStateError
from .indexmap import FactorShape, MarginalSpec, compose, decompose, enumerate_cells
from .quantum import (
    PPTVerdict,
    ValidationReport,
    artificial_reduce,
    as_density,
    conditional_quantum_information,
    correlation_defect_matrix,
    embed_pad,
    is_ppt,
    mutual_quantum_information,
    partial_transpose,
    pure_state,
    separable_mixture,
    spectrum,
    tensor_product,
    validate,
    von_neumann_entropy,
)
from .thermo import (
    ThermoReport,
    artificial_qubit_pair,
    check_energy_entropy_inequality,
    gibbs_state,
    log_partition,
    thermo_report,
)

__version__ = "0.1.0"
