"""Operational entanglement of independently prepared identical particles."""
from .algebra import (DOWN, PSI0, UP, Pseudospin, SingleParticleState, SpatialWavefunction, Statistics,
                      TwoParticleState, mode_state, norm, overlap_two, partial_overlap, product_state, wedge)
from .baseline import LabeledPairState, decompose_outcomes
from .entanglement import (DensityMatrix, ProjectedLRState, concurrence_pure, condition_on_region,
                           decompose_modes, entanglement_lr, entanglement_of_formation, localized_partial_trace,
                           operational_entanglement, project_lr, von_neumann_entropy)
from .errors import (ConsistencyError, DomainError, ProjectionFailedError, UndefinedEntanglementError,
                     ZeroProbabilityError)
from .teleport import (InputSpinor, Outcome, analytic_report, apply_correction, expand_protocol, fidelity,
                       run_protocol)

BOSON = Statistics.BOSON
FERMION = Statistics.FERMION

__version__ = "0.1.0"
