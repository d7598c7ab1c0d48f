"""Exact symplectic pairings of shearing cocycles on train tracks."""

from .homology import OneChain, homology_class, intersection_antisym, intersection_raw, tie_pairing
from .shear import (
    LineDecomposition,
    ShearConfiguration,
    ShearStep,
    abg_from_cochain,
    amplitudes_to_potentials,
    compose_shearing,
    elementary_shear,
    finite_gap_derivative,
    infinitesimal_shear,
    killing_form,
    verify_coupling,
)
from .symplectic import CouplingMatrix, coupling_constant, gram_matrix, pair, pairing_thm1, pairing_thm2
from .track import (
    EndRef,
    Involution,
    Switch,
    TrackError,
    TrainTrack,
    check_maximal_carrying,
    is_orientable,
    orientation_cover,
    region_analysis,
    validate_track,
)
from .weights import (
    WeightError,
    WeightSystem,
    check_switch_relations,
    reverse_coordinates,
    twisted_subspace_basis,
    weight_space_basis,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
