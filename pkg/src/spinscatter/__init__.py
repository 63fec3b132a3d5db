"""Entangling two magnetic impurities by electron scattering.

Closed-form transition-operator scattering of an electron off two
Heisenberg-coupled spin-1/2 impurities, on a tight-binding chain or on the
edge band of a zigzag phosphorene nanoribbon, with reflected/transmitted
probabilities and impurity negativity as outputs.
"""
from .entanglement import EntanglementReport, density_matrices, negativities, negativity
from .errors import (
    BandEdgeError,
    HermiticityError,
    OracleFailure,
    ResonanceSingularityError,
    UndefinedStateError,
)
from .lattice_models import (
    ChainParams,
    GreensKernel,
    ZpnrParams,
    chain_dispersion,
    chain_green,
    edge_alpha,
    edge_gamma2,
    zpnr_dispersion,
    zpnr_green_diag,
    zpnr_green_offdiag,
)
from .scattering import (
    ScatterGrid,
    ScatterOutcome,
    ScatterProblem,
    build_chi,
    build_potentials,
    scatter,
    scatter_many,
    solve_auxiliary,
)
from .sweep import SweepConfig, run_figure, run_sweep

__version__ = "0.1.0"
