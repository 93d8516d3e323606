"""Tail probabilities of suprema of smooth random processes by the volume-of-tubes formula."""

from .errors import (DegenerateMetricError, DomainError, InvalidCovarianceError,
                     RankDeficientError, SingularPointError, TubeError, TubeWarning,
                     UnattainableLevelError)
from .geometry import CovarianceJet, VectorJet
from .mc import McReport, simulate_sup_tail
from .prob import (GAUSS, ONE_SIDED, TPROC, TWO_SIDED, UNIF, Process, ProcessSpec, Side,
                   critval, tailp)
from .quadrature import DomainRect
from .tube import TubeConstants, euclidean_tube_volume, spherical_tube_volume, tube_constants

__version__ = "0.1.0"

__all__ = [
    "CovarianceJet", "DegenerateMetricError", "DomainError", "DomainRect", "GAUSS",
    "InvalidCovarianceError", "McReport", "ONE_SIDED", "Process", "ProcessSpec",
    "RankDeficientError", "Side", "SingularPointError", "TPROC", "TWO_SIDED", "TubeConstants",
    "TubeError", "TubeWarning", "UNIF", "UnattainableLevelError", "VectorJet", "critval",
    "euclidean_tube_volume", "simulate_sup_tail", "spherical_tube_volume", "tailp",
    "tube_constants",
]
