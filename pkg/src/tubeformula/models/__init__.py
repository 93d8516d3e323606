"""Worked applications packaged as manifold callbacks plus end-to-end test statistics."""

from .builtin import Clifford, GreatCircle, SphereCap, Torus3
from .mixture import (MixtureCovariance, MixtureResult, MixtureVector, mixture_constants,
                      mixture_cov_jet, mixture_test, score_process)
from .nlreg import ExpRegression, NlregResult, nlreg_cov_jet, nlreg_jet, nlreg_statistic, nlreg_test
from .scb import ScbBand, ScbModel, quadratic_basis, scb_band, scb_jet

__all__ = [
    "Clifford", "GreatCircle", "SphereCap", "Torus3",
    "MixtureCovariance", "MixtureResult", "MixtureVector", "mixture_constants",
    "mixture_cov_jet", "mixture_test", "score_process",
    "ExpRegression", "NlregResult", "nlreg_cov_jet", "nlreg_jet", "nlreg_statistic", "nlreg_test",
    "ScbBand", "ScbModel", "quadratic_basis", "scb_band", "scb_jet",
]
