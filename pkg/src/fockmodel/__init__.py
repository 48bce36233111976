"""Cyclic commuting matrix tuples, their moment functionals and Fock-space models."""

from .exceptions import (AmbiguousSpectrumError, DegreeOverflowError, DegreeTooSmallError,
                         EmptyQuotientError, FockModelError, NonCommutingError, NotCyclicError,
                         NotJordanInputError, NotPositiveError, ValidationError)
from .polynomial import Polynomial, fock_inner
from .tuples import CyclicTuple, MomentTable, moments, translate_moments, twist_by_polynomial, validate
from .fock import build_L, decompose_tuple, model_basis_check, spectral_decompose
from .kernel import Ball, PointSet, certify_growth, eval_F, point_set, rapid_decay_check, supporting_function
from .jordan import distribution_rep, eval_distribution, joint_spectral_decompose
from .gns import convolve, convolve_moments, gns_reconstruct
from .eigen import UNBOUNDED, direct_joint_eigen, distance_constant, psd_criterion

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSpectrumError", "DegreeOverflowError", "DegreeTooSmallError", "EmptyQuotientError",
    "FockModelError", "NonCommutingError", "NotCyclicError", "NotJordanInputError", "NotPositiveError",
    "ValidationError", "Polynomial", "fock_inner", "CyclicTuple", "MomentTable", "moments",
    "translate_moments", "twist_by_polynomial", "validate", "build_L", "decompose_tuple",
    "model_basis_check", "spectral_decompose", "Ball", "PointSet", "certify_growth", "eval_F", "point_set",
    "rapid_decay_check", "supporting_function", "distribution_rep", "eval_distribution",
    "joint_spectral_decompose", "convolve", "convolve_moments", "gns_reconstruct", "UNBOUNDED",
    "direct_joint_eigen", "distance_constant", "psd_criterion",
]
