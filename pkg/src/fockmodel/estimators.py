"""Estimator-style wrappers around the functional API.

The "data" passed to ``fit`` is a :class:`CyclicTuple` or a
:class:`MomentTable`, not a design matrix, so these classes borrow the
parameter handling of scikit-learn (``get_params``, ``set_params``,
``clone``) without promising pipeline compatibility.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fock import build_L, model_basis_check, spectral_decompose
from .gns import DEFAULT_NULL_TOL, gns_reconstruct
from .jordan import SELF_ADJOINT_TOL, distribution_rep, joint_spectral_decompose
from .kernel import DEFAULT_DIRECTIONS, DEFAULT_RADII, certify_growth, point_set
from .tuples import CyclicTuple, MomentTable, moments


class FockSpectralModel(TransformerMixin, BaseEstimator):
    """Eigenpolynomials of the truncated Fock operator of a tuple.

    Parameters
    ----------
    degree : int, optional
        Truncation degree; ``2 m`` when omitted.
    rank_tol : float
        Relative cutoff for retained eigenvalues.

    Attributes
    ----------
    decomposition_ : EigenPolyDecomposition
    report_ : ModelBasisReport or None
        Model check, available when the input was a tuple.
    """

    def __init__(self, degree=None, rank_tol=1e-10):
        self.degree = degree
        self.rank_tol = rank_tol

    def fit(self, X, y=None):
        if isinstance(X, CyclicTuple):
            d = self.degree if self.degree is not None else 2 * X.m
            mt = moments(X, d)
        elif isinstance(X, MomentTable):
            mt = X
        else:
            raise TypeError("fit expects a CyclicTuple or a MomentTable")
        self.decomposition_ = spectral_decompose(build_L(mt), self.rank_tol)
        self.eigenvalues_ = self.decomposition_.eigenvalues
        self.report_ = None
        if isinstance(X, CyclicTuple) and self.decomposition_.rank >= X.m:
            self.report_ = model_basis_check(X, self.decomposition_)
        return self

    def transform(self, X):
        """Values ``f_j(z)`` at the rows of `X`; ``Phi @ Phi^H`` is the truncated kernel."""
        check_is_fitted(self, "decomposition_")
        return self.decomposition_.feature_map(np.asarray(X, dtype=complex))


class GNSReconstructor(BaseEstimator):
    """Rebuild a tuple from a moment table; see :func:`gns_reconstruct`."""

    def __init__(self, null_tol=DEFAULT_NULL_TOL):
        self.null_tol = null_tol

    def fit(self, X, y=None):
        if not isinstance(X, MomentTable):
            raise TypeError("fit expects a MomentTable")
        self.result_ = gns_reconstruct(X, self.null_tol)
        self.tuple_ = self.result_.tuple
        return self


class JordanClassifier(BaseEstimator):
    """Decide Jordan type; ``predict`` labels a list of tuples."""

    def __init__(self, tol=SELF_ADJOINT_TOL, seed=42):
        self.tol = tol
        self.seed = seed

    def fit(self, X, y=None):
        self.decomposition_ = joint_spectral_decompose(X, self.tol, self.seed)
        self.is_jordan_ = self.decomposition_.is_jordan
        self.distribution_ = distribution_rep(X, self.decomposition_) if self.is_jordan_ else None
        return self

    def predict(self, X):
        return np.array([joint_spectral_decompose(t, self.tol, self.seed).classification for t in X])


class GrowthCertifier(BaseEstimator):
    """Growth fit relative to a support set; defaults to the joint eigenvalues."""

    def __init__(self, support=None, radii=DEFAULT_RADII, directions=DEFAULT_DIRECTIONS, seed=42):
        self.support = support
        self.radii = radii
        self.directions = directions
        self.seed = seed

    def fit(self, X, y=None):
        K = self.support
        if K is None:
            K = point_set(*joint_spectral_decompose(X, seed=self.seed).eigenvalues)
        self.support_ = K
        self.certificate_ = certify_growth(X, K, self.radii, self.directions, self.seed)
        return self
