"""
Binary soft-margin SVM with an RBF kernel, trained by sequential minimal
optimization on the dual problem

    max_a  sum(a) - 1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j)
    s.t.   0 <= a_i <= C,  sum_i a_i y_i = 0.

Features are standardized per column before training and the transform is
stored in the model. Labels follow the project convention real = -1,
fake = +1, so a positive decision value means fake.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from chromasync.config.configs import SvmConfig
from chromasync.core.constants import LABEL_FAKE, LABEL_REAL, SVM_FAKE, SVM_REAL
from chromasync.core.exceptions import DimensionMismatchError, SingleClassError
from chromasync.core.types import FeatureVector
from chromasync.core.utils import ensure_finite, logger

# stand-in for a non-positive curvature along the pair direction
_TAU = 1e-12


def rbf_kernel(a, b, gamma: float) -> float:
    """exp(-gamma * ||a - b||^2)."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    diff = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
    return float(np.exp(-gamma * float(np.dot(diff, diff))))


def rbf_gram(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    """Kernel matrix between the rows of `a` and the rows of `b`."""
    return np.exp(-gamma * cdist(np.atleast_2d(a), np.atleast_2d(b), "sqeuclidean"))


@dataclass(frozen=True, eq=False)
class SvmModel:
    """
    Fitted RBF SVM.

    `support_vectors` live in the standardized space; inference maps raw
    features through (x - scale_shift) / scale_scale first.
    """

    support_vectors: np.ndarray
    dual_coefs: np.ndarray
    bias: float
    gamma: float
    c: float
    scale_shift: np.ndarray
    scale_scale: np.ndarray

    def __post_init__(self) -> None:
        support_vectors = np.array(self.support_vectors, dtype=np.float64, ndmin=2)
        dual_coefs = np.array(self.dual_coefs, dtype=np.float64).ravel()
        shift = np.array(self.scale_shift, dtype=np.float64).ravel()
        scale = np.array(self.scale_scale, dtype=np.float64).ravel()
        if support_vectors.shape[0] != dual_coefs.shape[0]:
            raise DimensionMismatchError("One dual coefficient per support vector is required")
        if not (support_vectors.shape[1] == shift.shape[0] == scale.shape[0]):
            raise DimensionMismatchError("Scaling must cover every support-vector feature")
        if self.gamma <= 0 or self.c <= 0:
            raise ValueError("gamma and c must be positive")
        if np.any(scale <= 0):
            raise ValueError("Scaling factors must be positive")
        for array in (support_vectors, dual_coefs, shift, scale):
            array.setflags(write=False)
        object.__setattr__(self, "support_vectors", support_vectors)
        object.__setattr__(self, "dual_coefs", dual_coefs)
        object.__setattr__(self, "scale_shift", shift)
        object.__setattr__(self, "scale_scale", scale)
        object.__setattr__(self, "bias", float(self.bias))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "c", float(self.c))

    @property
    def n_features(self) -> int:
        return int(self.support_vectors.shape[1])

    def transform(self, x) -> np.ndarray:
        if isinstance(x, FeatureVector):
            x = x.as_array()
        data = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if data.shape[1] != self.n_features:
            raise DimensionMismatchError(
                f"SVM expects {self.n_features} features, input has {data.shape[1]}"
            )
        return (data - self.scale_shift) / self.scale_scale

    def decision_function(self, x) -> np.ndarray:
        kernel = rbf_gram(self.transform(x), self.support_vectors, self.gamma)
        return kernel @ self.dual_coefs + self.bias

    def predict(self, x) -> np.ndarray:
        """0/1 labels; a positive decision value means fake."""
        return np.where(self.decision_function(x) > 0, LABEL_FAKE, LABEL_REAL)


class SmoSolver:
    """
    SMO on a precomputed kernel matrix.

    Each iteration picks the maximal violating pair: i maximizes and j
    minimizes -y_t * G_t over the sets that can still move up and down
    respectively (G is the gradient of the minimization form of the dual).
    Up to a shared constant, -y_t * G_t is minus the error E_t = f(x_t) - y_t,
    so this is the pair with the largest |E_i - E_j| among KKT violators.
    Training stops once that gap is at most `tol`. Ties resolve to the lowest
    index, so runs are reproducible.
    """

    def __init__(self, kernel: np.ndarray, y: np.ndarray, c: float, tol: float, max_iter: int):
        self.kernel = kernel
        self.y = np.asarray(y, dtype=np.float64)
        self.c = float(c)
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        n = self.y.shape[0]
        self.alpha = np.zeros(n)
        self.gradient = -np.ones(n)
        self.iterations = 0
        self.converged = False

    def _violation_scores(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        score = -self.y * self.gradient
        positive = self.y > 0
        below_c = self.alpha < self.c
        above_0 = self.alpha > 0
        up = (positive & below_c) | (~positive & above_0)
        low = (~positive & below_c) | (positive & above_0)
        return score, up, low

    def select_working_set(self) -> tuple[int, int, float]:
        score, up, low = self._violation_scores()
        up_scores = np.where(up, score, -np.inf)
        low_scores = np.where(low, score, np.inf)
        i = int(np.argmax(up_scores))
        j = int(np.argmin(low_scores))
        return i, j, float(up_scores[i] - low_scores[j])

    def kkt_gap(self) -> float:
        return self.select_working_set()[2]

    def _update_pair(self, i: int, j: int) -> None:
        y, alpha, c = self.y, self.alpha, self.c
        k_ii = self.kernel[i, i]
        k_jj = self.kernel[j, j]
        q_ij = y[i] * y[j] * self.kernel[i, j]
        old_i, old_j = alpha[i], alpha[j]
        g_i, g_j = self.gradient[i], self.gradient[j]

        if y[i] != y[j]:
            curvature = k_ii + k_jj + 2.0 * q_ij
            if curvature <= 0:
                curvature = _TAU
            delta = (-g_i - g_j) / curvature
            diff = old_i - old_j
            a_i, a_j = old_i + delta, old_j + delta
            if diff > 0:
                if a_j < 0:
                    a_j, a_i = 0.0, diff
            elif a_i < 0:
                a_i, a_j = 0.0, -diff
            if diff > 0:
                if a_i > c:
                    a_i, a_j = c, c - diff
            elif a_j > c:
                a_j, a_i = c, c + diff
        else:
            curvature = k_ii + k_jj - 2.0 * q_ij
            if curvature <= 0:
                curvature = _TAU
            delta = (g_i - g_j) / curvature
            total = old_i + old_j
            a_i, a_j = old_i - delta, old_j + delta
            if total > c:
                if a_i > c:
                    a_i, a_j = c, total - c
            elif a_j < 0:
                a_j, a_i = 0.0, total
            if total > c:
                if a_j > c:
                    a_j, a_i = c, total - c
            elif a_i < 0:
                a_i, a_j = 0.0, total

        alpha[i], alpha[j] = a_i, a_j
        d_i, d_j = a_i - old_i, a_j - old_j
        self.gradient += (
            self.y * (y[i] * self.kernel[:, i]) * d_i + self.y * (y[j] * self.kernel[:, j]) * d_j
        )

    def solve(self) -> "SmoSolver":
        for iteration in range(self.max_iter):
            i, j, gap = self.select_working_set()
            if gap <= self.tol:
                self.converged = True
                self.iterations = iteration
                break
            self._update_pair(i, j)
        else:
            self.iterations = self.max_iter
            self.converged = self.kkt_gap() <= self.tol

        if self.converged:
            logger.debug(f"SMO converged after {self.iterations} pair updates")
        else:
            logger.warning(
                f"SMO hit the iteration cap ({self.max_iter}) with KKT gap {self.kkt_gap():.3g} > tol {self.tol}"
            )
        return self

    def rho(self) -> float:
        """Offset such that f(x) = sum_s a_s y_s K(x_s, x) - rho."""
        y_grad = self.y * self.gradient
        at_upper = self.alpha >= self.c
        at_lower = self.alpha <= 0
        free = ~(at_upper | at_lower)
        if np.any(free):
            return float(np.mean(y_grad[free]))
        positive = self.y > 0
        # bounded-only solutions: midpoint of the feasible interval
        ub_mask = (at_upper & ~positive) | (at_lower & positive)
        lb_mask = (at_upper & positive) | (at_lower & ~positive)
        ub = float(np.min(y_grad[ub_mask])) if np.any(ub_mask) else np.inf
        lb = float(np.max(y_grad[lb_mask])) if np.any(lb_mask) else -np.inf
        return (ub + lb) / 2.0

    def decision_values(self) -> np.ndarray:
        """Decision values of the training points from the solver's own state."""
        return self.kernel @ (self.alpha * self.y) - self.rho()

    def dual_objective(self, alpha: Optional[np.ndarray] = None) -> float:
        a = self.alpha if alpha is None else np.asarray(alpha, dtype=np.float64)
        ay = a * self.y
        return float(np.sum(a) - 0.5 * ay @ self.kernel @ ay)


def _check_training_data(features, labels) -> tuple[np.ndarray, np.ndarray]:
    data = np.atleast_2d(np.asarray(features, dtype=np.float64))
    y = np.asarray(labels).ravel()
    if data.shape[0] != y.shape[0]:
        raise DimensionMismatchError(f"{data.shape[0]} feature rows but {y.shape[0]} labels")
    ensure_finite(data, "SVM training features")
    if not np.all(np.isin(y, (SVM_REAL, SVM_FAKE))):
        raise ValueError("SVM labels must be -1 (real) or +1 (fake)")
    if not np.any(y == SVM_REAL):
        raise SingleClassError("real")
    if not np.any(y == SVM_FAKE):
        raise SingleClassError("fake")
    return data, y.astype(np.float64)


def standardization(data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-column (shift, scale); constant columns keep scale 1."""
    shift = data.mean(axis=0)
    scale = data.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    return shift, scale


def resolve_gamma(gamma, standardized: np.ndarray) -> float:
    """'scale' -> 1 / (n_features * Var(standardized features))."""
    if gamma == "scale":
        variance = float(standardized.var())
        return 1.0 / (standardized.shape[1] * variance) if variance > 0 else 1.0
    return float(gamma)


def train_with_solver(features, labels, config: Optional[SvmConfig] = None) -> tuple[SvmModel, SmoSolver]:
    """Train and also return the solver state (alphas, gradient, KKT gap)."""
    config = config or SvmConfig()
    data, y = _check_training_data(features, labels)
    shift, scale = standardization(data)
    standardized = (data - shift) / scale
    gamma = resolve_gamma(config.gamma, standardized)
    kernel = rbf_gram(standardized, standardized, gamma)

    solver = SmoSolver(
        kernel, y, c=config.c, tol=config.tol, max_iter=config.max_passes * data.shape[0]
    ).solve()

    support = np.flatnonzero(solver.alpha > 0)
    model = SvmModel(
        support_vectors=standardized[support],
        dual_coefs=solver.alpha[support] * y[support],
        bias=-solver.rho(),
        gamma=gamma,
        c=config.c,
        scale_shift=shift,
        scale_scale=scale,
    )
    logger.info(
        f"Trained RBF SVM on {data.shape[0]} rows: {support.size} support vectors, "
        f"gamma={gamma:.6g}, C={config.c}"
    )
    return model, solver


def smo_train(features, labels, config: Optional[SvmConfig] = None) -> SvmModel:
    """Train an RBF SVM on N x d features with labels in {-1, +1}."""
    return train_with_solver(features, labels, config)[0]


def decision(model: SvmModel, x) -> float:
    """Signed decision value of one feature vector (positive = fake)."""
    return float(model.decision_function(x)[0])
