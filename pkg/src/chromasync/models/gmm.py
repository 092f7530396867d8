"""
Two-component diagonal-covariance Gaussian mixture fit by Expectation-Maximization.

Used two ways:
- a 6-D mixture over the descriptive features for unsupervised real/fake
  classification, where the component with the smaller mean of the first
  feature (Mean) is the real class;
- 1-D mixtures over single feature columns, whose two component means are the
  expectation values used by domain adaptation.
"""

from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import logsumexp

from chromasync.config.configs import GmmConfig
from chromasync.core.constants import (
    CLASS_NAMES,
    EXPECTATION_GAP_FLOOR,
    LABEL_FAKE,
    LABEL_REAL,
)
from chromasync.core.exceptions import (
    DegenerateFitError,
    DimensionMismatchError,
    EmptyInputError,
)
from chromasync.core.types import FeatureVector
from chromasync.core.utils import ensure_finite, logger

MIN_ROWS = 4
N_COMPONENTS = 2
# keeps log(weight) finite when a component loses all its mass
_MASS_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class GmmModel:
    weights: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    real_component: int
    log_likelihood_history: tuple[float, ...] = field(default=())
    n_iter: int = 0
    converged: bool = True

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=np.float64).reshape(N_COMPONENTS)
        means = np.array(self.means, dtype=np.float64).reshape(N_COMPONENTS, -1)
        variances = np.array(self.variances, dtype=np.float64).reshape(N_COMPONENTS, -1)
        if means.shape != variances.shape:
            raise DimensionMismatchError("GMM means and variances must have the same shape")
        if self.real_component not in (0, 1):
            raise ValueError(f"real_component must be 0 or 1, got {self.real_component}")
        for array in (weights, means, variances):
            array.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "variances", variances)

    @property
    def dim(self) -> int:
        return int(self.means.shape[1])

    def _as_matrix(self, x) -> np.ndarray:
        if isinstance(x, FeatureVector):
            x = x.as_array()
        data = np.atleast_2d(np.asarray(x, dtype=np.float64))
        if data.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"GMM has dimension {self.dim}, input has {data.shape[1]} features"
            )
        return data

    def responsibilities(self, x) -> np.ndarray:
        """Posterior component probabilities, shape (N, 2)."""
        data = self._as_matrix(x)
        log_resp, _ = _e_step(data, self.weights, self.means, self.variances)
        return np.exp(log_resp)

    def fake_posterior(self, x) -> np.ndarray:
        return self.responsibilities(x)[:, 1 - self.real_component]

    def predict(self, x) -> np.ndarray:
        """0/1 labels (real/fake) of the higher-responsibility component."""
        components = np.argmax(self.responsibilities(x), axis=1)
        return np.where(components == self.real_component, LABEL_REAL, LABEL_FAKE)

    def log_likelihood(self, x) -> float:
        _, total = _e_step(self._as_matrix(x), self.weights, self.means, self.variances)
        return total


class GmmClassification(NamedTuple):
    label: int
    posterior: float

    @property
    def class_name(self) -> str:
        return CLASS_NAMES[self.label]


def _log_gaussian(data: np.ndarray, means: np.ndarray, variances: np.ndarray) -> np.ndarray:
    # (N, K) log densities of diagonal Gaussians
    diff = data[:, None, :] - means[None, :, :]
    mahalanobis = np.sum(diff * diff / variances[None, :, :], axis=2)
    log_det = np.sum(np.log(2.0 * np.pi * variances), axis=1)
    return -0.5 * (mahalanobis + log_det[None, :])


def _e_step(data, weights, means, variances) -> tuple[np.ndarray, float]:
    log_prob = _log_gaussian(data, means, variances) + np.log(weights)[None, :]
    log_norm = logsumexp(log_prob, axis=1)
    return log_prob - log_norm[:, None], float(np.sum(log_norm))


def _m_step(data: np.ndarray, resp: np.ndarray, variance_floor: float):
    mass = np.maximum(resp.sum(axis=0), _MASS_FLOOR)
    weights = mass / mass.sum()
    means = (resp.T @ data) / mass[:, None]
    variances = np.empty_like(means)
    for k in range(N_COMPONENTS):
        diff = data - means[k]
        variances[k] = (resp[:, k] @ (diff * diff)) / mass[k]
    return weights, means, np.maximum(variances, variance_floor)


def _quantile_split(data: np.ndarray) -> np.ndarray:
    order = np.argsort(data[:, 0], kind="stable")
    resp = np.zeros((data.shape[0], N_COMPONENTS))
    half = data.shape[0] // 2
    resp[order[:half], 0] = 1.0
    resp[order[half:], 1] = 1.0
    return resp


def _run_em(data: np.ndarray, init_resp: np.ndarray, config: GmmConfig):
    params = _m_step(data, init_resp, config.variance_floor)
    log_resp, ll = _e_step(data, *params)
    history = [ll]
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iters + 1):
        params = _m_step(data, np.exp(log_resp), config.variance_floor)
        log_resp, new_ll = _e_step(data, *params)
        history.append(new_ll)
        improvement = new_ll - ll
        ll = new_ll
        if improvement < config.tol:
            converged = True
            break
    return params, history, iterations, converged


def _validate_data(data) -> np.ndarray:
    data = np.asarray(data, dtype=np.float64)
    if data.ndim == 1:
        data = data[:, None]
    if data.ndim != 2:
        raise DimensionMismatchError(f"EM data must be N x dim, got shape {data.shape}")
    if data.shape[0] < MIN_ROWS:
        raise EmptyInputError(f"EM needs at least {MIN_ROWS} rows, got {data.shape[0]}")
    ensure_finite(data, "EM data")
    if np.all(np.ptp(data, axis=0) == 0.0):
        raise DegenerateFitError("All rows are identical; the mixture collapses to a point")
    return data


def em_fit(data, config: Optional[GmmConfig] = None) -> GmmModel:
    """
    Fit a two-component diagonal GMM.

    The fit starts from a quantile split on dimension 0 (lower half seeds
    component 0). With `n_restarts` > 0, additional fits start from seeded
    random responsibilities and the highest final log-likelihood wins; ties
    keep the earliest fit.
    """
    config = config or GmmConfig()
    data = _validate_data(data)

    best = _run_em(data, _quantile_split(data), config)
    if config.n_restarts:
        rng = np.random.default_rng(config.seed)
        for _ in range(config.n_restarts):
            init = rng.dirichlet(np.ones(N_COMPONENTS), size=data.shape[0])
            candidate = _run_em(data, init, config)
            if candidate[1][-1] > best[1][-1]:
                best = candidate

    (weights, means, variances), history, iterations, converged = best
    if converged:
        logger.debug(f"EM converged after {iterations} iterations (log-likelihood {history[-1]:.6f})")
    else:
        logger.warning(f"EM stopped at max_iters={config.max_iters} without reaching tol={config.tol}")

    real_component = 1 if means[1, 0] < means[0, 0] else 0
    return GmmModel(
        weights=weights,
        means=means,
        variances=variances,
        real_component=real_component,
        log_likelihood_history=tuple(history),
        n_iter=iterations,
        converged=converged,
    )


def classify(model: GmmModel, x) -> GmmClassification:
    """Class of the higher-responsibility component and that responsibility."""
    if model.dim != 6:
        raise DimensionMismatchError(f"Classification needs a 6-D model, got dim={model.dim}")
    resp = model.responsibilities(x)[0]
    component = int(np.argmax(resp))
    label = LABEL_REAL if component == model.real_component else LABEL_FAKE
    return GmmClassification(label=label, posterior=float(resp[component]))


def feature_expectations(values, seed: int = 0, config: Optional[GmmConfig] = None) -> tuple[float, float]:
    """
    The two component means (m0 < m1) of a 1-D mixture fit to one feature column.

    The column is z-scored before fitting and the means mapped back, so the
    result moves exactly with any positive affine change of the column.

    Raises:
        DegenerateFitError: constant column, or component means closer than 1e-9.
    """
    column = np.asarray(values, dtype=np.float64).ravel()
    column = _validate_data(column)[:, 0]
    center = float(column.mean())
    spread = float(column.std())
    fit_config = replace(config or GmmConfig(), seed=seed)
    model = em_fit((column - center) / spread, fit_config)
    m0, m1 = sorted(float(m) * spread + center for m in model.means[:, 0])
    if m1 - m0 < EXPECTATION_GAP_FLOOR:
        raise DegenerateFitError(
            f"Component means are indistinguishable (m0={m0!r}, m1={m1!r})"
        )
    return m0, m1
