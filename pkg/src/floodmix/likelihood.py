"""Censored, error-aware log-likelihood of a distribution model given a
flood dataset.

The total log-likelihood is the sum of three terms:

* gaged peaks: for each record, the density is averaged over a discrete
  grid of possible true values weighted by the measurement-error
  distribution, so an exact record contributes ln f(x) and an uncertain one
  contributes ln sum_j w_j f(x_j);
* historical floods: binomial threshold censoring over the historical
  record length combined with the same per-record error grids, each record
  normalized by the exceedance probability above the threshold;
* paleoflood bounds: the expected bound age (an effective record length)
  multiplies the log probability that an annual peak falls inside the
  bound's discharge window, with the window's upper limit averaged over a
  discretized triangular threshold distribution.

All inner sums run through log-sum-exp so densities down to e^-700 and
beyond never underflow to a spurious -inf.  A true -inf is the documented
"infeasible" sentinel (zero likelihood), which the optimizer treats as an
automatic loser.

Everything here is pure: per-record terms are evaluated in a fixed order so
results are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln, logsumexp, xlogy

from .distributions import DistributionModel, Family, cdf_values, feasible_rows, logpdf_values
from .errors import ConfigError, DataError
from .hydrodata import CensoringSpec, ErrorModel, PaleoBound, PeakDataset

__all__ = [
    "DiscretizedError",
    "discretize_error",
    "LikelihoodConfig",
    "loglik_gage",
    "loglik_censored",
    "loglik_paleo",
    "total_loglik",
    "CompiledLikelihood",
]

NEG_INF = float("-inf")


@dataclass(frozen=True, eq=False)
class DiscretizedError:
    """A discrete stand-in for a continuous error distribution: strictly
    increasing positive nodes with weights summing to one."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.shape != weights.shape or nodes.ndim != 1 or nodes.size == 0:
            raise DataError("nodes and weights must be matching 1-d arrays")
        if not np.all(nodes > 0):
            raise DataError("all error nodes must be > 0")
        if nodes.size > 1 and not np.all(np.diff(nodes) > 0):
            raise DataError("error nodes must be strictly increasing")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise DataError(f"error weights must sum to 1, got {weights.sum()!r}")


def _check_node_count(node_count: int) -> None:
    if node_count < 1 or node_count % 2 == 0:
        raise ConfigError(f"node count must be odd and >= 1, got {node_count}")


def _triangular_density(x: np.ndarray, lo: float, hi: float, mode: float) -> np.ndarray:
    span = hi - lo
    up = np.where(x <= mode, 2.0 * (x - lo) / (span * max(mode - lo, 1e-300)), 0.0)
    down = np.where(x > mode, 2.0 * (hi - x) / (span * max(hi - mode, 1e-300)), 0.0)
    return np.where((x >= lo) & (x <= hi), up + down, 0.0)


def discretize_error(center: float, error: ErrorModel, node_count: int = 11) -> DiscretizedError:
    """Build the discrete error grid for one record.

    Gaussian errors use an evenly spaced grid (cell centers) on
    [center - 3s, center + 3s] with s = cv * center, dropping non-positive
    nodes and renormalizing; triangular errors span their bounds with
    weights proportional to the triangular density; exact records collapse
    to a single node.  A node count of one uses the error distribution's
    mean.
    """
    _check_node_count(node_count)
    if error.kind == "none":
        return DiscretizedError(np.array([center]), np.array([1.0]))
    if error.kind == "normal_cv":
        sigma = error.cv * center
        if sigma == 0 or node_count == 1:
            return DiscretizedError(np.array([center]), np.array([1.0]))
        # centers of node_count equal cells tiling [c - 3s, c + 3s]: the odd
        # count pins the middle node on the observation, and cell centers
        # converge much faster than cell edges as the count grows
        h = 6.0 * sigma / node_count
        grid = center - 3.0 * sigma + h * (np.arange(node_count) + 0.5)
        grid = grid[grid > 0]
        dens = np.exp(-0.5 * ((grid - center) / sigma) ** 2)
        return DiscretizedError(grid, dens / dens.sum())
    # triangular
    lo, hi = error.bounds
    mode = error.triangle_mode
    if node_count == 1:
        mean = (lo + hi + mode) / 3.0
        return DiscretizedError(np.array([mean]), np.array([1.0]))
    grid = np.linspace(lo, hi, node_count)
    dens = _triangular_density(grid, lo, hi, mode)
    return DiscretizedError(grid, dens / dens.sum())


def _age_grid(bound: PaleoBound, node_count: int) -> tuple[np.ndarray, np.ndarray]:
    _check_node_count(node_count)
    lo, hi = bound.age_lower, bound.age_upper
    if node_count == 1:
        return np.array([bound.expected_age]), np.array([1.0])
    grid = np.linspace(lo, hi, node_count)
    if bound.age_dist == "uniform":
        weights = np.full(node_count, 1.0 / node_count)
    else:
        dens = _triangular_density(grid, lo, hi, 0.5 * (lo + hi))
        weights = dens / dens.sum()
    return grid, weights


@dataclass(frozen=True)
class LikelihoodConfig:
    """Node counts for the error discretizations (all odd) and the LP3
    transform convention used during evaluation."""

    discharge_nodes: int = 11
    age_nodes: int = 11
    paleo_discharge_nodes: int = 11
    lp3_space: str = "log10"

    def __post_init__(self):
        for value in (self.discharge_nodes, self.age_nodes, self.paleo_discharge_nodes):
            _check_node_count(value)


# ---------------------------------------------------------------------------
# Compiled dataset: rectangular node/log-weight arrays for fast, vectorized
# evaluation over whole optimizer populations.  Records whose truncated grid
# has fewer nodes than the widest one are padded with -inf log-weights.
# ---------------------------------------------------------------------------


def _pack(grids: list[DiscretizedError]) -> tuple[np.ndarray, np.ndarray]:
    width = max(g.nodes.size for g in grids)
    nodes = np.ones((len(grids), width))
    logw = np.full((len(grids), width), NEG_INF)
    for i, g in enumerate(grids):
        nodes[i, : g.nodes.size] = g.nodes
        with np.errstate(divide="ignore"):
            logw[i, : g.nodes.size] = np.log(g.weights)
    return nodes, logw


class CompiledLikelihood:
    """Dataset pre-processed for repeated likelihood evaluation.

    `loglik_rows` evaluates the total log-likelihood for a (P, k) block of
    parameter vectors in one vectorized pass; the scalar helpers below wrap
    it for single models.
    """

    def __init__(self, dataset: PeakDataset, config: LikelihoodConfig | None = None):
        self.config = config or LikelihoodConfig()
        self.dataset = dataset
        cfg = self.config

        if dataset.peaks:
            grids = [
                discretize_error(p.discharge, p.error_model, cfg.discharge_nodes)
                for p in dataset.peaks
            ]
            self.gage_nodes, self.gage_logw = _pack(grids)
        else:
            self.gage_nodes = self.gage_logw = None

        self.censoring = dataset.censoring
        if dataset.historical:
            grids = [
                discretize_error(h.discharge, h.error_model, cfg.discharge_nodes)
                for h in dataset.historical
            ]
            self.hist_nodes, self.hist_logw = _pack(grids)
        else:
            self.hist_nodes = self.hist_logw = None

        self.paleo = []
        for bound in dataset.paleo:
            ages, age_w = _age_grid(bound, cfg.age_nodes)
            thresh = discretize_error(0.0, bound.discharge_dist, cfg.paleo_discharge_nodes)
            self.paleo.append(
                {
                    "effective_age": float(np.sum(ages * age_w)),
                    "thresholds": thresh.nodes,
                    "weights": thresh.weights,
                    "y_min": bound.discharge_lower,
                }
            )

    # -- pieces ------------------------------------------------------------

    def _mix_over_nodes(self, family, params, nodes, logw, lp3_space) -> np.ndarray:
        """ln sum_j w_ij f(x_ij) for each record i: (P, n) array."""
        P = params.shape[0]
        n, width = nodes.shape
        lp = logpdf_values(family, params, nodes.ravel(), lp3_space).reshape(P, n, width)
        if width == 1:  # exact records: the mixture is the single density
            return lp[:, :, 0] + logw[None, :, 0]
        return logsumexp(logw[None, :, :] + lp, axis=2)

    def gage_rows(self, family: Family, params: np.ndarray) -> np.ndarray:
        if self.gage_nodes is None:
            return np.zeros(params.shape[0])
        per_record = self._mix_over_nodes(
            family, params, self.gage_nodes, self.gage_logw, self.config.lp3_space
        )
        return per_record.sum(axis=1)

    def censored_rows(self, family: Family, params: np.ndarray) -> np.ndarray:
        if self.censoring is None:
            return np.zeros(params.shape[0])
        spec = self.censoring
        h, k, x0 = spec.record_length, spec.exceedance_count, spec.threshold
        f0 = cdf_values(family, params, np.array([x0]), self.config.lp3_space)[:, 0]
        f0 = np.clip(f0, 0.0, 1.0)
        sf0 = 1.0 - f0
        log_binom = gammaln(h + 1.0) - gammaln(k + 1.0) - gammaln(h - k + 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = log_binom + xlogy(h - k, f0) + xlogy(k, sf0)
            if self.hist_nodes is not None:
                per_record = self._mix_over_nodes(
                    family, params, self.hist_nodes, self.hist_logw, self.config.lp3_space
                )
                log_sf0 = np.where(sf0 > 0, np.log(np.where(sf0 > 0, sf0, 1.0)), NEG_INF)
                out = out + per_record.sum(axis=1) - k * log_sf0
        # A model with zero mass above the threshold cannot produce the k
        # recorded exceedances; one with zero mass below cannot produce the
        # h - k quiet years.
        out = np.where((sf0 <= 0) & (k > 0), NEG_INF, out)
        out = np.where((f0 <= 0) & (h - k > 0), NEG_INF, out)
        return np.where(np.isnan(out), NEG_INF, out)

    def paleo_rows(self, family: Family, params: np.ndarray) -> np.ndarray:
        out = np.zeros(params.shape[0])
        for bound in self.paleo:
            points = np.concatenate([bound["thresholds"], [bound["y_min"]]])
            cdf = cdf_values(family, params, points, self.config.lp3_space)
            inner = cdf[:, :-1] @ bound["weights"] - cdf[:, -1]
            with np.errstate(divide="ignore", invalid="ignore"):
                term = bound["effective_age"] * np.log(np.maximum(inner, 0.0))
            out = out + np.where(inner > 0, term, NEG_INF)
        return out

    def loglik_rows(self, family: Family, params: np.ndarray) -> np.ndarray:
        """Total log-likelihood for each parameter row; -inf for infeasible
        rows (constraint violations or zero-likelihood configurations)."""
        params = np.atleast_2d(np.asarray(params, dtype=float))
        ok = feasible_rows(family, params)
        out = np.full(params.shape[0], NEG_INF)
        if ok.any():
            sub = params[ok]
            total = self.gage_rows(family, sub)
            total = total + self.censored_rows(family, sub)
            total = total + self.paleo_rows(family, sub)
            out[ok] = np.where(np.isnan(total), NEG_INF, total)
        return out


# ---------------------------------------------------------------------------
# Public single-model entry points.
# ---------------------------------------------------------------------------


def _as_row(model: DistributionModel) -> np.ndarray:
    return np.asarray(model.params, dtype=float)[None, :]


def loglik_gage(model: DistributionModel, peaks, node_count: int = 11) -> float:
    """Gage-record log-likelihood: sum over records of the log error-node
    mixture ln sum_j w_j f(x_j); exact records contribute ln f(x)."""
    _check_node_count(node_count)
    peaks = tuple(peaks)
    compiled = CompiledLikelihood.__new__(CompiledLikelihood)
    compiled.config = LikelihoodConfig(discharge_nodes=node_count, lp3_space=model.lp3_space)
    if peaks:
        grids = [discretize_error(p.discharge, p.error_model, node_count) for p in peaks]
        compiled.gage_nodes, compiled.gage_logw = _pack(grids)
    else:
        compiled.gage_nodes = compiled.gage_logw = None
    return float(compiled.gage_rows(model.family, _as_row(model))[0])

def loglik_censored(
    model: DistributionModel,
    historical,
    censoring: CensoringSpec,
    node_count: int = 11,
) -> float:
    """Historical-record log-likelihood with binomial threshold censoring.

    ln C(h, k) + (h - k) ln F(X0) + k ln(1 - F(X0))
    + sum_i [ ln sum_j w_ij f(y_ij) - ln(1 - F(X0)) ].
    """
    _check_node_count(node_count)
    compiled = CompiledLikelihood.__new__(CompiledLikelihood)
    compiled.config = LikelihoodConfig(discharge_nodes=node_count, lp3_space=model.lp3_space)
    compiled.censoring = censoring
    historical = tuple(historical)
    if historical:
        grids = [discretize_error(h.discharge, h.error_model, node_count) for h in historical]
        compiled.hist_nodes, compiled.hist_logw = _pack(grids)
    else:
        compiled.hist_nodes = compiled.hist_logw = None
    return float(compiled.censored_rows(model.family, _as_row(model))[0])


def loglik_paleo(
    model: DistributionModel, paleo, node_counts: tuple[int, int] = (11, 11)
) -> float:
    """Paleoflood-bound log-likelihood.

    Each bound contributes (expected age) * ln sum_k w_k [F(t_k) - F(y_min)]
    with thresholds t_k discretized from the bound's triangular discharge
    distribution and y_min its minimum observable discharge.
    """
    age_nodes, discharge_nodes = node_counts
    cfg = LikelihoodConfig(
        age_nodes=age_nodes, paleo_discharge_nodes=discharge_nodes, lp3_space=model.lp3_space
    )
    compiled = CompiledLikelihood.__new__(CompiledLikelihood)
    compiled.config = cfg
    compiled.paleo = []
    for bound in paleo:
        ages, age_w = _age_grid(bound, cfg.age_nodes)
        thresh = discretize_error(0.0, bound.discharge_dist, cfg.paleo_discharge_nodes)
        compiled.paleo.append(
            {
                "effective_age": float(np.sum(ages * age_w)),
                "thresholds": thresh.nodes,
                "weights": thresh.weights,
                "y_min": bound.discharge_lower,
            }
        )
    return float(compiled.paleo_rows(model.family, _as_row(model))[0])


def total_loglik(
    model: DistributionModel, dataset: PeakDataset, config: LikelihoodConfig | None = None
) -> float:
    """Sum of the gage, censored-historical, and paleo-bound terms; -inf
    propagates from any component.  The model's LP3 transform convention
    overrides the one in `config`."""
    cfg = replace(config or LikelihoodConfig(), lp3_space=model.lp3_space)
    compiled = CompiledLikelihood(dataset, cfg)
    return float(compiled.loglik_rows(model.family, _as_row(model))[0])
