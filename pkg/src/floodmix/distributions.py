"""Six candidate flood-frequency distributions.

Three single distributions (two-parameter log normal, log Pearson III,
generalized extreme value) and three mixed distributions (two-component
extreme value, mixed log Pearson III, mixed GEV) share one small API:
``pdf``, ``log_pdf``, ``cdf``, ``sf``, ``quantile`` and ``sample``, all
driven by a :class:`DistributionModel` (a family tag plus an ordered
parameter vector).

Every evaluator is also available in a population-vectorized form
(`logpdf_values`, `cdf_values`, ...) that broadcasts a ``(P, k)`` block of
parameter vectors against a batch of discharges.  The maximum-likelihood
machinery relies on those kernels; the scalar API wraps them with ``P = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import NumericError, ParameterError

__all__ = [
    "Family",
    "DistributionModel",
    "FAMILY_ORDER",
    "param_count",
    "param_names",
    "pdf",
    "log_pdf",
    "cdf",
    "sf",
    "quantile",
    "sample",
    "model_to_dict",
    "model_from_dict",
]

_LN10 = math.log(10.0)
# |zeta| below this uses the exact Gumbel limit expressions.
_GUMBEL_EPS = 1e-12
_LOG10 = "log10"
_RAW = "raw"


class Family(str, enum.Enum):
    """Tags for the six candidate distributions."""

    LN2 = "LN2"
    LP3 = "LP3"
    GEV = "GEV"
    TCEV = "TCEV"
    MIXED_LP3 = "MixedLP3"
    MIXED_GEV = "MixedGEV"


#: Canonical ordering, used for deterministic tie-breaking in rankings.
FAMILY_ORDER = (
    Family.LN2,
    Family.LP3,
    Family.GEV,
    Family.TCEV,
    Family.MIXED_LP3,
    Family.MIXED_GEV,
)

_PARAM_NAMES = {
    Family.LN2: ("mu", "sigma"),
    Family.LP3: ("tau", "alpha", "beta"),
    Family.GEV: ("mu", "sigma", "zeta"),
    Family.TCEV: ("lambda1", "theta1", "lambda2", "theta2"),
    Family.MIXED_LP3: ("tau1", "alpha1", "beta1", "tau2", "alpha2", "beta2", "weight"),
    Family.MIXED_GEV: ("mu1", "sigma1", "zeta1", "mu2", "sigma2", "zeta2", "weight"),
}


def param_count(family: Family) -> int:
    """Number of free parameters of a family (2, 3, 3, 4, 7, 7)."""
    return len(_PARAM_NAMES[Family(family)])


def param_names(family: Family) -> tuple[str, ...]:
    """Ordered parameter names of a family."""
    return _PARAM_NAMES[Family(family)]


@dataclass(frozen=True)
class DistributionModel:
    """A family tag plus an ordered parameter vector.

    Construction validates the per-family constraints and, for the two
    mixtures, normalizes the component order (first component has the
    smaller location) by swapping components and replacing the weight with
    its complement.  This breaks the label-switching symmetry so fitted
    parameter vectors are comparable across optimizer seeds.

    Parameters
    ----------
    family : Family
        One of the six family tags.
    params : sequence of float
        LN2 ``(mu, sigma)`` acting on ln(x); LP3 ``(tau, alpha, beta)``
        acting on log10(x) by default; GEV ``(mu, sigma, zeta)``; TCEV
        ``(lambda1, theta1, lambda2, theta2)``; mixtures are two component
        vectors followed by the first component's weight.
    lp3_space : str
        ``"log10"`` applies the Pearson III form to base-10 logarithms of
        discharge with the 1/(x ln 10) Jacobian; ``"raw"`` applies it to
        discharge directly.  Ignored by non-LP3 families.
    """

    family: Family
    params: tuple[float, ...]
    lp3_space: str = _LOG10

    def __post_init__(self):
        family = Family(self.family)
        params = tuple(float(p) for p in self.params)
        if len(params) != param_count(family):
            raise ParameterError(
                f"{family.value} takes {param_count(family)} parameters, got {len(params)}"
            )
        if self.lp3_space not in (_LOG10, _RAW):
            raise ParameterError(f"unknown lp3_space {self.lp3_space!r}")
        params = _normalize_order(family, params)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)
        _validate_params(family, params)

    def param_dict(self) -> dict[str, float]:
        return dict(zip(param_names(self.family), self.params))


def _normalize_order(family: Family, params: tuple[float, ...]) -> tuple[float, ...]:
    if family in (Family.MIXED_GEV, Family.MIXED_LP3):
        first, second, weight = params[0:3], params[3:6], params[6]
        if first[0] > second[0]:
            return second + first + (1.0 - weight,)
    return params


def _validate_params(family: Family, params: tuple[float, ...]) -> None:
    if not all(math.isfinite(p) for p in params):
        raise ParameterError(f"{family.value} parameters must be finite, got {params}")
    if family is Family.LN2:
        _require(params[1] > 0, family, "sigma must be > 0")
    elif family is Family.GEV:
        _require(params[1] > 0, family, "sigma must be > 0")
    elif family is Family.LP3:
        _require(params[1] > 0, family, "alpha must be > 0")
        _require(params[2] != 0, family, "beta must be nonzero")
    elif family is Family.TCEV:
        lam1, th1, lam2, th2 = params
        _require(lam1 >= 0 and lam2 >= 0, family, "lambdas must be >= 0")
        _require(lam1 + lam2 > 0, family, "at least one lambda must be > 0")
        _require(th1 > 0 and th2 > 0, family, "thetas must be > 0")
    elif family is Family.MIXED_GEV:
        _require(params[1] > 0 and params[4] > 0, family, "sigmas must be > 0")
        _require(0 <= params[6] <= 1, family, "weight must be in [0, 1]")
    elif family is Family.MIXED_LP3:
        _require(params[1] > 0 and params[4] > 0, family, "alphas must be > 0")
        _require(params[2] != 0 and params[5] != 0, family, "betas must be nonzero")
        _require(0 <= params[6] <= 1, family, "weight must be in [0, 1]")


def _require(cond: bool, family: Family, message: str) -> None:
    if not cond:
        raise ParameterError(f"invalid {family.value} parameters: {message}")


# ---------------------------------------------------------------------------
# Population-vectorized kernels.
#
# Each kernel takes a (P, k) block of parameter vectors and a (M,) batch of
# discharges and returns a (P, M) array.  Infeasible rows are the caller's
# problem: `feasible_rows` reports which rows satisfy the family constraints,
# and the kernels themselves never raise for out-of-support x (they return
# -inf log densities / saturated cdf values instead).
# ---------------------------------------------------------------------------


def feasible_rows(family: Family, params: np.ndarray) -> np.ndarray:
    """Boolean mask of parameter rows satisfying the family constraints."""
    p = np.atleast_2d(np.asarray(params, dtype=float))
    ok = np.all(np.isfinite(p), axis=1)
    if family is Family.LN2:
        ok &= p[:, 1] > 0
    elif family is Family.GEV:
        ok &= p[:, 1] > 0
    elif family is Family.LP3:
        ok &= (p[:, 1] > 0) & (p[:, 2] != 0)
    elif family is Family.TCEV:
        ok &= (p[:, 0] >= 0) & (p[:, 2] >= 0) & (p[:, 0] + p[:, 2] > 0)
        ok &= (p[:, 1] > 0) & (p[:, 3] > 0)
    elif family is Family.MIXED_GEV:
        ok &= (p[:, 1] > 0) & (p[:, 4] > 0) & (p[:, 6] >= 0) & (p[:, 6] <= 1)
    elif family is Family.MIXED_LP3:
        ok &= (p[:, 1] > 0) & (p[:, 4] > 0) & (p[:, 2] != 0) & (p[:, 5] != 0)
        ok &= (p[:, 6] >= 0) & (p[:, 6] <= 1)
    return ok


def _col(params: np.ndarray, j: int) -> np.ndarray:
    return params[:, j][:, None]


def _gev_t_and_logt(x, mu, sigma, zeta):
    """t(x) and ln t(x) of the GEV, with the Gumbel limit at |zeta| ~ 0.

    Outside the support (1 + zeta*(x-mu)/sigma <= 0) t saturates: +inf below
    a lower bound (zeta > 0), 0 above an upper bound (zeta < 0).
    """
    z = (x - mu) / sigma
    gumbel = np.abs(zeta) < _GUMBEL_EPS
    zeta_safe = np.where(gumbel, 1.0, zeta)
    arg = 1.0 + zeta * z
    inside = gumbel | (arg > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        logt = np.where(
            gumbel,
            -z,
            -np.log1p(np.where(inside, zeta * z, 0.0)) / zeta_safe,
        )
    # Saturate out-of-support points via the sign of zeta.
    below_lower = ~inside & (zeta > 0)
    above_upper = ~inside & (zeta < 0)
    logt = np.where(below_lower, np.inf, logt)
    logt = np.where(above_upper, -np.inf, logt)
    with np.errstate(over="ignore"):
        t = np.exp(logt)
    return t, logt


def _gev_logpdf(x, mu, sigma, zeta):
    t, logt = _gev_t_and_logt(x, mu, sigma, zeta)
    # t = 0 (above an upper support bound) or t = +inf (below a lower one)
    # both mean zero density; masking first avoids 0 * inf = nan.
    valid = np.isfinite(t) & (t > 0)
    logt_safe = np.where(valid, logt, 0.0)
    t_safe = np.where(valid, t, 0.0)
    out = -np.log(sigma) + (zeta + 1.0) * logt_safe - t_safe
    return np.where(valid, out, -np.inf)


def _gev_cdf(x, mu, sigma, zeta):
    t, _ = _gev_t_and_logt(x, mu, sigma, zeta)
    with np.errstate(over="ignore"):
        return np.exp(-t)


def _gev_sf(x, mu, sigma, zeta):
    t, _ = _gev_t_and_logt(x, mu, sigma, zeta)
    with np.errstate(over="ignore"):
        return -np.expm1(-t)


def _ln2_logpdf(x, mu, sigma):
    with np.errstate(divide="ignore", invalid="ignore"):
        logx = np.log(np.where(x > 0, x, 1.0))
        z = (logx - mu) / sigma
        out = -logx - np.log(sigma) - 0.5 * math.log(2.0 * math.pi) - 0.5 * z * z
    return np.where(x > 0, out, -np.inf)


def _ln2_cdf(x, mu, sigma):
    z = (np.log(np.where(x > 0, x, 1.0)) - mu) / sigma
    return np.where(x > 0, special.ndtr(z), 0.0)


def _ln2_sf(x, mu, sigma):
    z = (np.log(np.where(x > 0, x, 1.0)) - mu) / sigma
    return np.where(x > 0, special.ndtr(-z), 1.0)


def _lp3_transform(x, space):
    """Data-space transform for the Pearson III form: z values and log |dz/dx|."""
    if space == _LOG10:
        positive = x > 0
        safe = np.where(positive, x, 1.0)
        z = np.log10(safe)
        log_jac = np.where(positive, -np.log(safe) - math.log(_LN10), -np.inf)
        return z, log_jac, positive
    z = x
    log_jac = np.zeros_like(np.asarray(x, dtype=float))
    return z, log_jac, np.ones(np.shape(x), dtype=bool)


def _lp3_logpdf(x, tau, alpha, beta, space):
    z, log_jac, in_domain = _lp3_transform(x, space)
    u = (z - tau) / beta
    pos = u > 0
    usafe = np.where(pos, u, 1.0)
    out = (
        (alpha - 1.0) * np.log(usafe)
        - usafe
        - np.log(np.abs(beta))
        - special.gammaln(alpha)
        + log_jac
    )
    return np.where(pos & in_domain, out, -np.inf)


def _lp3_cdf(x, tau, alpha, beta, space):
    z, _, in_domain = _lp3_transform(x, space)
    u = (z - tau) / beta
    ucl = np.maximum(u, 0.0)
    pos_beta = beta > 0
    # beta > 0: support z > tau and F = P(alpha, u).
    # beta < 0: support z < tau and F = Q(alpha, u); past tau (u < 0) F = 1.
    out = np.where(pos_beta, special.gammainc(alpha, ucl), special.gammaincc(alpha, ucl))
    out = np.where(~pos_beta & (u < 0), 1.0, out)
    # Below the log10 domain (x <= 0) nothing has accumulated.
    return np.where(in_domain, out, 0.0)


def _lp3_sf(x, tau, alpha, beta, space):
    z, _, in_domain = _lp3_transform(x, space)
    u = (z - tau) / beta
    ucl = np.maximum(u, 0.0)
    pos_beta = beta > 0
    out = np.where(pos_beta, special.gammaincc(alpha, ucl), special.gammainc(alpha, ucl))
    out = np.where(~pos_beta & (u < 0), 0.0, out)
    return np.where(in_domain, out, 1.0)


def _tcev_log_components(x, lam1, th1, lam2, th2):
    with np.errstate(divide="ignore"):
        la1 = np.where(lam1 > 0, np.log(np.where(lam1 > 0, lam1, 1.0)), -np.inf) - x / th1
        la2 = np.where(lam2 > 0, np.log(np.where(lam2 > 0, lam2, 1.0)), -np.inf) - x / th2
    return la1, la2


def _tcev_logpdf(x, lam1, th1, lam2, th2):
    la1, la2 = _tcev_log_components(x, lam1, th1, lam2, th2)
    with np.errstate(over="ignore"):
        total = np.exp(la1) + np.exp(la2)
    hazard = np.logaddexp(la1 - np.log(th1), la2 - np.log(th2))
    return np.where(np.isfinite(total), -total + hazard, -np.inf)


def _tcev_exponent(x, lam1, th1, lam2, th2):
    la1, la2 = _tcev_log_components(x, lam1, th1, lam2, th2)
    with np.errstate(over="ignore"):
        return np.exp(la1) + np.exp(la2)


def _tcev_cdf(x, lam1, th1, lam2, th2):
    return np.exp(-_tcev_exponent(x, lam1, th1, lam2, th2))


def _tcev_sf(x, lam1, th1, lam2, th2):
    return -np.expm1(-_tcev_exponent(x, lam1, th1, lam2, th2))


def _mix_logpdf(logpdf1, logpdf2, weight):
    with np.errstate(divide="ignore"):
        lw1 = np.log(weight)
        lw2 = np.log1p(-weight)
    return np.logaddexp(lw1 + logpdf1, lw2 + logpdf2)


def logpdf_values(
    family: Family, params: np.ndarray, x: np.ndarray, lp3_space: str = _LOG10
) -> np.ndarray:
    """Log density for a (P, k) block of parameter rows at a (M,) batch of x.

    Fully log-space: densities as small as e^-700 and beyond come back as
    finite negative numbers, never as a spurious -inf.
    """
    family = Family(family)
    p = np.atleast_2d(np.asarray(params, dtype=float))
    x = np.asarray(x, dtype=float)
    if family is Family.LN2:
        return _ln2_logpdf(x, _col(p, 0), _col(p, 1))
    if family is Family.GEV:
        return _gev_logpdf(x, _col(p, 0), _col(p, 1), _col(p, 2))
    if family is Family.LP3:
        return _lp3_logpdf(x, _col(p, 0), _col(p, 1), _col(p, 2), lp3_space)
    if family is Family.TCEV:
        return _tcev_logpdf(x, _col(p, 0), _col(p, 1), _col(p, 2), _col(p, 3))
    if family is Family.MIXED_GEV:
        l1 = _gev_logpdf(x, _col(p, 0), _col(p, 1), _col(p, 2))
        l2 = _gev_logpdf(x, _col(p, 3), _col(p, 4), _col(p, 5))
        return _mix_logpdf(l1, l2, _col(p, 6))
    if family is Family.MIXED_LP3:
        l1 = _lp3_logpdf(x, _col(p, 0), _col(p, 1), _col(p, 2), lp3_space)
        l2 = _lp3_logpdf(x, _col(p, 3), _col(p, 4), _col(p, 5), lp3_space)
        return _mix_logpdf(l1, l2, _col(p, 6))
    raise ParameterError(f"unknown family {family}")


def cdf_values(
    family: Family, params: np.ndarray, x: np.ndarray, lp3_space: str = _LOG10
) -> np.ndarray:
    """Cumulative probability, vectorized like :func:`logpdf_values`."""
    family = Family(family)
    p = np.atleast_2d(np.asarray(params, dtype=float))
    x = np.asarray(x, dtype=float)
    if family is Family.LN2:
        return _ln2_cdf(x, _col(p, 0), _col(p, 1))
    if family is Family.GEV:
        return _gev_cdf(x, _col(p, 0), _col(p, 1), _col(p, 2))
    if family is Family.LP3:
        return _lp3_cdf(x, _col(p, 0), _col(p, 1), _col(p, 2), lp3_space)
    if family is Family.TCEV:
        return _tcev_cdf(x, _col(p, 0), _col(p, 1), _col(p, 2), _col(p, 3))
    if family is Family.MIXED_GEV:
        c1 = _gev_cdf(x, _col(p, 0), _col(p, 1), _col(p, 2))
        c2 = _gev_cdf(x, _col(p, 3), _col(p, 4), _col(p, 5))
        w = _col(p, 6)
        return w * c1 + (1.0 - w) * c2
    if family is Family.MIXED_LP3:
        c1 = _lp3_cdf(x, _col(p, 0), _col(p, 1), _col(p, 2), lp3_space)
        c2 = _lp3_cdf(x, _col(p, 3), _col(p, 4), _col(p, 5), lp3_space)
        w = _col(p, 6)
        return w * c1 + (1.0 - w) * c2
    raise ParameterError(f"unknown family {family}")


def sf_values(
    family: Family, params: np.ndarray, x: np.ndarray, lp3_space: str = _LOG10
) -> np.ndarray:
    """Survival probability 1 - F, computed from direct forms so the far
    upper tail keeps full relative precision."""
    family = Family(family)
    p = np.atleast_2d(np.asarray(params, dtype=float))
    x = np.asarray(x, dtype=float)
    if family is Family.LN2:
        return _ln2_sf(x, _col(p, 0), _col(p, 1))
    if family is Family.GEV:
        return _gev_sf(x, _col(p, 0), _col(p, 1), _col(p, 2))
    if family is Family.LP3:
        return _lp3_sf(x, _col(p, 0), _col(p, 1), _col(p, 2), lp3_space)
    if family is Family.TCEV:
        return _tcev_sf(x, _col(p, 0), _col(p, 1), _col(p, 2), _col(p, 3))
    if family is Family.MIXED_GEV:
        s1 = _gev_sf(x, _col(p, 0), _col(p, 1), _col(p, 2))
        s2 = _gev_sf(x, _col(p, 3), _col(p, 4), _col(p, 5))
        w = _col(p, 6)
        return w * s1 + (1.0 - w) * s2
    if family is Family.MIXED_LP3:
        s1 = _lp3_sf(x, _col(p, 0), _col(p, 1), _col(p, 2), lp3_space)
        s2 = _lp3_sf(x, _col(p, 3), _col(p, 4), _col(p, 5), lp3_space)
        w = _col(p, 6)
        return w * s1 + (1.0 - w) * s2
    raise ParameterError(f"unknown family {family}")


# ---------------------------------------------------------------------------
# Scalar/array public API on DistributionModel.
# ---------------------------------------------------------------------------


def _eval(model: DistributionModel, x, kernel):
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    row = np.asarray(model.params, dtype=float)[None, :]
    out = kernel(model.family, row, np.atleast_1d(arr), model.lp3_space)[0]
    return float(out[0]) if scalar else out


def log_pdf(model: DistributionModel, x) -> float | np.ndarray:
    """ln pdf(x), -inf outside the support, no intermediate underflow."""
    return _eval(model, x, logpdf_values)


def pdf(model: DistributionModel, x) -> float | np.ndarray:
    """Probability density at x (per m3/s); 0 outside the support."""
    out = log_pdf(model, x)
    if isinstance(out, np.ndarray):
        return np.exp(out)
    return math.exp(out)


def cdf(model: DistributionModel, x) -> float | np.ndarray:
    """Non-exceedance probability F(x)."""
    return _eval(model, x, cdf_values)


def sf(model: DistributionModel, x) -> float | np.ndarray:
    """Exceedance probability 1 - F(x), accurate in the far upper tail."""
    return _eval(model, x, sf_values)


def _check_p(p: np.ndarray) -> None:
    if np.any(~((p > 0) & (p < 1))):
        raise ParameterError("probabilities must lie strictly inside (0, 1)")


def _gev_quantile(p, mu, sigma, zeta):
    y = -np.log(p)
    if abs(zeta) < _GUMBEL_EPS:
        return mu - sigma * np.log(y)
    return mu + sigma * (y ** (-zeta) - 1.0) / zeta


def _ln2_quantile(p, mu, sigma):
    return np.exp(mu + sigma * special.ndtri(p))


def _lp3_quantile(p, tau, alpha, beta, space):
    if beta > 0:
        u = special.gammaincinv(alpha, p)
    else:
        u = special.gammainccinv(alpha, p)
    z = tau + beta * u
    return np.power(10.0, z) if space == _LOG10 else z


def _gumbel_component_quantile(p, lam, theta):
    # Inverse of exp(-lam * exp(-x/theta)).
    return theta * (np.log(lam) - np.log(-np.log(p)))


def _bisect_quantile(cdf_fn, lo, hi, p, label):
    """Vectorized bisection for F(x) = p on a guaranteed bracket [lo, hi]."""
    lo = np.array(np.broadcast_to(lo, p.shape), dtype=float)
    hi = np.array(np.broadcast_to(hi, p.shape), dtype=float)
    # Guard against rounding at the bracket ends before bisection starts.
    for _ in range(64):
        bad_lo = cdf_fn(lo) > p
        bad_hi = cdf_fn(hi) < p
        if not (bad_lo.any() or bad_hi.any()):
            break
        width = np.maximum(hi - lo, 1.0)
        lo = np.where(bad_lo, lo - width, lo)
        hi = np.where(bad_hi, hi + width, hi)
    else:
        raise NumericError(f"quantile bracket failure for {label}: p={p!r}")
    for _ in range(500):
        mid = 0.5 * (lo + hi)
        high = cdf_fn(mid) >= p
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
        # relative to the shrinking bracket itself, so roots many decades
        # below the initial bracket width still come out fully resolved
        tol = 1e-13 * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300
        if np.all(hi - lo <= tol):
            break
    return 0.5 * (lo + hi)


def quantile(model: DistributionModel, p) -> float | np.ndarray:
    """Inverse cdf.

    Closed forms for LN2, LP3 and GEV; bracketed bisection on the cdf for
    TCEV and the mixtures (bracket built from component quantiles).
    """
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    pv = np.atleast_1d(arr)
    _check_p(pv)
    fam = model.family
    prm = model.params
    if fam is Family.LN2:
        out = _ln2_quantile(pv, *prm)
    elif fam is Family.GEV:
        out = _gev_quantile(pv, *prm)
    elif fam is Family.LP3:
        out = _lp3_quantile(pv, *prm, model.lp3_space)
    elif fam is Family.TCEV:
        lam1, th1, lam2, th2 = prm
        comps = [(lam, th) for lam, th in ((lam1, th1), (lam2, th2)) if lam > 0]
        if len(comps) == 1:
            out = _gumbel_component_quantile(pv, *comps[0])
        else:
            # F = F1 * F2 <= min(Fi)  =>  q(p) >= max_i qi(p);
            # Fi >= sqrt(p) for both  =>  F >= p  =>  q(p) <= max_i qi(sqrt(p)).
            lo = np.maximum(
                _gumbel_component_quantile(pv, lam1, th1),
                _gumbel_component_quantile(pv, lam2, th2),
            )
            hi = np.maximum(
                _gumbel_component_quantile(np.sqrt(pv), lam1, th1),
                _gumbel_component_quantile(np.sqrt(pv), lam2, th2),
            )
            out = _bisect_quantile(lambda x: sf_and_cdf_helper(model, x), lo, hi, pv, "TCEV")
    elif fam in (Family.MIXED_GEV, Family.MIXED_LP3):
        weight = prm[6]
        if fam is Family.MIXED_GEV:
            q1 = _gev_quantile(pv, *prm[0:3])
            q2 = _gev_quantile(pv, *prm[3:6])
        else:
            q1 = _lp3_quantile(pv, *prm[0:3], model.lp3_space)
            q2 = _lp3_quantile(pv, *prm[3:6], model.lp3_space)
        if weight == 1.0:
            out = q1
        elif weight == 0.0:
            out = q2
        else:
            lo = np.minimum(q1, q2)
            hi = np.maximum(q1, q2)
            out = _bisect_quantile(
                lambda x: sf_and_cdf_helper(model, x), lo, hi, pv, fam.value
            )
    else:
        raise ParameterError(f"unknown family {fam}")
    return float(out[0]) if scalar else out


def sf_and_cdf_helper(model: DistributionModel, x: np.ndarray) -> np.ndarray:
    """cdf as a plain (M,) vector, used as the bisection target."""
    row = np.asarray(model.params, dtype=float)[None, :]
    return cdf_values(model.family, row, x, model.lp3_space)[0]


def sample(model: DistributionModel, count: int, seed: int) -> np.ndarray:
    """Draw `count` deterministic samples (same seed, same sequence).

    Mixtures first pick a component by the mixing weight, then invert that
    component's cdf; everything else inverts the full cdf directly.
    """
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    u = np.clip(rng.random(count), 1e-300, 1.0 - 1e-16)
    fam = model.family
    prm = model.params
    if fam in (Family.MIXED_GEV, Family.MIXED_LP3):
        pick_first = rng.random(count) < prm[6]
        if fam is Family.MIXED_GEV:
            q1 = _gev_quantile(u, *prm[0:3])
            q2 = _gev_quantile(u, *prm[3:6])
        else:
            q1 = _lp3_quantile(u, *prm[0:3], model.lp3_space)
            q2 = _lp3_quantile(u, *prm[3:6], model.lp3_space)
        return np.where(pick_first, q1, q2)
    return np.asarray(quantile(model, u), dtype=float)


# ---------------------------------------------------------------------------
# JSON-friendly serialization, shared by fit artifacts and the CLI.
# ---------------------------------------------------------------------------


def model_to_dict(model: DistributionModel) -> dict:
    """Serialize to the documented {family, params, [lp3_space]} object."""
    out = {"family": model.family.value, "params": list(model.params)}
    if model.family in (Family.LP3, Family.MIXED_LP3):
        out["lp3_space"] = model.lp3_space
    return out


def model_from_dict(obj: dict) -> DistributionModel:
    """Inverse of :func:`model_to_dict`."""
    return DistributionModel(
        family=Family(obj["family"]),
        params=tuple(obj["params"]),
        lp3_space=obj.get("lp3_space", _LOG10),
    )
