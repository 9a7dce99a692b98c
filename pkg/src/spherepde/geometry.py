"""Sphere bookkeeping and Gegenbauer (ultraspherical) polynomial evaluation.

Everything in this library lives on the unit n-sphere S^n in R^{n+1},
n >= 2, with total surface measure

    Sigma_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2).

Zonal functions on S^n expand in Gegenbauer polynomials C_l^lambda with
lambda = (n-1)/2, evaluated here by the standard forward three-term
recurrence

    C_0 = 1,   C_1 = 2 lambda t,
    l C_l = 2 (l + lambda - 1) t C_{l-1} - (l + 2 lambda - 2) C_{l-2},

which is stable on [-1, 1] for the degree ranges used here (l up to ~1e4,
double precision).  On [-1, 1] the polynomials obey the uniform bound
|C_l^lambda(t)| <= (n + l - 2)^{n-2}.
"""

from dataclasses import dataclass
from math import gamma, pi

import numpy as np

from .errors import SphereDomainError

# Tolerated roundoff excursion of t outside [-1, 1] (arccos/cos round trips).
_T_SLACK = 1e-12


@dataclass(frozen=True)
class SphereContext:
    """Dimension n with the derived constants every module needs.

    lam     -- Gegenbauer order lambda = (n-1)/2
    sigma_n -- surface measure of S^n
    """

    n: int
    lam: float
    sigma_n: float

    def __post_init__(self):
        if self.n < 2:
            raise SphereDomainError(f"sphere dimension must be >= 2, got {self.n}")


def surface_measure(n):
    """Total measure of S^n: 2 pi^{(n+1)/2} / Gamma((n+1)/2)."""
    return 2.0 * pi ** ((n + 1) / 2.0) / gamma((n + 1) / 2.0)


def make_context(n):
    """Build the SphereContext for S^n (n >= 2 integer)."""
    n = int(n)
    if n < 2:
        raise SphereDomainError(f"sphere dimension must be >= 2, got {n}")
    return SphereContext(n=n, lam=(n - 1) / 2.0, sigma_n=surface_measure(n))


def _clamp_t(t):
    """Clamp roundoff excursions of t to [-1, 1]; reject real excursions."""
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + _T_SLACK):
        bad = float(np.max(np.abs(t)))
        raise SphereDomainError(f"argument t must lie in [-1, 1], got |t| = {bad}")
    return np.clip(t, -1.0, 1.0)


def gegenbauer_batch(ctx, l_max, t):
    """All values [C_0^lambda(t), ..., C_{l_max}^lambda(t)] for scalar t."""
    if l_max < 0:
        raise SphereDomainError(f"degree l must be >= 0, got {l_max}")
    t = float(_clamp_t(t))
    lam = ctx.lam
    out = np.empty(l_max + 1)
    out[0] = 1.0
    if l_max >= 1:
        out[1] = 2.0 * lam * t
    for l in range(2, l_max + 1):
        out[l] = (2.0 * (l + lam - 1.0) * t * out[l - 1]
                  - (l + 2.0 * lam - 2.0) * out[l - 2]) / l
    return out


def gegenbauer(ctx, l, t):
    """C_l^lambda(t) for a single degree (delegates to the batch recurrence)."""
    if l < 0:
        raise SphereDomainError(f"degree l must be >= 0, got {l}")
    return float(gegenbauer_batch(ctx, l, t)[l])


def gegenbauer_matrix(ctx, l_max, t):
    """Matrix C[l, j] = C_l^lambda(t_j) for a vector of arguments.

    Row l of the result is bit-identical to gegenbauer_batch at each t_j;
    this is the shared recurrence pass used by synthesis and series
    summation.
    """
    if l_max < 0:
        raise SphereDomainError(f"degree l must be >= 0, got {l_max}")
    t = np.atleast_1d(_clamp_t(t))
    lam = ctx.lam
    out = np.empty((l_max + 1, t.size))
    out[0] = 1.0
    if l_max >= 1:
        out[1] = 2.0 * lam * t
    for l in range(2, l_max + 1):
        out[l] = (2.0 * (l + lam - 1.0) * t * out[l - 1]
                  - (l + 2.0 * lam - 2.0) * out[l - 2]) / l
    return out


def gegenbauer_bound(ctx, l):
    """Uniform bound (n + l - 2)^{n-2} for |C_l^lambda| on [-1, 1]."""
    return float(ctx.n + l - 2) ** (ctx.n - 2)


def gegenbauer_at_one(ctx, l_max):
    """C_l^lambda(1) = binom(l + 2 lambda - 1, l) for l = 0..l_max.

    Computed by the stable product form C_l(1) = C_{l-1}(1) (l + 2l - 2 ... )
    i.e. C_l(1) = C_{l-1}(1) * (l + 2 lambda - 1) / l.
    """
    two_lam = 2.0 * ctx.lam
    out = np.empty(l_max + 1)
    out[0] = 1.0
    for l in range(1, l_max + 1):
        out[l] = out[l - 1] * (l + two_lam - 1.0) / l
    return out


def eigenvalue(ctx, l):
    """Laplace-Beltrami eigenvalue -l(n+l-1) on degree-l spherical harmonics."""
    l = np.asarray(l)
    return -l * (ctx.n + l - 1.0)
