"""FGM copula mathematics and its composition with exponential fading.

The Farlie-Gumbel-Morgenstern (FGM) family

    C(u1, u2) = u1*u2*(1 + theta*(1 - u1)*(1 - u2)),    theta in [-1, 1],

spans weak negative (theta < 0) through weak positive (theta > 0)
dependence, with theta = 0 the independence copula.  Composing it with the
exponential marginals F_i(g) = 1 - exp(-lambda_i*g) of squared Rayleigh
channel gains gives the joint law of a correlated gain pair; the sampler
draws from that law by conditional inversion.

All analytical functions here are pure.  Samplers mutate only the
generator passed in; concurrent sampling requires independent substreams
(see :mod:`swmac.streams`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .streams import CHUNK_SIZE, substream

__all__ = [
    "DependenceParameter",
    "UnitPair",
    "FadingMarginals",
    "GainPair",
    "copula_cdf",
    "copula_density",
    "conditional_cdf",
    "sample_unit_pair",
    "sample_unit_pairs",
    "sample_gain_pair",
    "sample_gain_pairs",
    "iter_gain_pair_chunks",
    "joint_gain_cdf",
    "joint_gain_pdf",
]


@dataclass(frozen=True)
class DependenceParameter:
    """FGM dependence parameter, dimensionless, in [-1, 1]."""

    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", float(self.theta))
        if not (-1.0 <= self.theta <= 1.0):
            raise ValueError(f"theta must be in [-1, 1], got {self.theta}")


@dataclass(frozen=True)
class UnitPair:
    """A point on the unit square; both coordinates are probabilities."""

    u1: float
    u2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "u1", float(self.u1))
        object.__setattr__(self, "u2", float(self.u2))
        if not (0.0 <= self.u1 <= 1.0):
            raise ValueError(f"u1 must be in [0, 1], got {self.u1}")
        if not (0.0 <= self.u2 <= 1.0):
            raise ValueError(f"u2 must be in [0, 1], got {self.u2}")


@dataclass(frozen=True)
class FadingMarginals:
    """Exponential rate parameters of the two squared Rayleigh gains.

    ``lambda_i = 1/(2*sigma_i^2)`` where ``sigma_i^2`` is the per-branch
    Rayleigh variance; the mean power gain is ``1/lambda_i``.
    """

    lambda1: float
    lambda2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambda1", float(self.lambda1))
        object.__setattr__(self, "lambda2", float(self.lambda2))
        if not self.lambda1 > 0.0:
            raise ValueError(f"lambda1 must be > 0, got {self.lambda1}")
        if not self.lambda2 > 0.0:
            raise ValueError(f"lambda2 must be > 0, got {self.lambda2}")

    @classmethod
    def from_sigmas(cls, sigma1_sq: float, sigma2_sq: float) -> "FadingMarginals":
        """Build from Rayleigh variances: lambda_i = 1/(2*sigma_i^2)."""
        if not sigma1_sq > 0.0:
            raise ValueError(f"sigma1_sq must be > 0, got {sigma1_sq}")
        if not sigma2_sq > 0.0:
            raise ValueError(f"sigma2_sq must be > 0, got {sigma2_sq}")
        return cls(1.0 / (2.0 * sigma1_sq), 1.0 / (2.0 * sigma2_sq))


@dataclass(frozen=True)
class GainPair:
    """A pair of nonnegative channel power gains (squared magnitudes)."""

    g1: float
    g2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "g1", float(self.g1))
        object.__setattr__(self, "g2", float(self.g2))
        if not self.g1 >= 0.0:
            raise ValueError(f"g1 must be >= 0, got {self.g1}")
        if not self.g2 >= 0.0:
            raise ValueError(f"g2 must be >= 0, got {self.g2}")


# ---------------------------------------------------------------------------
# Array kernels.  Public operations and the bulk samplers share these, so
# scalar and vectorized paths are bit-identical.
# ---------------------------------------------------------------------------


def _cdf(theta, u1, u2):
    return u1 * u2 * (1.0 + theta * (1.0 - u1) * (1.0 - u2))


def _density(theta, u1, u2):
    return 1.0 + theta * (1.0 - 2.0 * u1) * (1.0 - 2.0 * u2)


def _conditional(theta, u1, u2):
    # dC/du1 at (u1, u2)
    return u2 * (1.0 + theta * (1.0 - 2.0 * u1) * (1.0 - u2))


def _invert_conditional(theta, u1, v):
    """Solve conditional(theta, u1, u2) = v for u2 in [0, 1].

    With a = theta*(1 - 2*u1) the equation is the quadratic
    a*u2^2 - (1 + a)*u2 + v = 0 whose in-range root is
    ((1 + a) - sqrt((1 + a)^2 - 4*a*v)) / (2*a).  It is evaluated in the
    algebraically identical conjugate form 2*v / ((1 + a) + sqrt(disc)),
    which is stable for all a (a -> 0 gives u2 = v exactly, so no
    degenerate-case branch is needed).
    """
    u1 = np.asarray(u1, dtype=float)
    v = np.asarray(v, dtype=float)
    a = theta * (1.0 - 2.0 * u1)
    disc = (1.0 + a) * (1.0 + a) - 4.0 * a * v
    den = (1.0 + a) + np.sqrt(np.maximum(disc, 0.0))
    # den == 0 only at (a, v) = (-1, 0), where the root is 0.
    u2 = np.where(den > 0.0, 2.0 * v / np.where(den > 0.0, den, 1.0), 0.0)
    return np.clip(u2, 0.0, 1.0)


def _exp_cdf(lam, g):
    return -np.expm1(-lam * np.asarray(g, dtype=float))


def _exp_inverse(lam, u):
    # Quantile of Exp(lam): g = -ln(1 - u)/lam.
    return -np.log1p(-np.asarray(u, dtype=float)) / lam


# ---------------------------------------------------------------------------
# Copula operations
# ---------------------------------------------------------------------------


def copula_cdf(theta: DependenceParameter, u: UnitPair) -> float:
    """FGM copula CDF C(u1, u2) = u1*u2*(1 + theta*(1-u1)*(1-u2))."""
    return float(_cdf(theta.theta, u.u1, u.u2))


def copula_density(theta: DependenceParameter, u: UnitPair) -> float:
    """FGM copula density c(u1, u2) = 1 + theta*(1-2*u1)*(1-2*u2).

    The mixed second partial of the CDF; a polynomial, nonnegative on the
    closed unit square for every theta in [-1, 1].
    """
    return float(_density(theta.theta, u.u1, u.u2))


def conditional_cdf(theta: DependenceParameter, u1: float, u2: float) -> float:
    """Conditional CDF of U2 given U1 = u1: dC/du1 = u2*(1 + theta*(1-2*u1)*(1-u2)).

    Monotone nondecreasing in u2 for fixed (theta, u1); maps 0 -> 0 and 1 -> 1.
    """
    if not (0.0 <= u1 <= 1.0):
        raise ValueError(f"u1 must be in [0, 1], got {u1}")
    if not (0.0 <= u2 <= 1.0):
        raise ValueError(f"u2 must be in [0, 1], got {u2}")
    return float(_conditional(theta.theta, u1, u2))


def sample_unit_pairs(
    theta: DependenceParameter, n: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``n`` FGM-distributed pairs by conditional inversion.

    Consumes exactly ``2*n`` uniforms from ``rng`` in interleaved order
    (u1 then v, per pair), so a vectorized block of n draws is identical to
    n consecutive single draws from the same generator.

    Returns an (n, 2) array with both marginals uniform on [0, 1].
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    w = rng.random((n, 2))
    u1 = w[:, 0]
    u2 = _invert_conditional(theta.theta, u1, w[:, 1])
    return np.column_stack((u1, u2))


def sample_unit_pair(theta: DependenceParameter, rng: np.random.Generator) -> UnitPair:
    """Draw one FGM-distributed pair; consumes exactly two uniforms."""
    pair = sample_unit_pairs(theta, 1, rng)[0]
    return UnitPair(float(pair[0]), float(pair[1]))


def sample_gain_pairs(
    theta: DependenceParameter,
    marginals: FadingMarginals,
    n: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Draw ``n`` correlated gain pairs: g_i = -ln(1 - u_i)/lambda_i.

    Returns an (n, 2) array; marginal of column i is Exp(lambda_i) and the
    joint density is :func:`joint_gain_pdf`.
    """
    u = sample_unit_pairs(theta, n, rng)
    g1 = _exp_inverse(marginals.lambda1, u[:, 0])
    g2 = _exp_inverse(marginals.lambda2, u[:, 1])
    return np.column_stack((g1, g2))


def sample_gain_pair(
    theta: DependenceParameter,
    marginals: FadingMarginals,
    rng: np.random.Generator,
) -> GainPair:
    """Draw one correlated gain pair; consumes exactly two uniforms."""
    g = sample_gain_pairs(theta, marginals, 1, rng)[0]
    return GainPair(float(g[0]), float(g[1]))


def iter_gain_pair_chunks(
    theta: DependenceParameter,
    marginals: FadingMarginals,
    n: int,
    seed: int,
    chunk_size: int = CHUNK_SIZE,
) -> Iterator[np.ndarray]:
    """Yield ``n`` correlated gain pairs in fixed-size chunks.

    Chunk ``k`` is drawn from the independent substream ``(seed, k)``, so
    any assignment of chunks to workers (or any traversal order) produces
    the same values for the same logical sample index.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    for k in range((n + chunk_size - 1) // chunk_size):
        m = min(chunk_size, n - k * chunk_size)
        yield sample_gain_pairs(theta, marginals, m, substream(seed, k))


def joint_gain_cdf(
    theta: DependenceParameter, marginals: FadingMarginals, g: GainPair
) -> float:
    """Joint CDF of the correlated gain pair: C(F1(g1), F2(g2)).

    Shares the implementation path with :func:`copula_cdf`, so the two are
    bit-identical by construction.
    """
    u = UnitPair(
        float(_exp_cdf(marginals.lambda1, g.g1)),
        float(_exp_cdf(marginals.lambda2, g.g2)),
    )
    return copula_cdf(theta, u)


def joint_gain_pdf(
    theta: DependenceParameter, marginals: FadingMarginals, g: GainPair
) -> float:
    """Joint density of the correlated gain pair.

    Equals
    lambda1*lambda2*exp(-lambda1*g1)*exp(-lambda2*g2)
        * [1 + theta*(2*exp(-lambda1*g1) - 1)*(2*exp(-lambda2*g2) - 1)],
    i.e. the product of the exponential marginal densities times the copula
    density evaluated at the marginal CDFs; note 1 - 2*F_i(g) =
    2*exp(-lambda_i*g) - 1.
    """
    l1, l2 = marginals.lambda1, marginals.lambda2
    f1 = l1 * np.exp(-l1 * g.g1)
    f2 = l2 * np.exp(-l2 * g.g2)
    u1 = float(_exp_cdf(l1, g.g1))
    u2 = float(_exp_cdf(l2, g.g2))
    return float(f1 * f2 * _density(theta.theta, u1, u2))
