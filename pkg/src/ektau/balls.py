"""Geodesic balls: bounding cylinders, membership, Monte Carlo volume, growth fits.

Ball volumes are estimated by rejection sampling against a bounding
cylinder (exponential-map Jacobians are avoided because of conjugate
points).  Ball centers other than the origin reduce to the origin by the
ambient isometries, so volumes are computed for origin-centered balls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PointE, SpaceParams
from .errors import ConvergenceError, UnsupportedSpaceError
from .geodesics import (
    distance,
    hyperbolic_distance,
    nil_group_translate,
    nil_max_height,
    sl2_max_height_bound,
)

__all__ = [
    "BallSpec",
    "VolumeEstimate",
    "GrowthFit",
    "NilBallProfile",
    "bounding_cylinder",
    "in_ball",
    "nil_ball_profile",
    "mc_volume",
    "comparison_cylinder_volume",
    "sl2_volume_bracket",
    "volume_growth_fit",
]

MC_CHUNK = 1 << 16  # samples per RNG stream; fixed so results are chunk-count independent
PROFILE_NC = 4000   # phi resolution of the Nil ball profile
PROFILE_BINS = 800  # radial bins of the Nil ball profile


@dataclass(frozen=True)
class BallSpec:
    """A geodesic ball B_R(center) of E(kappa, tau)."""

    sp: SpaceParams
    center: PointE
    radius: float

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class VolumeEstimate:
    """Monte Carlo volume with its sampling standard error."""

    value: float
    std_error: float
    samples: int
    bounding_volume: float


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares growth fits of a volume/area sequence in the radius.

    Both the power model log v = c + e log R and the exponential model
    log v = c + r R are fitted; ``preferred`` names the model with the
    smaller residual but neither is discarded.
    """

    power_exponent: float
    power_coeff: float
    power_residual: float
    exp_rate: float
    exp_coeff: float
    exp_residual: float
    preferred: str


def bounding_cylinder(ball: BallSpec) -> tuple[float, float]:
    """(base-disk model radius, half-height) of a cylinder containing the ball.

    The base disk has intrinsic radius R, hence Euclidean model radius
    (2/sqrt(-kappa)) tanh(sqrt(-kappa) R / 2) for kappa < 0.  The height is
    sharp for Nil3 and an upper bound for kappa < 0, tau > 0.
    """
    sp, R = ball.sp, ball.radius
    if sp.is_euclidean:
        return R, R
    if sp.is_nil:
        return R, nil_max_height(sp.tau, R)
    sk = math.sqrt(-sp.kappa)
    disk = (2.0 / sk) * math.tanh(0.5 * sk * R)
    if sp.is_product:
        return disk, R
    return disk, sl2_max_height_bound(sp, R)


def in_ball(ball: BallSpec, p: PointE, tol: float = 1e-10) -> bool:
    """Whether p lies in the open ball, pre-filtered by the bounding cylinder."""
    sp = ball.sp
    disk_r, height = bounding_cylinder(ball)
    if sp.is_nil:
        q = nil_group_translate(sp.tau, ball.center, p)
        if math.hypot(q.x, q.y) >= disk_r + tol or abs(q.z) >= height + tol:
            return False
    elif sp.is_product or sp.is_sl2:
        if (
            hyperbolic_distance(sp.kappa, ball.center.base(), p.base())
            >= ball.radius + tol
            or abs(p.z - ball.center.z) >= height + tol
        ):
            return False
    return distance(sp, ball.center, p, tol=tol) < ball.radius


# ---------------------------------------------------------------------------
# Nil3 ball profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NilBallProfile:
    """Height profile z_max(rho) of the ball B_R(0) in Nil3(tau).

    Built from the forward image of the closed-form geodesic family; the
    ball is the solid of revolution {rho <= R, |z| <= z_max(rho)}.  The
    representation is cross-validated against the shooting distance solver
    in the test-suite.
    """

    tau: float
    radius: float
    rho_grid: np.ndarray
    zmax: np.ndarray

    def contains(self, rho, z):
        """Vectorized membership of (rho, z) in the ball."""
        rho = np.asarray(rho, dtype=float)
        z = np.asarray(z, dtype=float)
        zcap = np.interp(rho, self.rho_grid, self.zmax)
        return (rho <= self.radius) & (np.abs(z) <= zcap)


def nil_ball_profile(
    tau: float,
    R: float,
    n_phi: int = PROFILE_NC,
    n_bins: int = PROFILE_BINS,
) -> NilBallProfile:
    """Tabulate z_max(rho) over B_R(0) from the (phi, t) geodesic family.

    z is strictly increasing in arclength along every non-horizontal
    geodesic, so the extreme height over the slice at radius rho is
    attained at the largest t <= R with rho(phi, t) = rho; that t solves
    |sin(tau c t)| = rho tau c / sin(phi) in closed form, leaving only a
    smooth maximization over phi.
    """
    phi = np.linspace(1e-6, 0.5 * math.pi * (1.0 - 1e-9), n_phi)[:, None]
    c = np.cos(phi)
    s = np.sin(phi)
    w = tau * c
    amp = s / w  # radial amplitude of the projected circle (diameter)
    rho = np.linspace(0.0, R * (1.0 - 0.5 / n_bins), n_bins)[None, :]
    ratio = np.clip(rho / amp, 0.0, 1.0)
    beta = np.arcsin(ratio)
    W = w * R
    # largest t <= R with w t congruent to +-beta mod pi
    k_plus = np.floor((W - beta) / math.pi)
    k_minus = np.floor((W + beta) / math.pi)
    t_plus = (k_plus * math.pi + beta) / w
    t_minus = (k_minus * math.pi - beta) / w
    t_star = np.maximum(np.where(t_plus >= 0.0, t_plus, -np.inf),
                        np.where(t_minus >= 0.0, t_minus, -np.inf))
    reachable = (rho <= amp) & (t_star >= 0.0)
    t_star = np.where(reachable, t_star, 0.0)
    u = w * t_star
    z = (1.0 + c * c) / (2.0 * c) * t_star - s * s / (4.0 * tau * c * c) * np.sin(2.0 * u)
    z = np.where(reachable, np.abs(z), 0.0)
    zmax = z.max(axis=0)

    # The per-phi suprema frequently sit exactly on the sphere t = R, between
    # phi samples; rasterize that boundary curve densely to close the gap.
    pb = np.linspace(1e-7, 0.5 * math.pi * (1.0 - 1e-9), 50 * n_phi)
    cb, sb = np.cos(pb), np.sin(pb)
    wb = tau * cb
    rho_b = sb / wb * np.abs(np.sin(wb * R))
    z_b = np.abs(
        (1.0 + cb * cb) / (2.0 * cb) * R
        - sb * sb / (4.0 * tau * cb * cb) * np.sin(2.0 * wb * R)
    )
    seg_z = np.maximum(z_b[:-1], z_b[1:])
    width = R / n_bins
    lo = np.clip((np.minimum(rho_b[:-1], rho_b[1:]) / width).astype(np.int64), 0, n_bins - 1)
    hi = np.clip((np.maximum(rho_b[:-1], rho_b[1:]) / width).astype(np.int64), 0, n_bins - 1)
    np.maximum.at(zmax, lo, seg_z)
    np.maximum.at(zmax, hi, seg_z)
    wide = np.nonzero(hi - lo > 1)[0]
    for i in wide:
        zmax[lo[i]: hi[i] + 1] = np.maximum(zmax[lo[i]: hi[i] + 1], seg_z[i])

    grid = np.concatenate((rho[0], [R]))
    vals = np.concatenate((zmax, [0.0]))
    vals[0] = nil_max_height(tau, R)
    return NilBallProfile(tau, R, grid, vals)


# ---------------------------------------------------------------------------
# Monte Carlo volume
# ---------------------------------------------------------------------------

def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, chunk]))


def _sample_cylinder(rng, n, disk_r, height):
    """Uniform Lebesgue samples (x, y, z) in the model cylinder."""
    u = rng.random((3, n))
    rho = disk_r * np.sqrt(u[0])
    ang = 2.0 * math.pi * u[1]
    z = height * (2.0 * u[2] - 1.0)
    return rho * np.cos(ang), rho * np.sin(ang), z


def comparison_cylinder_volume(tau: float, R: float) -> float:
    """Riemannian volume of D_R x ]-tau R^2, tau R^2[ in Nil3; 2 pi tau R^4."""
    return 2.0 * math.pi * tau * R**4


def mc_volume(ball: BallSpec, n_samples: int, seed: int) -> VolumeEstimate:
    """Monte Carlo ball volume, deterministic in (ball, n_samples, seed).

    Samples are drawn uniformly in the bounding cylinder in fixed-size
    chunks with counter-based per-chunk RNG streams, so the result does not
    depend on how chunks are scheduled.  The integrand is the model volume
    density lambda^2 times the ball indicator (the density is 1 for
    kappa = 0); the standard error is the sample standard deviation of that
    integrand, which reduces to the binomial-proportion formula when the
    density is constant.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    sp, R = ball.sp, ball.radius
    if sp.is_sl2:
        raise UnsupportedSpaceError(
            "exact kappa<0, tau>0 ball volume unavailable; use sl2_volume_bracket"
        )
    disk_r, height = bounding_cylinder(ball)
    lebesgue = math.pi * disk_r**2 * 2.0 * height

    profile = nil_ball_profile(sp.tau, R) if sp.is_nil else None

    total = 0.0
    total_sq = 0.0
    n_done = 0
    chunk = 0
    while n_done < n_samples:
        n = min(MC_CHUNK, n_samples - n_done)
        rng = _chunk_rng(seed, chunk)
        x, y, z = _sample_cylinder(rng, n, disk_r, height)
        if sp.is_euclidean:
            hit = x * x + y * y + z * z < R * R
            vals = hit.astype(float)
        elif sp.is_nil:
            hit = profile.contains(np.hypot(x, y), z)
            vals = hit.astype(float)
        else:  # product kappa < 0, tau = 0
            sk = math.sqrt(-sp.kappa)
            rho = np.hypot(x, y)
            dh = (2.0 / sk) * np.arctanh(np.minimum(0.5 * sk * rho, 1.0 - 1e-16))
            hit = dh * dh + z * z < R * R
            lam = 1.0 / (1.0 + 0.25 * sp.kappa * (x * x + y * y))
            vals = hit * lam**2
        total += float(np.sum(vals))
        total_sq += float(np.sum(vals * vals))
        n_done += n
        chunk += 1

    mean = total / n_samples
    var = max(total_sq / n_samples - mean * mean, 0.0)
    value = lebesgue * mean
    std_error = lebesgue * math.sqrt(var / n_samples)
    return VolumeEstimate(value, std_error, n_samples, lebesgue * _mean_density(sp, disk_r))


def _mean_density(sp: SpaceParams, disk_r: float) -> float:
    """Mean of lambda^2 over the model cylinder (1 for kappa = 0)."""
    if sp.kappa == 0.0:
        return 1.0
    # integral of lambda(rho)^2 * 2 pi rho over the disk / (pi disk_r^2)
    a = -0.25 * sp.kappa
    return 1.0 / (1.0 - a * disk_r**2)


def sl2_volume_bracket(ball: BallSpec) -> tuple[float, float]:
    """Certified (lower, upper) volume bracket for kappa < 0, tau > 0.

    Lower: the region {d_base + |z| <= R}, contained in the ball because
    the lifted base segment plus a fiber segment is a curve of that length;
    its Riemannian volume is closed-form.  Upper: the weighted volume of
    the bounding cylinder.
    """
    sp, R = ball.sp, ball.radius
    if not sp.is_sl2:
        raise UnsupportedSpaceError("bracket is specific to kappa<0, tau>0")
    a = math.sqrt(-sp.kappa)
    lower = (4.0 * math.pi / (a * a)) * (math.sinh(a * R) / a - R)
    disk_area = (4.0 * math.pi / -sp.kappa) * math.sinh(0.5 * a * R) ** 2
    upper = disk_area * 2.0 * sl2_max_height_bound(sp, R)
    return lower, upper


# ---------------------------------------------------------------------------
# Growth fitting
# ---------------------------------------------------------------------------

def volume_growth_fit(radii, values) -> GrowthFit:
    """Fit power and exponential growth models to (radius, value) data.

    Requires at least 6 increasing radii bounded away from zero and
    strictly positive finite values.
    """
    radii = np.asarray(radii, dtype=float)
    values = np.asarray(values, dtype=float)
    if radii.size < 6:
        raise ValueError("need at least 6 radii")
    if not np.all(np.diff(radii) > 0.0) or radii[0] <= 1e-9:
        raise ValueError("radii must be increasing and bounded away from 0")
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise ValueError("values must be finite and positive")
    logv = np.log(values)
    pw, pw_res = _linfit(np.log(radii), logv)
    ex, ex_res = _linfit(radii, logv)
    preferred = "power" if pw_res <= ex_res else "exponential"
    return GrowthFit(
        power_exponent=pw[0],
        power_coeff=math.exp(pw[1]),
        power_residual=pw_res,
        exp_rate=ex[0],
        exp_coeff=math.exp(ex[1]),
        exp_residual=ex_res,
        preferred=preferred,
    )


def _linfit(x, y):
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    rms = math.sqrt(float(res[0]) / len(x)) if res.size else 0.0
    return (float(coef[0]), float(coef[1])), rms
