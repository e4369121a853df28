"""Closed-form decoding radii and the rate-region comparison of the two decoders.

Relative radii at a rate point rho = (k_1/q, ..., k_m/q):

* recursive product decoder: prod(1 - sqrt(rho_i))
* lifting decoder applied to the PRS code: max(0, 1 - sqrt(sum rho_i))
"""

from collections.abc import Iterable, Sequence
from math import factorial, floor, isclose, isqrt, prod, sqrt

import galois
import numpy as np

from app.app_logging import logger
from app.codes.rm_codec import rm_radius
from app.core.errors import SpecValidationError
from app.schema import DominanceReport, RadiusReport

SurfaceRow = tuple[float, float, float, float]
SURFACE_HEADER = ("rho1", "rho2", "radius_recursive", "radius_pw")


def _clamp(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def recursive_radius(rates: Sequence[float]) -> float:
    return _clamp(prod(1 - sqrt(r) for r in rates))


def prs_pw_radius(rates: Sequence[float]) -> float:
    return _clamp(1 - sqrt(sum(rates)))


def ag_radius(q: int, ell: int, m: int, n: int) -> int:
    """Integer threshold n - isqrt(l * (q+1)^(m-1) * n) of the algebraic-geometry decoder."""
    return n - isqrt(ell * (q + 1) ** (m - 1) * n)


def compare_radii(q: int, m: int, k: Sequence[int]) -> RadiusReport:
    """All four radii at the rate point k / q and which decoder wins.

    Args:
        q (int): field order (only the rates k_i / q matter)
        m (int): number of axes
        k (Sequence[int]): per-axis dimensions, 1 <= k_i <= q

    Raises:
        SpecValidationError: bad dimensions

    Returns:
        RadiusReport: the comparison
    """
    if len(k) != m or any(not 1 <= ki <= q for ki in k):
        raise SpecValidationError(f"need m = {m} dimensions in [1, {q}], got {list(k)}")
    rates = [ki / q for ki in k]
    ell = sum(ki - 1 for ki in k)
    n = q**m

    radius_recursive = recursive_radius(rates)
    radius_prs_pw = prs_pw_radius(rates)
    if isclose(radius_recursive, radius_prs_pw, abs_tol=1e-12):
        dominant = "tie"
    else:
        dominant = "recursive" if radius_recursive > radius_prs_pw else "pw"

    return RadiusReport(
        q=q,
        m=m,
        k=list(k),
        ell=ell,
        radius_pw_rs=_clamp(1 - sqrt(ell * q ** (m - 1) / n)),
        radius_pw_ag=_clamp(1 - sqrt(ell * (q + 1) ** (m - 1) / n)),
        radius_recursive=radius_recursive,
        radius_prs_pw=radius_prs_pw,
        t_pw_rs=max(rm_radius(q, ell, m, n), 0),
        t_pw_ag=max(ag_radius(q, ell, m, n), 0),
        weight_recursive=floor(radius_recursive * n),
        dominant=dominant,
    )


def _grid_volume(m: int, resolution: float) -> float:
    steps = round(1 / resolution)
    h = 1 / steps
    mids = (np.arange(steps) + 0.5) * h
    # Only the simplex sum(rho) <= 1 needs classifying; outside it the lifting radius is 0.
    if m == 1:
        rest_sum, rest_prod = np.zeros(1), np.ones(1)
    else:
        rest = np.stack(np.meshgrid(*([mids] * (m - 1)), indexing="ij"), axis=-1).reshape(-1, m - 1)
        rest_sum = rest.sum(axis=1)
        rest_prod = np.prod(1 - np.sqrt(rest), axis=1)
    wins = 0
    for rho in mids:
        total = rest_sum + rho
        inside = total <= 1
        better = rest_prod[inside] * (1 - np.sqrt(rho)) > 1 - np.sqrt(total[inside])
        wins += int(np.count_nonzero(better))
    return 1 - 1 / factorial(m) + wins * h**m


def _monte_carlo_volume(m: int, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    rates = rng.dirichlet(np.ones(m + 1), size=samples)[:, :m]
    better = np.prod(1 - np.sqrt(rates), axis=1) > 1 - np.sqrt(rates.sum(axis=1))
    fraction = float(np.count_nonzero(better)) / samples
    return 1 - 1 / factorial(m) + fraction / factorial(m)


def region_volume(
    m: int,
    resolution: float | None = None,
    samples: int | None = None,
    seed: int = 0,
) -> float:
    """Fraction of (0, 1)^m where the recursive radius beats the lifting radius.

    The part sum(rho_i) > 1 counts in full; inside the simplex the fraction is
    estimated by midpoint integration (resolution given) or by uniform samples
    of the simplex (samples given).

    Raises:
        SpecValidationError: bad knobs, or grid mode above m = 6

    Returns:
        float: the volume, at least 1 - 1/m!
    """
    if m < 1:
        raise SpecValidationError(f"m must be positive, got {m}")
    if samples is not None:
        if samples < 1:
            raise SpecValidationError(f"need at least one sample, got {samples}")
        volume = _monte_carlo_volume(m, samples, seed)
        logger.info("V_%d = %.6f from %d samples (seed %d)", m, volume, samples, seed)
        return volume
    resolution = resolution or (1e-3 if m <= 2 else 1e-2)
    if m > 6:
        raise SpecValidationError("grid integration supports m <= 6; pass a sample budget instead")
    if not 0 < resolution <= 0.5:
        raise SpecValidationError(f"resolution must lie in (0, 0.5], got {resolution}")
    volume = _grid_volume(m, resolution)
    logger.info("V_%d = %.6f on a grid of step %g", m, volume, resolution)
    return volume


def surface_grid(steps: int = 101) -> list[tuple[float, float]]:
    """Rate pairs on a uniform steps x steps lattice of [0, 1]^2, rho_1 slowest."""
    if steps < 1:
        raise SpecValidationError(f"need at least one step, got {steps}")
    axis = np.linspace(0.0, 1.0, steps) if steps > 1 else np.array([0.0])
    return [(float(a), float(b)) for a in axis for b in axis]


def emit_surface(pairs: Iterable[tuple[float, float]]) -> list[SurfaceRow]:
    """(rho_1, rho_2, recursive radius, lifting radius) for every rate pair."""
    rows = []
    for rho1, rho2 in pairs:
        if not (0 <= rho1 <= 1 and 0 <= rho2 <= 1):
            raise SpecValidationError(f"rates must lie in [0, 1], got ({rho1}, {rho2})")
        rows.append((rho1, rho2, recursive_radius((rho1, rho2)), prs_pw_radius((rho1, rho2))))
    return rows


def radius_dominance_scan(q_max: int, m_max: int) -> DominanceReport:
    """Compare the lifting and algebraic-geometry thresholds on full-length codes.

    Scans prime powers q <= q_max, 1 <= m <= m_max and 1 <= l <= q with n = q^m.
    """
    checked, strict, violations = 0, 0, []
    for q in range(2, q_max + 1):
        if not galois.is_prime_power(q):
            continue
        for m in range(1, m_max + 1):
            n = q**m
            for ell in range(1, q + 1):
                ours, theirs = rm_radius(q, ell, m, n), ag_radius(q, ell, m, n)
                checked += 1
                if ours > theirs:
                    strict += 1
                elif ours < theirs:
                    violations.append((q, m, ell))
    if violations:
        logger.warning("lifting radius below the AG radius for %s", violations)
    logger.info("dominance scan: %d tuples, %d strict, %d violations", checked, strict, len(violations))
    return DominanceReport(
        q_max=q_max, m_max=m_max, checked=checked, strict=strict, violations=violations
    )
