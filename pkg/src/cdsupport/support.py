"""Evidence supports under a scalar CD and the p-value mappings built from them.

For a null region that is a union of disjoint closed intervals, each piece
gets a direct support (CD mass on the piece), an indirect support (smallest
doubled tail mass over the piece), and their clamped sum, the full support.
The union p-value is the largest per-piece full support; variants trade
size control against power:

* ``p_value``     -- max over pieces of the full support,
* ``max_direct_p``-- max over pieces of the direct support alone,
* ``p_star``      -- largest minus second-largest per-piece full support,
* ``p_max_uni``   -- max of the whole-region direct support and the
                     indirect supports at the finite boundary points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cd import ConfidenceDistribution
from .regions import Interval, NullRegion

__all__ = [
    "PieceSupport",
    "SupportReport",
    "direct_support",
    "indirect_support",
    "weighted_indirect",
    "extended_indirect_support",
    "full_support",
    "p_value",
    "max_direct_p",
    "p_star",
    "p_max_uni",
    "bioeq_cd",
    "bioeq_p",
]


@dataclass(frozen=True)
class PieceSupport:
    piece: Interval
    direct: float
    indirect: float
    full: float


@dataclass(frozen=True)
class SupportReport:
    """Per-piece supports plus the combined p-value and the rule that made it."""

    pieces: tuple[PieceSupport, ...]
    p: float
    rule: str

    def piece_full(self) -> list[float]:
        return [ps.full for ps in self.pieces]


def _clamp01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def _piece_direct(cd: ConfidenceDistribution, piece: Interval) -> float:
    if piece.is_singleton:
        return 0.0
    return _clamp01(cd.cdf(piece.hi) - cd.cdf(piece.lo))


def _tail_curve(cd: ConfidenceDistribution, theta: float) -> float:
    h = cd.cdf(theta)
    return 2.0 * min(h, 1.0 - h)


def _piece_indirect(cd: ConfidenceDistribution, piece: Interval) -> float:
    # the doubled-tail curve is unimodal for a monotone cdf, so its infimum
    # over a closed interval sits at an endpoint; infinite endpoints drive
    # the tail (and hence the infimum) to zero
    if math.isinf(piece.lo) or math.isinf(piece.hi):
        return 0.0
    if piece.is_singleton:
        return _clamp01(_tail_curve(cd, piece.lo))
    return _clamp01(min(_tail_curve(cd, piece.lo), _tail_curve(cd, piece.hi)))


def direct_support(cd: ConfidenceDistribution, region: NullRegion) -> float:
    """CD mass assigned to the whole region (sum over pieces)."""
    return _clamp01(sum(_piece_direct(cd, p) for p in region.pieces))


def indirect_support(cd: ConfidenceDistribution, region: NullRegion) -> float:
    """Infimum over the region of twice the smaller tail mass."""
    return min(_piece_indirect(cd, p) for p in region.pieces)


def weighted_indirect(cd: ConfidenceDistribution, theta0: float, gamma: float) -> float:
    """Tail-weighted singleton support min{H/gamma, (1-H)/(1-gamma)}, clamped."""
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie strictly inside (0, 1), got {gamma}")
    h = cd.cdf(theta0)
    return _clamp01(min(h / gamma, (1.0 - h) / (1.0 - gamma)))


def extended_indirect_support(cd: ConfidenceDistribution, region: NullRegion) -> float:
    """Mass of the density level set at or below the region's minimum density.

    Implemented for CDs with a symmetric unimodal density (the exact kinds):
    the density minimum over the region sits at the piece endpoint farthest
    from the center, and the level set is the pair of tails beyond that
    distance.  Regions with an infinite endpoint get level 0, hence mass 0.
    """
    cd.pdf(cd.center)  # raises for kinds without a density
    reach = 0.0
    for piece in region.pieces:
        if math.isinf(piece.lo) or math.isinf(piece.hi):
            return 0.0
        reach = max(reach, abs(piece.lo - cd.center), abs(piece.hi - cd.center))
    return _clamp01(cd.cdf(cd.center - reach) + (1.0 - cd.cdf(cd.center + reach)))


def full_support(cd: ConfidenceDistribution, piece: Interval) -> float:
    """Direct plus indirect support of a single piece, clamped to [0, 1]."""
    return _clamp01(_piece_direct(cd, piece) + _piece_indirect(cd, piece))


def _report(cd: ConfidenceDistribution, region: NullRegion, p: float, rule: str) -> SupportReport:
    pieces = tuple(
        PieceSupport(
            piece=pc,
            direct=_piece_direct(cd, pc),
            indirect=_piece_indirect(cd, pc),
            full=full_support(cd, pc),
        )
        for pc in region.pieces
    )
    return SupportReport(pieces=pieces, p=_clamp01(p), rule=rule)


def p_value(cd: ConfidenceDistribution, region: NullRegion) -> SupportReport:
    """Union p-value: the largest per-piece full support."""
    p = max(full_support(cd, pc) for pc in region.pieces)
    return _report(cd, region, p, "max-full")


def max_direct_p(cd: ConfidenceDistribution, region: NullRegion) -> float:
    """Power-oriented variant: the largest per-piece direct support."""
    return max(_piece_direct(cd, pc) for pc in region.pieces)


def p_star(cd: ConfidenceDistribution, region: NullRegion) -> float:
    """Largest minus second-largest per-piece full support.

    A single-piece region returns its full support (the second order
    statistic is taken as zero), so the mapping is total and coincides with
    :func:`p_value` there.
    """
    fulls = sorted((full_support(cd, pc) for pc in region.pieces), reverse=True)
    if len(fulls) == 1:
        return fulls[0]
    return _clamp01(fulls[0] - fulls[1])


def p_max_uni(cd: ConfidenceDistribution, region: NullRegion) -> float:
    """Boundary-max mapping: max of the whole-region direct support and the
    singleton indirect supports at all finite boundary points.

    Falls back to the direct support alone when the region has no finite
    endpoint (the whole line).
    """
    sd = direct_support(cd, region)
    boundary = region.boundary_points()
    if not boundary:
        return sd
    return max(sd, max(_clamp01(_tail_curve(cd, v)) for v in boundary))


def bioeq_cd(
    n1: int, n2: int, mean_t: float, mean_r: float, var_d: float
) -> ConfidenceDistribution:
    """Student-t CD of the formulation-mean difference from summary statistics.

    Uses n1 + n2 - 2 degrees of freedom and standard error
    sd_d * sqrt(1/n1 + 1/n2) around the difference of least-square means.
    """
    if n1 < 2 or n2 < 2:
        raise ValueError(f"need n1, n2 >= 2, got n1={n1}, n2={n2}")
    if not var_d > 0.0:
        raise ValueError(f"pooled variance must be positive, got {var_d}")
    se = math.sqrt(var_d) * math.sqrt(1.0 / n1 + 1.0 / n2)
    return ConfidenceDistribution(
        kind="exact-t", center=float(mean_t - mean_r), scale=se, df=n1 + n2 - 2
    )


def bioeq_p(
    n1: int, n2: int, mean_t: float, mean_r: float, var_d: float,
    lower: float, upper: float,
) -> float:
    """Two one-sided equivalence p-value max{H(lower), 1 - H(upper)}."""
    if not lower < upper:
        raise ValueError(f"equivalence limits must satisfy lower < upper, got [{lower}, {upper}]")
    cd = bioeq_cd(n1, n2, mean_t, mean_r, var_d)
    return max(cd.cdf(lower), 1.0 - cd.cdf(upper))
