"""Closed-form optimal boundary-homogeneous mechanism on a single-rainbow path.

The path is indexed by distance to the boundary: index 0 carries the fixed
boundary distribution and index i sits i hops inside the region. Channels are
named after the conventional ternary palette in priority order: blue is the
rank-0 (most preferred) channel, red rank 1, green rank 2.

Each channel moves through regimes separated by integer index thresholds. The
blue channel grows by the factor e**eps per hop until its value crosses the
saturation level t_bar = 1/(e**eps + 1), after which the binding constraint
flips and it climbs toward 1 at a damped rate. The red channel grows while the
blue+red total is below t_bar, then bridges between the growth of blue and its
own forced decay, and finally decays by e**-eps per hop once blue saturates.
Green is the complement and decays once blue+red saturates.

tau_b(b0, eps) is the last index of blue's growth regime and tau_r(b0, r0,
eps) the last index of the joint blue+red growth regime; tau_r <= tau_b
whenever both are finite. A threshold is UNBOUNDED when the channel never
leaves its growth regime (zero boundary mass keeps the channel at zero
forever; eps == 0 freezes every channel at its boundary value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidSimplexError,
    NegativeEntryError,
    SizeMismatchError,
    SumNotOneError,
)
from .model import (
    Epsilon,
    Mechanism,
    Palette,
    Rainbow,
    RainbowGraph,
    SIMPLEX_TOL,
    TERNARY_COLORS,
    UNBOUNDED,
    from_rank_view,
)

#: Upward nudge applied before flooring so thresholds attained exactly at an
#: integer are not lost to rounding.
FLOOR_NUDGE = 1e-9

#: Boundary triples are often quoted at a few decimals, so their sum may miss
#: 1 by more than the strict simplex tolerance. The solved table is exactly
#: consistent regardless: the rank-2 channel is evaluated as the complement of
#: the other two and never reads g0.
BOUNDARY_SUM_TOL = 1e-3


@dataclass(frozen=True)
class LineBoundary:
    """Rank-ordered boundary distribution and problem size for one line.

    b0, r0, g0 are the boundary probabilities of the rank-0/1/2 colors; n is
    the number of indices 0..n-1 (index 0 included in the solved object).
    """

    b0: float
    r0: float
    g0: float
    eps: Epsilon
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"line length must be at least 1, got {self.n}")
        entries = []
        for i, raw in enumerate((self.b0, self.r0, self.g0)):
            x = float(raw)
            if x < -SIMPLEX_TOL:
                raise NegativeEntryError(i, x)
            if x > 1.0 + SIMPLEX_TOL:
                raise InvalidSimplexError(f"entry {i} exceeds 1: {x!r}")
            entries.append(min(1.0, max(0.0, x)))
        total = math.fsum(entries)
        if abs(total - 1.0) > BOUNDARY_SUM_TOL:
            raise SumNotOneError(total)
        if entries[0] + entries[1] > 1.0 + SIMPLEX_TOL:
            raise InvalidSimplexError(
                f"rank-0 plus rank-1 mass exceeds 1: {entries[0] + entries[1]!r}"
            )
        object.__setattr__(self, "b0", entries[0])
        object.__setattr__(self, "r0", entries[1])
        object.__setattr__(self, "g0", entries[2])


@dataclass(frozen=True)
class Thresholds:
    """Regime-switch indices for one line, plus the saturation level t_bar."""

    tau_b: int | float
    tau_r: int | float
    t_bar: float

    def __post_init__(self):
        if not 0.0 < self.t_bar <= 0.5:
            raise ValueError(f"t_bar must lie in (0, 0.5], got {self.t_bar}")
        if self.tau_r != UNBOUNDED and self.tau_b != UNBOUNDED and self.tau_r > self.tau_b:
            raise ValueError(f"tau_r={self.tau_r} exceeds tau_b={self.tau_b}")


def _growth_threshold(mass: float, eps: Epsilon) -> int | float:
    """Last index i with mass * e**((i-1)*eps) still at or below t_bar."""
    if mass <= 0.0:
        return UNBOUNDED
    if eps.eps == 0.0:
        # Channels are constant; the regime never switches below the level.
        return 0 if mass >= 0.5 else UNBOUNDED
    raw = -math.log(mass * (eps.factor + 1.0)) / eps.eps + 1.0
    if raw <= 0.0:
        return 0
    return int(math.floor(raw + FLOOR_NUDGE))


def tau_b(b0: float, eps: Epsilon) -> int | float:
    """Growth-regime cutoff for the rank-0 channel."""
    if not -SIMPLEX_TOL <= b0 <= 1.0 + SIMPLEX_TOL:
        raise ValueError(f"b0 must lie in [0, 1], got {b0}")
    return _growth_threshold(b0, eps)


def tau_r(b0: float, r0: float, eps: Epsilon) -> int | float:
    """Growth-regime cutoff for the cumulative rank-0 plus rank-1 mass."""
    s = b0 + r0
    if not -SIMPLEX_TOL <= s <= 1.0 + SIMPLEX_TOL:
        raise ValueError(f"b0 + r0 must lie in [0, 1], got {s}")
    return _growth_threshold(s, eps)


def thresholds(lb: LineBoundary) -> Thresholds:
    return Thresholds(
        tau_b=tau_b(lb.b0, lb.eps),
        tau_r=tau_r(lb.b0, lb.r0, lb.eps),
        t_bar=1.0 / (lb.eps.factor + 1.0),
    )


# Per-regime branch values. Kept separate so agreement of adjacent branches at
# their shared threshold can be checked directly.

def _blue_growth(i: int, lb: LineBoundary) -> float:
    return math.exp(i * lb.eps.eps) * lb.b0


def _blue_saturated(i: int, lb: LineBoundary, tb: int | float) -> float:
    e = lb.eps.eps
    return 1.0 - math.exp((tb - i) * e) + math.exp((2.0 * tb - i) * e) * lb.b0


def _red_growth(i: int, lb: LineBoundary) -> float:
    return math.exp(i * lb.eps.eps) * lb.r0


def _red_bridge(i: int, lb: LineBoundary, tr: int | float) -> float:
    e = lb.eps.eps
    s = lb.b0 + lb.r0
    return (
        1.0
        - math.exp(-(i - tr) * e)
        - math.exp(i * e) * lb.b0
        + math.exp(-(i - 2.0 * tr) * e) * s
    )


def _red_decay(i: int, lb: LineBoundary, tr: int | float, tb: int | float) -> float:
    return math.exp(-(i - tb) * lb.eps.eps) * _red_bridge(tb, lb, tr)


def _green_high(i: int, lb: LineBoundary) -> float:
    return 1.0 - math.exp(i * lb.eps.eps) * (lb.b0 + lb.r0)


def _green_decay(i: int, lb: LineBoundary, tr: int | float) -> float:
    e = lb.eps.eps
    return math.exp(-(i - tr) * e) * (1.0 - math.exp(tr * e) * (lb.b0 + lb.r0))


def _check_index(i: int, lb: LineBoundary):
    if not 0 <= i <= lb.n - 1:
        raise ValueError(f"index {i} outside 0..{lb.n - 1}")


def _clamp(v: float) -> float:
    return min(1.0, max(0.0, v))


def b_star(i: int, lb: LineBoundary, th: Thresholds) -> float:
    """Optimal rank-0 probability at index i."""
    _check_index(i, lb)
    if i <= th.tau_b:
        return _clamp(_blue_growth(i, lb))
    return _clamp(_blue_saturated(i, lb, th.tau_b))


def r_star(i: int, lb: LineBoundary, th: Thresholds) -> float:
    """Optimal rank-1 probability at index i."""
    _check_index(i, lb)
    if i <= th.tau_r:
        return _clamp(_red_growth(i, lb))
    if i <= th.tau_b:
        return _clamp(_red_bridge(i, lb, th.tau_r))
    return _clamp(_red_decay(i, lb, th.tau_r, th.tau_b))


def g_star(i: int, lb: LineBoundary, th: Thresholds) -> float:
    """Optimal rank-2 probability at index i."""
    _check_index(i, lb)
    if i <= th.tau_r:
        return _clamp(_green_high(i, lb))
    return _clamp(_green_decay(i, lb, th.tau_r))


@dataclass(frozen=True, eq=False)
class LineSolution:
    """Per-index optimal rank-ordered probabilities along one line."""

    boundary: LineBoundary
    thresholds: Thresholds
    b: np.ndarray
    r: np.ndarray
    g: np.ndarray

    def prob_vector(self, i: int, rainbow: Rainbow) -> ProbVector:
        """Color-indexed distribution at index i for the given rainbow."""
        return from_rank_view((self.b[i], self.r[i], self.g[i]), rainbow)


def line_values(lb: LineBoundary) -> LineSolution:
    """Evaluate all three channels over indices 0..n-1."""
    th = thresholds(lb)
    idx = range(lb.n)
    return LineSolution(
        boundary=lb,
        thresholds=th,
        b=np.array([b_star(i, lb, th) for i in idx]),
        r=np.array([r_star(i, lb, th) for i in idx]),
        g=np.array([g_star(i, lb, th) for i in idx]),
    )


def identity_rainbow(k: int) -> Rainbow:
    return Rainbow(tuple(range(k)))


def line_graph(n: int, palette: Palette | None = None, rainbow: Rainbow | None = None) -> RainbowGraph:
    """Path on vertex ids "0".."n-1" with a single rainbow everywhere."""
    palette = palette or Palette(TERNARY_COLORS)
    rainbow = rainbow or identity_rainbow(palette.size)
    ids = [str(i) for i in range(n)]
    return RainbowGraph(
        palette,
        ids,
        [(ids[i], ids[i + 1]) for i in range(n - 1)],
        {v: rainbow for v in ids},
    )


def solve_line(
    lb: LineBoundary,
    palette: Palette | None = None,
    rainbow: Rainbow | None = None,
) -> Mechanism:
    """Optimal mechanism on the n-index line, as color-indexed distributions.

    Vertex ids are the stringified indices "0".."n-1". The default palette is
    the ternary one with the identity rainbow, so vertex i gets the vector
    (b_star(i), r_star(i), g_star(i)).
    """
    palette = palette or Palette(TERNARY_COLORS)
    if palette.size != 3:
        raise SizeMismatchError("solve_line needs a 3-color palette")
    rainbow = rainbow or identity_rainbow(3)
    sol = line_values(lb)
    return Mechanism(
        palette,
        {str(i): sol.prob_vector(i, rainbow) for i in range(lb.n)},
    )


def solve_line_binary(
    b0: float,
    eps: Epsilon,
    n: int,
    palette: Palette | None = None,
    rainbow: Rainbow | None = None,
) -> Mechanism:
    """Two-color special case: the rank-1 channel is the complement of rank 0.

    Solved by embedding into the ternary form with r0 = 1 - b0 and g0 = 0; the
    rank-2 channel stays identically zero, so dropping it yields the two-color
    optimum.
    """
    palette = palette or Palette(("blue", "red"))
    if palette.size != 2:
        raise SizeMismatchError("solve_line_binary needs a 2-color palette")
    rainbow = rainbow or identity_rainbow(2)
    sol = line_values(LineBoundary(b0, 1.0 - float(b0), 0.0, eps, n))
    assert float(np.max(sol.g)) <= SIMPLEX_TOL
    return Mechanism(
        palette,
        {str(i): from_rank_view((sol.b[i], sol.r[i]), rainbow) for i in range(n)},
    )
