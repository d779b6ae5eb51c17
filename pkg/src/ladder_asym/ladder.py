"""Generalized Cantor ladders.

A ladder is the continuous non-decreasing function C on [0, 1] fixed by
``m`` steps ``[a_k, b_k]`` and positive weights ``rho_k`` summing to one:
on step k, C rescales a copy of itself into the band ``[h_{k-1}, h_k]``;
on the gap after step k it is constant at ``h_k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import EmptyStepError, NormalizationError, OverlapError, WeightError
from .interval import IntervalValue

WEIGHT_TOL = 1e-12
SHAPE_TOL = 1e-12


def _real(x) -> float:
    """Accept floats, ints, Fractions and strings like ``"1/3"``."""
    if isinstance(x, str):
        return float(Fraction(x.strip()))
    return float(x)


@dataclass(frozen=True, eq=False)
class Ladder:
    """Validated ladder; construct with :func:`new_ladder`.

    ``deltas[i-1]`` holds the length of the i-th piece of [0, 1] counted
    from the left, so odd positions (1-based) are steps and even ones gaps.
    """

    segments: tuple[tuple[float, float], ...]
    weights: tuple[float, ...]
    name: str | None = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return len(self.weights)

    @cached_property
    def deltas(self) -> tuple[float, ...]:
        out = []
        for k, (a, b) in enumerate(self.segments):
            out.append(b - a)
            if k + 1 < self.m:
                out.append(self.segments[k + 1][0] - b)
        return tuple(out)

    @property
    def steps(self) -> tuple[float, ...]:
        return self.deltas[0::2]

    @property
    def gaps(self) -> tuple[float, ...]:
        """Gap widths after steps 1..m-1 (the last step ends at 1)."""
        return self.deltas[1::2]

    @cached_property
    def h_levels(self) -> tuple[float, ...]:
        h = [0.0]
        for r in self.weights[:-1]:
            h.append(h[-1] + r)
        h.append(1.0)
        return tuple(h)

    @cached_property
    def g_levels(self) -> tuple[float, ...]:
        return tuple(1.0 - h for h in self.h_levels)

    @property
    def eta(self) -> float:
        return 1.0 / self.weights[-1]

    @cached_property
    def alpha(self) -> float:
        # one-step ladder: eta == 1 and the exponent is 0 by convention
        if self.m == 1:
            return 0.0
        return math.log(self.deltas[-1]) / math.log(self.eta)

    def is_regular(self) -> bool:
        m = self.m
        if any(abs(r - 1.0 / m) > SHAPE_TOL for r in self.weights):
            return False
        s, g = self.steps, self.gaps
        if any(abs(x - s[0]) > SHAPE_TOL for x in s):
            return False
        return all(abs(x - g[0]) <= SHAPE_TOL for x in g)

    def is_degenerate(self) -> bool:
        return (all(abs(r - d) <= SHAPE_TOL for r, d in zip(self.weights, self.steps))
                and all(g <= SHAPE_TOL for g in self.gaps))

    @cached_property
    def working(self) -> Ladder:
        """Ladder used by recursive algorithms.

        A one-step ladder is the identity map and its self-similarity
        relation is vacuous, so it is replaced by the equivalent two-step
        split at 1/2.
        """
        if self.m > 1:
            return self
        return Ladder(((0.0, 0.5), (0.5, 1.0)), (0.5, 0.5), self.name)

    def to_dict(self) -> dict:
        d = {"segments": [list(s) for s in self.segments], "weights": list(self.weights)}
        if self.name is not None:
            d["name"] = self.name
        return d

    def isclose(self, other: Ladder, tol: float = 1e-14) -> bool:
        """Same shape up to ``tol`` in every endpoint and weight."""
        if self.m != other.m:
            return False
        pairs = zip(self.segments, other.segments)
        return (all(abs(a - c) <= tol and abs(b - d) <= tol for (a, b), (c, d) in pairs)
                and all(abs(r - s) <= tol for r, s in zip(self.weights, other.weights)))

    def __eq__(self, other):
        if not isinstance(other, Ladder):
            return NotImplemented
        return self.segments == other.segments and self.weights == other.weights

    def __hash__(self):
        return hash((self.segments, self.weights))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Ladder({label}segments={list(self.segments)}, weights={list(self.weights)})"


def new_ladder(segments: Sequence[Sequence], weights: Sequence, name: str | None = None) -> Ladder:
    if len(segments) != len(weights):
        raise ValueError(f"{len(segments)} segments but {len(weights)} weights")
    if not segments:
        raise ValueError("a ladder needs at least one step")
    segs = []
    for pair in segments:
        if len(pair) != 2:
            raise ValueError(f"segment {pair!r} is not an [a, b] pair")
        segs.append((_real(pair[0]), _real(pair[1])))
    w = [_real(r) for r in weights]
    if not all(math.isfinite(x) for s in segs for x in s) or not all(math.isfinite(r) for r in w):
        raise ValueError("segments and weights must be finite")

    if segs[0][0] != 0.0 or segs[-1][1] != 1.0:
        raise NormalizationError(
            f"ladder must start at 0 and end at 1, got a_1={segs[0][0]}, b_m={segs[-1][1]}")
    for k, (a, b) in enumerate(segs, start=1):
        if not a < b:
            raise EmptyStepError(f"step {k} is empty: a_{k}={a} >= b_{k}={b}")
    for k in range(len(segs) - 1):
        if segs[k][1] > segs[k + 1][0]:
            raise OverlapError(
                f"steps {k + 1} and {k + 2} overlap: b_{k + 1}={segs[k][1]} > a_{k + 2}={segs[k + 1][0]}")
    if any(r <= 0 for r in w):
        raise WeightError(f"weights must be positive, got {w}")
    total = math.fsum(w)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise WeightError(f"weights sum to {total!r}, not 1")
    w = [r / total for r in w]
    return Ladder(tuple(segs), tuple(w), name)


def mirror(ladder: Ladder) -> Ladder:
    """The ladder ``C1(t) = 1 - C(1 - t)``: reflected steps, reversed weights."""
    segs = [(1.0 - b, 1.0 - a) for a, b in reversed(ladder.segments)]
    # reflection of the endpoints is exact for these two
    segs[0] = (0.0, segs[0][1])
    segs[-1] = (segs[-1][0], 1.0)
    name = f"mirror({ladder.name})" if ladder.name else None
    return new_ladder(segs, list(reversed(ladder.weights)), name)


def _locate(ladder: Ladder, t: float) -> tuple[str, int]:
    """Classify ``0 <= t <= 1``: ("step", k) on the open step k, otherwise
    ("gap", k) for the closed plateau at level ``h_levels[k]``."""
    if t <= 0.0:
        return "gap", 0
    for k, (a, b) in enumerate(ladder.segments):
        if t <= a:
            return "gap", k
        if t < b:
            return "step", k
    return "gap", ladder.m


def _piece_range(kind: str, k: int, h) -> tuple[float, float]:
    if kind == "gap":
        return h[k], h[k]
    return h[k], h[k + 1]


def c_enclosure(ladder: Ladder, t: float, depth: int) -> IntervalValue:
    """Interval containing C(t) after ``depth`` levels of self-similar descent.

    The band of C over the current cell is ``offset + scale * [0, 1]``;
    offset, scale and the local coordinate t are all carried as
    outward-rounded intervals. Descent stops early when t lands on a
    plateau or when its rounding interval straddles a piece boundary.
    Results are clipped to the previous band, so they nest in ``depth``.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    lad = ladder.working
    h, rho = lad.h_levels, lad.weights
    offset = IntervalValue.point(0.0)
    scale = IntervalValue.point(1.0)
    band = IntervalValue(0.0, 1.0)
    tt = IntervalValue.point(t)
    for level in range(depth + 1):
        lo_piece = _locate(lad, max(tt.lo, 0.0))
        hi_piece = _locate(lad, min(tt.hi, 1.0))
        if lo_piece != hi_piece or lo_piece[0] == "gap":
            lo_frac = _piece_range(*lo_piece, h)[0]
            hi_frac = _piece_range(*hi_piece, h)[1]
            lo = (offset + scale * lo_frac).lo
            hi = (offset + scale * hi_frac).hi
            return IntervalValue(lo, hi).intersect(band)
        if level == depth:
            break
        k = lo_piece[1]
        offset = offset + scale * h[k]
        scale = scale * rho[k]
        band = IntervalValue(offset.lo, (offset + scale).hi).intersect(band)
        a, b = lad.segments[k]
        tt = (tt - a) / (b - a)
    return band


def moments(ladder: Ladder, J: int) -> list[float]:
    """Moments ``M_j = int_0^1 C(t)^j dt`` for j = 0..J.

    Splitting the integral over steps and gaps gives a triangular linear
    system in the M_j, solved for increasing j.
    """
    if J < 0:
        raise ValueError("J must be >= 0")
    if ladder.m == 1:
        return [1.0 / (j + 1) for j in range(J + 1)]
    steps, gaps = ladder.steps, ladder.gaps
    rho, h = ladder.weights, ladder.h_levels
    M = [1.0]
    for j in range(1, J + 1):
        pivot = 1.0 - math.fsum(d * r**j for d, r in zip(steps, rho))
        terms = [g * h[k + 1] ** j for k, g in enumerate(gaps)]
        for k, (d, r) in enumerate(zip(steps, rho)):
            for i in range(j):
                terms.append(d * math.comb(j, i) * h[k] ** (j - i) * r**i * M[i])
        M.append(math.fsum(terms) / pivot)
    return M
