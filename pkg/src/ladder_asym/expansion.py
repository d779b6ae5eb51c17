"""Higher-order terms of e(lam) = exp(-lam) E(lam) as lam -> infinity.

With H1(lam) = H(lam) lam**alpha the scaled integral expands as

    e(lam) = H1(lam) + sum over sigma of c_sigma(lam) exp(-sigma lam)

where each c_sigma is a finite combination of the constant 1 and scaled
copies H1(beta lam) (an AtomSum). Writing r = e - H1 and d = D_{2m-1}, the
self-similar recurrence becomes

    r(lam) = r(eta lam) / d
             - sum_{k<m} (D_{2k-1}/d) exp(-eta g_k lam) r(rho_k eta lam)
             - sum_{k<m} (D_{2k} + D_{2k-1} H1(eta rho_k lam)) / d * exp(-eta g_k lam)

so the smallest pending exponent can always be read off and its images
eta*s and eta*(rho_k s + g_k) pushed back, as long as every image lies
strictly above its source.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CriticalPointError, DegenerateLadderError, ShapeError, ThresholdError
from .ladder import Ladder

VANISH_TOL = 1e-12
EXPONENT_TOL = 1e-12
SCALE_TOL = 1e-12
SEQUENCE_GAP = 1e-9
MIN_THRESHOLD = 20.0


@dataclass(frozen=True)
class AtomSum:
    """const_part + sum of coef * H1(beta * lam) over the atoms (beta, coef)."""

    const_part: float = 0.0
    h_atoms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "h_atoms", _merge_atoms(self.h_atoms))

    def scaled(self, factor: float, lam_scale: float) -> AtomSum:
        """The function lam -> factor * self(lam_scale * lam)."""
        return AtomSum(factor * self.const_part,
                       tuple((lam_scale * b, factor * c) for b, c in self.h_atoms))

    def __add__(self, other: AtomSum) -> AtomSum:
        return AtomSum(self.const_part + other.const_part, self.h_atoms + other.h_atoms)

    def __neg__(self) -> AtomSum:
        return self.scaled(-1.0, 1.0)

    @property
    def is_zero(self) -> bool:
        return self.const_part == 0.0 and not self.h_atoms

    @property
    def scales(self) -> tuple[float, ...]:
        return tuple(b for b, _ in self.h_atoms)

    def evaluate(self, profile, lam):
        """Value at lam using ``profile.h1`` for H1."""
        lam = np.asarray(lam, dtype=float)
        out = np.full(lam.shape, self.const_part)
        for b, c in self.h_atoms:
            out = out + c * profile.h1(b * lam)
        return float(out) if out.ndim == 0 else out

    def bound(self, phi_max: float, alpha: float, lam_min: float) -> float:
        """Upper bound of |self(lam)| over lam >= lam_min, given max Phi."""
        total = abs(self.const_part)
        for b, c in self.h_atoms:
            total += abs(c) * phi_max * (b * lam_min) ** alpha
        return total


def _merge_atoms(atoms: Iterable[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    out: list[list[float]] = []
    for b, c in sorted((float(b), float(c)) for b, c in atoms):
        if out and abs(b - out[-1][0]) <= SCALE_TOL * max(1.0, b):
            out[-1][1] += c
        else:
            out.append([b, c])
    return tuple((b, c) for b, c in out if c != 0.0)


class _Reducer:
    """Sums AtomSums exactly enough to see cancellations.

    H1(eta lam) = d H1(lam), so every scale is moved into [1, eta) first;
    afterwards equal scales are merged and a total that is below
    VANISH_TOL times the magnitude of its contributions is set to zero.
    """

    def __init__(self, eta: float, d: float):
        self.eta, self.d = eta, d
        self.log_eta = math.log(eta)

    def canonical(self, beta: float, coef: float) -> tuple[float, float]:
        j = math.floor(math.log(beta) / self.log_eta)
        b = beta / self.eta**j
        # guard the floor against rounding at the edges of [1, eta)
        if b >= self.eta * (1.0 - SCALE_TOL):
            b, j = b / self.eta, j + 1
        elif b < 1.0 - SCALE_TOL:
            b, j = b * self.eta, j - 1
        if abs(b - 1.0) <= SCALE_TOL:
            b = 1.0
        return b, coef * self.d**j

    def combine(self, parts: Sequence[AtomSum]) -> AtomSum:
        consts = [p.const_part for p in parts]
        const = math.fsum(consts)
        if abs(const) <= VANISH_TOL * sum(abs(c) for c in consts):
            const = 0.0
        groups: list[tuple[float, list[float]]] = []
        raw = sorted(self.canonical(b, c) for p in parts for b, c in p.h_atoms)
        for b, c in raw:
            if groups and abs(b - groups[-1][0]) <= SCALE_TOL * b:
                groups[-1][1].append(c)
            else:
                groups.append((b, [c]))
        atoms = []
        for b, cs in groups:
            s = math.fsum(cs)
            if abs(s) > VANISH_TOL * sum(abs(c) for c in cs):
                atoms.append((b, s))
        return AtomSum(const, tuple(atoms))


def reduce_atoms(ladder: Ladder, *parts: AtomSum) -> AtomSum:
    """Sum of ``parts`` with every scale moved into [1, eta)."""
    return _Reducer(ladder.eta, ladder.deltas[-1]).combine(parts)


@dataclass(frozen=True)
class ExpansionTerm:
    exponent: float
    coefficient: AtomSum


class ExponentSequence(NamedTuple):
    values: list[float]
    truncated: bool


@dataclass
class ExpansionState:
    """Emitted terms plus the data certifying them.

    ``step_gap`` is the guaranteed exponent increase per step (None when a
    critical point exists), ``c1``/``c2`` the growth certificate
    |c_sigma(lam)| <= c1 * c2**sigma for lam >= ln c2.
    """

    ladder: Ladder
    pending: list[tuple[float, list[AtomSum]]] = field(default_factory=list)
    emitted: list[ExpansionTerm] = field(default_factory=list)
    step_gap: float | None = None
    c1: float | None = None
    c2: float | None = None
    critical: float | None = None
    finite_below_critical: bool = False
    truncated: bool = False

    @property
    def threshold(self) -> float:
        """Default validity threshold for evaluating the series."""
        base = 2.0 * math.log(self.c2) if self.c2 else 0.0
        return max(base, MIN_THRESHOLD)

    @property
    def terms(self) -> list[ExpansionTerm]:
        return list(self.emitted)

    @property
    def exponents(self) -> list[float]:
        return [t.exponent for t in self.emitted]

    def __iter__(self):
        return iter(self.emitted)

    def __len__(self):
        return len(self.emitted)

    def __getitem__(self, i):
        return self.emitted[i]


def critical_point(ladder: Ladder) -> float | None:
    """min over rho_i < rho_m of g_i / (rho_m - rho_i), or None."""
    rho, g = ladder.weights, ladder.g_levels
    rm = rho[-1]
    cands = [g[i + 1] / (rm - rho[i]) for i in range(ladder.m - 1) if rho[i] < rm]
    return min(cands) if cands else None


def _check_nondegenerate(ladder: Ladder) -> None:
    if ladder.m == 1 or ladder.is_degenerate():
        raise DegenerateLadderError("the expansion is not defined for a degenerate ladder")


def _images(ladder: Ladder, s: float) -> list[tuple[float, int]]:
    """Exponents fed by s: (eta s, -1) and (eta (rho_k s + g_k), k)."""
    eta, rho, g = ladder.eta, ladder.weights, ladder.g_levels
    out = [(eta * s, -1)]
    for k in range(ladder.m - 1):
        out.append((eta * (rho[k] * s + g[k + 1]), k))
    return out


def _insert(pending: list, s: float, item) -> None:
    """Add item under exponent s, merging with an existing equal exponent."""
    keys = [p[0] for p in pending]
    i = bisect.bisect_left(keys, s)
    for j in (i - 1, i):
        if 0 <= j < len(pending) and abs(pending[j][0] - s) <= EXPONENT_TOL * max(1.0, s):
            pending[j][1].append(item)
            return
    pending.insert(i, (s, [item]))


def exponent_sequence(ladder: Ladder, count: int) -> ExponentSequence:
    """First ``count`` exponents produced by the maps s -> eta s and
    s -> eta (rho_k s + g_k), ignoring coefficients."""
    _check_nondegenerate(ladder)
    if count < 0:
        raise ValueError("count must be >= 0")
    eta, g = ladder.eta, ladder.g_levels
    crit = critical_point(ladder)
    pending: list = []
    for k in range(ladder.m - 1):
        _insert(pending, eta * g[k + 1], None)
    values: list[float] = []
    while len(values) < count and pending:
        s, _ = pending.pop(0)
        if crit is not None and s >= crit - EXPONENT_TOL:
            break
        if values and s - values[-1] < SEQUENCE_GAP:
            return ExponentSequence(values, True)
        values.append(s)
        for t, _k in _images(ladder, s):
            _insert(pending, t, None)
    return ExponentSequence(values, False)


def _initial(ladder: Ladder) -> list[tuple[float, AtomSum]]:
    eta, d = ladder.eta, ladder.deltas[-1]
    rho, g = ladder.weights, ladder.g_levels
    out = []
    for k in range(ladder.m - 1):
        c = AtomSum(-ladder.gaps[k] / d, ((eta * rho[k], -ladder.steps[k] / d),))
        out.append((eta * g[k + 1], c))
    return out


def _epsilon(ladder: Ladder) -> float:
    eta, rho, g = ladder.eta, ladder.weights, ladder.g_levels
    return min([(eta - 1.0) / eta] + [g[i + 1] / rho[i] for i in range(ladder.m - 1)])


def general_expansion(ladder: Ladder, profile=None, sigma_max: float | None = None,
                      count: int | None = None) -> ExpansionState:
    """Separate terms of e(lam) - H1(lam) in increasing exponent order.

    Stops once the next exponent exceeds ``sigma_max`` or ``count`` terms
    are emitted (at least one limit is required). Without a critical point
    any limit is admissible; with one, ``sigma_max`` must lie below it and
    generation also ends when nothing non-zero is left below it
    (``finite_below_critical``). ``profile`` is only used for the growth
    certificate and may be omitted.
    """
    _check_nondegenerate(ladder)
    if sigma_max is None and count is None:
        raise ValueError("give sigma_max or count")
    if count is not None and count < 0:
        raise ValueError("count must be >= 0")
    crit = critical_point(ladder)
    if crit is not None and sigma_max is not None and sigma_max >= crit - EXPONENT_TOL * crit:
        raise CriticalPointError(
            f"sigma_max={sigma_max:g} is not below the critical point {crit:.17g}", crit)

    eta, d = ladder.eta, ladder.deltas[-1]
    steps = ladder.steps
    reducer = _Reducer(eta, d)
    state = ExpansionState(ladder, critical=crit)
    for s, c in _initial(ladder):
        _insert(state.pending, s, c)

    def done() -> bool:
        if count is not None and len(state.emitted) >= count:
            return True
        return sigma_max is not None and state.pending[0][0] > sigma_max * (1 + EXPONENT_TOL)

    while state.pending and not done():
        s, parts = state.pending.pop(0)
        if crit is not None and s >= crit - EXPONENT_TOL:
            state.pending.insert(0, (s, parts))
            state.finite_below_critical = True
            break
        c = reducer.combine(parts)
        if c.is_zero:
            continue
        if crit is not None and state.emitted and s - state.emitted[-1].exponent < SEQUENCE_GAP:
            state.pending.insert(0, (s, parts))
            state.truncated = True
            break
        state.emitted.append(ExpansionTerm(s, c))
        for t, k in _images(ladder, s):
            if k < 0:
                _insert(state.pending, t, c.scaled(1.0 / d, eta))
            else:
                rk = ladder.weights[k]
                _insert(state.pending, t, c.scaled(-steps[k] / d, rk * eta))
    if crit is not None and all(t >= crit - EXPONENT_TOL for t, _ in state.pending):
        state.finite_below_critical = True

    if crit is None:
        eps = _epsilon(ladder)
        state.step_gap = eps
        state.c2 = (d / 4.0) ** (-1.0 / eps)
        if profile is not None:
            state.c1 = _growth_c1(ladder, profile, state.c2)
    return state


def _growth_c1(ladder: Ladder, profile, c2: float) -> float:
    phi_max = float(np.max(profile.phi)) * (1.0 + 1e-6)
    lam_min = math.log(c2)
    c10 = max(c.bound(phi_max, ladder.alpha, lam_min) / c2**s for s, c in _initial(ladder))
    return 2.0 * c10


def eval_expansion(expansion, profile, lam: float, K: int, strict: bool = True,
                   threshold: float | None = None) -> float:
    """H1(lam) + first K terms of the series, approximating e(lam).

    ``expansion`` is an ExpansionState or a plain list of terms. In strict
    mode lam below the validity threshold raises ThresholdError.
    """
    terms = list(expansion)
    if K < 0:
        raise ValueError("K must be >= 0")
    if K > len(terms):
        raise ValueError(f"only {len(terms)} terms available, asked for {K}")
    if threshold is None:
        threshold = expansion.threshold if isinstance(expansion, ExpansionState) else MIN_THRESHOLD
    lam = float(lam)
    if strict and lam < threshold:
        raise ThresholdError(f"lambda={lam:g} is below the validity threshold {threshold:g}")
    total = profile.h1(lam)
    for t in terms[:K]:
        total += t.coefficient.evaluate(profile, lam) * math.exp(-t.exponent * lam)
    return float(total)


def simple_expansion_m2(ladder: Ladder, K: int) -> tuple[list[float], list[float]]:
    """C_0..C_K and D_0..D_K of the m=2, half-weight expansion

        e(lam) = H1(lam) + sum_k exp(-(k+1) lam) (C_k + D_k H1(lam)).
    """
    if ladder.m != 2 or any(abs(r - 0.5) > 1e-12 for r in ladder.weights):
        raise ShapeError("simple_expansion_m2 needs m = 2 and weights (1/2, 1/2)")
    _check_nondegenerate(ladder)
    if K < 0:
        raise ValueError("K must be >= 0")
    d1, d2, d3 = ladder.deltas
    r = d1 / d3
    C, D = [-d2 / d3], [-d1 / d3]
    for k in range(K):
        if k % 2:
            C.append(-r * C[k])
            D.append(-r * D[k])
        else:
            C.append(C[k // 2] / d3 - r * C[k])
            D.append(D[k // 2] - r * D[k])
    return C, D
