"""Evaluation of E(lam) = int_0^1 exp(lam * C(t)) dt.

Everything above the Taylor threshold works with the scaled value
``e(lam) = exp(-lam) * E(lam)``, which lies in (0, 1] and never overflows.
Splitting the integral over steps and gaps gives

    e(lam) = sum_k D_{2k-1} exp(-g_k lam) e(rho_k lam) + sum_k D_{2k} exp(-g_k lam)

(D_i the piece lengths, g_k = 1 - h_k), so evaluation descends lam -> rho_k lam
until the argument drops below the threshold, where the moment series of
E is summed directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .interval import IntervalValue
from .ladder import Ladder, mirror, moments


@dataclass(frozen=True)
class EvalConfig:
    base_threshold: float = 0.5
    taylor_order: int = 30
    enclosure_depth: int = 20
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not self.base_threshold > 0:
            raise ValueError("base_threshold must be positive")
        if self.taylor_order < 0 or self.enclosure_depth < 0:
            raise ValueError("taylor_order and enclosure_depth must be >= 0")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.taylor_tail_bound() >= self.rel_tol:
            raise ValueError(
                f"taylor_order={self.taylor_order} leaves a tail bound "
                f"{self.taylor_tail_bound():.3g} >= rel_tol={self.rel_tol:g} "
                f"at base_threshold={self.base_threshold:g}")

    def taylor_tail_bound(self) -> float:
        x, J = self.base_threshold, self.taylor_order
        return math.exp((J + 1) * math.log(x) + x - math.lgamma(J + 2))


DEFAULT_CONFIG = EvalConfig()


class _Arguments:
    """Canonical keys for the arguments lam * prod(rho) met during descent.

    An argument is keyed by how many times each distinct weight value has
    been applied, and its value is always recomputed from that key, so
    equal keys give bit-identical arguments.
    """

    def __init__(self, ladder: Ladder, lam: float):
        values = sorted(set(ladder.weights))
        self.rates = values
        self.index = [values.index(r) for r in ladder.weights]
        self.lam = lam
        self.root = (0,) * len(values)

    def child(self, key: tuple[int, ...], k: int) -> tuple[int, ...]:
        i = self.index[k]
        return key[:i] + (key[i] + 1,) + key[i + 1:]

    def value(self, key: tuple[int, ...]) -> float:
        x = self.lam
        for r, c in zip(self.rates, key):
            if c:
                x *= r**c
        return x


def _check_lambda(lam) -> float:
    lam = float(lam)
    if not math.isfinite(lam):
        raise ValueError(f"lambda must be finite, got {lam}")
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    return lam


def _taylor_scaled(M: list[float], x: float) -> float:
    term, total = 1.0, 0.0
    for j, Mj in enumerate(M):
        if j:
            term *= x / j
        total += Mj * term
    return math.exp(-x) * total


def eval_scaled_E(ladder: Ladder, lam: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """exp(-lam) * E(lam) for lam >= 0."""
    lam = _check_lambda(lam)
    lad = ladder.working
    M = moments(lad, cfg.taylor_order)
    if lam < cfg.base_threshold:
        return _taylor_scaled(M, lam)

    args = _Arguments(lad, lam)
    steps, gaps, g = lad.steps, lad.gaps, lad.g_levels
    cache: dict[tuple[int, ...], float] = {}

    def scaled(key):
        hit = cache.get(key)
        if hit is not None:
            return hit
        x = args.value(key)
        if x < cfg.base_threshold:
            val = _taylor_scaled(M, x)
        else:
            val = 0.0
            for k in range(lad.m):
                decay = math.exp(-g[k + 1] * x)
                if decay == 0.0:
                    continue
                inner = scaled(args.child(key, k))
                val += decay * (steps[k] * inner + (gaps[k] if k < len(gaps) else 0.0))
        cache[key] = val
        return val

    return scaled(args.root)


def enclose_E(ladder: Ladder, lam: float, depth: int) -> IntervalValue:
    """Rigorous enclosure of exp(-lam) * E(lam).

    At depth 0 the bound is [exp(-lam), 1] (from 0 <= C <= 1); each further
    level refines it through the step/gap decomposition.
    """
    lam = _check_lambda(lam)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    lad = ladder.working
    args = _Arguments(lad, lam)
    steps, gaps, g = lad.steps, lad.gaps, lad.g_levels
    cache: dict[tuple[int, ...], IntervalValue] = {}

    def enc(key, d):
        hit = cache.get(key)
        if hit is not None:
            return hit
        x = args.value(key)
        if x == 0.0:
            out = IntervalValue.point(1.0)
        elif d == 0:
            out = IntervalValue((IntervalValue.point(x) * -1.0).exp().lo, 1.0)
        else:
            out = IntervalValue.point(0.0)
            for k in range(lad.m):
                decay = (IntervalValue.point(x) * -g[k + 1]).exp()
                part = enc(args.child(key, k), d - 1) * steps[k]
                if k < len(gaps):
                    part = part + gaps[k]
                out = out + decay * part
            out = out.intersect(IntervalValue(0.0, 1.0))
        cache[key] = out
        return out

    return enc(args.root, depth)


def eval_E_negative(ladder: Ladder, lam: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """E(-lam) for lam > 0.

    With C1 the mirrored ladder, C(t) = 1 - C1(1 - t), hence
    E(-lam) = exp(-lam) E_{C1}(lam), which is exactly the scaled value of C1.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise ValueError(f"lambda must be finite, got {lam}")
    if lam <= 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    return eval_scaled_E(mirror(ladder), lam, cfg)
