"""Leading-order asymptotics E(lam) ~ H(lam) lam**alpha exp(lam).

H is log-periodic, H(eta * lam) = H(lam); its profile over one period is
Phi(x) = H(eta**x). For regular ladders Phi also has an explicit bilateral
series and closed-form Fourier coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConvergenceError, DegenerateLadderError, RegularityError
from .integral import DEFAULT_CONFIG, EvalConfig, eval_scaled_E
from .ladder import Ladder
from .specfun import gamma_complex, zeta_complex

PROFILE_RTOL = 1e-9
MAX_REFINEMENTS = 60
# start refinement no lower than this lambda; smaller ones never pass the check
_MIN_START_LAMBDA = 4.0


def _require_nondegenerate(ladder: Ladder) -> None:
    if ladder.m == 1 or ladder.is_degenerate():
        raise DegenerateLadderError(
            "degenerate ladder (C(t) = t): the periodic profile is constant and alpha = 0")


def _require_regular(ladder: Ladder) -> None:
    if not ladder.is_regular():
        raise RegularityError("operation requires a regular ladder")
    _require_nondegenerate(ladder)


def profile_value(ladder: Ladder, x: float, cfg: EvalConfig = DEFAULT_CONFIG,
                  rtol: float = PROFILE_RTOL, max_refinements: int = MAX_REFINEMENTS) -> float:
    """Phi(x) = lim_K e(lam_K) lam_K**(-alpha) with lam_K = eta**(x + K).

    The limit exists because H(eta lam) = H(lam) exactly while the
    correction decays like exp(-lam); K grows until two successive
    estimates agree to ``rtol``.
    """
    _require_nondegenerate(ladder)
    eta, alpha = ladder.eta, ladder.alpha
    log_eta = math.log(eta)
    K = max(0, math.ceil(math.log(_MIN_START_LAMBDA) / log_eta - x))
    prev = None
    for _ in range(max_refinements + 1):
        lam = math.exp((x + K) * log_eta)
        est = eval_scaled_E(ladder, lam, cfg) * math.exp(-alpha * (x + K) * log_eta)
        if prev is not None and abs(est - prev) < rtol * abs(est):
            return est
        prev = est
        K += 1
    raise ConvergenceError(
        f"profile at x={x} did not stabilise within {max_refinements} refinements")


@dataclass(frozen=True, eq=False)
class PeriodicProfile:
    """Samples of the 1-periodic profile Phi on a uniform grid of [0, 1).

    Between samples Phi is evaluated by trigonometric interpolation, which
    converges geometrically because Phi is analytic in a strip.
    """

    ladder: Ladder
    alpha: float
    period_base: float
    x: np.ndarray
    phi: np.ndarray
    fourier: dict[int, complex] | None = None
    _spectrum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_spectrum", np.fft.rfft(self.phi) / len(self.phi))

    def __call__(self, x):
        xs = np.asarray(x, dtype=float)
        n = len(self.phi)
        c = self._spectrum
        k = np.arange(1, len(c))
        weights = np.full(len(k), 2.0)
        if n % 2 == 0:
            weights[-1] = 1.0  # Nyquist bin is not doubled
        phase = 2j * np.pi * np.multiply.outer(np.mod(xs, 1.0), k)
        out = c[0].real + (np.exp(phase) * (weights * c[1:])).real.sum(axis=-1)
        return float(out) if np.ndim(out) == 0 else out

    def h(self, lam):
        """The log-periodic factor H(lam) = Phi(log_eta lam)."""
        return self(np.log(lam) / math.log(self.period_base))

    def h1(self, lam):
        """H(lam) * lam**alpha, the leading term of exp(-lam) E(lam)."""
        return self.h(lam) * np.power(lam, self.alpha)

    def sample_coefficients(self, n_max: int) -> dict[int, complex]:
        """Fourier coefficients estimated from the samples (trapezoid rule)."""
        full = np.fft.fft(self.phi) / len(self.phi)
        return {n: complex(full[n % len(full)]) for n in range(-n_max, n_max + 1)}

    def with_fourier(self, n_max: int) -> PeriodicProfile:
        """Copy carrying closed-form coefficients c_{-n_max}..c_{n_max}."""
        coeffs = {}
        for n in range(0, n_max + 1):
            c = fourier_coefficient(self.ladder, n)
            coeffs[n] = c
            coeffs[-n] = c.conjugate()
        return replace(self, fourier=coeffs)


def extract_profile(ladder: Ladder, cfg: EvalConfig = DEFAULT_CONFIG,
                    grid_size: int = 256) -> PeriodicProfile:
    _require_nondegenerate(ladder)
    if grid_size < 1:
        raise ValueError("grid_size must be positive")
    xs = np.arange(grid_size) / grid_size
    phi = np.array([profile_value(ladder, float(x), cfg) for x in xs])
    return PeriodicProfile(ladder, ladder.alpha, ladder.eta, xs, phi)


def _tilde_f1(ladder: Ladder, lam: np.ndarray) -> np.ndarray:
    m = ladder.m
    step, gap = ladder.steps[0], ladder.gaps[0]
    # (e^{(m-1)l} - 1) e^l / ((e^l - 1)(e^{ml} - 1)), rewritten with expm1 of
    # negative arguments so neither small nor large lam loses precision
    ratio = np.exp(-lam) * -np.expm1(-(m - 1) * lam) / (np.expm1(-lam) * np.expm1(-m * lam))
    return (gap / step) * ratio * np.power(lam, -ladder.alpha)


def tilde_phi_regular(ladder: Ladder, x) -> np.ndarray | float:
    """Phi(x) = sum over integer k of tilde_f1(m**(k + x)) for regular ladders.

    Terms vanish like exp(-lam) upwards and like lam**(-alpha - 1) downwards
    (alpha < -1 for regular ladders).
    """
    _require_regular(ladder)
    m, alpha = ladder.m, ladder.alpha
    log_m = math.log(m)
    decay = -alpha - 1.0
    k_lo = -math.ceil(40.0 / (decay * log_m)) - 1
    k_hi = math.ceil(math.log(800.0) / log_m) + 1
    xs = np.asarray(x, dtype=float)
    k = np.arange(k_lo, k_hi + 1)
    lam = np.exp(np.add.outer(xs, k) * log_m)
    terms = _tilde_f1(ladder, lam)
    # smallest terms first
    out = np.sort(terms, axis=-1).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def fourier_coefficient(ladder: Ladder, n: int) -> complex:
    """Closed-form Fourier coefficient c_n of Phi for a regular ladder."""
    _require_regular(ladder)
    m = ladder.m
    step, gap = ladder.steps[0], ladder.gaps[0]
    log_m = math.log(m)
    s = complex(-ladder.alpha, -2.0 * math.pi * n / log_m)
    pref = gap * (1.0 - step) / (step * log_m)
    return pref * gamma_complex(s) * zeta_complex(s)


def _decay_part(ladder: Ladder, mu: float, shift: float, cfg: EvalConfig) -> float:
    """exp(shift) * exp(-eta mu) f(mu), f the non-leading part of the
    recurrence E(eta mu) = D_{2m-1} exp((eta-1) mu) E(mu) + f(mu)."""
    eta, g = ladder.eta, ladder.g_levels
    total = 0.0
    for k in range(ladder.m - 1):
        expo = shift - eta * g[k + 1] * mu
        if expo < -745.0:
            continue
        inner = ladder.steps[k] * eval_scaled_E(ladder, ladder.weights[k] * eta * mu, cfg)
        total += math.exp(expo) * (inner + ladder.gaps[k])
    return total


def first_term_remainder(ladder: Ladder, lam: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """R(lam) = E(lam) - H(lam) lam**alpha exp(lam), without cancellation.

    With F1 = E / (lam**alpha e**lam) one has H = F1 + G where
    G(lam) = sum_j f1(eta**j lam) and f1 = f / (d lam**alpha e**(eta lam)),
    d = D_{2m-1}. Hence R = -lam**alpha e**lam G(lam), a sum of O(1) terms.
    """
    _require_nondegenerate(ladder)
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    d, eta = ladder.deltas[-1], ladder.eta
    total, j, mu = 0.0, 0, lam
    while True:
        term = d ** (-j) * _decay_part(ladder, mu, lam, cfg)
        total += term
        if term == 0.0 or abs(term) < 1e-18 * abs(total):
            break
        j += 1
        mu *= eta
    return -total / d


def fluctuation_by_series(ladder: Ladder, lam: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """H(lam) = F1(lam) + G(lam) summed directly (valid for every lam > 0)."""
    _require_nondegenerate(ladder)
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    alpha, d, eta = ladder.alpha, ladder.deltas[-1], ladder.eta
    F1 = eval_scaled_E(ladder, lam, cfg) * lam ** (-alpha)
    G, mu = 0.0, lam
    while True:
        term = _decay_part(ladder, mu, 0.0, cfg) * mu ** (-alpha) / d
        G += term
        if term == 0.0 or abs(term) < 1e-18 * abs(F1 + G):
            break
        mu *= eta
    return F1 + G
