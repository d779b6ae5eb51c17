"""Gamma and Riemann zeta for complex arguments in the right half-plane."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, PoleError

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

ZETA_MIN_RE = 1.0 + 1e-9
_EM_ORDER = 12


def _lanczos_shifted(z: complex) -> complex:
    """Gamma(z + 1) for Re(z) >= 0."""
    x = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def gamma_complex(s: complex) -> complex:
    """Gamma(s) for Re(s) > 0.

    Non-positive integers raise :class:`PoleError`; the rest of the left
    half-plane is outside the supported domain.
    """
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite argument {s}")
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        raise PoleError(f"Gamma has a pole at {s.real:g}")
    if s.real <= 0.0:
        raise DomainError(f"Gamma is only supported for Re(s) > 0, got {s}")
    if s.real < 1.0:
        # keep the Lanczos sum in its accurate range
        return _lanczos_shifted(s) / s
    return _lanczos_shifted(s - 1.0)


@lru_cache(maxsize=None)
def bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """B_2, B_4, ..., B_{2*count} as exact fractions."""
    B = [Fraction(1)]
    for n in range(1, 2 * count + 1):
        acc = sum(math.comb(n + 1, k) * B[k] for k in range(n))
        B.append(-acc / (n + 1))
    return tuple(B[2 * k] for k in range(1, count + 1))


@lru_cache(maxsize=None)
def _em_weights(order: int) -> tuple[float, ...]:
    return tuple(float(b / math.factorial(2 * k))
                 for k, b in enumerate(bernoulli_even(order), start=1))


def zeta_complex(s: complex) -> complex:
    """Riemann zeta by the Dirichlet series with an Euler-Maclaurin tail."""
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite argument {s}")
    if s.real <= ZETA_MIN_RE:
        raise DomainError(f"zeta is only supported for Re(s) > 1, got {s}")
    # the tail corrections shrink like (|s| / (2 pi N))^2 per order
    N = max(16, int(math.ceil(abs(s.imag))) + 8)
    head = 0j
    for n in range(N - 1, 0, -1):
        head += cmath.exp(-s * math.log(n))
    logN = math.log(N)
    NmS = cmath.exp(-s * logN)
    tail = N * NmS / (s - 1.0) + 0.5 * NmS
    rising = s
    power = NmS / N
    for k, w in enumerate(_em_weights(_EM_ORDER), start=1):
        tail += w * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= N * N
    return head + tail
