import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ladder_asym import gamma_complex, zeta_complex
from ladder_asym.errors import DomainError, PoleError
from ladder_asym.specfun import bernoulli_even
from oracles import mp_gamma, mp_zeta, zeta_bracket

GRID = [complex(re, im) for re in np.linspace(1.1, 5.0, 7) for im in np.linspace(-40, 40, 17)]


def test_gamma_anchors():
    assert gamma_complex(1) == pytest.approx(1.0, rel=1e-14)
    assert abs(gamma_complex(0.5) - math.sqrt(math.pi)) <= 1e-12 * math.sqrt(math.pi)
    assert gamma_complex(5) == pytest.approx(24.0, rel=1e-13)


def test_gamma_recurrence_at_2_plus_3i():
    s = 2 + 3j
    lhs, rhs = gamma_complex(s + 1), s * gamma_complex(s)
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


def test_gamma_poles_and_domain():
    for s in (0, -1, -7):
        with pytest.raises(PoleError):
            gamma_complex(s)
    with pytest.raises(DomainError):
        gamma_complex(-0.5 + 1j)


def test_zeta_anchors():
    assert abs(zeta_complex(2) - math.pi**2 / 6) <= 1e-10 * math.pi**2 / 6
    assert abs(zeta_complex(4) - math.pi**4 / 90) <= 1e-10 * math.pi**4 / 90


def test_zeta_log2_3_brute_force():
    s = math.log2(3)
    lo, hi = zeta_bracket(s)
    z = zeta_complex(s)
    assert abs(z.imag) == 0.0
    assert lo <= z.real <= hi


def test_zeta_domain():
    for s in (1.0, 1 + 5e-10, 0.5 + 3j):
        with pytest.raises(DomainError):
            zeta_complex(s)


def test_bernoulli_numbers():
    from fractions import Fraction as F
    assert bernoulli_even(4) == (F(1, 6), F(-1, 30), F(1, 42), F(-1, 30))


@pytest.mark.parametrize("s", GRID[::5])
def test_against_mpmath(s):
    assert abs(gamma_complex(s) - mp_gamma(s)) <= 1e-12 * abs(mp_gamma(s))
    assert abs(zeta_complex(s) - mp_zeta(s)) <= 1e-10 * abs(mp_zeta(s))


def test_conjugate_symmetry_grid():
    for s in GRID:
        for f in (gamma_complex, zeta_complex):
            a, b = f(s.conjugate()), f(s).conjugate()
            assert abs(a - b) <= 1e-12 * abs(a)


def test_gamma_recurrence_grid():
    for s in GRID:
        lhs = gamma_complex(s + 1)
        assert abs(lhs - s * gamma_complex(s)) <= 1e-11 * abs(lhs)


def test_zeta_partial_sum_with_tail():
    # zeta(s) - sum_{n<=N} n^-s against an order-4 Euler-Maclaurin tail
    N = 1000
    for s in GRID[::9]:
        head = sum(cmath.exp(-s * math.log(n)) for n in range(1, N + 1))
        NmS = cmath.exp(-s * math.log(N))
        tail = N * NmS / (s - 1) - 0.5 * NmS + s * NmS / (12 * N) \
            - s * (s + 1) * (s + 2) * NmS / (720 * N**3)
        z = zeta_complex(s)
        assert abs(z - head - tail) <= 1e-10 * abs(z)


@settings(max_examples=60)
@given(st.floats(1.05, 6.0), st.floats(-150, 150))
def test_random_points_against_mpmath(re, im):
    s = complex(re, im)
    g = mp_gamma(s)
    if abs(g) > 1e-280:
        assert abs(gamma_complex(s) - g) <= 1e-12 * abs(g)
    assert abs(zeta_complex(s) - mp_zeta(s)) <= 1e-10 * abs(mp_zeta(s))
