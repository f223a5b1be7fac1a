import cmath
import math

import numpy as np
import pytest
import sympy

import _oracle
from spincat import (
    DegenerateSuperpositionError,
    PoleError,
    SscsParams,
    UndefinedCorrelationError,
    cartesian_moments,
    factorial_moment,
    g2,
    g2_number_state,
    generating_function,
    gtilde,
    gtilde_derivative,
    j1_even_xi,
    j1_even_xi_y,
    jminus2_expect,
    jminus_expect,
    n_moments,
    sscs_cross_overlap,
)
from spincat.closedform import STIRLING2, g2_numerator_coefficients, g2_numerator_factorial_coefficients

PI = math.pi

GRID = [
    SscsParams(tj, r * cmath.exp(1j * ph), th)
    for tj in (1, 2, 3, 4, 5, 6, 9)
    for r in (0.1, 0.7, 1.0, 1.4, 3.0)
    for th in (0, PI / 4, PI / 2, PI)
    for ph in (0, PI / 3)
]


def amps(p):
    return _oracle.sscs_amplitudes(p.twice_j, p.eta, p.theta)


def close(a, b, rel=1e-9, abs_=1e-10):
    return abs(a - b) <= max(rel * abs(b), abs_)


@pytest.mark.parametrize("p", GRID, ids=str)
def test_against_direct_sums(p):
    c = amps(p)
    probs = np.abs(c) ** 2
    n = np.arange(p.twice_j + 1)
    for lam in (0, 0.5, 1, 1.5, 2):
        assert close(generating_function(p, lam), float(np.sum(lam**n * probs)))
    for k in range(1, 5):
        assert close(factorial_moment(p, k), _oracle.factorial_moment(c, k))
    N = _oracle.number(p.twice_j)
    for k, value in enumerate(n_moments(p), start=1):
        assert close(value, _oracle.expect(c, np.linalg.matrix_power(N, k)).real)
    jm = _oracle.lowering(p.twice_j)
    assert close(jminus_expect(p), _oracle.expect(c, jm))
    assert close(jminus2_expect(p), _oracle.expect(c, jm @ jm))


def test_generating_function_examples():
    p = SscsParams(4, 0.8, PI / 2)
    assert generating_function(p, 1) == 1
    a = 0.64
    assert generating_function(p, 0) == pytest.approx(1 / (1 + a) ** 4, rel=1e-14)
    for lam in (0, 0.3, 2):
        assert generating_function(SscsParams(6, 0, 0), lam) == 1


@pytest.mark.parametrize("twice_j", [1, 2, 3, 4])
@pytest.mark.parametrize("theta", [0, PI / 3, PI])
def test_generating_function_is_the_distribution_polynomial(twice_j, theta):
    # five lambdas pin every coefficient of a degree <= 4 polynomial
    p = SscsParams(twice_j, 1.3, theta)
    lams = np.array([0.0, 0.5, 1.0, 1.5, 2.0])
    values = np.array([generating_function(p, lam) for lam in lams])
    vander = np.vander(lams, twice_j + 1, increasing=True)
    coeffs, *_ = np.linalg.lstsq(vander, values, rcond=None)
    assert np.allclose(coeffs, np.abs(amps(p)) ** 2, atol=1e-12)
    assert np.allclose(vander @ coeffs, values, atol=1e-12)


@pytest.mark.parametrize("p", GRID[::7], ids=str)
def test_factorial_moments_are_derivatives_of_G(p):
    # exact polynomial interpolation of G through 2j+1 nodes, then differentiate
    deg = p.twice_j
    nodes = np.linspace(0, 2, deg + 1)
    poly = np.polynomial.Polynomial.fit(nodes, [generating_function(p, x) for x in nodes], deg)
    for k in range(1, min(4, deg) + 1):
        assert close(factorial_moment(p, k), poly.deriv(k)(1.0), rel=1e-7, abs_=1e-8)


def test_factorial_moment_examples():
    assert factorial_moment(SscsParams(6, 0, 0), 3) == 0
    a = 0.49
    assert factorial_moment(SscsParams(6, 0.7, PI / 2), 1) == pytest.approx(6 * a / (1 + a), rel=1e-14)
    assert factorial_moment(SscsParams(1, 0.7, PI / 2), 2) == 0
    for k in (2, 3, 4):
        assert factorial_moment(SscsParams(k - 1, 1.2, 0.4), k) == 0
    with pytest.raises(ValueError):
        factorial_moment(SscsParams(6, 1, 0), 5)


def test_stirling_matrix():
    # n^k = sum_m S(k, m) n!/(n-m)!
    for n in range(8):
        falling = np.array([math.perm(n, m) for m in range(1, 5)], dtype=float)
        assert np.array_equal(STIRLING2 @ falling, [n, n**2, n**3, n**4])


def test_n_moments_examples():
    assert n_moments(SscsParams(2, 0.01, PI))[0] == pytest.approx(1, abs=1e-3)
    assert n_moments(SscsParams(4, 0, 0)) == (0, 0, 0, 0)
    for p in GRID:
        n1, n2, *_ = n_moments(p)
        assert n2 - n1**2 >= -1e-12


def test_g2_numerator_coefficients_match_symbolic_expansion():
    N, P = sympy.symbols("N P")
    poly = sympy.Poly(sympy.expand(N * (N - 1) * (P - N + 1) * (P - N + 2)), N)
    for tj in range(0, 30):
        expected = [int(poly.coeff_monomial(N**k).subs(P, tj)) for k in range(1, 5)]
        assert list(g2_numerator_coefficients(tj)) == expected
        assert poly.coeff_monomial(1) == 0
        # falling-factorial form maps onto the power form through the Stirling matrix
        via_factorial = np.array(g2_numerator_factorial_coefficients(tj), dtype=float)
        power = np.array(g2_numerator_coefficients(tj), dtype=float)
        assert np.array_equal(power @ STIRLING2, via_factorial)


@pytest.mark.parametrize("p", GRID, ids=str)
def test_g2_against_ladder_oracle(p):
    c = amps(p)
    oracle_denominator = _oracle.expect(c, _oracle.lowering(p.twice_j).T @ _oracle.lowering(p.twice_j)).real
    if oracle_denominator < 1e-14:
        with pytest.raises(UndefinedCorrelationError):
            g2(p)
        return
    assert close(g2(p), _oracle.g2(c, p.twice_j))


def test_g2_phase_insensitive():
    for tj in (3, 6, 7):
        for th in (0, 1.0, PI / 2, PI):
            ref = g2(SscsParams(tj, 1.7, th))
            for ph in (PI / 3, 2.0, -1.1):
                assert abs(g2(SscsParams(tj, cmath.rect(1.7, ph), th)) - ref) < 1e-12


def test_g2_examples():
    assert g2(SscsParams(6, 1e-3, PI)) == pytest.approx(0, abs=1e-5)
    values = [g2(SscsParams(6, 1, th)) for th in (0, PI / 2, PI)]
    assert max(values) - min(values) < 1e-10
    assert g2(SscsParams(6, 103, PI)) == pytest.approx(3 * 2 / 5, abs=1e-2)
    with pytest.raises(UndefinedCorrelationError):
        g2(SscsParams(4, 0, 0))


def test_large_eta_limits_follow_number_states():
    # integer j: theta = 0, pi/2 -> |2j>, theta = pi -> |2j-1>
    for tj in (4, 6, 8):
        assert g2(SscsParams(tj, 1e3, 0)) == pytest.approx(g2_number_state(tj, tj), abs=1e-2)
        assert g2(SscsParams(tj, 1e3, PI / 2)) == pytest.approx(g2_number_state(tj, tj), abs=1e-2)
        assert g2(SscsParams(tj, 1e3, PI)) == pytest.approx(g2_number_state(tj, tj - 1), abs=1e-2)
    # half-integer j: parities swap
    for tj in (5, 7):
        assert g2(SscsParams(tj, 1e3, 0)) == pytest.approx(g2_number_state(tj, tj - 1), abs=1e-2)
        assert g2(SscsParams(tj, 1e3, PI)) == pytest.approx(g2_number_state(tj, tj), abs=1e-2)
    # (2j - 1)/j, not 1 - j/2
    assert g2_number_state(6, 6) == pytest.approx(5 / 3)


def test_g2_number_state():
    for tj in range(2, 21):
        assert g2_number_state(tj, 1) == 0
    for j in range(1, 11):
        assert g2_number_state(2 * j, j + 1) == 1
    assert g2_number_state(6, 5) == pytest.approx(1.2, abs=1e-15)
    with pytest.raises(UndefinedCorrelationError):
        g2_number_state(6, 0)
    s = 6
    st = np.zeros(s + 1)
    for n in range(1, s + 1):
        st[:] = 0
        st[n] = 1
        assert g2_number_state(s, n) == pytest.approx(_oracle.g2(st.astype(complex), s), rel=1e-12)


def test_gtilde_examples():
    assert gtilde(SscsParams(4, 0.8, 0), 0.3) == 0
    assert gtilde(SscsParams(4, 0.8, 1.0), 1 / 0.64) == pytest.approx(0, abs=1e-15)
    p = SscsParams(2, math.sqrt(1 / 3), PI / 2)
    assert gtilde(p, 1) == pytest.approx(-0.25j, abs=1e-14)


@pytest.mark.parametrize("p", [q for q in GRID if math.sin(q.theta) > 0.1], ids=str)
def test_gtilde_against_oracle(p):
    c = amps(p)
    partner = _oracle.sscs_amplitudes(p.twice_j, p.eta, p.theta + PI)
    n = np.arange(p.twice_j + 1)
    for lam in (0.0, 0.5, 1.0, 2.0):
        assert close(gtilde(p, lam), complex(np.vdot(c, lam**n * partner)))
    assert close(gtilde(p, 1), sscs_cross_overlap(p), abs_=1e-10)
    assert close(gtilde_derivative(p), complex(np.vdot(c, n * partner)))
    h = 1e-5
    fd = (gtilde(p, 1 + h) - gtilde(p, 1 - h)) / (2 * h)
    assert abs(fd - gtilde_derivative(p)) < 1e-6 * max(1, abs(fd))


def test_gtilde_degenerate():
    with pytest.raises(DegenerateSuperpositionError):
        gtilde(SscsParams(2, 0, 0), 1)
    with pytest.raises(DegenerateSuperpositionError):
        gtilde(SscsParams(2, 1e-9, PI), 0.5)


def test_jminus_examples():
    for th in (0, PI):
        for eta in (0.3, 1.0, 2.2):
            assert jminus_expect(SscsParams(5, eta, th)) == 0
    for tj in (2, 3, 8):
        assert abs(jminus_expect(SscsParams(tj, 1, PI / 2))) < 1e-15
    for eta in (0.2, 1.0, 3.0):
        assert jminus_expect(SscsParams(1, eta, PI / 2)) == pytest.approx(-1j * eta / (1 + eta**2), abs=1e-15)
    for p in GRID:
        if p.eta.imag == 0:
            assert jminus_expect(p).real == 0


def test_jminus2_examples():
    assert jminus2_expect(SscsParams(6, 0, 0)) == 0
    for eta in (0.3, 1.0, 2.5):
        expected = 2 * eta**2 / (1 + eta**4)
        c = _oracle.sscs_amplitudes(2, eta, 0)
        jm = _oracle.lowering(2)
        assert _oracle.expect(c, jm @ jm) == pytest.approx(expected, rel=1e-14)
        assert jminus2_expect(SscsParams(2, eta, 0)) == pytest.approx(expected, rel=1e-13)
    for eta in (0.4, 1.0, 2.0):
        assert jminus2_expect(SscsParams(1, eta, PI / 2)) == 0


@pytest.mark.parametrize("p", GRID[::3], ids=str)
def test_cartesian_moments(p):
    m = cartesian_moments(p)
    c = amps(p)
    jm = _oracle.lowering(p.twice_j)
    jx = (jm + jm.T) / 2
    jy = (jm.T - jm) / 2j
    jz = _oracle.number(p.twice_j) - p.j * np.eye(p.twice_j + 1)
    for name, op in (("jx", jx), ("jy", jy), ("jz", jz)):
        assert close(getattr(m, name), _oracle.expect(c, op).real)
        assert close(getattr(m, name + "2"), _oracle.expect(c, op @ op).real)
    assert m.jx2 + m.jy2 + m.jz2 == pytest.approx(p.j * (p.j + 1), abs=1e-9)
    assert 0 <= m.n1 <= p.twice_j + 1e-12
    assert m.n2 >= m.n1**2 - 1e-12
    assert m.jz == pytest.approx(m.n1 - p.j)
    assert m.jplus == m.jminus.conjugate()


def test_cartesian_examples():
    m = cartesian_moments(SscsParams(6, 0, PI / 2))
    assert (m.jz, m.jx, m.jy) == (-3, 0, 0)
    assert m.jx2 == pytest.approx(1.5) and m.jy2 == pytest.approx(1.5)
    m = cartesian_moments(SscsParams(7, 1.3, 0))
    assert m.jx == 0 and m.jy == 0


def test_j1_even_xi():
    assert j1_even_xi_y(1) == 0.5
    assert j1_even_xi(0) == (1, 1)
    xx, xy = j1_even_xi(1e3)
    assert xx == pytest.approx(1, abs=1e-5) and xy == pytest.approx(1, abs=1e-5)
    with pytest.raises(PoleError):
        j1_even_xi(1.0)
    for eta in np.linspace(0.01, 50, 200):
        assert j1_even_xi_y(eta) < 1
