"""Piecewise Laurent calculus: evaluation conventions, exact integration,
linear combination, exponent shifts and the text dump."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from errlab.errors import DivergentAtZeroError, DomainError, FormatError, LogCaseError
from errlab.exactnum import ConstLinear, GaussianRational
from errlab.piecewise import (PiecewiseLaurent, Side, combine, constant_function,
                              eval_at, integrate, monomial, shift_exponent)
from errlab.sequences import mobius_sieve
from errlab.volterra import build_fracpart_series, make_case

A2 = ConstLinear.a2


def mu_series(X=6):
    return build_fracpart_series(make_case(mobius_sieve(X), X))


# -- strategies -------------------------------------------------------------

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=6)
coeffs = st.builds(ConstLinear, small_fracs, small_fracs, small_fracs)


def piece(allowed):
    return st.dictionaries(st.sampled_from(allowed), coeffs, max_size=3)


@st.composite
def laurents(draw, exps=(-2, 0, 1, 2, 3)):
    n = draw(st.integers(min_value=1, max_value=4))
    first = draw(piece([e for e in exps if e >= 0]))
    rest = [draw(piece(list(exps))) for _ in range(n)]
    return PiecewiseLaurent(Fraction(n), [first] + rest)


interior = st.fractions(min_value=Fraction(1, 40), max_value=1, max_denominator=40)


# -- evaluation -------------------------------------------------------------

class TestEval:
    def test_single_piece_square(self):
        f = monomial(2, 2)
        for side in Side:
            assert f.eval_at(Fraction(3, 2), side) == ConstLinear.scalar(Fraction(9, 4))

    def test_series_on_first_interval(self):
        h = mu_series()
        assert h.eval_at(Fraction(1, 2)) == A2(Fraction(-1, 2))

    def test_jump_at_one(self):
        h = mu_series()
        jump = h.eval_at(1, Side.RIGHT) - h.eval_at(1, Side.LEFT)
        assert jump == ConstLinear.scalar(1)  # b(1)/1

    def test_midpoint_is_average(self):
        h = mu_series()
        for n in range(1, 6):
            left = h.eval_at(n, Side.LEFT)
            right = h.eval_at(n, Side.RIGHT)
            assert h.eval_at(n, Side.MIDPOINT) == (left + right) / 2

    @given(laurents())
    @settings(max_examples=40)
    def test_midpoint_average_random(self, f):
        for n in range(1, f.npieces):
            mid = f.eval_at(n, Side.MIDPOINT)
            avg = (f.eval_at(n, Side.LEFT) + f.eval_at(n, Side.RIGHT)) / 2
            assert mid == avg

    def test_domain_errors(self):
        f = monomial(2, 2)
        with pytest.raises(DomainError):
            f.eval_at(Fraction(5, 2))
        with pytest.raises(DomainError):
            f.eval_at(0, Side.LEFT)
        g = PiecewiseLaurent(2, [{0: ConstLinear.scalar(1)}, {-1: ConstLinear.scalar(1)}],
                             weighted_integrand=True)
        assert g.eval_at(0) == ConstLinear.scalar(1)

    def test_negative_exponent_at_zero(self):
        f = monomial(2, -1)
        with pytest.raises(DomainError):
            f.eval_at(0)


# -- construction guards ----------------------------------------------------

class TestConstruction:
    def test_exponent_range(self):
        with pytest.raises(ValueError):
            monomial(1, 4)
        with pytest.raises(ValueError):
            monomial(1, -3)

    def test_first_piece_negative_needs_flag(self):
        with pytest.raises(ValueError):
            PiecewiseLaurent(1, [{-1: ConstLinear.scalar(1)}])
        PiecewiseLaurent(1, [{-1: ConstLinear.scalar(1)}], weighted_integrand=True)

    def test_zero_coefficients_dropped(self):
        f = PiecewiseLaurent(1, [{0: ConstLinear.zero(), 1: ConstLinear.scalar(1)}])
        assert f.pieces[0] == {1: ConstLinear.scalar(1)}

    def test_needs_enough_pieces(self):
        with pytest.raises(ValueError):
            PiecewiseLaurent(Fraction(5, 2), [{}, {}])


# -- integration ------------------------------------------------------------

class TestIntegrate:
    def test_weighted_square(self):
        f = monomial(2, 2)
        assert integrate(f, 2, "1/t^2") == ConstLinear.scalar(2)

    def test_series_integral(self):
        h = mu_series()
        # integral over (0, 1) of -A2 t plus (1, 3/2) of -A2 t + 1
        assert integrate(h, Fraction(3, 2), "1") == \
            ConstLinear(Fraction(1, 2), Fraction(-9, 8), 0)

    def test_log_case(self):
        f = monomial(1, 1)
        with pytest.raises(LogCaseError):
            integrate(f, 1, "1/t^2")

    def test_log_case_interior(self):
        f = PiecewiseLaurent(2, [{0: ConstLinear.scalar(1)},
                                 {-1: ConstLinear.scalar(1)}])
        with pytest.raises(LogCaseError) as err:
            integrate(f, Fraction(3, 2), "1")
        assert err.value.piece == 1
        # up to the bad piece everything is fine
        assert integrate(f, 1, "1") == ConstLinear.scalar(1)

    def test_divergent_at_zero(self):
        f = PiecewiseLaurent(1, [{-2: ConstLinear.scalar(1)}], weighted_integrand=True)
        with pytest.raises(DivergentAtZeroError):
            integrate(f, 1, "1")

    def test_weight_strings(self):
        f = monomial(1, 2)
        assert integrate(f, 1, 1) == integrate(f, 1, "1")
        with pytest.raises(ValueError):
            integrate(f, 1, "1/t^3")

    @given(laurents(exps=(-2, 0, 1, 2, 3)), interior, interior)
    @settings(max_examples=40)
    def test_additivity_against_direct_formula(self, f, u, v):
        # pick a segment inside the last covered piece, compare with the power rule
        k = f.npieces - 2
        x1 = k + min(u, v)
        x2 = k + max(u, v)
        seg = integrate(f, x2, "1") - integrate(f, x1, "1")
        direct = ConstLinear.zero()
        for e, c in f.pieces[k].items():
            direct = direct + c * ((x2 ** (e + 1) - x1 ** (e + 1)) / Fraction(e + 1))
        assert seg == direct

    @given(laurents(exps=(0, 1, 2)))
    @settings(max_examples=40)
    def test_kernel_identity(self, h):
        # integral of (t*h(t))/t equals the plain integral of h
        th = shift_exponent(h, 1)
        x = h.X - Fraction(1, 2)
        assert integrate(th, x, "1/t") == integrate(h, x, "1")

    @given(laurents(exps=(0, 1, 2, 3)))
    @settings(max_examples=40)
    def test_antiderivative_differentiates_back(self, f):
        # d/dx integral_0^x f = f at non-breakpoints, via a symmetric exact check:
        # the slope of the quadratic Taylor model must match term evaluation
        x = f.X - Fraction(1, 2)
        eps = Fraction(1, 7)
        lo, hi = x - eps, x + eps
        avg_slope = (integrate(f, hi, "1") - integrate(f, lo, "1")) / (2 * eps)
        # for piecewise polynomials of degree <= 3 the centered difference equals
        # f(x) + f''(x) eps^2/6; compute the correction exactly
        piece = f.pieces[f.npieces - 2]
        second = ConstLinear.zero()
        for e, c in piece.items():
            if e >= 2:
                second = second + c * (e * (e - 1)) * x ** (e - 2)
        assert avg_slope == f.eval_at(x) + second * (eps * eps / 6)


# -- combine and shift ------------------------------------------------------

class TestCombineShift:
    def test_shift_example(self):
        h = mu_series()
        xh = shift_exponent(h, 1)
        assert xh.eval_at(Fraction(1, 2)) == A2(Fraction(-1, 4))

    def test_combine_cancels(self):
        h = mu_series()
        assert combine(h, h, 1, -1).eval_at(Fraction(7, 3)).is_zero()

    def test_solution_build_example(self):
        h = mu_series()
        ones = constant_function(h.X, 1, npieces=h.npieces)
        F = shift_exponent(combine(h, ones, 1, 1), 1)
        assert F.eval_at(1, Side.RIGHT) == ConstLinear(2, -1, 0)

    def test_shift_range_error(self):
        f = monomial(1, 3)
        with pytest.raises(ValueError):
            shift_exponent(f, 1)

    def test_combine_layout_mismatch(self):
        with pytest.raises(ValueError):
            combine(monomial(1, 1), monomial(2, 1), 1, 1)

    @given(laurents(), small_fracs, small_fracs, interior)
    @settings(max_examples=40)
    def test_combine_pointwise(self, f, s, t, u):
        g = combine(f, f, s, t)
        x = f.X - 1 + u
        assert g.eval_at(x) == f.eval_at(x) * (GaussianRational(s) + GaussianRational(t))


# -- text dump ----------------------------------------------------------------

class TestDump:
    def test_roundtrip(self):
        h = mu_series()
        again = PiecewiseLaurent.loads(h.dumps())
        assert again == h

    def test_header_optional(self):
        f = PiecewiseLaurent.loads("0: e1=0/1 + -1/1*A2 + 0/1*A1\n")
        assert f.X == 1 and f.pieces[0] == {1: A2(-1)}

    def test_malformed_inputs(self):
        with pytest.raises(FormatError):
            PiecewiseLaurent.loads("")
        with pytest.raises(FormatError):
            PiecewiseLaurent.loads("1: e0=1/1 + 0/1*A2 + 0/1*A1\n")  # must start at 0
        with pytest.raises(FormatError):
            PiecewiseLaurent.loads("0: e9=1/1 + 0/1*A2 + 0/1*A1\n")  # exponent range
        with pytest.raises(FormatError):
            PiecewiseLaurent.loads("0: e-1=1/1 + 0/1*A2 + 0/1*A1\n")  # bad at 0+
