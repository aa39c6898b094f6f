import math

import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mi_spectra.errors import ArityError, DomainError, SymbolSyntaxError, UnknownFunctionError
from mi_spectra.symbols import (
    BUILTINS,
    DispersionSymbol,
    builtin,
    check_hypotheses,
    eval_jet,
    parse_symbol,
    resolve_symbol,
    to_text,
)
from mi_spectra.symbols import jet as J
from mi_spectra.symbols.ast import BinOp, Call, Num, Var


# parsing


def test_parse_polynomial_structure():
    ast = parse_symbol("1 + k^2")
    assert ast.root == BinOp("+", Num(1.0), BinOp("^", Var(), Num(2.0)))


def test_parse_whitham_structure():
    ast = parse_symbol("sqrt(tanhc(k))")
    assert ast.root == Call("sqrt", Call("tanhc", Var()))


def test_parse_fkdv_structure():
    ast = parse_symbol("1 - abs(k)^1.5")
    assert ast.root == BinOp("-", Num(1.0), BinOp("^", Call("abs", Var()), Num(1.5)))


def test_double_star_is_power():
    assert parse_symbol("k**3").root == parse_symbol("k^3").root


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("1 +", 3), ("(1 + k", 6), ("1 $ k", 2), ("k k", 2)],
)
def test_syntax_errors_report_offset(text, offset):
    with pytest.raises(SymbolSyntaxError) as info:
        parse_symbol(text)
    assert info.value.offset == offset
    assert f"at byte {offset}" in str(info.value)


def test_unknown_function():
    with pytest.raises(UnknownFunctionError):
        parse_symbol("sech(k)")


def test_unknown_identifier():
    with pytest.raises(UnknownFunctionError):
        parse_symbol("1 + x")


def test_arity():
    with pytest.raises(ArityError):
        parse_symbol("tanh(k, 2)")


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_round_trip_builtins(name):
    ast = builtin(name).ast
    again = parse_symbol(to_text(ast))
    assert again.root == ast.root


_leaf = st.one_of(st.just("k"), st.integers(1, 5).map(str), st.just("pi"))


def _compose(children):
    unary = st.tuples(st.sampled_from(["exp", "cos", "sin", "tanh", "sqrt", "tanhc"]), children).map(
        lambda t: f"{t[0]}({t[1]})"
    )
    binary = st.tuples(children, st.sampled_from(["+", "-", "*"]), children).map(lambda t: f"({t[0]} {t[1]} {t[2]})")
    return unary | binary


expressions = st.recursive(_leaf, _compose, max_leaves=6)


@settings(max_examples=80, deadline=None)
@given(expressions)
def test_round_trip_random(text):
    ast = parse_symbol(text)
    assert parse_symbol(to_text(ast)).root == ast.root


# evaluation and jets


def test_polynomial_jet():
    jet = eval_jet(builtin("kdv"), 1.5)
    assert np.allclose(jet.derivatives(), [3.25, 3.0, 2.0, 0.0, 0.0], rtol=0, atol=1e-14)


def test_whitham_at_origin():
    jet = eval_jet(builtin("whitham"), 0.0)
    assert jet.value == pytest.approx(1.0, abs=1e-15)
    assert jet.derivative(1) == pytest.approx(0.0, abs=1e-15)
    assert jet.derivative(2) == pytest.approx(-1.0 / 3.0, rel=1e-12)


def test_whitham_value_oracle():
    assert builtin("whitham")(1.5) == pytest.approx(math.sqrt(math.tanh(1.5) / 1.5), rel=1e-15)


def test_ilw_jet_matches_finite_differences():
    # k coth k at k=2; high-order central differences are the oracle
    f = lambda k: k / math.tanh(k)  # noqa: E731
    h = 1e-2
    fd1 = (f(2 - 2 * h) - 8 * f(2 - h) + 8 * f(2 + h) - f(2 + 2 * h)) / (12 * h)
    fd2 = (-f(2 - 2 * h) + 16 * f(2 - h) - 30 * f(2) + 16 * f(2 + h) - f(2 + 2 * h)) / (12 * h * h)
    jet = eval_jet(builtin("ilw"), 2.0)
    assert jet.value == pytest.approx(f(2.0), rel=1e-14)
    assert jet.derivative(1) == pytest.approx(fd1, rel=1e-7)
    assert jet.derivative(2) == pytest.approx(fd2, rel=1e-6)


def test_ilw_jet_matches_sympy():
    k = sp.symbols("k")
    expr = k * sp.coth(k)
    jet = eval_jet(builtin("ilw"), 2.0, order=6)
    for n in range(7):
        exact = float(sp.diff(expr, k, n).subs(k, 2).evalf(30))
        assert jet.derivative(n) == pytest.approx(exact, rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("x", [1e-4, 5e-4, 2e-3, 0.1, 0.7, 1.0, 2.5])
def test_tanhc_jet_against_sympy(x):
    k = sp.symbols("k")
    expr = sp.tanh(k) / k
    jet = J.tanhc(J.Jet.variable(x, 4))
    for n in range(5):
        exact = float(sp.diff(expr, k, n).subs(k, sp.Float(x, 40)).evalf(40))
        assert jet.derivative(n) == pytest.approx(exact, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("edge", [J.TANHC_SERIES_RADIUS, J.TANHC_QUADRATURE_RADIUS])
def test_tanhc_branches_continuous(edge):
    below = J.tanhc(J.Jet.variable(edge * (1 - 1e-12), 4)).derivatives()
    above = J.tanhc(J.Jet.variable(edge * (1 + 1e-12), 4)).derivatives()
    assert np.max(np.abs(below - above)) < 1e-8


_MP_FUNCS = {"exp": mpmath.exp, "cos": mpmath.cos, "sin": mpmath.sin, "tanh": mpmath.tanh, "sqrt": mpmath.sqrt}
_JET_FUNCS = {"exp": J.exp, "cos": J.cos, "sin": J.sin, "tanh": J.tanh, "sqrt": J.sqrt}


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sampled_from(sorted(_JET_FUNCS)), min_size=1, max_size=4),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    st.floats(0.2, 1.5),
)
def test_chain_rule_against_mpmath(funcs, poly, x):
    # compositions f1(f2(...(p(k)))) with a quadratic p; sqrt gets a positive argument
    def mp_f(k):
        y = poly[0] + poly[1] * k + poly[2] * k**2
        for name in funcs:
            if name == "sqrt":
                y = 2 + y**2
            y = _MP_FUNCS[name](y)
        return y

    var = J.Jet.variable(x, 4)
    jet = poly[0] + poly[1] * var + poly[2] * var * var
    for name in funcs:
        if name == "sqrt":
            jet = 2 + jet * jet
        # keep inner arguments moderate; huge ones only measure conditioning
        assume(abs(jet.value) < 20)
        jet = _JET_FUNCS[name](jet)
    with mpmath.workdps(40):
        exact = [float(c) for c in mpmath.taylor(mp_f, mpmath.mpf(x), 4)]
    assert np.allclose(jet.coeffs, exact, rtol=1e-12, atol=1e-12)


def test_abs_power_domain():
    sym = builtin("fkdv", beta=1.5)
    with pytest.raises(DomainError):
        sym.jet(0.0)
    with pytest.raises(DomainError):
        sym.jet(-1.0)
    jet = sym.jet(2.0)
    assert jet.derivative(1) == pytest.approx(-1.5 * 2.0**0.5, rel=1e-14)


def test_nonfinite_value_raises():
    with pytest.raises(DomainError):
        DispersionSymbol.from_text("1 / k")(0.0)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_are_even(name):
    sym = builtin(name)
    k = np.linspace(0.01, 6.0, 97)
    assert np.allclose(sym(k), sym(-k), rtol=1e-14, atol=0)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_normalized(name):
    assert builtin(name)(0.0) == pytest.approx(1.0, abs=1e-15)


def test_resolve_expression_and_params():
    sym = resolve_symbol("kawahara", {"a": 0.5, "b": -0.1})
    assert sym(2.0) == pytest.approx(1 + 0.5 * 4 - 0.1 * 16)
    assert resolve_symbol("1 + k^2")(3.0) == pytest.approx(10.0)


# hypotheses


def test_kdv_no_resonances():
    report = check_hypotheses(builtin("kdv"), 1.5, n_max=8)
    assert report.ok
    assert report.h3_resonances == []


def test_whitham_mean_mode():
    report = check_hypotheses(builtin("whitham"), 1.5)
    assert report.mean_mode_ok
    assert report.ok


def test_constant_symbol_fails_everywhere():
    report = check_hypotheses(DispersionSymbol.from_text("1"), 1.0, n_max=6)
    assert not report.ok
    assert [n for n, _ in report.h3_resonances] == [0, 2, 3, 4, 5, 6]


def test_odd_symbol_fails_h1():
    report = check_hypotheses(DispersionSymbol.from_text("1 + k^3"), 1.0)
    assert not report.h1_even_ok
