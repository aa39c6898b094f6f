"""Dispersion symbols: evaluation, built-in registry and hypothesis checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import DomainError, MiSpectraError
from . import jet as J
from .ast import BinOp, Call, Neg, Node, Num, SymbolAst, Var
from .parser import parse_symbol

_JET_FUNCS = {
    "abs": J.absolute,
    "sqrt": J.sqrt,
    "tanh": J.tanh,
    "coth": J.coth,
    "exp": J.exp,
    "cos": J.cos,
    "sin": J.sin,
    "tanhc": J.tanhc,
}


def _coth(x):
    return 1.0 / np.tanh(x)


_VALUE_FUNCS = {
    "abs": np.abs,
    "sqrt": np.sqrt,
    "tanh": np.tanh,
    "coth": _coth,
    "exp": np.exp,
    "cos": np.cos,
    "sin": np.sin,
    "tanhc": J.tanhc_value,
}


def _constant(node: Node) -> float:
    return float(_eval_value(node, np.zeros(())))


def _eval_value(node: Node, k: np.ndarray) -> np.ndarray:
    if isinstance(node, Num):
        return np.full_like(k, node.value)
    if isinstance(node, Var):
        return k
    if isinstance(node, Neg):
        return -_eval_value(node.operand, k)
    if isinstance(node, Call):
        arg = _eval_value(node.arg, k)
        if node.func == "sqrt" and np.any(arg < 0):
            raise DomainError("sqrt of negative value")
        return _VALUE_FUNCS[node.func](arg)
    left = _eval_value(node.left, k)
    if node.op == "^":
        r = _constant(node.right)
        if not float(r).is_integer() and np.any(left < 0):
            raise DomainError("non-integer power of negative value")
        return np.power(left, r)
    right = _eval_value(node.right, k)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


def _eval_jet(node: Node, k: J.Jet) -> J.Jet:
    if isinstance(node, Num):
        return J.Jet.constant(node.value, k.order)
    if isinstance(node, Var):
        return k
    if isinstance(node, Neg):
        return -_eval_jet(node.operand, k)
    if isinstance(node, Call):
        return _JET_FUNCS[node.func](_eval_jet(node.arg, k))
    if node.op == "^":
        return J.power(_eval_jet(node.left, k), _constant(node.right))
    left = _eval_jet(node.left, k)
    right = _eval_jet(node.right, k)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


@dataclass(frozen=True)
class DispersionSymbol:
    """A parsed dispersion relation j(k), immutable once built.

    Evenness and normalisation are not enforced at construction; :func:`check_hypotheses` reports them.
    """

    ast: SymbolAst
    name: str | None = None
    params: Mapping[str, float] = field(default_factory=dict)
    growth_sigma: float | None = None

    @classmethod
    def from_text(cls, text: str, name: str | None = None, params=None) -> DispersionSymbol:
        ast = parse_symbol(text)
        sym = cls(ast, name, dict(params or {}))
        try:
            sigma = estimate_growth(sym)
        except MiSpectraError:
            sigma = None
        object.__setattr__(sym, "growth_sigma", sigma)
        return sym

    @property
    def text(self) -> str:
        return self.ast.source_text

    def label(self) -> str:
        if self.name is None:
            return self.text
        if self.params:
            inner = ",".join(f"{k}={v:g}" for k, v in sorted(self.params.items()))
            return f"{self.name}{{{inner}}}"
        return self.name

    def __call__(self, k):
        """Evaluate j at a scalar or array of wavenumbers."""
        arr = np.asarray(k, dtype=float)
        with np.errstate(all="ignore"):
            out = _eval_value(self.ast.root, arr)
        if not np.all(np.isfinite(out)):
            raise DomainError(f"{self.label()} is not finite at some of k={k!r}")
        return float(out) if out.ndim == 0 else out

    def jet(self, k: float, order: int = 4) -> J.Jet:
        return eval_jet(self, k, order)


def eval_jet(symbol: DispersionSymbol, k: float, order: int = 4) -> J.Jet:
    """Value and derivatives of ``symbol`` at ``k`` up to ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    result = _eval_jet(symbol.ast.root, J.Jet.variable(float(k), order))
    if not np.all(np.isfinite(result.coeffs)):
        raise DomainError(f"{symbol.label()} jet is not finite at k={k!r}")
    return result


def estimate_growth(symbol: DispersionSymbol, k_lo: float = 100.0, k_hi: float = 1000.0) -> float:
    """Sampled power-law exponent sigma of |j(k)| for large k."""
    lo, hi = abs(symbol(k_lo)), abs(symbol(k_hi))
    if lo == 0.0 or hi == 0.0:
        raise DomainError("symbol vanishes at the growth sample points")
    return math.log(hi / lo) / math.log(k_hi / k_lo)


BUILTINS: dict[str, tuple[str, dict[str, float]]] = {
    "kdv": ("1 + k^2", {}),
    "mkdv-dispersion": ("1 + k^2", {}),
    "whitham": ("sqrt(tanhc(k))", {}),
    "bo": ("1 - abs(k)", {}),
    "ilw": ("1 / tanhc(k)", {}),
    "fkdv": ("1 - abs(k)^({beta!r})", {"beta": 1.5}),
    "kawahara": ("1 + ({a!r})*k^2 + ({b!r})*k^4", {"a": 1.0, "b": 1.0}),
}


def builtin(name: str, **params: float) -> DispersionSymbol:
    template, defaults = BUILTINS[name]
    unknown = set(params) - set(defaults)
    if unknown:
        raise MiSpectraError(f"builtin {name!r} has no parameters {sorted(unknown)}")
    values = {k: float(v) for k, v in {**defaults, **params}.items()}
    return DispersionSymbol.from_text(template.format(**values), name, values)


def resolve_symbol(spec: str, params: Mapping[str, float] | None = None) -> DispersionSymbol:
    """A builtin name (with optional parameters) or a free-form expression."""
    if spec in BUILTINS:
        return builtin(spec, **(params or {}))
    if params:
        raise MiSpectraError("parameters are only accepted for builtin symbols")
    return DispersionSymbol.from_text(spec)


@dataclass
class HypothesisReport:
    h1_even_ok: bool
    h1_normalized_ok: bool
    h3_resonances: list[tuple[int, float]]
    mean_mode_ok: bool
    rho: float
    tested_modes: list[int]
    min_gap: float

    @property
    def ok(self) -> bool:
        return self.h1_even_ok and self.h1_normalized_ok and self.mean_mode_ok and not self.h3_resonances

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "h1_even_ok": self.h1_even_ok,
            "h1_normalized_ok": self.h1_normalized_ok,
            "mean_mode_ok": self.mean_mode_ok,
            "h3_resonances": [{"n": n, "gap": gap} for n, gap in self.h3_resonances],
            "tested_modes": self.tested_modes,
            "min_gap": self.min_gap,
            "ok": self.ok,
        }


def check_hypotheses(symbol: DispersionSymbol, rho: float, n_max: int = 16, tol: float = 1e-10) -> HypothesisReport:
    """Sampled evenness and normalisation checks plus a resonance scan over n = 0, 2..n_max."""
    if rho <= 0 or n_max < 2:
        raise ValueError("need rho > 0 and n_max >= 2")
    grid = np.linspace(0.0, 10.0, 401)
    plus, minus = symbol(grid), symbol(-grid)
    even_ok = bool(np.max(np.abs(plus - minus)) <= 1e-10)
    normalized_ok = abs(symbol(0.0) - 1.0) <= 1e-10
    j_rho = symbol(rho)
    modes = [0] + list(range(2, n_max + 1))
    gaps = [(n, float(symbol(rho * n) - j_rho)) for n in modes]
    resonances = [(n, g) for n, g in gaps if abs(g) <= tol]
    return HypothesisReport(
        h1_even_ok=even_ok,
        h1_normalized_ok=normalized_ok,
        h3_resonances=resonances,
        mean_mode_ok=abs(gaps[0][1]) > tol,
        rho=float(rho),
        tested_modes=modes,
        min_gap=min(abs(g) for _, g in gaps),
    )
