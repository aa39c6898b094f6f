"""Dispersion-symbol language: parsing, Taylor jets, built-ins, hypotheses."""
from .ast import SymbolAst, to_text
from .jet import Jet
from .parser import parse_symbol
from .symbol import (
    BUILTINS,
    DispersionSymbol,
    HypothesisReport,
    builtin,
    check_hypotheses,
    eval_jet,
    resolve_symbol,
)

__all__ = [
    "BUILTINS",
    "DispersionSymbol",
    "HypothesisReport",
    "Jet",
    "SymbolAst",
    "builtin",
    "check_hypotheses",
    "eval_jet",
    "parse_symbol",
    "resolve_symbol",
    "to_text",
]
