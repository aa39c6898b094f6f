"""Expression tree for dispersion symbols."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

FUNCTIONS = ("abs", "sqrt", "tanh", "coth", "exp", "cos", "sin", "tanhc")
BINARY_OPS = ("+", "-", "*", "/", "^")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str = "k"


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Call:
    func: str
    arg: Node


Node = Union[Num, Var, Neg, BinOp, Call]


@dataclass(frozen=True)
class SymbolAst:
    root: Node
    source_text: str

    def to_text(self) -> str:
        return to_text(self.root)


def to_text(node: Node) -> str:
    """Fully parenthesised serialisation; re-parsing yields the same tree."""
    if isinstance(node, SymbolAst):
        node = node.root
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    raise TypeError(f"not a symbol node: {node!r}")


def depends_on_k(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, Neg):
        return depends_on_k(node.operand)
    if isinstance(node, BinOp):
        return depends_on_k(node.left) or depends_on_k(node.right)
    return depends_on_k(node.arg)
