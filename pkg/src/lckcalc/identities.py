"""The fixed catalog of twenty first-order Hermitian operator identities.

Each identity equates two expressions in the operators

    L, Lam (wedge with the fundamental form and its adjoint),
    del, dbar (holomorphic / antiholomorphic exterior derivatives),
    lam = (del omega) ^ .,   lamb = (dbar omega) ^ .,
    tau = [Lam, lam],        taub = [Lam, lamb],

and their formal adjoints (suffix _adj).  They hold on any Hermitian
structure, pointwise, with exactly zero residual in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

from .scalars import GaussianRational, gr

# expression nodes: ("op", name) | ("comm", a, b) | ("add", a, b) |
#                   ("scale", GaussianRational, a) | ("zero",)

Expr = Tuple


def op(name: str) -> Expr:
    return ("op", name)


def comm(a, b) -> Expr:
    a = op(a) if isinstance(a, str) else a
    b = op(b) if isinstance(b, str) else b
    return ("comm", a, b)


def add(a: Expr, b: Expr) -> Expr:
    return ("add", a, b)


def scale(c: GaussianRational, a: Expr) -> Expr:
    return ("scale", c, a)


ZERO_EXPR: Expr = ("zero",)

I = gr(0, 1)
MINUS_I = gr(0, -1)
TWO_I = gr(0, 2)
MINUS_TWO_I = gr(0, -2)


@dataclass(frozen=True)
class Identity:
    identity_id: str
    lhs: Expr
    rhs: Expr
    text: str


IDENTITY_CATALOG: Dict[str, Identity] = {}


def _register(identity_id: str, lhs: Expr, rhs: Expr, text: str) -> None:
    IDENTITY_CATALOG[identity_id] = Identity(identity_id, lhs, rhs, text)


# first group: commutators of Lam/L with the exterior derivatives
_register("E1.1", comm("Lam", "dbar"), scale(MINUS_I, add(op("del_adj"), op("tau_adj"))),
          "[Lam, dbar] = -i (del* + tau*)")
_register("E1.2", comm("Lam", "del"), scale(I, add(op("dbar_adj"), op("taub_adj"))),
          "[Lam, del] = i (dbar* + taub*)")
_register("E1.3", comm("L", "dbar_adj"), scale(MINUS_I, add(op("del"), op("tau"))),
          "[L, dbar*] = -i (del + tau)")
_register("E1.4", comm("L", "del_adj"), scale(I, add(op("dbar"), op("taub"))),
          "[L, del*] = i (dbar + taub)")

# second group: commutators with the torsion operators
_register("E2.1", comm("Lam", "tau"), scale(MINUS_TWO_I, op("taub_adj")),
          "[Lam, tau] = -2i taub*")
_register("E2.2", comm("L", "taub"), scale(gr(3), op("lamb")),
          "[L, taub] = 3 lamb")
_register("E2.3", comm("Lam", "taub"), scale(TWO_I, op("tau_adj")),
          "[Lam, taub] = 2i tau*")
_register("E2.4", comm("L", "tau"), scale(gr(3), op("lam")),
          "[L, tau] = 3 lam")
_register("E2.5", comm("L", "tau_adj"), scale(MINUS_TWO_I, op("taub")),
          "[L, tau*] = -2i taub")
_register("E2.6", comm("Lam", "taub_adj"), scale(gr(-3), op("lamb_adj")),
          "[Lam, taub*] = -3 lamb*")
_register("E2.7", comm("L", "taub_adj"), scale(TWO_I, op("tau")),
          "[L, taub*] = 2i tau")
_register("E2.8", comm("Lam", "tau_adj"), scale(gr(-3), op("lam_adj")),
          "[Lam, tau*] = -3 lam*")

# third group: commutators with the wedge torsion operators
_register("E3.1", comm("Lam", "lam"), op("tau"), "[Lam, lam] = tau")
_register("E3.2", comm("L", "lam"), ZERO_EXPR, "[L, lam] = 0")
_register("E3.3", comm("Lam", "lamb"), op("taub"), "[Lam, lamb] = taub")
_register("E3.4", comm("L", "lamb"), ZERO_EXPR, "[L, lamb] = 0")
_register("E3.5", comm("L", "lam_adj"), scale(gr(-1), op("tau_adj")),
          "[L, lam*] = -tau*")
_register("E3.6", comm("Lam", "lam_adj"), ZERO_EXPR, "[Lam, lam*] = 0")
_register("E3.7", comm("L", "lamb_adj"), scale(gr(-1), op("taub_adj")),
          "[L, lamb*] = -taub*")
_register("E3.8", comm("Lam", "lamb_adj"), ZERO_EXPR, "[Lam, lamb*] = 0")


IDENTITY_IDS: Sequence[str] = tuple(IDENTITY_CATALOG)

assert len(IDENTITY_CATALOG) == 20


def apply_expr(expr: Expr, apply_op: Callable, value):
    """Evaluate an expression tree on a vector-like value.

    apply_op(name, v) applies a primitive operator; the value type must
    support +, - and .scale(GaussianRational).
    """
    kind = expr[0]
    if kind == "zero":
        return None  # caller treats None as zero
    if kind == "op":
        return apply_op(expr[1], value)
    if kind == "comm":
        _, a, b = expr
        ab = apply_expr(a, apply_op, apply_expr(b, apply_op, value))
        ba = apply_expr(b, apply_op, apply_expr(a, apply_op, value))
        if ab is None:
            return -ba if ba is not None else None
        if ba is None:
            return ab
        return ab - ba
    if kind == "add":
        _, a, b = expr
        va = apply_expr(a, apply_op, value)
        vb = apply_expr(b, apply_op, value)
        if va is None:
            return vb
        if vb is None:
            return va
        return va + vb
    if kind == "scale":
        _, c, a = expr
        va = apply_expr(a, apply_op, value)
        return None if va is None else va.scale(c)
    raise ValueError(f"unknown expression node {expr!r}")


def expr_matrix(expr: Expr, matrices: Dict[str, list], dim: int):
    """Evaluate an expression tree to a dense matrix over GaussianRational."""
    from . import linalg

    kind = expr[0]
    if kind == "zero":
        return linalg.zeros(dim, dim)
    if kind == "op":
        return matrices[expr[1]]
    if kind == "comm":
        _, a, b = expr
        return linalg.commutator(
            expr_matrix(a, matrices, dim), expr_matrix(b, matrices, dim)
        )
    if kind == "add":
        _, a, b = expr
        return linalg.mat_add(
            expr_matrix(a, matrices, dim), expr_matrix(b, matrices, dim)
        )
    if kind == "scale":
        _, c, a = expr
        return linalg.mat_scale(c, expr_matrix(a, matrices, dim))
    raise ValueError(f"unknown expression node {expr!r}")
