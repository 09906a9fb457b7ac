"""Prover9 input for "p-th and q-th powers commute implies commutative"."""
from __future__ import annotations

from math import gcd

from ..errors import InputError

THEORIES = ("group", "semigroup_cancellative")


def power_term(var: str, k: int) -> str:
    """Right-associated k-th power, ``x * (x * x)`` for k = 3."""
    if k < 1:
        raise InputError("power must be positive")
    if k == 1:
        return var
    inner = power_term(var, k - 1)
    return f"{var} * ({inner})" if k > 2 else f"{var} * {inner}"


def _commute_line(k: int) -> str:
    xk, yk = power_term("x", k), power_term("y", k)
    return f"({xk}) * ({yk}) = ({yk}) * ({xk})."


def emit_prover9(p: int, q: int, theory: str = "group", wrap: bool = False) -> str:
    """Axioms, power hypotheses and goal as Prover9 clauses.

    With ``wrap`` the lines are placed in ``formulas(...)`` lists so the
    output is a runnable input file.
    """
    if theory not in THEORIES:
        raise InputError(f"theory must be one of {THEORIES}, got {theory!r}")
    if p < 2 or q < 2:
        raise InputError("p and q must be at least 2")
    if gcd(p, q) != 1:
        raise InputError(f"p = {p} and q = {q} are not coprime")
    axioms = ["(x * y) * z = x * (y * z)."]
    if theory == "group":
        axioms += ["e * x = x. x * e = x.", "x' * x = e. x * x' = e."]
    else:
        axioms += ["x * y != x * z | y = z.", "y * x != z * x | y = z."]
    hyps = [_commute_line(p), "", _commute_line(q)]
    goal = "x * y = y * x."
    head = f"% {theory}: p = {p}, q = {q}"
    if wrap:
        lines = [head, "formulas(assumptions).", *axioms, "", *hyps, "end_of_list.", "",
                 "formulas(goals).", goal, "end_of_list."]
    else:
        lines = [head, *axioms, "", *hyps, "", "% goal", goal]
    return "\n".join(lines) + "\n"


def strip_comments(text: str) -> list[str]:
    """Lines with ``%`` comments and trailing whitespace removed; comment-only lines dropped."""
    out = []
    for line in text.splitlines():
        had_comment = "%" in line
        line = line.split("%", 1)[0].rstrip()
        if line or not had_comment:
            out.append(line)
    return out
