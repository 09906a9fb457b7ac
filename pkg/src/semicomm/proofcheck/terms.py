"""Words over atoms: semigroup terms flattened modulo associativity.

A word is a non-empty tuple of atoms. Products are concatenation, so the
associative law holds by construction and is never used as a rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class GApp:
    """``g(arg)`` for the single unary map symbol ``g``."""

    arg: "Word"


@dataclass(frozen=True)
class Inv:
    """``(arg)'``, the inverse mark."""

    arg: "Word"


Atom = Union[Var, Const, GApp, Inv]
Word = tuple  # tuple[Atom, ...], never empty


@dataclass(frozen=True)
class Equation:
    lhs: Word
    rhs: Word
    name: str = ""

    def __post_init__(self):
        if not self.lhs or not self.rhs:
            raise ValueError("both sides of an equation must be non-empty")

    def swapped(self) -> "Equation":
        return Equation(self.rhs, self.lhs, self.name)

    def same_as(self, other: "Equation") -> bool:
        return self.lhs == other.lhs and self.rhs == other.rhs

    def __str__(self):
        return f"{render(self.lhs)} = {render(self.rhs)}"


def render_atom(a: Atom) -> str:
    if isinstance(a, (Var, Const)):
        return a.name
    if isinstance(a, GApp):
        return f"g({render(a.arg)})"
    inner = a.arg
    if len(inner) == 1 and isinstance(inner[0], (Var, Const, Inv)):
        return render_atom(inner[0]) + "'"
    return f"({render(inner)})'"


def render(w: Word) -> str:
    return " * ".join(render_atom(a) for a in w)


def variables(w: Word) -> set[str]:
    out: set[str] = set()
    for a in w:
        if isinstance(a, Var):
            out.add(a.name)
        elif isinstance(a, (GApp, Inv)):
            out |= variables(a.arg)
    return out


def equation_variables(eq: Equation) -> set[str]:
    return variables(eq.lhs) | variables(eq.rhs)


def symbols(w: Word) -> set[str]:
    """Function symbols and constants occurring in w: ``g``, ``'`` and constant names."""
    out: set[str] = set()
    for a in w:
        if isinstance(a, Const):
            out.add(a.name)
        elif isinstance(a, GApp):
            out.add("g")
            out |= symbols(a.arg)
        elif isinstance(a, Inv):
            out.add("'")
            out |= symbols(a.arg)
    return out


def substitute(w: Word, sigma: Mapping[str, Word]) -> Word:
    out: list = []
    for a in w:
        if isinstance(a, Var) and a.name in sigma:
            out.extend(sigma[a.name])
        elif isinstance(a, GApp):
            out.append(GApp(substitute(a.arg, sigma)))
        elif isinstance(a, Inv):
            out.append(Inv(substitute(a.arg, sigma)))
        else:
            out.append(a)
    return tuple(out)


def power_word(w: Word, k: int) -> Word:
    return tuple(w) * k
