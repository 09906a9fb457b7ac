"""Finite-model audit of proof scripts.

Every table of small order, together with every interpretation of ``g``,
``'`` and the declared constants, is a candidate model. Where all
hypotheses hold under all variable assignments, every equation the checker
derived (each intermediate step as well as each claim) must hold too.
Cancellation is only sound in cancellative semigroups, so scripts in
cancellative mode are audited over cancellative tables only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..census import all_tables, filter_mask
from .checker import ProofReport, check_proof
from .parser import ProofScript
from .terms import Const, Equation, GApp, Inv, Var, Word, equation_variables, symbols


@dataclass(frozen=True)
class Interpretation:
    """Function and constant interpretations over ``range(n)``, stacked along axis 0."""

    n: int
    g: np.ndarray | None  # (M, n)
    inv: np.ndarray | None  # (M, n)
    consts: dict  # name -> (M,)
    ids: np.ndarray  # (M,) position in the full stack

    @property
    def size(self) -> int:
        return len(self.ids)

    def subset(self, mask: np.ndarray) -> "Interpretation":
        pick = lambda a: None if a is None else a[mask]
        consts = {k: v[mask] for k, v in self.consts.items()}
        return Interpretation(self.n, pick(self.g), pick(self.inv), consts, self.ids[mask])


def interpretations(n: int, uses_g: bool, uses_inv: bool, consts=()) -> Interpretation:
    maps = np.array(list(itertools.product(range(n), repeat=n)), dtype=np.intp).reshape(-1, n)
    axes = []
    if uses_g:
        axes.append(len(maps))
    if uses_inv:
        axes.append(len(maps))
    axes += [n] * len(consts)
    if not axes:
        return Interpretation(n, None, None, {}, np.zeros(1, dtype=np.intp))
    grid = np.indices(axes).reshape(len(axes), -1)
    k = 0
    g = inv = None
    if uses_g:
        g, k = maps[grid[k]], k + 1
    if uses_inv:
        inv, k = maps[grid[k]], k + 1
    cvals = {}
    for c in consts:
        cvals[c], k = grid[k].astype(np.intp), k + 1
    return Interpretation(n, g, inv, cvals, np.arange(grid.shape[1]))


def _assignments(n: int, names: list[str]) -> dict[str, np.ndarray]:
    if not names:
        return {}
    grid = np.indices((n,) * len(names)).reshape(len(names), -1)
    return {v: grid[i] for i, v in enumerate(names)}


def evaluate(word: Word, T: np.ndarray, I: Interpretation, env: dict[str, np.ndarray]) -> np.ndarray:
    """Value of ``word`` as an ``(M, A)`` array: interpretations by assignments."""
    M = I.size
    A = len(next(iter(env.values()))) if env else 1
    out = None
    for atom in word:
        if isinstance(atom, Var):
            v = np.broadcast_to(env[atom.name], (M, A))
        elif isinstance(atom, Const):
            v = np.broadcast_to(I.consts[atom.name][:, None], (M, A))
        else:
            inner = evaluate(atom.arg, T, I, env)
            fn = I.g if isinstance(atom, GApp) else I.inv
            v = np.take_along_axis(fn, inner, axis=1)
        out = v if out is None else T[out, v]
    return out


def equation_holds(eq: Equation, T: np.ndarray, I: Interpretation) -> np.ndarray:
    """Boolean mask over interpretations: eq holds under every assignment."""
    env = _assignments(len(T), sorted(equation_variables(eq)))
    return (evaluate(eq.lhs, T, I, env) == evaluate(eq.rhs, T, I, env)).all(axis=1)


def _script_symbols(script: ProofScript, extra=()):
    syms: set[str] = set()
    for eq in [*script.hypotheses, *(c.goal for c in script.claims), *extra]:
        syms |= symbols(eq.lhs) | symbols(eq.rhs)
    return "g" in syms, "'" in syms


@dataclass
class SoundnessAudit:
    script: str
    tables_checked: int = 0
    models: int = 0  # (table, interpretation) pairs satisfying all hypotheses
    equations_checked: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def model_tables(max_order: int, cancellative: bool):
    for n in range(1, max_order + 1):
        arr = all_tables(n)
        if cancellative:
            arr = arr[filter_mask(arr, "cancellative")]
        for t in arr:
            yield t.astype(np.intp)


def satisfying_models(script: ProofScript, T: np.ndarray, extra=()) -> Interpretation:
    """Interpretations over table T in which every hypothesis holds."""
    uses_g, uses_inv = _script_symbols(script, extra)
    I = interpretations(len(T), uses_g, uses_inv, script.constants)
    # cheap hypotheses first: fewer variables means a smaller assignment grid
    for h in sorted(script.hypotheses, key=lambda e: len(equation_variables(e))):
        if I.size == 0:
            break
        I = I.subset(equation_holds(h, T, I))
    return I


def derived_equations(report: ProofReport) -> list[Equation]:
    out = []
    for c in report.claims:
        if c.ok:
            out += [s.state for s in c.steps if s.state is not None]
            out.append(c.goal)
    return out


def audit_script(script: ProofScript, max_order: int = 4, report: ProofReport | None = None) -> SoundnessAudit:
    report = report or check_proof(script)
    eqs = derived_equations(report)
    audit = SoundnessAudit(script.name)
    for T in model_tables(max_order, script.mode == "cancellative"):
        audit.tables_checked += 1
        I = satisfying_models(script, T, eqs)
        if I.size == 0:
            continue
        audit.models += I.size
        for eq in eqs:
            audit.equations_checked += 1
            bad = ~equation_holds(eq, T, I)
            if bad.any():
                audit.discrepancies.append((eq, T.copy(), int(bad.sum())))
    return audit


def counter_models(script: ProofScript, eq: Equation, max_order: int = 4, limit: int = 1) -> list[np.ndarray]:
    """Tables (in the script's model class) where the hypotheses hold but eq fails."""
    found = []
    for T in model_tables(max_order, script.mode == "cancellative"):
        I = satisfying_models(script, T, [eq])
        if I.size and not equation_holds(eq, T, I).all():
            found.append(T.copy())
            if len(found) >= limit:
                break
    return found
