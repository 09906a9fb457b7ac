"""Replay of equational proof scripts.

A claim is replayed on an equation ``start = current``: rewrites act on the
right-hand side, cancellation strips a common prefix or suffix from both
sides, ``symm`` swaps them. The claim is proven when the final equation is
literally its goal. The checker never searches: every step names its rule,
direction, position and substitution.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping

from .parser import (
    CancelLeft,
    CancelRight,
    ProofScript,
    Reflexivity,
    Rewrite,
    Symmetry,
    parse_script,
)
from .terms import Equation, GApp, Inv, Word, equation_variables, render, substitute


class StepFailure(Exception):
    """A step does not apply; the message says what was expected and found."""


def _instantiate(rule: Equation, direction: str, sub: Mapping[str, Word]) -> tuple[Word, Word]:
    unknown = set(sub) - equation_variables(rule)
    if unknown:
        raise StepFailure(f"substitution names variables not in rule {rule.name!r}: {sorted(unknown)}")
    src, dst = (rule.lhs, rule.rhs) if direction == "L2R" else (rule.rhs, rule.lhs)
    return substitute(src, sub), substitute(dst, sub)


def apply_rewrite(
    target: Word, rule: Equation, direction: str, path: tuple[int, ...], sub: Mapping[str, Word] = {}
) -> Word:
    """Replace the instantiated source side of ``rule`` found at ``path`` in ``target``.

    Rule variables absent from ``sub`` stand for themselves.
    """
    if direction not in ("L2R", "R2L"):
        raise StepFailure(f"bad direction {direction!r}")
    if not path:
        raise StepFailure("empty path")
    pattern, replacement = _instantiate(rule, direction, sub)
    stack = []
    w = target
    for depth, idx in enumerate(path[:-1]):
        if idx >= len(w):
            raise StepFailure(f"path index {idx} at depth {depth} is past the end of {render(w)}")
        atom = w[idx]
        if not isinstance(atom, (GApp, Inv)):
            raise StepFailure(f"cannot descend into {render((atom,))} at depth {depth}")
        stack.append((w, idx, type(atom)))
        w = atom.arg
    off = path[-1]
    found = w[off : off + len(pattern)]
    if found != pattern:
        shown = render(found) if found else "<end of word>"
        raise StepFailure(f"expected {render(pattern)} at offset {off}, found {shown}")
    new = w[:off] + replacement + w[off + len(pattern) :]
    for parent, idx, cls in reversed(stack):
        new = parent[:idx] + (cls(new),) + parent[idx + 1 :]
    return new


def apply_cancel(eq: Equation, side: str, count: int) -> Equation:
    """Strip ``count`` common atoms from the left or right of both sides."""
    lhs, rhs = eq.lhs, eq.rhs
    if count < 1:
        raise StepFailure("cancel count must be positive")
    if count >= len(lhs) or count >= len(rhs):
        raise StepFailure(f"cancelling {count} atoms would empty a side of {eq}")
    if side == "left":
        a, b = lhs[:count], rhs[:count]
        out = Equation(lhs[count:], rhs[count:], eq.name)
    elif side == "right":
        a, b = lhs[-count:], rhs[-count:]
        out = Equation(lhs[:-count], rhs[:-count], eq.name)
    else:
        raise StepFailure(f"bad side {side!r}")
    if a != b:
        raise StepFailure(f"cannot cancel on the {side}: {render(a)} differs from {render(b)}")
    return out


@dataclass(frozen=True)
class StepTrace:
    step: str
    line: int
    before: str
    after: str | None
    ok: bool
    message: str = ""
    state: Equation | None = None


@dataclass
class ClaimReport:
    name: str
    goal: Equation
    ok: bool
    steps: list[StepTrace] = field(default_factory=list)
    message: str = ""

    @property
    def failed_steps(self) -> int:
        return sum(not s.ok for s in self.steps)


@dataclass
class ProofReport:
    script: str
    mode: str
    claims: list[ClaimReport]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.claims)

    @property
    def failed_steps(self) -> int:
        return sum(c.failed_steps for c in self.claims)

    @property
    def proven(self) -> list[str]:
        return [c.name for c in self.claims if c.ok]

    def render(self, verbose: bool = False) -> str:
        out = []
        for c in self.claims:
            out.append(f"claim {c.name}: {c.goal}  [{'verified' if c.ok else 'FAILED'}]")
            for s in c.steps:
                if verbose or not s.ok:
                    out.append(f"  line {s.line}: {s.step}")
                    out.append(f"    before: {s.before}")
                    if s.ok:
                        out.append(f"    after:  {s.after}")
                    else:
                        out.append(f"    error:  {s.message}")
            if c.message and not any(not s.ok for s in c.steps):
                out.append(f"  {c.message}")
        n_ok = sum(c.ok for c in self.claims)
        out.append(f"{self.script or 'script'}: {n_ok}/{len(self.claims)} claims verified")
        return "\n".join(out)


def _run_step(step, eq: Equation, goal: Equation, rules: dict, mode: str) -> Equation:
    if isinstance(step, Rewrite):
        if step.rule not in rules:
            raise StepFailure(f"unknown rule {step.rule!r}")
        rhs = apply_rewrite(eq.rhs, rules[step.rule], step.direction, step.path, dict(step.sub))
        return Equation(eq.lhs, rhs, eq.name)
    if isinstance(step, (CancelLeft, CancelRight)):
        if mode != "cancellative":
            raise StepFailure("cancellation is only allowed in cancellative mode")
        return apply_cancel(eq, "left" if isinstance(step, CancelLeft) else "right", step.count)
    if isinstance(step, Symmetry):
        return eq.swapped()
    if isinstance(step, Reflexivity):
        if goal.lhs != goal.rhs:
            raise StepFailure(f"refl needs identical sides, goal is {goal}")
        return Equation(goal.lhs, goal.rhs, eq.name)
    raise StepFailure(f"unknown step {step!r}")


def check_proof(script: ProofScript) -> ProofReport:
    rules: dict[str, Equation] = {h.name: h for h in script.hypotheses}
    reports = []
    for claim in script.claims:
        goal = claim.goal
        start = claim.start if claim.start is not None else goal.lhs
        eq = Equation(start, start, goal.name)
        traces = []
        failed = False
        for step in claim.steps:
            before = str(eq)
            try:
                eq = _run_step(step, eq, goal, rules, script.mode)
            except StepFailure as exc:
                traces.append(StepTrace(str(step), step.line, before, None, False, str(exc)))
                failed = True
                break
            traces.append(StepTrace(str(step), step.line, before, str(eq), True, state=eq))
        if failed:
            reports.append(ClaimReport(goal.name, goal, False, traces, "step failed"))
            continue
        if eq.same_as(goal):
            rules[goal.name] = goal
            reports.append(ClaimReport(goal.name, goal, True, traces))
        else:
            traces.append(StepTrace("qed", 0, str(eq), None, False, f"final equation {eq} is not the goal {goal}"))
            reports.append(ClaimReport(goal.name, goal, False, traces, "goal not reached"))
    return ProofReport(script.name, script.mode, reports)


BUNDLED = (
    "prop11",
    "lemma21",
    "main2_part1_i123",
    "main2_part1_i234",
    "lemma31_k2",
    "lemma31_k3",
    "lemma41",
)


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError(name)
    return resources.files(__package__).joinpath("scripts").joinpath(f"{name}.prf").read_text()


def bundled_scripts() -> list[tuple[str, ProofScript]]:
    return [(name, parse_script(bundled_text(name), name)) for name in BUNDLED]
