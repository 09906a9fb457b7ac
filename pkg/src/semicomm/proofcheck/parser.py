"""Parser for equations and ``.prf`` proof scripts.

Term syntax is Prover9-style: ``*`` is the (explicit) product, a postfix
``'`` marks the inverse, ``g(...)`` applies the unary map, and parentheses
only group (they disappear, since words are flat)::

    word   := factor ("*" factor)*
    factor := primary "'"*
    primary:= IDENT | "g" "(" word ")" | "(" word ")"

Script lines (``#`` starts a comment line)::

    mode plain|cancellative
    const NAME...
    hyp NAME: EQUATION
    claim NAME: EQUATION
    start WORD
    rw L2R|R2L RULE at PATH [sub {VAR = WORD; ...}]
    cancel-left K
    cancel-right K
    symm
    refl
    qed

A PATH is dot-separated indices: every index but the last descends into
the argument of a ``g(...)`` or ``(...)'`` atom, the last is the offset at
which the rule's instantiated side must start.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import InputError
from .terms import Const, Equation, GApp, Inv, Var, Word, render

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[*()'=]))")


class ProofSyntaxError(InputError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f"line {line}, column {col}: " if line else (f"column {col}: " if col else "")
        super().__init__(where + message)
        self.line = line
        self.col = col


class _Tokens:
    def __init__(self, text: str, line: int = 0, col0: int = 0):
        self.toks: list[tuple[str, str, int]] = []
        self.line = line
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                col = pos + 1 + len(text[pos:]) - len(text[pos:].lstrip())
                raise ProofSyntaxError(f"unexpected character {text[col - 1]!r}", line, col0 + col)
            kind = "ident" if m.group("ident") else "op"
            self.toks.append((kind, m.group(kind), col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0
        self.end_col = col0 + len(text) + 1

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, col = self.take()
        if val != value:
            found = "end of input" if val is None else repr(val)
            raise ProofSyntaxError(f"expected {value!r}, found {found}", self.line, col)

    def error(self, message: str):
        _, val, col = self.peek()
        found = "end of input" if val is None else repr(val)
        return ProofSyntaxError(f"{message}, found {found}", self.line, col)


def _word(tk: _Tokens, consts: frozenset[str]) -> Word:
    atoms: list = list(_factor(tk, consts))
    while tk.peek()[1] == "*":
        tk.take()
        atoms.extend(_factor(tk, consts))
    return tuple(atoms)


def _factor(tk: _Tokens, consts: frozenset[str]) -> Word:
    kind, val, col = tk.peek()
    if kind == "ident":
        tk.take()
        if val == "g" and tk.peek()[1] == "(":
            tk.take()
            inner = _word(tk, consts)
            tk.expect(")")
            w: Word = (GApp(inner),)
        else:
            w = (Const(val) if val in consts else Var(val),)
    elif val == "(":
        tk.take()
        w = _word(tk, consts)
        tk.expect(")")
    else:
        raise tk.error("expected a variable, 'g(' or '('")
    primes = 0
    while tk.peek()[1] == "'":
        tk.take()
        primes += 1
    for _ in range(primes):
        w = (Inv(w),)
    return w


def parse_word(text: str, consts=(), line: int = 0, col0: int = 0) -> Word:
    tk = _Tokens(text, line, col0)
    w = _word(tk, frozenset(consts))
    if tk.peek()[0] is not None:
        raise tk.error("unexpected trailing input")
    return w


def parse_equation(text: str, name: str = "", consts=(), line: int = 0, col0: int = 0) -> Equation:
    tk = _Tokens(text, line, col0)
    c = frozenset(consts)
    lhs = _word(tk, c)
    tk.expect("=")
    rhs = _word(tk, c)
    if tk.peek()[0] is not None:
        raise tk.error("unexpected trailing input")
    return Equation(lhs, rhs, name)


# ---------------------------------------------------------------------------
# scripts


@dataclass(frozen=True)
class Rewrite:
    rule: str
    direction: str  # "L2R" or "R2L"
    path: tuple[int, ...]
    sub: tuple[tuple[str, Word], ...] = ()
    line: int = 0

    def __str__(self):
        s = f"rw {self.direction} {self.rule} at {'.'.join(map(str, self.path))}"
        if self.sub:
            s += " sub {" + "; ".join(f"{v} = {render(w)}" for v, w in self.sub) + "}"
        return s


@dataclass(frozen=True)
class CancelLeft:
    count: int
    line: int = 0

    def __str__(self):
        return f"cancel-left {self.count}"


@dataclass(frozen=True)
class CancelRight:
    count: int
    line: int = 0

    def __str__(self):
        return f"cancel-right {self.count}"


@dataclass(frozen=True)
class Symmetry:
    line: int = 0

    def __str__(self):
        return "symm"


@dataclass(frozen=True)
class Reflexivity:
    line: int = 0

    def __str__(self):
        return "refl"


ProofStep = Rewrite | CancelLeft | CancelRight | Symmetry | Reflexivity


@dataclass
class Claim:
    goal: Equation
    start: Word | None = None
    steps: list = field(default_factory=list)
    line: int = 0

    @property
    def name(self) -> str:
        return self.goal.name


@dataclass
class ProofScript:
    mode: str = "plain"
    constants: tuple[str, ...] = ()
    hypotheses: list = field(default_factory=list)
    claims: list = field(default_factory=list)
    name: str = ""

    def format(self) -> str:
        """Render back to ``.prf`` text."""
        lines = [f"mode {self.mode}"]
        if self.constants:
            lines.append("const " + " ".join(self.constants))
        lines += [f"hyp {h.name}: {h}" for h in self.hypotheses]
        for c in self.claims:
            lines.append(f"claim {c.name}: {c.goal}")
            if c.start is not None:
                lines.append(f"start {render(c.start)}")
            lines += [f"  {s}" for s in c.steps]
            lines.append("qed")
        return "\n".join(lines) + "\n"


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_RW = re.compile(
    r"rw\s+(?P<dir>\S+)\s+(?P<rule>\S+)\s+at\s+(?P<path>\S+)(?:\s+sub\s*\{(?P<sub>.*)\})?\s*$"
)


def _parse_name(text: str, line: int, col: int) -> str:
    if not _NAME.match(text):
        raise ProofSyntaxError(f"bad name {text!r}", line, col)
    return text


def _parse_count(arg: str, line: int, col: int) -> int:
    if not arg.isdigit() or int(arg) < 1:
        raise ProofSyntaxError(f"expected a positive count, found {arg!r}", line, col)
    return int(arg)


def parse_script(text: str, name: str = "") -> ProofScript:
    script = ProofScript(name=name)
    consts: set[str] = set()
    seen: set[str] = set()
    current: Claim | None = None
    mode_seen = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        word, _, rest = stripped.partition(" ")
        rest_col = indent + len(word) + 2 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if word == "mode":
            if mode_seen or script.hypotheses or script.claims or current is not None:
                raise ProofSyntaxError("mode must be declared once, before anything else", lineno, 1)
            if rest not in ("plain", "cancellative"):
                raise ProofSyntaxError(f"unknown mode {rest!r}", lineno, rest_col)
            script.mode = rest
            mode_seen = True
        elif word == "const":
            if current is not None:
                raise ProofSyntaxError("const inside a claim", lineno, 1)
            for c in rest.split():
                consts.add(_parse_name(c, lineno, rest_col))
            script.constants = tuple(sorted(consts))
        elif word in ("hyp", "claim"):
            if current is not None:
                raise ProofSyntaxError(f"{word} inside an open claim (missing qed)", lineno, 1)
            head, colon, body = rest.partition(":")
            if not colon:
                raise ProofSyntaxError(f"expected '{word} NAME: EQUATION'", lineno, rest_col)
            nm = _parse_name(head.strip(), lineno, rest_col)
            if nm in seen:
                raise ProofSyntaxError(f"duplicate name {nm!r}", lineno, rest_col)
            seen.add(nm)
            body_col = rest_col + len(head) + 1
            eq = parse_equation(body, nm, consts, lineno, body_col)
            if word == "hyp":
                script.hypotheses.append(eq)
            else:
                current = Claim(eq, line=lineno)
        elif word == "qed":
            if current is None:
                raise ProofSyntaxError("qed without an open claim", lineno, 1)
            script.claims.append(current)
            current = None
        else:
            if current is None:
                raise ProofSyntaxError(f"{word!r} outside a claim", lineno, indent + 1)
            if word == "start":
                if current.steps or current.start is not None:
                    raise ProofSyntaxError("start must come first in a claim", lineno, 1)
                current.start = parse_word(rest, consts, lineno, rest_col - 1)
            elif word == "rw":
                current.steps.append(_parse_rewrite(stripped, consts, lineno, indent))
            elif word == "cancel-left":
                current.steps.append(CancelLeft(_parse_count(rest, lineno, rest_col), lineno))
            elif word == "cancel-right":
                current.steps.append(CancelRight(_parse_count(rest, lineno, rest_col), lineno))
            elif word == "symm" and not rest:
                current.steps.append(Symmetry(lineno))
            elif word == "refl" and not rest:
                current.steps.append(Reflexivity(lineno))
            else:
                raise ProofSyntaxError(f"unknown directive {word!r}", lineno, indent + 1)
    if current is not None:
        raise ProofSyntaxError(f"claim {current.name!r} is missing qed", current.line, 1)
    return script


def _parse_rewrite(text: str, consts, line: int, indent: int) -> Rewrite:
    m = _RW.match(text)
    if not m:
        raise ProofSyntaxError("expected 'rw L2R|R2L RULE at PATH [sub {...}]'", line, indent + 1)
    if m.group("dir") not in ("L2R", "R2L"):
        raise ProofSyntaxError(f"direction must be L2R or R2L, found {m.group('dir')!r}", line, indent + m.start("dir") + 1)
    path_text = m.group("path")
    if not re.fullmatch(r"\d+(\.\d+)*", path_text):
        raise ProofSyntaxError(f"bad path {path_text!r}", line, indent + m.start("path") + 1)
    sub = []
    if m.group("sub") is not None:
        col = indent + m.start("sub") + 1
        for part in m.group("sub").split(";"):
            if not part.strip():
                col += len(part) + 1
                continue
            var, eq, word_text = part.partition("=")
            if not eq:
                raise ProofSyntaxError("substitution entries look like 'x = WORD'", line, col)
            var = var.strip()
            if not _NAME.match(var) or var in consts:
                raise ProofSyntaxError(f"cannot substitute for {var!r}", line, col)
            if any(v == var for v, _ in sub):
                raise ProofSyntaxError(f"variable {var!r} substituted twice", line, col)
            sub.append((var, parse_word(word_text, consts, line, col + len(part) - len(word_text))))
            col += len(part) + 1
    return Rewrite(
        m.group("rule"),
        m.group("dir"),
        tuple(int(i) for i in path_text.split(".")),
        tuple(sub),
        line,
    )
