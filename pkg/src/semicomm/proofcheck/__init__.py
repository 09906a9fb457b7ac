"""Equational proof replay: terms, the ``.prf`` parser, the checker and emitters."""
from .checker import (
    BUNDLED,
    ClaimReport,
    ProofReport,
    StepFailure,
    apply_cancel,
    apply_rewrite,
    bundled_scripts,
    bundled_text,
    check_proof,
)
from .parser import ProofScript, ProofSyntaxError, parse_equation, parse_script, parse_word
from .terms import Const, Equation, GApp, Inv, Var, render

__all__ = [
    "BUNDLED",
    "ClaimReport",
    "Const",
    "Equation",
    "GApp",
    "Inv",
    "ProofReport",
    "ProofScript",
    "ProofSyntaxError",
    "StepFailure",
    "Var",
    "apply_cancel",
    "apply_rewrite",
    "bundled_scripts",
    "bundled_text",
    "check_proof",
    "parse_equation",
    "parse_script",
    "parse_word",
    "render",
]
