"""The ten acceptance criteria, one test each.

Every test records a one-line verdict through ``acceptance_report``; the
lines are printed together at the end of the pytest run.
"""
import dataclasses
import random
import time

import numpy as np
import pytest

from semicomm import census
from semicomm.classify import check_basic, is_cancellative
from semicomm.construct import clifford_chains, heisenberg_mod, symmetric_group
from semicomm.decompose import audit_prop_1_2, decompose_semilattice
from semicomm.proofcheck import (
    BUNDLED,
    Equation,
    GApp,
    StepFailure,
    Var,
    apply_rewrite,
    bundled_scripts,
    check_proof,
)
from semicomm.proofcheck.models import audit_script
from semicomm.proofcheck.parser import Rewrite
from semicomm.proofcheck.prover9 import emit_prover9, strip_comments
from semicomm.table import CayleyTable
from semicomm.verify import (
    HOLDS,
    NEVER,
    audit_counterexample,
    audit_theorem,
    check_g_axioms,
    instantiate_g_from_powers,
    search_g_maps,
)
from semicomm.classify import powers_commute
from semicomm.construct import TriElement

from . import oracles

pytestmark = pytest.mark.acceptance


def _flat(arr):
    return sorted(tuple(int(v) for v in t.ravel()) for t in arr)


def test_criterion_01_enumeration_counts(acceptance_report):
    t0 = time.perf_counter()
    counts = [len(census.enumerate_array(n)) for n in range(1, 5)]
    elapsed = time.perf_counter() - t0
    naive_ok = all(_flat(census.enumerate_array(n)) == sorted(oracles.all_associative(n)) for n in (1, 2, 3))
    prefix = (0, 0, 0, 0, 0, 1, 2, 3)
    slice_ok = _flat(census.enumerate_array(4, prefix)) == oracles.slice_associative(4, prefix)
    iso = [census.count_semigroups(n, up_to_iso=True) for n in range(1, 5)]
    passed = counts == [1, 8, 113, 3492] and naive_ok and slice_ok and iso == [1, 5, 24, 188] and elapsed < 60
    acceptance_report(1, passed, f"counts {counts}, up to iso {iso}, naive oracle n<=3 {naive_ok}, "
                                 f"order-4 slice {slice_ok}, {elapsed:.1f}s")
    assert passed


def test_criterion_02_main1(acceptance_report):
    t0 = time.perf_counter()
    results = {pq: audit_theorem("main1", 4, p=pq[0], q=pq[1]) for pq in [(2, 3), (2, 5), (3, 4), (3, 5)]}
    elapsed = time.perf_counter() - t0
    bad = sum(len(r.violations) for r in results.values())
    passed = bad == 0 and all(r.models_checked == 3614 for r in results.values()) and elapsed < 300
    hyp = {f"{p},{q}": r.hypothesis_count for (p, q), r in results.items()}
    acceptance_report(2, passed, f"violations {bad} over 3614 tables x 4 pairs, hypothesis hits {hyp}, {elapsed:.1f}s")
    assert passed


def test_criterion_03_main2(acceptance_report):
    a = audit_theorem("main2_part1", 4, bound=8)
    b = audit_theorem("main2_part2", 5, bound=8)
    passed = a.verdict == HOLDS and b.verdict == HOLDS
    acceptance_report(3, passed, f"part 1: {len(a.violations)} violations in {a.hypothesis_count} separative "
                                 f"models; part 2: {len(b.violations)} violations in {b.hypothesis_count} "
                                 f"inverse models up to order 5 ({b.models_checked} tables checked)")
    assert passed


def test_criterion_04_main3_and_lemmas(acceptance_report):
    chains = list(clifford_chains(8, 3))
    runs = {
        "main3_part1": audit_theorem("main3_part1", 4),
        "main3_part2": audit_theorem("main3_part2", 4, extra_models=chains),
        "lemma31_k2": audit_theorem("lemma31", 4, k=2),
        "lemma31_k3": audit_theorem("lemma31", 4, k=3),
        "lemma41": audit_theorem("lemma41", 4, extra_models=[heisenberg_mod(3)]),
    }
    passed = all(r.verdict == HOLDS for r in runs.values())
    detail = ", ".join(f"{k} {r.verdict} ({r.hypothesis_count} models)" for k, r in runs.items())
    acceptance_report(4, passed, f"{detail}; {len(chains)} extra Clifford tables")
    assert passed


def test_criterion_05_g_maps(acceptance_report):
    t0 = time.perf_counter()
    checked = failures = 0
    for n in range(1, 5):
        arr = census.all_tables(n)
        for t in arr[census.filter_mask(arr, "cancellative")]:
            S = CayleyTable(t)
            if powers_commute(S, 2) and powers_commute(S, 3):
                checked += 1
                failures += not check_g_axioms(S, instantiate_g_from_powers(S, 2, 3)).all()
    s3_maps = search_g_maps(symmetric_group(3))
    elapsed = time.perf_counter() - t0
    passed = failures == 0 and checked > 0 and s3_maps == [] and elapsed < 10
    acceptance_report(5, passed, f"{checked} cancellative tables certified, {failures} failures; "
                                 f"S3: {len(s3_maps)} of 46656 maps satisfy all axioms; {elapsed:.1f}s")
    assert passed


def test_criterion_06_counterexamples(acceptance_report):
    codes = {ex: audit_counterexample(ex) for ex in ("ex22", "ex32", "ex33", "ex43", "ex42")}
    confirmed = all(codes[ex].exit_code == 0 for ex in ("ex22", "ex32", "ex33", "ex43"))
    r42 = codes["ex42"]
    witness = (TriElement(1, 1), TriElement(1, 2), TriElement(21, 8), TriElement(31, 8))
    passed = confirmed and r42.verdict == NEVER and r42.exit_code == 3 and r42.hypothesis_witness == witness
    acceptance_report(6, passed, "exit codes " + ", ".join(f"{ex}={r.exit_code}" for ex, r in codes.items())
                      + f"; ex42 witness {r42.hypothesis_witness}")
    assert passed


# proof replay fuzz


def _rule_table(script, upto_claim: int) -> dict:
    rules = {h.name: h for h in script.hypotheses}
    report = check_proof(script)
    for c in report.claims[:upto_claim]:
        if c.ok:
            rules[c.name] = c.goal
    return rules


def _state_before(script, ci: int, si: int) -> Equation:
    claim = script.claims[ci]
    if si == 0:
        start = claim.start if claim.start is not None else claim.goal.lhs
        return Equation(start, start)
    return check_proof(script).claims[ci].steps[si - 1].state


_REPLACEMENTS = [(Var("x"),), (Var("y"),), (Var("x"), Var("y")), (GApp((Var("x"),)),), (Var("y"), Var("x"))]


def _corrupt(step: Rewrite, rule: Equation, rng: random.Random) -> Rewrite:
    kind = rng.choice(["path", "direction", "sub"])
    if kind == "direction":
        return dataclasses.replace(step, direction="R2L" if step.direction == "L2R" else "L2R")
    if kind == "path":
        path = list(step.path)
        if rng.random() < 0.2:
            path.insert(0, rng.randrange(4))
        else:
            path[-1] = max(0, path[-1] + rng.choice([-2, -1, 1, 2, 3]))
        return dataclasses.replace(step, path=tuple(path))
    sub = dict(step.sub)
    var = rng.choice(sorted({v for side in (rule.lhs, rule.rhs) for a in side for v in _vars(a)} | {"w"}))
    sub[var] = rng.choice(_REPLACEMENTS)
    return dataclasses.replace(step, sub=tuple(sorted(sub.items())))


def _vars(atom):
    if isinstance(atom, Var):
        return {atom.name}
    return {v for a in getattr(atom, "arg", ()) for v in _vars(a)}


def _apply(eq, step, rules):
    try:
        return apply_rewrite(eq.rhs, rules[step.rule], step.direction, step.path, dict(step.sub))
    except StepFailure:
        return None


def test_criterion_07_replay_and_fuzz(acceptance_report):
    scripts = bundled_scripts()
    reports = [check_proof(s) for _, s in scripts]
    all_ok = all(r.ok and r.failed_steps == 0 for r in reports) and len(scripts) == len(BUNDLED)

    sites = [
        (k, ci, si)
        for k, (_, s) in enumerate(scripts)
        for ci, c in enumerate(s.claims)
        for si, st in enumerate(c.steps)
        if isinstance(st, Rewrite)
    ]
    rng = random.Random(20240501)
    effective = rejected = skipped = 0
    while effective < 150:
        k, ci, si = rng.choice(sites)
        script = scripts[k][1]
        claim = script.claims[ci]
        step = claim.steps[si]
        rules = _rule_table(script, ci)
        bad = _corrupt(step, rules[step.rule], rng)
        state = _state_before(script, ci, si)
        if _apply(state, bad, rules) == _apply(state, step, rules):
            skipped += 1  # the corruption does not change what the step does
            continue
        effective += 1
        steps = list(claim.steps)
        steps[si] = bad
        claims = list(script.claims)
        claims[ci] = dataclasses.replace(claim, steps=steps)
        rejected += not check_proof(dataclasses.replace(script, claims=claims)).claims[ci].ok
    passed = all_ok and rejected == effective >= 100
    acceptance_report(7, passed, f"{len(scripts)} scripts verify, {sum(len(r.claims) for r in reports)} claims; "
                                 f"fuzz rejected {rejected}/{effective} corruptions ({skipped} no-ops skipped)")
    assert passed


def test_criterion_08_soundness(acceptance_report):
    audits = [audit_script(s, max_order=4) for _, s in bundled_scripts()]
    bad = sum(len(a.discrepancies) for a in audits)
    passed = bad == 0 and all(a.models > 0 for a in audits)
    detail = ", ".join(f"{a.script} {a.models}" for a in audits)
    acceptance_report(8, passed, f"{bad} discrepancies; models per script: {detail}")
    assert passed


REFERENCE_BLOCK = [
    "(x * y) * z = x * (y * z).",
    "e * x = x. x * e = x.",
    "x' * x = e. x * x' = e.",
    "",
    "(x * x) * (y * y) = (y * y) * (x * x).",
    "",
    "(x * (x * x)) * (y * (y * y)) = (y * (y * y)) * (x * (x * x)).",
]


def test_criterion_09_emitter(acceptance_report):
    lines = strip_comments(emit_prover9(2, 3, "group"))
    passed = lines[: len(REFERENCE_BLOCK)] == REFERENCE_BLOCK and lines[-1] == "x * y = y * x."
    acceptance_report(9, passed, f"{len(REFERENCE_BLOCK)} axiom/hypothesis lines and goal byte-identical")
    assert passed


def test_criterion_10_decomposition(acceptance_report):
    separative = bad = agree = total = 0
    for n in range(1, 5):
        for t in census.all_tables(n):
            S = CayleyTable(t)
            total += 1
            audit = audit_prop_1_2(S)
            agree += audit.agree
            if not check_basic(S).separative:
                continue
            separative += 1
            dec = decompose_semilattice(S)
            M = dec.meet_table.table
            lattice = np.array_equal(M, M.T) and all(M[i, i] == i for i in range(len(M)))
            bad += not (lattice and all(is_cancellative(C) for C in dec.component_tables))
    passed = bad == 0 and agree == total
    acceptance_report(10, passed, f"{separative} separative tables, {bad} bad decompositions; "
                                  f"separative-vs-components agreement {agree}/{total} = {100 * agree / total:.1f}%")
    assert passed
