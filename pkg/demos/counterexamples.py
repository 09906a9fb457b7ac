"""Re-check the counterexamples that show the hypotheses cannot be dropped."""
from semicomm.verify import EXAMPLES, audit_counterexample

for ex in sorted(EXAMPLES):
    res = audit_counterexample(ex)
    print(f"{ex}: {res.verdict}")
    for name, ok, detail in res.checks:
        mark = "ok " if ok else "no "
        print(f"   {mark} {name}" + (f"  [{detail}]" if detail else ""))
    if res.hypothesis_witness is not None:
        x, y, lhs, rhs = res.hypothesis_witness
        print(f"   x={x} y={y}: (xy)^3={lhs} but x^3 y^3={rhs}")
