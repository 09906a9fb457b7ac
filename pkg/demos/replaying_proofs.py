"""Replay the bundled equational proofs, then break one on purpose.

Each script lists explicit rewrite steps. The checker only follows them,
so a single wrong position or substitution is enough to reject a claim.
"""
import dataclasses

from semicomm.proofcheck import bundled_scripts, check_proof
from semicomm.proofcheck.models import audit_script

for name, script in bundled_scripts():
    report = check_proof(script)
    audit = audit_script(script, max_order=3, report=report)
    print(f"{name:18s} {len(report.proven)}/{len(script.claims)} claims, "
          f"{audit.models} finite models of order <= 3 agree")

name, script = bundled_scripts()[1]
claim = script.claims[0]
step = claim.steps[0]
bad = dataclasses.replace(step, path=(1,))
broken = dataclasses.replace(script, claims=[dataclasses.replace(claim, steps=[bad, *claim.steps[1:]]), *script.claims[1:]])
print(f"\n{name} with '{step}' changed to '{bad}':")
print(check_proof(broken).render())
