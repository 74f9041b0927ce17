"""
Seven mechanisms and the instances that hurt them
=================================================

Each mechanism looks at one number per agent (a median, a midpoint, or which
end of the line the agent prefers) and turns those numbers into a location
or a lottery. The registry below holds instances on which each guarantee is
met with equality.
"""

from satloc import MECHANISMS, ratio, run_mechanism, tight_registry
from satloc.ratios import format_instance

for mid, desc in MECHANISMS.items():
    print(f"{mid}  {desc.name:<40} {desc.setting:<10} {'/'.join(desc.variants):<8} ratio <= {desc.proven_ratio}")

print()
for case in tight_registry():
    outcome = run_mechanism(case.mechanism_id, case.instance)
    got = ratio(case.mechanism_id, case.instance, case.objective)
    print(f"{case.mechanism_id}/{case.objective}  {format_instance(case.instance):<36} -> {outcome}, ratio {got}")
    print(f"      {case.anchor}")
