"""Coefficient tracing on the triple-product dependency, case by case.

Each system collects the coefficients of a few chosen monomials in the
unknown weights a_ijk of the products q_i^2 q_j^2 q_k^2.  A nonzero
determinant forces the weights in that system to vanish.
"""

from quadind.tracing import CASES, case4_solution_check, golden_determinants, trace_system

for row in golden_determinants():
    case = row["case"]
    spec = CASES[case]
    tag = "ok" if row["matches"] else "MISMATCH"
    print(f"{case:4} {row['size']}x{row['size']} [{spec.description}]")
    print(f"     det = {row['determinant'][:90]}{'...' if len(row['determinant']) > 90 else ''}")
    if not row["matches"]:
        print(f"     recorded closed form: {row['expected']}")
    print(f"     {tag} ({row['source']})")

system = trace_system("C2d")
print("\nthe smallest system, row by row:")
for entry in system.rows_as_text():
    print(f"  {entry['monomial']:>14}: {entry['row']}")

out = case4_solution_check()
print("\nclosed-form solutions with a456 on the right:")
for case, flags in out["systems"].items():
    print(f"  {case}: {flags}")
for c in out["conflicts"]:
    print(f"  {c['unknown']} gets two values differing by {c['difference']} -> a456 = 0")
print(f"all {len(out['forced_zero'])} remaining weights vanish: {out['holds']}")
