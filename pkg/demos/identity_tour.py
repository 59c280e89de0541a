"""Polynomial identities built from squared linear forms, checked by full expansion."""

import time

from quadind.identities import (
    build_identity,
    flip_sign,
    get_identity,
    permanent_trace_check,
    restriction_check,
    verify_identity,
)

for n in (1, 2, 3):
    t0 = time.perf_counter()
    inst = build_identity(n)
    res = verify_identity(inst)
    print(
        f"n={n}: {len(inst.summands)} summands over {len(inst.varset)} variables, "
        f"{inst.precancellation_term_count()} terms before cancellation, "
        f"holds={res.holds} ({time.perf_counter() - t0:.3f}s)"
    )

inst = build_identity(3)
print(f"\nright-hand side: constant {inst.rhs_factors[0]} times {len(inst.rhs_factors) - 1} more factors")
print(f"summands grouped by how many f's they square: {dict(sorted(inst.grouping().items()))}")

bad = verify_identity(flip_sign(inst, 5))
print(f"\nflip one sign: holds={bad.holds}, residual has {len(bad.residual)} terms")

res = restriction_check()
print("\nsetting z3 = 0 leaves a form linear in a3, b3, c3; each coefficient is")
for var in ("a3", "b3", "c3"):
    signs = res.details["n3_z3"][var]["summandwise_signs"]
    print(f"  {var}: {'+' if signs == [1] else '-'}(square of the remaining form) x (n=2 left side)")
print(f"restriction check holds: {res.holds}")

trace = permanent_trace_check()
print(f"\ncoefficient of z1^2 z2^2 z3^2 equals 6 * pair-determinant * permanent: {trace.holds}")
print(f"determinant/permanent identity: {verify_identity(get_identity('det_perm')).holds}")
for label, vals in trace.details["specializations"].items():
    print(f"  at {label}: traced {vals['traced']}, pair determinant {vals['pair_det']}")
