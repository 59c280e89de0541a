"""Symbolic construction and verification of the square-product identities.

Each identity is stored as a list of summands ``coefficient * prod(form^2)``
over a single variable ring holding both the coefficient symbols
(``a1..``, ``b1..``, ``c1..``) and the coordinates ``z1..``.  Nothing is
sampled: verification expands both sides completely.

Identity names used throughout:

``square_n1``, ``square_n2``, ``square_n3``
    the combinations of n-products of ``z_1^2..z_n^2, f_1^2..f_n^2`` for
    n = 1, 2, 3; the right-hand side is zero for n < 3 and
    ``6 * D_pair * z1 z2 z3 f1 f2 f3`` for n = 3.
``det_perm``
    the degree-9 relation between the 3x3 determinant, the pair-product
    determinant ``D_pair`` and the permanent-shaped factor.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from importlib import resources
from typing import Mapping, Sequence

from .algebra import Polynomial, VarSet, coeff_extract, parse_polynomial, substitute
from .linalg import bareiss_echelon, det_cofactor, permanent3

__all__ = [
    "Summand",
    "IdentityInstance",
    "CheckResult",
    "IDENTITY_NAMES",
    "coefficient_ring",
    "build_identity",
    "build_det_perm_identity",
    "get_identity",
    "verify_identity",
    "flip_sign",
    "restriction_check",
    "permanent_trace_check",
    "pair_determinant",
    "determinant3",
    "symbolic_det",
    "catalog",
    "load_catalog",
]

_ROWS = ("a", "b", "c")


def coefficient_ring(n: int) -> VarSet:
    """Variables a1..an, b1..bn, ... (n rows of n) followed by z1..zn."""
    names = [f"{_ROWS[i]}{j + 1}" for i in range(n) for j in range(n)]
    names += [f"z{j + 1}" for j in range(n)]
    return VarSet(tuple(names))


def _forms(vs: VarSet, n: int) -> dict:
    """Linear forms by label: z1..zn and f1..fn with f_i = row_i . z."""
    forms = {f"z{j + 1}": vs.var(f"z{j + 1}") for j in range(n)}
    for i in range(n):
        f = vs.zero()
        for j in range(n):
            f = f + vs.var(f"{_ROWS[i]}{j + 1}") * vs.var(f"z{j + 1}")
        forms[f"f{i + 1}"] = f
    return forms


@dataclass(frozen=True)
class Summand:
    coefficient: Polynomial
    factors: tuple  # labels of linear forms, each appearing squared

    def expand(self, forms: Mapping[str, Polynomial]) -> Polynomial:
        out = self.coefficient
        for label in self.factors:
            q = forms[label]
            out = out * q * q
        return out


@dataclass(frozen=True)
class IdentityInstance:
    """``sum(summands) == prod(rhs_factors)`` over ``varset``."""

    name: str
    varset: VarSet
    summands: tuple
    rhs_factors: tuple
    forms: Mapping[str, Polynomial] = field(compare=False, repr=False)

    @cached_property
    def expanded_summands(self) -> tuple:
        return tuple(s.expand(self.forms) for s in self.summands)

    @cached_property
    def lhs(self) -> Polynomial:
        total = self.varset.zero()
        for p in self.expanded_summands:
            total = total + p
        return total

    @cached_property
    def rhs(self) -> Polynomial:
        out = self.varset.one()
        for f in self.rhs_factors:
            out = out * f
        return out

    def precancellation_term_count(self) -> int:
        """Terms summed over the individually expanded summands."""
        return sum(len(p) for p in self.expanded_summands)

    def grouping(self) -> Counter:
        """Summand count keyed by how many f-forms each summand involves."""
        return Counter(sum(1 for lab in s.factors if lab.startswith("f")) for s in self.summands)

    def evaluate_residual(self, point: Mapping[str, object]):
        """lhs - rhs at a point, computed without expanding the products."""
        fvals = {lab: q.evaluate(point) for lab, q in self.forms.items()}
        total = 0
        for s in self.summands:
            term = s.coefficient.evaluate(point)
            for lab in s.factors:
                term *= fvals[lab] ** 2
            total += term
        rhs = 1
        for f in self.rhs_factors:
            rhs *= f.evaluate(point)
        return total - rhs


@dataclass(frozen=True)
class CheckResult:
    name: str
    holds: bool
    residual: Polynomial | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def symbolic_det(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix by Bareiss elimination.

    Every Bareiss division must be exact; otherwise
    :class:`~quadind.algebra.InexactDivision` propagates.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    work = [list(r) for r in rows]
    pivots, sign = bareiss_echelon(work, div=lambda a, b: a.exact_div(b))
    if len(pivots) < n:
        return rows[0][0].varset.zero()
    return work[-1][-1] * sign


def _row_vars(vs: VarSet, n: int = 3):
    return [[vs.var(f"{_ROWS[i]}{j + 1}") for j in range(n)] for i in range(n)]


def determinant3(vs: VarSet) -> Polynomial:
    """det of the coefficient matrix [[a1,a2,a3],[b1,b2,b3],[c1,c2,c3]] (cofactors)."""
    return det_cofactor(_row_vars(vs))


def pair_matrix_symbolic(vs: VarSet) -> list:
    a, b, c = _row_vars(vs)
    pairs = [(0, 1), (0, 2), (1, 2)]
    return [[row[j] * row[k] for row in (a, b, c)] for j, k in pairs]


def pair_determinant(vs: VarSet, method: str = "cofactor") -> Polynomial:
    rows = pair_matrix_symbolic(vs)
    if method == "cofactor":
        return det_cofactor(rows)
    if method == "bareiss":
        return symbolic_det(rows)
    raise ValueError(f"unknown method {method!r}")


def _summands(vs: VarSet, spec) -> tuple:
    out = []
    for coeff, factors in spec:
        if isinstance(coeff, str):
            coeff = parse_polynomial(coeff, vs)
        out.append(Summand(coeff, tuple(factors)))
    return tuple(out)


def _n2_spec(p: Sequence[str], q: Sequence[str], fp: str = "f1", fq: str = "f2"):
    """Summands of the n = 2 combination for rows p, q (variable names)."""
    p1, p2 = p
    q1, q2 = q
    d = f"({p1}*{q2} - {p2}*{q1})"
    return [
        (f"{d}^3", ("z1", "z2")),
        (f"-{q2}*{p1}^3", ("z1", fq)),
        (f"-{p1}*{q2}^3", ("z2", fp)),
        (f"{p2}*{q1}^3", ("z1", fp)),
        (f"{q1}*{p2}^3", ("z2", fq)),
        (d, (fp, fq)),
    ]


def _n1_spec(p1: str = "a1", fp: str = "f1"):
    return [(f"{p1}^3", ("z1",)), (f"-{p1}", (fp,))]


def _n3_spec(det3: Polynomial):
    return [
        (det3 ** 3, ("z1", "z2", "z3")),
        ("-c3*(a1*b2 - a2*b1)^3", ("z1", "z2", "f3")),
        ("c2*(a1*b3 - a3*b1)^3", ("z1", "z3", "f3")),
        ("-c1*(a2*b3 - a3*b2)^3", ("z2", "z3", "f3")),
        ("-b3*(a2*c1 - a1*c2)^3", ("z1", "z2", "f2")),
        ("b2*(a3*c1 - a1*c3)^3", ("z1", "z3", "f2")),
        ("-b1*(a3*c2 - a2*c3)^3", ("z2", "z3", "f2")),
        ("-a3*(b1*c2 - b2*c1)^3", ("z1", "z2", "f1")),
        ("a2*(b1*c3 - b3*c1)^3", ("z1", "z3", "f1")),
        ("-a1*(b2*c3 - b3*c2)^3", ("z2", "z3", "f1")),
        ("c1^3*(a2*b3 - a3*b2)", ("z1", "f1", "f2")),
        ("-c2^3*(a1*b3 - a3*b1)", ("z2", "f1", "f2")),
        ("c3^3*(a1*b2 - a2*b1)", ("z3", "f1", "f2")),
        ("-b1^3*(a2*c3 - a3*c2)", ("z1", "f1", "f3")),
        ("b2^3*(a1*c3 - a3*c1)", ("z2", "f1", "f3")),
        ("-b3^3*(a1*c2 - a2*c1)", ("z3", "f1", "f3")),
        ("a1^3*(b2*c3 - b3*c2)", ("z1", "f2", "f3")),
        ("-a2^3*(b1*c3 - b3*c1)", ("z2", "f2", "f3")),
        ("a3^3*(b1*c2 - b2*c1)", ("z3", "f2", "f3")),
        (-det3, ("f1", "f2", "f3")),
    ]


def build_identity(n: int) -> IdentityInstance:
    """The n-product combination for n in {1, 2, 3}."""
    if n not in (1, 2, 3):
        raise ValueError(f"no identity catalogued for n={n}")
    vs = coefficient_ring(n)
    forms = _forms(vs, n)
    if n == 1:
        spec = _n1_spec()
        rhs = (vs.zero(),)
    elif n == 2:
        spec = _n2_spec(("a1", "a2"), ("b1", "b2"))
        rhs = (vs.zero(),)
    else:
        spec = _n3_spec(determinant3(vs))
        z1z2z3 = vs.var("z1") * vs.var("z2") * vs.var("z3")
        rhs = (vs.const(6), pair_determinant(vs), z1z2z3, forms["f1"], forms["f2"], forms["f3"])
    return IdentityInstance(f"square_n{n}", vs, _summands(vs, spec), rhs, forms)


def build_det_perm_identity() -> IdentityInstance:
    """Determinant / pair-determinant / permanent relation (no z variables used)."""
    vs = coefficient_ring(3)
    det3 = determinant3(vs)
    dpair = pair_determinant(vs)
    perm_like = parse_polynomial(
        "a3*b2*c1 + a2*b3*c1 + a3*b1*c2 + a1*b3*c2 + a2*b1*c3 + a1*b2*c3", vs
    )
    sym6 = parse_polynomial(
        "a2*a3*b1*b3*c1*c2 + a1*a3*b2*b3*c1*c2 + a1*a3*b1*b2*c2*c3"
        " + a1*a2*b1*b3*c2*c3 + a2*a3*b1*b2*c1*c3 + a1*a2*b2*b3*c1*c3",
        vs,
    )
    spec = [
        ("2*a1*a2*a3*(b1*c2 - b2*c1)*(b3*c1 - b1*c3)*(b2*c3 - b3*c2)", ()),
        ("2*b1*b2*b3*(a2*c1 - a1*c2)*(a1*c3 - a3*c1)*(a3*c2 - a2*c3)", ()),
        ("2*c1*c2*c3*(a1*b2 - a2*b1)*(a3*b1 - a1*b3)*(a2*b3 - a3*b2)", ()),
        (-(perm_like * dpair), ()),
        (-(sym6 * det3), ()),
    ]
    return IdentityInstance("det_perm", vs, _summands(vs, spec), (vs.zero(),), _forms(vs, 3))


IDENTITY_NAMES = ("square_n1", "square_n2", "square_n3", "det_perm")


def get_identity(name: str) -> IdentityInstance:
    if name == "det_perm":
        return build_det_perm_identity()
    if name.startswith("square_n") and name[8:].isdigit():
        return build_identity(int(name[8:]))
    raise ValueError(f"unknown identity {name!r}; choose from {IDENTITY_NAMES}")


def flip_sign(inst: IdentityInstance, index: int) -> IdentityInstance:
    """Copy of ``inst`` with summand ``index`` negated (a mutation control)."""
    summands = list(inst.summands)
    s = summands[index]
    summands[index] = Summand(-s.coefficient, s.factors)
    return replace(inst, name=f"{inst.name}_flip{index}", summands=tuple(summands))


def verify_identity(inst: IdentityInstance) -> CheckResult:
    residual = inst.lhs - inst.rhs
    return CheckResult(
        inst.name,
        residual.is_zero(),
        None if residual.is_zero() else residual,
        {"lhs_terms": len(inst.lhs), "precancellation_terms": inst.precancellation_term_count()},
    )


# -- restriction argument ---------------------------------------------------


def _linear_coefficients(
    restricted: Sequence[Polynomial], var: str, targets: Sequence[Polynomial], scale: Polynomial
):
    """Match the ``var``-coefficients of restricted summands against ``scale * targets``.

    Returns the signs s in (1, -1) for which the nonzero coefficients equal
    ``s * scale * t`` as a multiset over targets; both signs match when the
    targets are closed under negation.
    """
    coeffs = Counter(c for c in (coeff_extract(p, {var: 1}) for p in restricted) if c)
    return [s for s in (1, -1) if coeffs == Counter(scale * t * s for t in targets)]


def _restriction(
    outer: IdentityInstance,
    zero_var: str,
    linear_vars: Sequence[str],
    roles: Mapping[str, tuple],
) -> dict:
    vs = outer.varset
    restricted = [substitute(p, {zero_var: 0}) for p in outer.expanded_summands]
    total = vs.zero()
    for p in restricted:
        total = total + p
    linear_ids = [vs.index(v) for v in linear_vars]
    is_linear = all(
        sum(e[i] for i in linear_ids) == 1 for p in restricted for e in p.terms
    )
    report = {"restriction_zero": total.is_zero(), "linear_in": list(linear_vars), "is_linear": is_linear}
    for var, (inner_spec, scale_label) in roles.items():
        inner_forms = {lab: substitute(q, {zero_var: 0}) for lab, q in outer.forms.items()}
        inner = _summands(vs, inner_spec)
        targets = [s.expand(inner_forms) for s in inner]
        inner_lhs = vs.zero()
        for t in targets:
            inner_lhs = inner_lhs + t
        scale = inner_forms[scale_label] ** 2
        coeff_total = coeff_extract(total, {var: 1})
        sign = _linear_coefficients(restricted, var, targets, scale)
        report[var] = {
            "coefficient_equals_scaled_inner": coeff_total == scale * inner_lhs,
            "inner_lhs_zero": inner_lhs.is_zero(),
            "summandwise_signs": sign,
        }
    report["holds"] = (
        report["restriction_zero"]
        and is_linear
        and all(report[v]["coefficient_equals_scaled_inner"] and report[v]["summandwise_signs"] for v in roles)
    )
    return report


def restriction_check() -> CheckResult:
    """Setting the last coordinate to zero reduces n = 3 to n = 2, and n = 2 to n = 1.

    With ``z3 = 0`` the n = 3 left side is linear in ``a3, b3, c3``; each of
    those coefficients is, summand by summand, ``+-(row . z)^2`` times the
    n = 2 left side built from the other two rows.  The same holds one level
    down with ``z2 = 0``.
    """
    outer3 = build_identity(3)
    three = _restriction(
        outer3,
        "z3",
        ("a3", "b3", "c3"),
        {
            "c3": (_n2_spec(("a1", "a2"), ("b1", "b2"), "f1", "f2"), "f3"),
            "b3": (_n2_spec(("a1", "a2"), ("c1", "c2"), "f1", "f3"), "f2"),
            "a3": (_n2_spec(("b1", "b2"), ("c1", "c2"), "f2", "f3"), "f1"),
        },
    )
    outer2 = build_identity(2)
    two = _restriction(
        outer2,
        "z2",
        ("a2", "b2"),
        {
            "b2": (_n1_spec("a1", "f1"), "f2"),
            "a2": (_n1_spec("b1", "f2"), "f1"),
        },
    )
    return CheckResult("restriction", three["holds"] and two["holds"], None, {"n3_z3": three, "n2_z2": two})


# -- determinant / permanent ------------------------------------------------


def permanent_trace_check() -> CheckResult:
    """The z1^2 z2^2 z3^2 coefficient of the n = 3 left side is 6 * D_pair * perm."""
    inst = build_identity(3)
    vs = inst.varset
    traced = coeff_extract(inst.lhs, {"z1": 2, "z2": 2, "z3": 2})
    dpair = pair_determinant(vs, method="bareiss")
    perm = permanent3(_row_vars(vs))
    expected = dpair * perm * 6
    det_perm = verify_identity(build_det_perm_identity())
    ok = traced == expected and det_perm.holds
    residual = None if traced == expected else traced - expected
    specializations = {}
    for label, point in _SPECIALIZATIONS.items():
        specializations[label] = {
            "traced": traced.evaluate(point),
            "expected": expected.evaluate(point),
            "pair_det": dpair.evaluate(point),
        }
    return CheckResult(
        "permanent_trace",
        ok,
        residual,
        {
            "traced_terms": len(traced),
            "det_perm_holds": det_perm.holds,
            "specializations": specializations,
        },
    )


def _point(rows, z=(1, 1, 1)):
    pt = {f"{_ROWS[i]}{j + 1}": rows[i][j] for i in range(3) for j in range(3)}
    pt.update({f"z{j + 1}": z[j] for j in range(3)})
    return pt


_SPECIALIZATIONS = {
    "identity": _point([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    "worked_example": _point([[1, 1, 1], [1, 2, 3], [5, 8, 10]]),
}


# -- catalog ---------------------------------------------------------------


def catalog() -> dict:
    """Machine-readable description of every identity, in canonical text."""
    entries = []
    for name in IDENTITY_NAMES:
        inst = get_identity(name)
        entries.append(
            {
                "name": inst.name,
                "variables": list(inst.varset.names),
                "forms": {lab: str(q) for lab, q in inst.forms.items()},
                "summands": [
                    {"coefficient": str(s.coefficient), "factors": list(s.factors)} for s in inst.summands
                ],
                "rhs_factors": [str(f) for f in inst.rhs_factors],
                "lhs": str(inst.lhs),
                "rhs": str(inst.rhs),
            }
        )
    return {"schema": 1, "identities": entries}


def catalog_json() -> str:
    return json.dumps(catalog(), indent=1, sort_keys=True) + "\n"


def load_catalog() -> dict:
    """The shipped catalog file."""
    text = resources.files("quadind").joinpath("data/identities.json").read_text()
    return json.loads(text)


def instance_from_catalog(entry: Mapping) -> IdentityInstance:
    vs = VarSet(tuple(entry["variables"]))
    forms = {lab: parse_polynomial(t, vs) for lab, t in entry["forms"].items()}
    summands = tuple(
        Summand(parse_polynomial(s["coefficient"], vs), tuple(s["factors"])) for s in entry["summands"]
    )
    rhs = tuple(parse_polynomial(t, vs) for t in entry["rhs_factors"])
    return IdentityInstance(entry["name"], vs, summands, rhs, forms)
