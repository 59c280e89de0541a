"""Linear independence of squared linear forms and their k-products.

A system of linear forms in normal form is ``z_1..z_r`` plus ``m`` further
forms ``f_i = sum_j A[i][j] z_j``.  Its base set is the ``r + m`` squares
``z_j^2, f_i^2``; the k-product set takes one product per k-subset of those
squares.

The squares are independent exactly when the pair matrix (one row per pair
``j < k``, entry ``A[i][j]*A[i][k]`` in column ``i``) has full column rank.
:func:`generic_independent` decides independence of any polynomial list by
brute force and serves as the oracle for everything else here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .algebra import Polynomial, Rational, VarSet, as_rational, product
from .linalg import RationalMatrix, kernel, normalize_integer_vector, rank

__all__ = [
    "LinearFormSystem",
    "IndependenceReport",
    "TwoFormClassification",
    "normalize",
    "pair_matrix",
    "pair_indices",
    "s1_polynomials",
    "s1_independent",
    "classify_two_forms",
    "k_products",
    "generic_independent",
    "sk_independent",
    "witness_annihilates",
]

INDEPENDENT = "independent"
DEPENDENT = "dependent"


@dataclass(frozen=True)
class LinearFormSystem:
    """Normal-form data: ``r`` coordinates and an ``m x r`` coefficient table."""

    r: int
    m: int
    A: tuple

    def __init__(self, r: int, m: int, A: Sequence[Sequence] = ()):
        rows = tuple(tuple(as_rational(x) for x in row) for row in A)
        if r < 1:
            raise ValueError("r must be at least 1")
        if m < 0:
            raise ValueError("m must be non-negative")
        if len(rows) != m or any(len(row) != r for row in rows):
            raise ValueError(f"A must be {m}x{r}, got {[len(row) for row in rows]}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "A", rows)

    @classmethod
    def from_rows(cls, A: Sequence[Sequence]) -> "LinearFormSystem":
        A = [list(row) for row in A]
        if not A:
            raise ValueError("need at least one row (or pass r explicitly)")
        return cls(len(A[0]), len(A), A)

    @property
    def l(self) -> int:  # noqa: E743
        return self.r + self.m

    def varset(self) -> VarSet:
        return VarSet(tuple(f"z{j + 1}" for j in range(self.r)))

    def linear_forms(self, vs: VarSet | None = None) -> list:
        """The polynomials z_1..z_r, f_1..f_m."""
        vs = vs or self.varset()
        z = [vs.var(f"z{j + 1}") for j in range(self.r)]
        fs = []
        for row in self.A:
            f = vs.zero()
            for a, zj in zip(row, z):
                if a:
                    f = f + zj * a
            fs.append(f)
        return z + fs


@dataclass(frozen=True)
class IndependenceReport:
    verdict: str
    rank: int
    witness: tuple | None = None

    def __post_init__(self):
        if self.verdict not in (INDEPENDENT, DEPENDENT):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if (self.witness is not None) != (self.verdict == DEPENDENT):
            raise ValueError("a witness is present exactly when the verdict is dependent")

    @property
    def independent(self) -> bool:
        return self.verdict == INDEPENDENT


@dataclass(frozen=True)
class TwoFormClassification:
    """Structural reason for (in)dependence of a system with m <= 2.

    ``case`` is one of ``independent``, ``condA`` (two elements of the base set
    are proportional), ``condB`` (both f's supported on coordinates M, N) or
    ``rankDefect`` (dependent for no structural reason; never expected for m=2).
    """

    case: str
    detail: tuple | None = None

    @property
    def dependent(self) -> bool:
        return self.case != INDEPENDENT


def normalize(forms) -> tuple:
    """Reduce a list of linear forms (rows of coefficients) to normal form.

    The lexicographically first maximal independent set of rows becomes the
    new coordinate basis.  Returns ``(system, basis_rows, order)`` where
    ``basis_rows`` is the invertible ``r x r`` change of basis expressed in the
    original coordinates restricted to the row space (the chosen rows
    themselves) and ``order`` lists the original row indices as basis rows
    first, then the remaining rows in their input order.
    """
    m = forms if isinstance(forms, RationalMatrix) else RationalMatrix(forms)
    chosen = []
    current_rank = 0
    for i in range(m.nrows):
        trial = chosen + [i]
        rk = rank([m.rows[k] for k in trial])
        if rk > current_rank:
            chosen = trial
            current_rank = rk
    if not chosen:
        raise ValueError("all linear forms are zero")
    rest = [i for i in range(m.nrows) if i not in chosen]
    basis = [m.rows[i] for i in chosen]
    r = len(chosen)
    coeffs = []
    for i in rest:
        # solve sum_j x_j * basis_j = row_i; the kernel of [basis^T | -row_i]
        aug = RationalMatrix([[basis[j][c] for j in range(r)] + [-m.rows[i][c]] for c in range(m.ncols)])
        ker = kernel(aug)
        sol = next(v for v in ker if v[-1])
        coeffs.append([as_rational(Fraction(x, sol[-1])) for x in sol[:-1]])
    system = LinearFormSystem(r, len(rest), coeffs)
    return system, RationalMatrix(basis), tuple(chosen + rest)


def pair_indices(r: int) -> list:
    """Pairs (j, k), j < k, 0-based, in the row order of the pair matrix."""
    return list(combinations(range(r), 2))


def pair_matrix(sys: LinearFormSystem) -> RationalMatrix:
    if sys.r < 2:
        raise ValueError("the pair matrix needs r >= 2")
    if sys.m < 1:
        raise ValueError("the pair matrix needs m >= 1")
    return RationalMatrix(
        [[row[j] * row[k] for row in sys.A] for j, k in pair_indices(sys.r)]
    )


def s1_polynomials(sys: LinearFormSystem, vs: VarSet | None = None) -> list:
    return [q * q for q in sys.linear_forms(vs)]


def witness_annihilates(polys: Sequence[Polynomial], witness: Sequence[Rational]) -> bool:
    """True when the combination sum(w_i p_i) expands to the zero polynomial."""
    if len(polys) != len(witness) or not any(witness):
        return False
    total = polys[0].varset.zero()
    for w, p in zip(witness, polys):
        if w:
            total = total + p * w
    return total.is_zero()


def s1_independent(sys: LinearFormSystem) -> IndependenceReport:
    """Rank criterion on the pair matrix, with a constructive witness.

    Outside r >= 2, m >= 1 the decision falls back to brute force.
    """
    if sys.r < 2 or sys.m < 1:
        return generic_independent(s1_polynomials(sys))
    pm = pair_matrix(sys)
    rk = rank(pm)
    if rk == sys.m:
        return IndependenceReport(INDEPENDENT, sys.r + sys.m)
    mu = kernel(pm)[0]
    lam = [-sum(mu[i] * sys.A[i][j] ** 2 for i in range(sys.m)) for j in range(sys.r)]
    return IndependenceReport(DEPENDENT, sys.r + rk, tuple(as_rational(x) for x in lam) + tuple(mu))


def _support(row) -> frozenset:
    return frozenset(j for j, a in enumerate(row) if a)


def classify_two_forms(sys: LinearFormSystem) -> TwoFormClassification:
    if sys.m not in (1, 2):
        raise ValueError("classification is defined for m in {1, 2}")
    if sys.r < 2:
        raise ValueError("classification needs r >= 2")
    verdict = s1_independent(sys)
    if sys.m == 1:
        return TwoFormClassification(INDEPENDENT if verdict.independent else "rankDefect")

    f1, f2 = sys.A
    s1, s2 = _support(f1), _support(f2)
    # condA: some f_i^2 proportional to a z_j^2 (or zero), or f1 parallel to f2
    if len(s1) <= 1:
        cls = TwoFormClassification("condA", ("f1", f"z{min(s1) + 1}" if s1 else "0"))
    elif len(s2) <= 1:
        cls = TwoFormClassification("condA", ("f2", f"z{min(s2) + 1}" if s2 else "0"))
    elif rank([f1, f2]) < 2:
        cls = TwoFormClassification("condA", ("f1", "f2"))
    elif len(s1 | s2) == 2:
        M, N = sorted(s1 | s2)
        cls = TwoFormClassification("condB", (M + 1, N + 1))
    elif verdict.independent:
        cls = TwoFormClassification(INDEPENDENT)
    else:
        cls = TwoFormClassification("rankDefect")
    if cls.dependent == verdict.independent:
        raise AssertionError(f"classifier disagrees with the rank criterion on {sys}")
    return cls


def k_products(polys: Sequence[Polynomial], k: int) -> list:
    """One product per k-subset of indices, subsets in lexicographic order."""
    polys = list(polys)
    if not 1 <= k <= len(polys):
        raise ValueError(f"k={k} out of range for {len(polys)} polynomials")
    if k == 1:
        return polys
    return [product(polys[i] for i in idx) for idx in combinations(range(len(polys)), k)]


def generic_independent(polys: Sequence[Polynomial]) -> IndependenceReport:
    """Brute-force decision from the coefficient matrix over all monomials."""
    polys = list(polys)
    if not polys:
        raise ValueError("empty polynomial list")
    vs = polys[0].varset
    if any(p.varset != vs for p in polys):
        raise ValueError("polynomials use different variable lists")
    monos = sorted({e for p in polys for e in p.terms}, reverse=True)
    n = len(polys)
    if not monos:
        # every polynomial is zero
        return IndependenceReport(DEPENDENT, 0, normalize_integer_vector([1] + [0] * (n - 1)))
    # rows = monomials, columns = polynomials, so the kernel gives the combination
    rows = []
    for e in monos:
        row = [p.coefficient(e) for p in polys]
        rows.append(row)
    mat = RationalMatrix(rows)
    ker = kernel(mat)
    rk = n - len(ker)
    if not ker:
        return IndependenceReport(INDEPENDENT, rk)
    return IndependenceReport(DEPENDENT, rk, ker[0])


def sk_independent(sys: LinearFormSystem, k: int) -> IndependenceReport:
    if not 1 <= k <= sys.l:
        raise ValueError(f"k={k} out of range 1..{sys.l}")
    prods = k_products(s1_polynomials(sys), k)
    assert len(prods) == comb(sys.l, k)
    return generic_independent(prods)


def coefficient_rank(polys: Sequence[Polynomial]) -> int:
    """Rank of the coefficient matrix (polynomials as rows)."""
    monos = sorted({e for p in polys for e in p.terms})
    if not monos:
        return 0
    rows = [[p.coefficient(e) for e in monos] for p in polys]
    return rank(rows)

