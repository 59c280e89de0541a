"""Seeded instance generators and sweeps of the S_1 / S_k equivalence.

Three regimes are covered by a proven equivalence ("S_k independent iff S_1
independent"): r = 2 with k = 2, m = 2 with k = 2, and r = m = 3 with k = 3.
Any other (r, m, k) may still be swept, but only with ``allow_open=True``;
such runs count verdicts and never flag a violation.

Randomness comes from ``numpy.random.default_rng((seed, trial_index))`` so
that each trial is reproducible on its own and trials can run in any order.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from .algebra import as_rational, format_rational, parse_rational
from .independence import (
    IndependenceReport,
    LinearFormSystem,
    k_products,
    pair_matrix,
    s1_independent,
    s1_polynomials,
    sk_independent,
    witness_annihilates,
)
from .linalg import det

__all__ = [
    "MODES",
    "TrialConfig",
    "TrialRecord",
    "TrialReport",
    "RegimeError",
    "theorem_regime",
    "gen_instance",
    "gen_dependent_r3m3",
    "run_trial",
    "run_theorem_sweep",
    "instance_to_json",
    "instance_from_json",
    "report_to_json",
]

MODES = ("generic", "dependent-constructed", "degenerate")
SAMPLING = "uniform integers in [-bound, bound]"
RETRY_CAP = 100


class RegimeError(ValueError):
    """The requested (r, m, k) has no proven equivalence and no override was given."""


@dataclass(frozen=True)
class TrialConfig:
    r: int
    m: int
    k: int
    trials: int
    seed: int
    bound: int = 10
    mode: str = "generic"

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 1 <= self.k <= self.r + self.m:
            raise ValueError(f"k must lie in 1..{self.r + self.m}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.bound < 1:
            raise ValueError("bound must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "dependent-constructed" and (self.r, self.m) != (3, 3):
            raise ValueError("dependent-constructed mode needs r = m = 3")


def theorem_regime(r: int, m: int, k: int) -> str | None:
    """Name of the proven regime covering (r, m, k), or None."""
    if r == 2 and k == 2:
        return "r=2,k=2"
    if m == 2 and k == 2:
        return "m=2,k=2"
    if r == 3 and m == 3 and k == 3:
        return "r=m=3,k=3"
    return None


# ---------------------------------------------------------------- generators


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((seed, index))


def _ints(rng, bound: int, size) -> list:
    return rng.integers(-bound, bound + 1, size=size).tolist()


def _nonzero(rng, bound: int) -> int:
    # uniform on [-bound, bound] minus {0}
    x = int(rng.integers(1, bound + 1))
    return x if rng.integers(0, 2) else -x


def _degenerate_rows(rng, r: int, m: int, bound: int, kind: int) -> list:
    A = [_ints(rng, bound, r) for _ in range(m)]
    if kind == 0:
        A[0] = [0] * r
    elif kind == 1:
        if m >= 2:
            A[1] = list(A[0])
        else:
            j = int(rng.integers(0, r))
            A[0] = [0] * r
            A[0][j] = _nonzero(rng, bound)
    elif kind == 2:
        # both of the first two rows live on the same two coordinates
        M, N = sorted(rng.choice(r, size=2, replace=False).tolist())
        for i in range(min(m, 2)):
            A[i] = [0] * r
            A[i][M] = _nonzero(rng, bound)
            A[i][N] = _nonzero(rng, bound)
    else:
        j = int(rng.integers(0, r))
        A[-1] = [0] * r
        A[-1][j] = _nonzero(rng, bound)
    return A


def gen_instance(cfg: TrialConfig, trial_index: int) -> LinearFormSystem:
    """Deterministic instance for ``(cfg.seed, trial_index)``.

    Degenerate mode cycles through four injections by ``trial_index % 4``:
    a zero row, f1 = f2, two rows on a shared two-coordinate support, and a
    single-coordinate row.  With m = 1 the duplicate becomes a
    single-coordinate row.
    """
    if cfg.mode == "dependent-constructed":
        return gen_dependent_r3m3(cfg.seed, trial_index, cfg.bound)
    rng = _rng(cfg.seed, trial_index)
    if cfg.mode == "degenerate":
        A = _degenerate_rows(rng, cfg.r, cfg.m, cfg.bound, trial_index % 4)
    else:
        A = [_ints(rng, cfg.bound, cfg.r) for _ in range(cfg.m)]
    return LinearFormSystem(cfg.r, cfg.m, A)


def _pair_det(a, b, c) -> Fraction:
    return Fraction(det(pair_matrix(LinearFormSystem(3, 3, [a, b, c]))))


def gen_dependent_r3m3(seed: int, trial_index: int, bound: int = 10) -> LinearFormSystem:
    """An r = m = 3 system whose squares are dependent by construction.

    With c3 = 1 the pair determinant is affine in c2, so two evaluations
    determine the root.  Draws whose c2-slope vanishes are redrawn.
    """
    rng = _rng(seed, trial_index)
    for _ in range(RETRY_CAP):
        a = _ints(rng, bound, 3)
        b = _ints(rng, bound, 3)
        c1 = int(rng.integers(-bound, bound + 1))
        d0 = _pair_det(a, b, [c1, 0, 1])
        slope = _pair_det(a, b, [c1, 1, 1]) - d0
        if slope == 0:
            continue
        c2 = as_rational(-d0 / slope)
        sys = LinearFormSystem(3, 3, [a, b, [c1, c2, 1]])
        assert det(pair_matrix(sys)) == 0
        return sys
    raise RuntimeError(f"no admissible draw after {RETRY_CAP} attempts")


# ---------------------------------------------------------------- JSON


def instance_to_json(sys: LinearFormSystem) -> dict:
    return {
        "schema": 1,
        "r": sys.r,
        "m": sys.m,
        "A": [[format_rational(x) for x in row] for row in sys.A],
    }


def instance_from_json(obj) -> LinearFormSystem:
    """Inverse of :func:`instance_to_json`; raises ValueError on bad input."""
    if not isinstance(obj, dict):
        raise ValueError("instance must be a JSON object")
    if obj.get("schema", 1) != 1:
        raise ValueError(f"unsupported schema {obj.get('schema')!r}")
    try:
        r, m, A = obj["r"], obj["m"], obj["A"]
    except KeyError as e:
        raise ValueError(f"missing field {e.args[0]!r}") from None
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (r, m)):
        raise ValueError("r and m must be integers")
    if not isinstance(A, list) or not all(isinstance(row, list) for row in A):
        raise ValueError("A must be a list of rows")
    rows = []
    for row in A:
        out = []
        for x in row:
            if not isinstance(x, str):
                raise ValueError(f"entries must be rational strings, got {x!r}")
            out.append(parse_rational(x))
        rows.append(out)
    return LinearFormSystem(r, m, rows)


def _digest(sys: LinearFormSystem) -> str:
    text = json.dumps(instance_to_json(sys), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _report_json(rep: IndependenceReport) -> dict:
    out = {"verdict": rep.verdict, "rank": rep.rank}
    if rep.witness is not None:
        out["witness"] = [format_rational(x) for x in rep.witness]
    return out


# ---------------------------------------------------------------- sweeps


@dataclass(frozen=True)
class TrialRecord:
    index: int
    digest: str
    s1: str
    sk: str
    ok: bool


@dataclass
class TrialReport:
    config: TrialConfig
    regime: str | None
    records: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    timestamp: str = ""

    @property
    def observational(self) -> bool:
        return self.regime is None

    @property
    def counts(self) -> dict:
        recs = self.records
        return {
            "trials": len(recs),
            "s1_independent": sum(r.s1 == "independent" for r in recs),
            "s1_dependent": sum(r.s1 == "dependent" for r in recs),
            "sk_independent": sum(r.sk == "independent" for r in recs),
            "sk_dependent": sum(r.sk == "dependent" for r in recs),
            "equivalent": sum(r.ok for r in recs),
            "violations": 0 if self.observational else sum(not r.ok for r in recs),
        }

    @property
    def violations(self) -> int:
        return self.counts["violations"]


def run_trial(cfg: TrialConfig, index: int):
    """One trial: ``(record, payload)``; payload is None unless the verdicts differ."""
    sys = gen_instance(cfg, index)
    s1 = s1_independent(sys)
    sk = sk_independent(sys, cfg.k)
    squares = s1_polynomials(sys)
    if s1.witness is not None and not witness_annihilates(squares, s1.witness):
        raise AssertionError(f"S_1 witness fails to annihilate on trial {index}")
    if sk.witness is not None and not witness_annihilates(k_products(squares, cfg.k), sk.witness):
        raise AssertionError(f"S_k witness fails to annihilate on trial {index}")
    ok = s1.verdict == sk.verdict
    rec = TrialRecord(index, _digest(sys), s1.verdict, sk.verdict, ok)
    payload = None
    if not ok:
        payload = {
            "index": index,
            "instance": instance_to_json(sys),
            "s1": _report_json(s1),
            "sk": _report_json(sk),
        }
    return rec, payload


def _run_chunk(args):
    cfg, indices = args
    return [run_trial(cfg, i) for i in indices]


def run_theorem_sweep(cfg: TrialConfig, allow_open: bool = False, workers: int = 1) -> TrialReport:
    """Check the S_1 / S_k biconditional on ``cfg.trials`` seeded instances.

    Raises :class:`RegimeError` when (r, m, k) is outside the proven regimes
    and ``allow_open`` is false.  ``workers > 1`` spreads trial indices over
    processes; the report does not depend on the worker count.
    """
    regime = theorem_regime(cfg.r, cfg.m, cfg.k)
    if regime is None and not allow_open:
        raise RegimeError(
            f"(r, m, k) = ({cfg.r}, {cfg.m}, {cfg.k}) is not a proven regime; "
            "enable the open-regime override (allow_open=True, or --allow-open) for an observational sweep"
        )
    indices = range(cfg.trials)
    if workers > 1:
        chunks = [(cfg, list(indices[w::workers])) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [x for part in pool.map(_run_chunk, chunks) for x in part]
    else:
        results = [run_trial(cfg, i) for i in indices]
    results.sort(key=lambda x: x[0].index)
    report = TrialReport(
        config=cfg,
        regime=regime,
        records=[rec for rec, _ in results],
        failures=[p for _, p in results if p is not None] if regime else [],
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
    assert sum(report.counts[k] for k in ("s1_independent", "s1_dependent")) == cfg.trials
    return report


def report_to_json(report: TrialReport, include_timestamp: bool = True) -> dict:
    from . import __version__

    out = {
        "schema": 1,
        "version": __version__,
        "config": {**asdict(report.config), "sampling": SAMPLING},
        "regime": report.regime,
        "observational": report.observational,
        "counts": report.counts,
        "failures": report.failures,
        "records": [asdict(r) for r in report.records],
    }
    if include_timestamp:
        out["timestamp"] = report.timestamp
    return out
