"""Hardy-Littlewood checks with constant 1 for nonnegative matrices.

For ``1 <= q <= 2 <= p`` and ``1/r = 1/q - 1/p``::

    [sum_j (sum_k a_jk^2)^(r/2)]^(1/r) <= ||A||_{p,q}      (T1-rows)
    [sum_k (sum_j a_jk^2)^(r/2)]^(1/r) <= ||A||_{p,q}      (T1-cols)

and for ``1 <= q <= p`` the entrywise ``l_r`` norm is bounded by the operator
norm for every ``r`` (T2-improved), which contains the classical statements
T2-i (``r >= 2``) and T2-ii (entrywise ``l_s``, ``r <= 2``).
"""
from __future__ import annotations

import csv
import io
import json
import math
import re
from importlib import resources
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np

from .exponents import ExponentPair, make_pair
from .matrices import PositiveMatrix, as_positive, entrywise_norm, identity, mixed_norm_cols, mixed_norm_rows
from .opnorm import NormEstimate, grid_oracle, norm_via_duality, operator_norm

TAGS = ("T1-rows", "T1-cols", "T2-i", "T2-ii", "T2-improved", "T2-dominance", "duality")
CSV_COLUMNS = ("theorem", "m", "n", "p", "q", "r", "s", "lhs", "rhs", "ratio", "pass")

DEFAULT_SLACK = 1e-9
DUALITY_RTOL = 1e-6


@dataclass(frozen=True)
class InequalityRecord:
    theorem: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    pair: ExponentPair
    matrix_id: str = ""
    m: int = 0
    n: int = 0

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "matrix_id": self.matrix_id,
            "m": self.m,
            "n": self.n,
            "p": str(self.pair.p),
            "q": str(self.pair.q),
            "r": str(self.pair.r),
            "s": str(self.pair.s),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "pass": self.passed,
        }


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0:
        return lhs / rhs
    return 0.0 if lhs == 0 else math.inf


def _record(tag, lhs, rhs, pair, A, matrix_id, slack) -> InequalityRecord:
    lhs, rhs = float(lhs), float(rhs)
    return InequalityRecord(tag, lhs, rhs, _ratio(lhs, rhs), lhs <= rhs * (1.0 + slack),
                            pair, matrix_id, A.m, A.n)


def theorem1_applies(pair: ExponentPair) -> bool:
    return pair.p.inv <= 0.5 <= pair.q.inv <= 1


def theorem2_applies(pair: ExponentPair) -> bool:
    return pair.q.inv <= 1


def check_theorem1(A, pair: ExponentPair, norm_est: NormEstimate, matrix_id: str = "",
                   slack: float = DEFAULT_SLACK) -> tuple[InequalityRecord, InequalityRecord]:
    """Row and column ``l_r(l_2)`` mixed norms against ``||A||_{p,q}`` with M = 1."""
    A = as_positive(A)
    if not theorem1_applies(pair):
        raise ValueError(f"theorem 1 needs 1 <= q <= 2 <= p, got {pair}")
    rows = mixed_norm_rows(A, pair.r, 2)
    cols = mixed_norm_cols(A, pair.r, 2)
    return (_record("T1-rows", rows, norm_est.value, pair, A, matrix_id, slack),
            _record("T1-cols", cols, norm_est.value, pair, A, matrix_id, slack))


def check_theorem2(A, pair: ExponentPair, norm_est: NormEstimate, matrix_id: str = "",
                   slack: float = DEFAULT_SLACK) -> list[InequalityRecord]:
    """Entrywise-norm bounds: T2-i if ``r >= 2``, T2-ii if ``r <= 2``, T2-improved always."""
    A = as_positive(A)
    if not theorem2_applies(pair):
        raise ValueError(f"theorem 2 needs 1 <= q <= p, got {pair}")
    rhs = norm_est.value
    lr = entrywise_norm(A, pair.r)
    out = []
    if pair.r.inv <= 0.5:
        out.append(_record("T2-i", lr, rhs, pair, A, matrix_id, slack))
    if pair.r.inv >= 0.5:
        out.append(_record("T2-ii", entrywise_norm(A, pair.s), rhs, pair, A, matrix_id, slack))
    out.append(_record("T2-improved", lr, rhs, pair, A, matrix_id, slack))
    return out


def check_improvement_dominance(A, pair: ExponentPair, matrix_id: str = "",
                                slack: float = DEFAULT_SLACK) -> InequalityRecord:
    """Entrywise ``l_s <= l_r`` when ``r <= 2``, so the T2-improved bound implies T2-ii."""
    A = as_positive(A)
    if pair.r.inv < 0.5:
        raise ValueError(f"dominance check needs r <= 2, got r = {pair.r}")
    return _record("T2-dominance", entrywise_norm(A, pair.s), entrywise_norm(A, pair.r),
                   pair, A, matrix_id, slack)


def check_duality_identity(A, pair: ExponentPair, matrix_id: str = "",
                           rtol: float = DUALITY_RTOL, direct: Optional[NormEstimate] = None,
                           dual: Optional[NormEstimate] = None, **opts) -> InequalityRecord:
    """Compare ``||A||_{p,q}`` with ``||A^T||_{q*,p*}``, each computed independently.

    ``lhs`` is the direct value and ``rhs`` the dual one. The record passes when
    their relative difference is at most ``rtol`` and, if ``q <= 2 <= p``,
    the index fact ``p* <= 2 <= q*`` holds.
    """
    A = as_positive(A)
    direct = direct if direct is not None else operator_norm(A, pair, **opts)
    dual = dual if dual is not None else norm_via_duality(A, pair, **opts)
    a, b = direct.value, dual.value
    scale = max(a, b)
    ok = abs(a - b) <= rtol * scale if scale > 0 else True
    if pair.q.inv >= 0.5 >= pair.p.inv:
        ok = ok and pair.p_conj.inv >= 0.5 >= pair.q_conj.inv
    return InequalityRecord("duality", a, b, _ratio(a, b), bool(ok), pair, matrix_id, A.m, A.n)


_SPARSE = re.compile(r"sparse\(([0-9.eE+-]+)\)")


def random_positive_matrix(m: int, n: int, dist: str = "uniform", seed=None,
                           density: float = 0.5) -> PositiveMatrix:
    """Seeded random nonnegative matrix.

    ``dist`` is ``"uniform"`` (on [0, 1)), ``"exponential"`` (unit scale) or
    ``"sparse"`` / ``"sparse(<density>)"`` (uniform entries kept with
    probability ``density``, exact zeros elsewhere).
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    rng = np.random.default_rng(seed)
    match = _SPARSE.fullmatch(dist)
    if match:
        dist, density = "sparse", float(match.group(1))
    if dist == "uniform":
        a = rng.random((m, n))
    elif dist == "exponential":
        a = rng.exponential(1.0, (m, n))
    elif dist == "sparse":
        if not 0 < density <= 1:
            raise ValueError(f"density must be in (0, 1], got {density}")
        a = rng.random((m, n)) * (rng.random((m, n)) < density)
    else:
        raise ValueError(f"unknown distribution {dist!r}")
    return PositiveMatrix(a)


@dataclass
class SuiteConfig:
    sizes: list = field(default_factory=lambda: [[m, n] for m in range(1, 11) for n in range(1, 11)])
    instances_per_size: int = 5
    distributions: list = field(default_factory=lambda: ["uniform", "exponential", "sparse"])
    density: float = 0.5
    pairs: list = field(default_factory=lambda: [[p, q] for p in ("2", "5/2", "3", "4", "inf")
                                                 for q in ("1", "4/3", "3/2", "2")])
    identity_sizes: list = field(default_factory=lambda: list(range(1, 11)))
    seed: int = 0
    slack: float = DEFAULT_SLACK
    duality_rtol: float = DUALITY_RTOL
    tol: float = 1e-10
    max_iter: int = 10_000
    multistarts: int = 2
    escalation_resolution: int = 200

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown suite config fields: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def default(cls) -> "SuiteConfig":
        """The shipped ``default_suite.json``."""
        text = resources.files("hlnorm").joinpath("data/default_suite.json").read_text()
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "SuiteConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return asdict(self)

    def pair_grid(self) -> list[ExponentPair]:
        return [make_pair(str(p), str(q)) for p, q in self.pairs]


@dataclass
class VerificationReport:
    records: list
    config: dict

    @property
    def counts(self) -> dict:
        out = {}
        for rec in self.records:
            c = out.setdefault(rec.theorem, {"pass": 0, "fail": 0})
            c["pass" if rec.passed else "fail"] += 1
        return out

    @property
    def worst_ratio(self) -> dict:
        out = {}
        for rec in self.records:
            out[rec.theorem] = max(out.get(rec.theorem, -math.inf), rec.ratio)
        return out

    @property
    def violations(self) -> list:
        return [rec for rec in self.records if not rec.passed]

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "counts": self.counts,
            "worst_ratio": self.worst_ratio,
            "violations": len(self.violations),
            "records": [rec.to_dict() for rec in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        return records_to_csv(self.records)


def records_to_csv(records: Iterable[InequalityRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        d = rec.to_dict()
        writer.writerow([d[c] if c != "pass" else str(d[c]).lower() for c in CSV_COLUMNS])
    return buf.getvalue()


def instance_seed(master: int, index: int) -> int:
    return int(np.random.SeedSequence([master, index]).generate_state(1)[0])


def _instances(cfg: SuiteConfig):
    for n in cfg.identity_sizes:
        yield f"identity-{n}", identity(n)
    index = 0
    for m, n in cfg.sizes:
        for _ in range(cfg.instances_per_size):
            dist = cfg.distributions[index % len(cfg.distributions)]
            seed = instance_seed(cfg.seed, index)
            A = random_positive_matrix(m, n, dist, seed, cfg.density)
            yield f"{dist}-{m}x{n}-#{index}", A
            index += 1


def _inequalities(A, pair, best, matrix_id, slack):
    recs = []
    if theorem1_applies(pair):
        recs.extend(check_theorem1(A, pair, best, matrix_id, slack))
    recs.extend(check_theorem2(A, pair, best, matrix_id, slack))
    return recs


def check_instance(A, pair: ExponentPair, matrix_id: str = "", cfg: Optional[SuiteConfig] = None
                   ) -> list[InequalityRecord]:
    """All checks whose hypotheses ``pair`` satisfies, with the escalation protocol.

    The norm side is the direct closed form when one exists, else the larger
    of the direct and dual estimates. If an inequality fails, the norm is
    re-estimated (grid oracle for ``n <= 4``, else four times the
    multistarts) before a violation is recorded.
    """
    cfg = cfg or SuiteConfig()
    A = as_positive(A)
    if not theorem2_applies(pair):
        return []
    opts = {"tol": cfg.tol, "max_iter": cfg.max_iter, "multistarts": cfg.multistarts}
    direct = operator_norm(A, pair, **opts)
    dual = norm_via_duality(A, pair, **opts)
    # a closed form is the norm itself; the dual route can overshoot it by an ulp
    best = direct if direct.is_exact else max((direct, dual), key=lambda e: e.value)
    recs = _inequalities(A, pair, best, matrix_id, cfg.slack)
    if not all(r.passed for r in recs):
        if A.n <= 4:
            extra = grid_oracle(A, pair, cfg.escalation_resolution)
        else:
            extra = operator_norm(A, pair, **{**opts, "multistarts": 4 * cfg.multistarts})
        best = max((best, extra), key=lambda e: e.value)
        recs = _inequalities(A, pair, best, matrix_id, cfg.slack)
    if pair.r.inv >= 0.5:
        recs.append(check_improvement_dominance(A, pair, matrix_id, cfg.slack))
    dual_rec = check_duality_identity(A, pair, matrix_id, cfg.duality_rtol, direct, dual)
    if not dual_rec.passed:
        more = {**opts, "multistarts": 4 * cfg.multistarts}
        dual_rec = check_duality_identity(A, pair, matrix_id, cfg.duality_rtol, **more)
    recs.append(dual_rec)
    return recs


def run_suite(config=None) -> VerificationReport:
    """Run every applicable check over the configured matrix population.

    Instances are visited in a fixed order with per-instance seeds derived
    from ``config.seed``, so equal configs give identical reports.
    """
    if config is None:
        cfg = SuiteConfig()
    elif isinstance(config, SuiteConfig):
        cfg = config
    else:
        cfg = SuiteConfig.from_dict(dict(config))
    pairs = cfg.pair_grid()
    records = []
    for matrix_id, A in _instances(cfg):
        for pair in pairs:
            records.extend(check_instance(A, pair, matrix_id, cfg))
    return VerificationReport(records, cfg.to_dict())
