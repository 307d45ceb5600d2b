"""Correlation spectrum by three routes, closed-form counts, and the audit suite."""

from __future__ import annotations

import csv
import io
import json
from math import gcd
from functools import lru_cache
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction

import numpy as np

from . import qform
from .audits import Audit
from .cyclotomic import CycInt, NotQuadraticError, QuadValue, recognize_quadratic
from .ffield import FieldDesc
from .qform import ZERO, GramFamily, context, exp_sum_counts, kernel_size_logs, rank_and_sign
from .seqgen import SeqParams, _check_field, _check_tau, direct_sweep, validate_params

METHODS = ("direct", "sums", "rank_fast")


class CorrClass(str, Enum):
    MINUS_ONE = "MINUS_ONE"
    PLUS_PM = "PLUS_PM"
    MINUS_PM = "MINUS_PM"
    HALF_PLUS = "HALF_PLUS"
    HALF_MINUS = "HALF_MINUS"
    E_NEG = "E_NEG"


class ClassificationError(ValueError):
    """A correlation value outside the six expected classes."""


def sqrt_power(p: int, k: int) -> QuadValue:
    """p^(k/2) as u + v*sqrt(p)."""
    if k % 2 == 0:
        return QuadValue.of(p, p ** (k // 2))
    return QuadValue.of(p, 0, p ** ((k - 1) // 2))


@lru_cache(maxsize=64)
def class_values(params: SeqParams) -> dict[CorrClass, QuadValue]:
    p, pm, pe = params.p, params.pm, params.pe
    root = sqrt_power(p, params.e)
    half = Fraction(1, 2)
    return {
        CorrClass.MINUS_ONE: QuadValue.of(p, -1),
        CorrClass.PLUS_PM: QuadValue.of(p, pm - 1),
        CorrClass.MINUS_PM: QuadValue.of(p, -pm - 1),
        CorrClass.HALF_PLUS: (1 + root) * half * pm - 1,
        CorrClass.HALF_MINUS: (1 - root) * half * pm - 1,
        CorrClass.E_NEG: QuadValue.of(p, Fraction(1 - pe, 2) * pm - 1),
    }


@lru_cache(maxsize=64)
def excluded_values(params: SeqParams) -> dict[str, QuadValue]:
    """Candidate values C_d can take a priori that never occur."""
    p, pm, pe = params.p, params.pm, params.pe
    root = sqrt_power(p, params.e)
    half = Fraction(1, 2)
    return {
        "(-1+p^(e/2))/2*p^m-1": (-1 + root) * half * pm - 1,
        "(-1-p^(e/2))/2*p^m-1": (-1 - root) * half * pm - 1,
        "(p^e-1)/2*p^m-1": QuadValue.of(p, Fraction(pe - 1, 2) * pm - 1),
        "(1+p^e)/2*p^m-1": QuadValue.of(p, Fraction(1 + pe, 2) * pm - 1),
        "-(1+p^e)/2*p^m-1": QuadValue.of(p, -Fraction(1 + pe, 2) * pm - 1),
    }


def classify(value: CycInt | QuadValue, params: SeqParams) -> CorrClass:
    try:
        q = recognize_quadratic(value) if isinstance(value, CycInt) else value
    except NotQuadraticError as exc:
        raise ClassificationError(str(exc)) from exc
    for tag, v in class_values(params).items():
        if q == v:
            return tag
    for name, v in excluded_values(params).items():
        if q == v:
            raise ClassificationError(f"excluded value {name} = {q} occurred")
    raise ClassificationError(f"value {q} is not one of the six classes")


# --- report -------------------------------------------------------------------------


@dataclass
class SpectrumReport:
    params: SeqParams
    method: str
    counts: dict[CorrClass, int]
    audits: list[Audit] = dc_field(default_factory=list)
    values: dict[int, QuadValue] | None = dc_field(default=None, repr=False, compare=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.audits)

    def count_tuple(self) -> tuple[int, ...]:
        return tuple(self.counts.get(t, 0) for t in CorrClass)

    def to_dict(self) -> dict:
        vals = class_values(self.params)
        p = self.params
        return {
            "params": {"p": p.p, "m": p.m, "e": p.e, "n": p.n, "d": p.d},
            "method": self.method,
            "counts": {t.value: {"u": str(vals[t].u), "v": str(vals[t].v), "count": self.counts.get(t, 0)}
                       for t in CorrClass},
            "audits": [{"name": a.name, "pass": a.passed, "observed": a.observed, "expected": a.expected}
                       for a in self.audits],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        vals = class_values(self.params)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "m", "e", "method", "class", "u", "v", "count"])
        for t in CorrClass:
            w.writerow([self.params.p, self.params.m, self.params.e, self.method, t.value,
                        vals[t].u, vals[t].v, self.counts.get(t, 0)])
        return buf.getvalue()

    def to_text(self) -> str:
        vals = class_values(self.params)
        p = self.params
        lines = [f"p={p.p} m={p.m} e={p.e} n={p.n} d={p.d} method={self.method}"]
        for t in CorrClass:
            lines.append(f"  {t.value:<11} {str(vals[t]):<28} {self.counts.get(t, 0)}")
        lines.append(f"  total {self.total}")
        lines += ["  " + a.line() for a in self.audits]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "SpectrumReport":
        pr = doc["params"]
        params = validate_params(pr["p"], pr["m"], pr["e"])
        counts = {CorrClass(t): v["count"] for t, v in doc["counts"].items()}
        audits = [Audit(a["name"], a["pass"], a["observed"], a["expected"]) for a in doc.get("audits", [])]
        return cls(params, doc["method"], counts, audits)

    @classmethod
    def from_json(cls, text: str) -> "SpectrumReport":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_csv(cls, text: str) -> "SpectrumReport":
        """Rebuild params, method and counts (audits are not carried in CSV)."""
        rows = list(csv.DictReader(io.StringIO(text)))
        params = validate_params(int(rows[0]["p"]), int(rows[0]["m"]), int(rows[0]["e"]))
        counts = {CorrClass(r["class"]): int(r["count"]) for r in rows}
        return cls(params, rows[0]["method"], counts)


# --- the three routes ------------------------------------------------------------------


def _log_pair_minus_one(ctx) -> int:
    return ctx.ar.half  # log(-1)


def correlation_via_sums(params: SeqParams, field: FieldDesc, tau: int) -> CycInt:
    """-1 + (E(-1,c) + E(-alpha^d, c alpha))/2 with c = alpha^tau, both sums exact."""
    _check_tau(params, tau)
    ctx = context(params, field)
    N = field.order
    a = [_log_pair_minus_one(ctx), (ctx.ar.half + params.d) % N]
    b = [tau, (tau + 1) % N]
    e1, e2 = (CycInt.from_counts(c) for c in exp_sum_counts(a, b, ctx))
    return (e1 + e2).half() - 1


def sums_sweep(params: SeqParams, field: FieldDesc, block: int = 64):
    """Exact E(-1, c) and E(-alpha^d, c alpha) for c = alpha^tau, every tau."""
    ctx = context(params, field)
    N = field.order
    e1, e2 = [], []
    for start in range(0, N, block):
        taus = np.arange(start, min(N, start + block), dtype=np.int64)
        c1 = exp_sum_counts(np.full(len(taus), ctx.ar.half), taus, ctx)
        c2 = exp_sum_counts(np.full(len(taus), (ctx.ar.half + params.d) % N), (taus + 1) % N, ctx)
        e1 += [CycInt.from_counts(r) for r in c1]
        e2 += [CycInt.from_counts(r) for r in c2]
    return e1, e2


@dataclass
class RankData:
    """Per-shift analysis of q_{-1,c}, c = alpha^tau."""

    kernel: np.ndarray
    gram_rank: np.ndarray
    det_class: np.ndarray

    def rank(self, params: SeqParams) -> np.ndarray:
        k = np.rint(np.log(self.kernel) / np.log(params.p)).astype(np.int64)
        return params.n - k


def rank_data(params: SeqParams, field: FieldDesc, taus=None) -> RankData:
    """Kernel size, Gram rank and determinant class of q_{-1,c} for each tau (default: all)."""
    ctx = context(params, field)
    p = params.p
    taus = np.arange(field.order) if taus is None else np.asarray(taus, dtype=np.int64)
    minus_one = _log_pair_minus_one(ctx)
    kernel = np.array([kernel_size_logs(minus_one, int(t), ctx) for t in taus], dtype=np.int64)
    fam = GramFamily(-field.one, params)
    mats = fam.matrices(field.digits(field.powers[taus]))
    rs = [rank_and_sign(M, p) for M in mats]
    return RankData(kernel, np.array([r for r, _ in rs]), np.array([s for _, s in rs]))


def shift_classes(params: SeqParams) -> np.ndarray:
    """Representative shift for each tau under the symmetries of q_{-1,c}.

    x -> x^p maps q_{-1,c} to q_{-1,c^p}, and x -> mu x with mu^(p^m+1) = 1 maps
    it to q_{-1, c mu^(p^(m+e)+1)}; both are invertible F_p-linear substitutions,
    so rank and determinant class are constant on the generated orbits.
    The second moves tau within a residue class mod g.
    """
    p, N = params.p, params.period
    g = gcd((params.pm - 1) * (p ** (params.m + params.e) + 1), N)
    reps = {}
    for r in range(g):
        reps[r] = min(r * pow(p, i, g) % g for i in range(params.n))
    return np.array([reps[t % g] for t in range(N)], dtype=np.int64)


def rank_fast_values(params: SeqParams, field: FieldDesc) -> list[QuadValue]:
    """Correlation values from kernel rank + Gram sign, with E(-alpha^d, c alpha) = eta(c) p^m.

    One kernel solve and one Gram diagonalisation per orbit of :func:`shift_classes`.
    """
    cls = shift_classes(params)
    reps = np.unique(cls)
    data = rank_data(params, field, reps)
    rep_rank = data.rank(params)
    if not np.array_equal(rep_rank, data.gram_rank):
        bad = int(reps[np.flatnonzero(rep_rank != data.gram_rank)[0]])
        raise qform.QFormError(f"kernel rank and Gram rank disagree at tau={bad}")
    where = np.searchsorted(reps, cls)
    ranks, dets = rep_rank[where], data.det_class[where]
    p, pm = params.p, params.pm
    seen: dict[tuple[int, int, int], QuadValue] = {}
    out = []
    for tau, key in enumerate(zip(ranks.tolist(), dets.tolist(), [0, 1] * (field.order // 2))):
        if key not in seen:
            e1 = qform.sum_from_rank(key[0], key[1], params)
            e2 = QuadValue.of(p, -pm if key[2] else pm)
            seen[key] = (e1 + e2) * Fraction(1, 2) - 1
        out.append(seen[key])
    return out


def sweep_values(params: SeqParams, field: FieldDesc, method: str, threads: int = 1) -> list:
    if method == "direct":
        return direct_sweep(params, field, threads=threads)
    if method == "sums":
        e1, e2 = sums_sweep(params, field)
        return [(a + b).half() - 1 for a, b in zip(e1, e2)]
    if method == "rank_fast":
        return rank_fast_values(params, field)
    raise ValueError(f"unknown method {method!r}")


def _tally(params: SeqParams, values, method: str) -> SpectrumReport:
    counts = {t: 0 for t in CorrClass}
    failures, nonreal, quad = [], 0, {}
    for tau, v in enumerate(values):
        if isinstance(v, CycInt) and not v.is_real():
            nonreal += 1
        try:
            tag = classify(v, params)
        except ClassificationError as exc:
            failures.append(f"tau={tau}: {exc}")
            continue
        counts[tag] += 1
        quad[tau] = class_values(params)[tag]
    audits = [
        Audit("classification", not failures, f"{len(failures)} unclassified" + (f" ({failures[0]})" if failures else ""),
              "0 unclassified"),
        Audit.compare("total count", sum(counts.values()), params.period),
    ]
    if values and isinstance(values[0], CycInt):
        audits.append(Audit.compare("values real (conjugation-fixed)", nonreal, 0))
    return SpectrumReport(params, method, counts, audits, quad)


def full_spectrum(params: SeqParams, field: FieldDesc, method: str = "rank_fast",
                  threads: int = 1) -> SpectrumReport:
    """Spectrum over all shifts by ``method`` (or ``all`` to run and compare every route)."""
    _check_field(params, field)
    if method != "all":
        return _tally(params, sweep_values(params, field, method, threads), method)
    reports = [full_spectrum(params, field, m, threads) for m in METHODS]
    base = reports[0]
    audits = []
    for r in reports:
        audits += [Audit(f"[{r.method}] {a.name}", a.passed, a.observed, a.expected) for a in r.audits]
    for r in reports[1:]:
        same_counts = r.counts == base.counts
        same_values = r.values == base.values
        audits.append(Audit(f"direct = {r.method} (per-shift)", same_counts and same_values,
                            str(r.count_tuple()), str(base.count_tuple())))
    table = closed_form_table(params)
    audits.append(Audit.compare("closed-form counts", base.count_tuple(), table.count_tuple()))
    return SpectrumReport(params, "all", dict(base.counts), audits, base.values)


# --- closed forms --------------------------------------------------------------------


def closed_form_counts(params: SeqParams) -> dict[CorrClass, Fraction]:
    p, m, e = params.p, params.m, params.e
    pm, pe = params.pm, params.pe
    half = Fraction(p ** (m - e) * (pm + 1), 2)
    return {
        CorrClass.MINUS_ONE: Fraction((p ** (m + e) - 2 * pm - 2 * pe + 3) * (pm + 1), 2 * (pe - 1)),
        CorrClass.PLUS_PM: Fraction((pe - 1) * (pm + 1) ** 2, 4 * (pe + 1)),
        CorrClass.MINUS_PM: Fraction(p ** (2 * m) - 1, 4),
        CorrClass.HALF_PLUS: half,
        CorrClass.HALF_MINUS: half,
        CorrClass.E_NEG: Fraction((p ** (m - e) - 1) * (pm + 1), p ** (2 * e) - 1),
    }


def closed_form_table(params: SeqParams) -> SpectrumReport:
    raw = closed_form_counts(params)
    bad = {t.value: str(v) for t, v in raw.items() if v.denominator != 1 or v < 0}
    if bad:
        raise ArithmeticError(f"non-integral or negative closed-form counts: {bad}")
    counts = {t: int(v) for t, v in raw.items()}
    audits = [Audit.compare("closed-form counts sum to p^n - 1", sum(counts.values()), params.period)]
    return SpectrumReport(params, "closed_form", counts, audits)


theorem1_table = closed_form_table  # name used by the public interface contract


def rank_counts(params: SeqParams) -> dict[int, Fraction]:
    """Number of c != 0 with rank(q_{-1,c}) = n - i, keyed by i in (0, e, 2e)."""
    p, m, e, pm = params.p, params.m, params.e, params.pm
    return {
        0: Fraction((p ** (m + 2 * e) - p ** (m + e) - pm - p ** (2 * e) + 2) * (pm + 1), p ** (2 * e) - 1),
        e: Fraction(p ** (m - e) * (pm + 1)),
        2 * e: Fraction((p ** (m - e) - 1) * (pm + 1), p ** (2 * e) - 1),
    }


def rank_sign_counts(params: SeqParams) -> dict[tuple[int, int], Fraction]:
    """Number of c != 0 with E(-1,c) = eps * p^(m + i/2), keyed by (i, eps)."""
    p, m, e, pm, pe = params.p, params.m, params.e, params.pm, params.pe
    ne = Fraction(p ** (m - e) * (pm + 1), 2)
    return {
        (0, 1): Fraction((p ** (m + e) - 1) * (pm + 1), 2 * (pe + 1)),
        (0, -1): Fraction((p ** (m + e) - 2 * pm - 2 * pe + 3) * (pm + 1), 2 * (pe - 1)),
        (e, 1): ne,
        (e, -1): ne,
        (2 * e, 1): Fraction(0),
        (2 * e, -1): Fraction((p ** (m - e) - 1) * (pm + 1), p ** (2 * e) - 1),
    }


# --- audits ----------------------------------------------------------------------------


def boundary_sums(params: SeqParams, field: FieldDesc) -> tuple[CycInt, CycInt]:
    """E(-1, 0) and C(-1, 0) = sum_x chi(-x^d), both by direct summation."""
    ctx = context(params, field)
    e0 = CycInt.from_counts(exp_sum_counts([ctx.ar.half], [ZERO], ctx)[0])
    N, p = field.order, params.p
    k = np.arange(N, dtype=np.int64)
    vals = field.trace_of_power[(ctx.ar.half + k * params.d) % N]
    counts = np.bincount(vals, minlength=p)
    counts[0] += 1
    return e0, CycInt.from_counts(counts)


def moment_audit(params: SeqParams, field: FieldDesc, sums=None) -> list[Audit]:
    """First, second and third power sums of E(-1,c) and C(-1,c) over all c."""
    p, m, e = params.p, params.m, params.e
    pm = params.pm
    e1, e2 = sums if sums is not None else sums_sweep(params, field)
    e0, c0 = boundary_sums(params, field)
    E0, C0 = recognize_quadratic(e0), recognize_quadratic(c0)
    audits = [
        Audit.compare("E(-1,0) = -p^m", E0, QuadValue.of(p, -pm)),
        Audit.compare("C(-1,0) = (p^m-1)p^m/2", C0, QuadValue.of(p, Fraction((pm - 1) * pm, 2))),
    ]
    Es = [recognize_quadratic(x) for x in e1]
    Cs = [recognize_quadratic((x + y).half()) for x, y in zip(e1, e2)]
    Es.append(E0)
    Cs.append(C0)

    def power_sum(vals, k):
        acc = QuadValue.of(p)
        for v in vals:
            acc = acc + v**k
        return acc

    q = lambda u: QuadValue.of(p, u)  # noqa: E731
    expected = {
        "sum E": q(p ** (2 * m)),
        "sum E^2": q((2 * p ** (2 * m) - 1) * p ** (2 * m)),
        "sum E^3": q((-p ** (2 * m) + p ** (m + e) + p**e) * p ** (3 * m)),
        "sum C": q(p ** (2 * m)),
        "sum C^2": q(p ** (4 * m)),
        "sum C^3": q(Fraction(p ** (3 * m) * (p ** (3 * m) - p ** (2 * m) + p ** (m + e) + 6 * pm + p**e), 8)),
    }
    for name, vals in (("E", Es), ("C", Cs)):
        for k in (1, 2, 3):
            key = f"sum {name}" if k == 1 else f"sum {name}^{k}"
            audits.append(Audit.compare(key, power_sum(vals, k), expected[key]))
    return audits


def rank_census(params: SeqParams, field: FieldDesc, data: RankData | None = None) -> list[Audit]:
    """Rank counts and (rank, sign) counts of E(-1,c) over c != 0, against closed forms."""
    data = data or rank_data(params, field)
    ranks = data.rank(params)
    n = params.n
    audits = []
    want = rank_counts(params)
    for i, w in want.items():
        audits.append(Audit.compare(f"N_{i} (rank n-{i})", int(np.count_nonzero(ranks == n - i)), w))
    audits.append(Audit.compare("Gram rank = kernel rank", int(np.count_nonzero(ranks != data.gram_rank)), 0))
    values = [qform.sum_from_rank(int(r), int(s), params) for r, s in zip(ranks, data.det_class)]
    pm_unit = {}
    for (i, eps), w in rank_sign_counts(params).items():
        target = sqrt_power(params.p, 2 * params.m + i) * eps
        pm_unit[(i, eps)] = target
        got = sum(1 for v in values if v == target)
        audits.append(Audit.compare(f"N_({i},{eps:+d})", got, w))
    stray = sum(1 for v in values if v not in pm_unit.values())
    audits.append(Audit.compare("E(-1,c) outside {+-p^m, +-p^(m+e/2), +-p^(m+e)}", stray, 0))
    return audits


def twisted_form_audit(params: SeqParams, field: FieldDesc, e2=None) -> list[Audit]:
    """E(-alpha^d, c alpha) = eta(c) p^m and full rank, for every c != 0."""
    p, pm, N = params.p, params.pm, field.order
    if e2 is None:
        _, e2 = sums_sweep(params, field)
    bad = [tau for tau, x in enumerate(e2)
           if recognize_quadratic(x) != QuadValue.of(p, pm if tau % 2 == 0 else -pm)]
    ctx = context(params, field)
    a_log = (ctx.ar.half + params.d) % N
    low_rank = [tau for tau in range(N) if kernel_size_logs(a_log, (tau + 1) % N, ctx) != 1]
    return [Audit.compare("E(-alpha^d, c alpha) = eta(c) p^m", len(bad), 0),
            Audit.compare("rank(-alpha^d, c alpha) = n", len(low_rank), 0)]


def square_shift_audit(params: SeqParams, field: FieldDesc, data: RankData | None = None,
                 report: SpectrumReport | None = None) -> list[Audit]:
    data = data or rank_data(params, field)
    ranks = data.rank(params)
    taus = np.flatnonzero(ranks == params.n - params.e)
    nonsquare = int(np.count_nonzero(taus % 2 == 1))
    audits = [Audit.compare("rank n-e implies c square", nonsquare, 0)]
    if report is not None and report.values is not None:
        excluded = set(excluded_values(params).values())
        hits = sum(1 for v in report.values.values() if v in excluded)
        cls_ok = next((a.passed for a in report.audits if a.name.endswith("classification")), True)
        audits.append(Audit("excluded values never occur", hits == 0 and cls_ok, str(hits), "0"))
    return audits


def trinomial_audit(params: SeqParams, field: FieldDesc) -> list[Audit]:
    """Root structure of z^(p^e+1) - v z + v over all v != 0."""
    census = qform.trinomial_root_census(params, field)
    allowed = {0, 1, 2, params.pe + 1}
    seen = sorted(set(census.tolist()))
    singles = int(np.count_nonzero(census == 1))
    # roots z of single-root v; (z-1)^((p^n-1)/(p^e-1)) = 1 iff dlog(z-1) divisible by p^e-1
    F, N, pe = field, field.order, params.pe
    ks = np.arange(N, dtype=np.int64)
    zm1 = F.digits(F.powers)
    zm1[:, 0] = (zm1[:, 0] - 1) % F.p
    zm1_idx = F.encode(zm1)
    keep = zm1_idx != 0
    zlog = F.dlog_table[zm1_idx[keep]]
    v_log = (ks[keep] * (pe + 1) - zlog) % N
    single_root = census[v_log] == 1
    power_ok = (zlog[single_root] % (pe - 1)) == 0
    return [
        Audit("root counts in {0,1,2,p^e+1}", set(seen) <= allowed, str(seen), str(sorted(allowed))),
        Audit.compare("single-root v count = p^(n-e)", singles, params.p ** (params.n - params.e)),
        Audit.compare("single root: z0-1 is a (p^e-1)th power", int(np.count_nonzero(~power_ok)), 0),
    ]


def bound_audit(report: SpectrumReport) -> Audit:
    """max |C_d(tau)| <= 2 sqrt(p^n) + 1, in double precision."""
    params = report.params
    vals = class_values(params)
    present = [abs(float(vals[t])) for t, c in report.counts.items() if c]
    bound = 2 * float(params.p**params.n) ** 0.5 + 1
    worst = max(present)
    return Audit(f"max |C_d| <= 2 sqrt(p^n) + 1 (p={params.p}, e={params.e})",
                 worst <= bound + 1e-9 * bound, f"{worst:.6f}", f"<= {bound:.6f}")


def float_agreement(params: SeqParams, field: FieldDesc, report: SpectrumReport, rel: float = 1e-6) -> Audit:
    from .seqgen import direct_sweep_float

    floats = direct_sweep_float(params, field)
    worst = 0.0
    for tau, z in enumerate(floats):
        exact = float(report.values[tau])
        worst = max(worst, abs(z - exact) / max(1.0, abs(exact)))
    return Audit("float path agrees with exact path", worst <= rel, f"{worst:.3e}", f"<= {rel:g}")


def verify_all(params: SeqParams, field: FieldDesc) -> list[Audit]:
    """Every audit for one parameter set; never aborts on a failing check."""
    audits = qform.gauss_sum_audit(params, field, samples=None if field.order <= 4096 else 200)
    e1, e2 = sums_sweep(params, field)
    data = rank_data(params, field)
    audits += moment_audit(params, field, (e1, e2))
    audits += rank_census(params, field, data)
    audits += twisted_form_audit(params, field, e2)
    audits += trinomial_audit(params, field)
    report = _tally(params, [(a + b).half() - 1 for a, b in zip(e1, e2)], "sums")
    audits += square_shift_audit(params, field, data, report)
    audits.append(Audit.compare("spectrum counts = closed form", report.count_tuple(),
                                closed_form_table(params).count_tuple()))
    if params.p == 5 and params.e == 1:
        audits.append(bound_audit(report))
    return audits
