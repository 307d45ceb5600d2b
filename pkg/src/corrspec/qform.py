"""The trace quadratic forms q_{a,b}(x) = Tr(a x^(p^m+1) + b x^(p^(m+e)+1)).

Three routes to the exponential sum E(a,b) = sum_x w^q(x):

* direct summation over the whole field (exact, as a cyclotomic integer);
* Gram matrix over F_p, congruence-diagonalised to get rank r and the
  square class of the determinant, then E = eta(Delta) p^(n - r/2);
* the radical of the form, i.e. the roots of the F_{p^e}-linearised map
  L(y) = b^(p^(m+e)) y^(p^2e) + (a^(p^(m+e)) + a^(p^e)) y^(p^e) + b y,
  whose kernel size p^k gives rank n - k.

Field elements inside the hot loops are handled as discrete logs with
``-1`` standing for zero; sums go through the Zech table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .audits import Audit
from .cyclotomic import CycInt, QuadValue, recognize_quadratic
from .ffield import FieldDesc, FieldElem, FieldError, legendre, quad_char, trace
from .seqgen import SeqParams, _check_field

ZERO = -1


class QFormError(ValueError):
    pass


@dataclass(frozen=True)
class QFormAnalysis:
    a: FieldElem
    b: FieldElem
    kernel_size: int
    rank: int
    det_class: int
    sum_value: QuadValue


# --- log-domain arithmetic -----------------------------------------------------


class LogArith:
    """Arithmetic on discrete logs (``-1`` is zero) for one table-backed field."""

    def __init__(self, field: FieldDesc):
        field._need_tables()
        self.F = field
        self.N = field.order
        self.half = self.N // 2
        self.zech = field.zech.tolist()

    def log(self, x: FieldElem) -> int:
        return ZERO if x.is_zero() else int(self.F.dlog_table[x.index])

    def mul(self, x: int, y: int) -> int:
        if x == ZERO or y == ZERO:
            return ZERO
        return (x + y) % self.N

    def add(self, x: int, y: int) -> int:
        if x == ZERO:
            return y
        if y == ZERO:
            return x
        z = self.zech[(y - x) % self.N]
        return ZERO if z == ZERO else (x + z) % self.N

    def neg(self, x: int) -> int:
        return ZERO if x == ZERO else (x + self.half) % self.N

    def inv(self, x: int) -> int:
        if x == ZERO:
            raise FieldError("inversion of zero")
        return (-x) % self.N

    def frob(self, x: int, k: int) -> int:
        return ZERO if x == ZERO else (x * pow(self.F.p, k, self.N)) % self.N


def log_rank(rows: list[list[int]], ar: LogArith) -> int:
    """Rank of a matrix whose entries are logs, by Gaussian elimination."""
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != ZERO), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pinv = ar.inv(rows[rank][col])
        for r in range(rank + 1, len(rows)):
            if rows[r][col] == ZERO:
                continue
            f = ar.neg(ar.mul(rows[r][col], pinv))
            rows[r] = [ar.add(x, ar.mul(f, y)) for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# --- per-(params, field) precomputation ------------------------------------------


class _Context:
    def __init__(self, params: SeqParams, field: FieldDesc):
        _check_field(params, field)
        self.params, self.F = params, field
        self.ar = LogArith(field)
        p, m, e, n, N = params.p, params.m, params.e, params.n, field.order
        self.u1 = p**m + 1
        self.u2 = p ** (m + e) + 1
        k = np.arange(N, dtype=np.int64)
        self.ku1 = ((k * self.u1) % N).astype(np.int32)
        self.ku2 = ((k * self.u2) % N).astype(np.int32)
        self.tr = field.trace_of_power
        self.tr2 = np.concatenate([self.tr, self.tr]).astype(np.int32)
        # F_p-basis beta^s alpha^i (row i*e + s) of GF(p^n) over the subfield GF(p^e)
        self.k = n // e
        beta = (N // (p**e - 1))
        logs = [(s * beta + i) % N for i in range(self.k) for s in range(e)]
        basis = field.digits(field.powers[logs])
        self.to_sub = _inv_mod_p(basis, p)
        self.beta_coords = field.digits(field.powers[[(s * beta) % N for s in range(e)]])
        self.inv2 = pow(2, -1, p)

    def sub_coords(self, idx: np.ndarray) -> np.ndarray:
        """GF(p^e)-coordinates (as logs) of elements in the basis 1, alpha, ..., alpha^(k-1)."""
        F, e, k = self.F, self.params.e, self.k
        w = (F.digits(idx) @ self.to_sub) % F.p
        w = w.reshape(idx.shape + (k, e))
        lam = (w @ self.beta_coords) % F.p
        lam_idx = F.encode(lam)
        out = F.dlog_table[lam_idx].astype(np.int64)
        out[lam_idx == 0] = ZERO
        return out


def _inv_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    n = len(M)
    A = [[int(v) % p for v in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], -1, p)
        A[col] = [v * inv % p for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[col])]
    return np.array([row[n:] for row in A], dtype=np.int64)


@lru_cache(maxsize=8)
def context(params: SeqParams, field: FieldDesc) -> _Context:
    return _Context(params, field)


# --- evaluation ---------------------------------------------------------------


def eval_qform(a: FieldElem, b: FieldElem, x: FieldElem, params: SeqParams) -> int:
    p, m, e = params.p, params.m, params.e
    y = a * x ** (p**m + 1) + b * x ** (p ** (m + e) + 1)
    return trace(y, 1).coords[0]


def qform_values(a_log: int, b_log: int, ctx: _Context) -> np.ndarray:
    """q_{a,b}(alpha^k) for k in [0, N); a and b given as logs."""
    N = ctx.F.order
    q = np.zeros(N, dtype=np.int64)
    if a_log != ZERO:
        q += ctx.tr[(a_log + ctx.ku1) % N]
    if b_log != ZERO:
        q += ctx.tr[(b_log + ctx.ku2) % N]
    return q % ctx.F.p


def exp_sum_counts(a_logs, b_logs, ctx: _Context) -> np.ndarray:
    """Histograms of q over the whole field for a batch of (a, b) log pairs."""
    a_logs = np.asarray(a_logs, dtype=np.int64)
    b_logs = np.asarray(b_logs, dtype=np.int64)
    p, rows = ctx.F.p, len(a_logs)
    q = np.zeros((rows, ctx.F.order), dtype=np.int32)
    for logs, ku in ((a_logs, ctx.ku1), (b_logs, ctx.ku2)):
        live = logs != ZERO
        if not live.any():
            continue
        if live.all() and (logs == logs[0]).all():
            q += ctx.tr2[logs[0] + ku]
        else:
            q[live] += ctx.tr2[logs[live, None] + ku[None, :]]
    # q lies in [0, 2p-2]; fold the upper half back after counting
    width = 2 * p - 1
    q += (width * np.arange(rows, dtype=np.int32))[:, None]
    raw = np.bincount(q.ravel(), minlength=width * rows).reshape(rows, width)
    counts = raw[:, :p].astype(np.int64)
    counts[:, : p - 1] += raw[:, p:]
    counts[:, 0] += 1  # x = 0
    return counts


def exp_sum_exact(a: FieldElem, b: FieldElem, params: SeqParams) -> CycInt:
    """E(a,b) by summing w^q(x) over every x, as a cyclotomic integer."""
    ctx = context(params, a.field)
    counts = exp_sum_counts([ctx.ar.log(a)], [ctx.ar.log(b)], ctx)[0]
    return CycInt.from_counts(counts)


# --- Gram matrix and congruence diagonalisation -----------------------------------


def gram_matrix(a: FieldElem, b: FieldElem, params: SeqParams) -> np.ndarray:
    """Symmetric coefficient matrix of q_{a,b} in the power basis 1, alpha, ..., alpha^(n-1)."""
    F = a.field
    p, n = F.p, F.n
    inv2 = pow(2, -1, p)
    basis = [F.elem([0] * i + [1]) for i in range(n)]
    diag = [eval_qform(a, b, x, params) for x in basis]
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        A[i, i] = diag[i]
        for j in range(i + 1, n):
            cross = eval_qform(a, b, basis[i] + basis[j], params)
            A[i, j] = A[j, i] = (cross - diag[i] - diag[j]) * inv2 % p
    return A


def rank_and_sign(A, p: int) -> tuple[int, int]:
    """Rank r and eta_p(Delta) of a symmetric matrix over F_p (p odd).

    Congruence-diagonalises A; Delta is the product of the nonzero pivots.
    """
    M = [[int(v) % p for v in row] for row in np.asarray(A)]
    n = len(M)
    delta, rank = 1, 0
    for i in range(n):
        piv = next((j for j in range(i, n) if M[j][j]), None)
        if piv is None:
            hit = next(((r, c) for r in range(i, n) for c in range(r + 1, n) if M[r][c]), None)
            if hit is None:
                break
            r, c = hit
            # x_r -> x_r + x_c gives M[r][r] = 2 M[r][c] != 0 (diagonal block is zero)
            for t in range(n):
                M[r][t] = (M[r][t] + M[c][t]) % p
            for t in range(n):
                M[t][r] = (M[t][r] + M[t][c]) % p
            piv = r
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            for row in M:
                row[i], row[piv] = row[piv], row[i]
        d = M[i][i]
        dinv = pow(d, -1, p)
        for r in range(i + 1, n):
            f = M[r][i] * dinv % p
            if f:
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[i])]
        for r in range(i + 1, n):
            M[r][i] = 0
        for c in range(i + 1, n):
            M[i][c] = 0
        delta = delta * d % p
        rank += 1
    return rank, legendre(delta, p)


def sum_from_rank(rank: int, det_class: int, params: SeqParams) -> QuadValue:
    """eta(Delta) * p^(n - r/2) as u + v*sqrt(p)."""
    p, n = params.p, params.n
    if rank % 2 == 0:
        return QuadValue.of(p, det_class * p ** (n - rank // 2), 0)
    return QuadValue.of(p, 0, det_class * p ** (n - (rank + 1) // 2))


def exp_sum(a: FieldElem, b: FieldElem, params: SeqParams, method: str = "direct") -> QuadValue:
    if method == "direct":
        return recognize_quadratic(exp_sum_exact(a, b, params))
    if method == "rank_sign":
        r, s = rank_and_sign(gram_matrix(a, b, params), params.p)
        return sum_from_rank(r, s, params)
    raise ValueError(f"unknown method {method!r}")


# --- the radical: linearised polynomial kernel -----------------------------------


def _linearized_coeffs(a_log: int, b_log: int, ctx: _Context) -> tuple[int, int, int]:
    ar, m, e = ctx.ar, ctx.params.m, ctx.params.e
    top = ar.frob(b_log, m + e)
    mid = ar.add(ar.frob(a_log, m + e), ar.frob(a_log, e))
    return top, mid, b_log


def kernel_size_logs(a_log: int, b_log: int, ctx: _Context) -> int:
    if a_log == ZERO and b_log == ZERO:
        raise QFormError("a and b are both zero")
    ar, params, F = ctx.ar, ctx.params, ctx.F
    p, e, k = params.p, params.e, ctx.k
    top, mid, low = _linearized_coeffs(a_log, b_log, ctx)
    qe, q2e = p**e, p ** (2 * e)
    images = []
    for j in range(k):
        img = ar.add(ar.add(ar.mul(top, j * q2e % ar.N), ar.mul(mid, j * qe % ar.N)), ar.mul(low, j))
        images.append(img)
    idx = np.array([0 if v == ZERO else int(F.powers[v]) for v in images], dtype=np.int64)
    lam = ctx.sub_coords(idx)  # lam[j, i]: coordinate i of L(alpha^j)
    rank = log_rank(lam.T.tolist(), ar)
    return qe ** (k - rank)


def kernel_size(a: FieldElem, b: FieldElem, params: SeqParams) -> int:
    """Number of roots in GF(p^n) of the linearised radical equation, via GF(p^e) elimination."""
    ctx = context(params, a.field)
    return kernel_size_logs(ctx.ar.log(a), ctx.ar.log(b), ctx)


def kernel_roots(a: FieldElem, b: FieldElem, params: SeqParams) -> list[FieldElem]:
    """Every root of the linearised radical map, by evaluating it at each y."""
    ctx = context(params, a.field)
    F, ar = ctx.F, ctx.ar
    top, mid, low = _linearized_coeffs(ar.log(a), ar.log(b), ctx)
    p, e, N = params.p, params.e, F.order
    ks = np.arange(N, dtype=np.int64)
    acc = np.zeros((N, F.n), dtype=np.int64)
    for coeff, expo in ((top, p ** (2 * e)), (mid, p**e), (low, 1)):
        if coeff != ZERO:
            acc += F.digits(F.powers[(coeff + ks * expo) % N])
    hits = ks[(acc % p).sum(axis=1) == 0]
    return [F.zero] + [F.alpha_pow(int(k)) for k in hits]


def kernel_size_exhaustive(a: FieldElem, b: FieldElem, params: SeqParams) -> int:
    return len(kernel_roots(a, b, params))


def rank_from_kernel(size: int, params: SeqParams) -> int:
    k, p = 0, params.p
    while p**k < size:
        k += 1
    if p**k != size:
        raise QFormError(f"kernel size {size} is not a power of {p}")
    return params.n - k


def analyze(a: FieldElem, b: FieldElem, params: SeqParams) -> QFormAnalysis:
    ks = kernel_size(a, b, params)
    rank, det = rank_and_sign(gram_matrix(a, b, params), params.p)
    if rank != rank_from_kernel(ks, params):
        raise QFormError(f"Gram rank {rank} disagrees with kernel rank {rank_from_kernel(ks, params)}")
    return QFormAnalysis(a, b, ks, rank, det, sum_from_rank(rank, det, params))


class GramFamily:
    """Gram matrices of q_{a,b} for fixed a, as an affine function of b's coordinates."""

    def __init__(self, a: FieldElem, params: SeqParams):
        F = a.field
        self.p = F.p
        self.base = gram_matrix(a, F.zero, params)
        self.slopes = np.stack([gram_matrix(F.zero, F.elem([0] * j + [1]), params) for j in range(F.n)])

    def matrices(self, b_coords: np.ndarray) -> np.ndarray:
        """Stacked Gram matrices for rows of b-coordinates."""
        b_coords = np.atleast_2d(b_coords)
        return (self.base[None] + np.einsum("bj,jkl->bkl", b_coords, self.slopes)) % self.p


# --- Gauss sums ------------------------------------------------------------------


def gauss_sum_audit(params: SeqParams, field: FieldDesc, samples: int | None = None) -> list[Audit]:
    """Quadratic Gauss sum over GF(p^n) and the twisted sums sum_x chi(a x^2)."""
    _check_field(params, field)
    p, pm, N = params.p, params.pm, field.order
    tr = field.trace_of_power
    even = np.arange(N) % 2 == 0
    counts = np.bincount(tr[even], minlength=p) - np.bincount(tr[~even], minlength=p)
    G = recognize_quadratic(CycInt.from_counts(counts))
    audits = [Audit.compare("gauss_sum G(eta,chi)", G, QuadValue.of(p, -pm))]
    ks = np.arange(N, dtype=np.int64)
    logs = range(N) if samples is None else np.linspace(0, N - 1, samples, dtype=np.int64)
    bad = []
    for la in logs:
        vals = tr[(int(la) + 2 * ks) % N]
        c = np.bincount(vals, minlength=p)
        c[0] += 1  # x = 0
        got = recognize_quadratic(CycInt.from_counts(c))
        want = QuadValue.of(p, (1 if la % 2 else -1) * pm)
        if got != want:
            bad.append(int(la))
    audits.append(Audit("sum chi(a x^2) = -eta(a) p^m", not bad,
                        f"{len(bad)} failures of {len(logs)}", "0 failures"))
    return audits


# --- the trinomial z^(p^e+1) - v z + v --------------------------------------------


def g_upsilon_root_count(v: FieldElem, params: SeqParams, *, return_roots: bool = False):
    """Roots of z^(p^e+1) - v z + v in GF(p^n), by exhaustive evaluation."""
    if v.is_zero():
        raise QFormError("v must be nonzero")
    F = v.field
    p, N, pe = F.p, F.order, params.pe
    ks = np.arange(N, dtype=np.int64)
    lv = int(F.dlog_table[v.index])
    total = F.digits(F.powers[(ks * (pe + 1)) % N])
    total -= F.digits(F.powers[(lv + ks) % N])
    total += np.asarray(v.coords)
    roots = [F.alpha_pow(int(k)) for k in ks[(total % p).sum(axis=1) == 0]]
    # z = 0 gives g(0) = v != 0
    roots.sort(key=lambda z: z.index)
    return (len(roots), roots) if return_roots else len(roots)


def trinomial_root_census(params: SeqParams, field: FieldDesc) -> np.ndarray:
    """Root count for every v, indexed by dlog(v).

    A root z != 0, 1 forces v = z^(p^e+1)/(z-1), so each such z is a root for
    exactly one v; counting preimages counts all roots.
    """
    F, N, pe = field, field.order, params.pe
    ks = np.arange(N, dtype=np.int64)
    zm1 = F.digits(F.powers)
    zm1[:, 0] = (zm1[:, 0] - 1) % F.p
    zm1_idx = F.encode(zm1)
    keep = zm1_idx != 0
    v_log = (ks[keep] * (pe + 1) - F.dlog_table[zm1_idx[keep]]) % N
    return np.bincount(v_log, minlength=N)


def single_root_power_condition(z0: FieldElem, params: SeqParams) -> bool:
    """(z0 - 1)^((p^n - 1)/(p^e - 1)) = 1."""
    F = z0.field
    return (z0 - 1) ** (F.order // (params.pe - 1)) == F.one


def is_square(x: FieldElem) -> bool:
    return quad_char(x) == 1
