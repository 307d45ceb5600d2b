"""Parameters, m-sequences, decimation and the definitional correlation sweep."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np
from sympy import isprime

from .cyclotomic import CycInt
from .ffield import FieldDesc, FieldError, build_field


class ParamError(ValueError):
    """Parameters outside the supported (p, m, e) regime."""


@dataclass(frozen=True)
class SeqParams:
    p: int
    m: int
    e: int

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def pm(self) -> int:
        return self.p**self.m

    @property
    def pe(self) -> int:
        return self.p**self.e

    @property
    def period(self) -> int:
        return self.p**self.n - 1

    @property
    def d(self) -> int:
        return (self.pm + 1) ** 2 // (2 * (self.pe + 1))

    @property
    def gcd_dn(self) -> int:
        return gcd(self.d, self.period)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.p, self.m, self.e


def validate_params(p: int, m: int, e: int) -> SeqParams:
    """Check (p, m, e) and the arithmetic facts the correlation analysis relies on."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise ParamError(f"p = {p} must be prime")
    if p % 4 != 1:
        raise ParamError(f"p = {p} violates p = 1 (mod 4)")
    if m < 1 or m % 2 == 0:
        raise ParamError(f"m = {m} must be an odd positive integer")
    if e < 1 or m % e:
        raise ParamError(f"e = {e} must be a positive divisor of m = {m}")
    params = SeqParams(p, m, e)
    pm, pe, N = params.pm, params.pe, params.period
    num, den = (pm + 1) ** 2, 2 * (pe + 1)
    if num % den:
        raise ParamError(f"d = {num}/{den} is not an integer")
    d = params.d
    if d % 2 == 0:
        raise ParamError(f"d = {d} is even")
    if params.gcd_dn != (pm + 1) // 2 or ((pm + 1) // 2) % 2 == 0:
        raise ParamError(f"gcd(d, p^n-1) = {params.gcd_dn}, expected odd (p^m+1)/2")
    if (d * (p ** (params.m + e) + 1) - (pm + 1)) % N:
        raise ParamError("d(p^(m+e)+1) is not congruent to p^m+1 mod p^n-1")
    return params


def field_for(params: SeqParams, **kwargs) -> FieldDesc:
    return build_field(params.p, params.n, **kwargs)


def _check_field(params: SeqParams, field: FieldDesc) -> None:
    if (field.p, field.n) != (params.p, params.n):
        raise FieldError(f"field GF({field.p}^{field.n}) does not match params {params.as_tuple()}")


def m_sequence(params: SeqParams, field: FieldDesc) -> np.ndarray:
    """``s_t = Tr(alpha^t)`` for one full period."""
    _check_field(params, field)
    return field.trace_of_power.copy()


def decimated_sequence(seq: np.ndarray, d: int) -> np.ndarray:
    N = len(seq)
    return seq[(d * np.arange(N, dtype=np.int64)) % N]


def least_period(seq: np.ndarray) -> int:
    N = len(seq)
    for q in sorted(k for k in range(1, N + 1) if N % k == 0):
        if np.array_equal(seq, np.roll(seq, -q)):
            return q
    return N  # pragma: no cover


def correlation_histograms(s: np.ndarray, sd: np.ndarray, p: int, taus: Iterable[int],
                           block: int = 64) -> np.ndarray:
    """Row k counts ``s_{t+tau} - s_{dt} = j (mod p)`` over t, for each tau."""
    taus = np.asarray(list(taus), dtype=np.int32)
    N = len(s)
    s2 = np.concatenate([s, s]).astype(np.int32)
    neg_sd = ((p - sd) % p).astype(np.int32)
    t = np.arange(N, dtype=np.int32)
    width = 2 * p - 1
    out = np.zeros((len(taus), p), dtype=np.int64)
    for start in range(0, len(taus), block):
        chunk = taus[start:start + block]
        # s_{t+tau} + (p - s_dt) lies in [0, 2p-2]; fold mod p after counting
        diff = s2[t[None, :] + chunk[:, None]] + neg_sd[None, :]
        diff += (width * np.arange(len(chunk), dtype=np.int32))[:, None]
        raw = np.bincount(diff.ravel(), minlength=width * len(chunk)).reshape(-1, width)
        out[start:start + len(chunk)] = raw[:, :p]
        out[start:start + len(chunk), : p - 1] += raw[:, p:]
    return out


def _check_tau(params: SeqParams, tau: int) -> None:
    if not 0 <= tau <= params.period - 1:
        raise ParamError(f"shift {tau} outside [0, {params.period - 1}]")


def cross_correlation_direct(params: SeqParams, field: FieldDesc, tau: int,
                             d: int | None = None) -> CycInt:
    """``sum_t w^(s_{t+tau} - s_{dt})`` as an exact cyclotomic integer."""
    _check_tau(params, tau)
    s = m_sequence(params, field)
    sd = decimated_sequence(s, params.d if d is None else d)
    return CycInt.from_counts(correlation_histograms(s, sd, params.p, [tau])[0])


def direct_sweep(params: SeqParams, field: FieldDesc, *, d: int | None = None,
                 threads: int = 1) -> list[CycInt]:
    """Exact correlation for every shift, in shift order."""
    _check_field(params, field)
    s = m_sequence(params, field)
    sd = decimated_sequence(s, params.d if d is None else d)
    N = params.period
    if threads <= 1:
        hist = correlation_histograms(s, sd, params.p, range(N))
    else:
        chunks = np.array_split(np.arange(N), threads * 4)
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: correlation_histograms(s, sd, params.p, c), chunks))
        hist = np.concatenate(parts)
    return [CycInt.from_counts(row) for row in hist]


def direct_sweep_float(params: SeqParams, field: FieldDesc) -> np.ndarray:
    """Floating-point correlation values, one per shift, from a table of w^j."""
    s = m_sequence(params, field)
    sd = decimated_sequence(s, params.d)
    hist = correlation_histograms(s, sd, params.p, range(params.period))
    roots = np.exp(2j * np.pi * np.arange(params.p) / params.p)
    return hist @ roots


def export_sequence(params: SeqParams, seq: np.ndarray) -> str:
    """Plain-text export: a ``# p=.. m=.. e=.. n=.. d=.. period=..`` header, then one residue per line."""
    head = (f"# p={params.p} m={params.m} e={params.e} n={params.n} "
            f"d={params.d} period={params.period}\n")
    return head + "\n".join(str(int(v)) for v in seq) + "\n"


def read_sequence(text: str) -> tuple[dict[str, int], np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = dict(kv.split("=") for kv in lines[0].lstrip("#").split())
    return {k: int(v) for k, v in header.items()}, np.array([int(v) for v in lines[1:]], dtype=np.int64)
