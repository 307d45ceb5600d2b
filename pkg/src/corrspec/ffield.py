"""Prime-power fields GF(p^n) with a canonical primitive modulus.

Elements are dense coordinate vectors over the power basis 1, a, ..., a^(n-1)
where ``a`` is the root of the modulus.  Every element also has an integer
*index* ``sum(c_i * p**i)``, which is what the lookup tables are keyed by.

The tables built at construction time (powers of the generator, discrete
logs, Zech logs) are numpy arrays; the vectorised helpers at the bottom of
:class:`FieldDesc` are what the correlation sweeps run on.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path

import numpy as np
from sympy import factorint, isprime, primitive_root

log = logging.getLogger(__name__)

DEFAULT_CAP = 2**24
CACHE_FORMAT_VERSION = 1


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


class CapExceededError(FieldError):
    """p^n is above the table cap; use no-dlog mode or raise the cap."""


# --- polynomials over F_p, coefficient lists low -> high -----------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(a, b, f, p):
    """Product of ``a`` and ``b`` reduced modulo the monic polynomial ``f``."""
    n = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n + 1):
                prod[k - n + j] = (prod[k - n + j] - c * f[j]) % p
    return _trim(prod[:n])


def poly_powmod(a, e, f, p):
    result = [1]
    base = _trim(a)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            a = _trim(a)
        a, b = b, a
    return a


def is_irreducible(f, p):
    """Rabin's test for a monic ``f`` of degree n over F_p."""
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    if poly_powmod(x, p**n, f, p) != x:
        return False
    for q in factorint(n):
        h = poly_powmod(x, p ** (n // q), f, p)
        diff = _trim([(hi - xi) % p for hi, xi in itertools.zip_longest(h, x, fillvalue=0)])
        if len(poly_gcd(f, diff, p)) != 1:
            return False
    return True


def is_primitive(f, p):
    """True when ``f`` is irreducible and its root has order p^n - 1."""
    n = len(f) - 1
    if f[0] == 0 or not is_irreducible(f, p):
        return False
    order = p**n - 1
    x = [0, 1]
    if poly_powmod(x, order, f, p) != [1]:
        return False
    return all(poly_powmod(x, order // q, f, p) != [1] for q in factorint(order))


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least primitive polynomial of degree n over F_p.

    Monic candidates are scanned by ascending ``(c_{n-1}, ..., c_1, c_0)``.
    For n = 1 the modulus is ``x - g`` with g the least primitive root.
    """
    if n == 1:
        g = primitive_root(p)
        return ((-g) % p, 1)
    for high_to_low in itertools.product(range(p), repeat=n):
        f = tuple(reversed(high_to_low)) + (1,)
        if is_primitive(list(f), p):
            return f
    raise FieldError(f"no primitive polynomial of degree {n} over F_{p}")  # pragma: no cover


def format_poly(f) -> str:
    """Render a low->high coefficient list as ``x^2+x+2``."""
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if k == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


# --- field descriptor ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """GF(p^n) with modulus, generator and (optionally) log tables.

    ``powers[k]`` is the index of ``alpha^k``; ``dlog_table[i]`` is the
    exponent of the element with index ``i`` (entry 0 holds the sentinel
    ``order`` and must never be read as a logarithm).
    """

    p: int
    n: int
    modulus: tuple[int, ...]
    powers: np.ndarray | None = dc_field(default=None, repr=False)
    dlog_table: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.p**self.n - 1

    @property
    def size(self) -> int:
        return self.p**self.n

    @property
    def has_tables(self) -> bool:
        return self.dlog_table is not None

    def __repr__(self) -> str:
        return f"FieldDesc(p={self.p}, n={self.n}, modulus={format_poly(self.modulus)})"

    def same_as(self, other: "FieldDesc") -> bool:
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    # element constructors
    def elem(self, coords) -> "FieldElem":
        c = tuple(int(v) % self.p for v in coords)
        if len(c) > self.n:
            raise FieldError("too many coordinates")
        return FieldElem(self, c + (0,) * (self.n - len(c)))

    def from_index(self, idx: int) -> "FieldElem":
        coords = []
        for _ in range(self.n):
            idx, r = divmod(int(idx), self.p)
            coords.append(r)
        return FieldElem(self, tuple(coords))

    def scalar(self, c: int) -> "FieldElem":
        return self.elem([c])

    @property
    def zero(self) -> "FieldElem":
        return self.scalar(0)

    @property
    def one(self) -> "FieldElem":
        return self.scalar(1)

    @property
    def generator(self) -> "FieldElem":
        if self.n == 1:
            return self.scalar(-self.modulus[0])
        return self.elem([0, 1])

    def alpha_pow(self, k: int) -> "FieldElem":
        k %= self.order
        if self.powers is not None:
            return self.from_index(int(self.powers[k]))
        return self.generator ** k

    def elements(self):
        """All field elements in index order."""
        return (self.from_index(i) for i in range(self.size))

    def subfield_generator(self, k: int) -> "FieldElem":
        """Primitive element of the subfield of size p^k (k | n)."""
        if self.n % k:
            raise FieldError(f"{k} does not divide {self.n}")
        return self.alpha_pow(self.order // (self.p**k - 1))

    def in_subfield(self, x: "FieldElem", k: int) -> bool:
        return x.frobenius(k) == x

    # vectorised helpers (need tables)
    def _need_tables(self):
        if not self.has_tables:
            raise FieldError("dlog table absent (field built without tables)")

    def digits(self, idx) -> np.ndarray:
        """Coordinates for an array of indices, shape (..., n)."""
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self._place) % self.p

    def encode(self, coords) -> np.ndarray:
        return (np.asarray(coords, dtype=np.int64) % self.p) @ self._place

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    @cached_property
    def trace_basis(self) -> np.ndarray:
        """Absolute traces of the basis vectors 1, a, ..., a^(n-1)."""
        return np.array([trace(self.elem([0] * i + [1]), 1).coords[0] for i in range(self.n)],
                        dtype=np.int64)

    @cached_property
    def trace_of_power(self) -> np.ndarray:
        """``trace_of_power[k] = Tr(alpha^k)`` for k in [0, order)."""
        self._need_tables()
        return (self.digits(self.powers) @ self.trace_basis) % self.p

    @cached_property
    def trace_of_index(self) -> np.ndarray:
        """Absolute trace of every element, keyed by index."""
        return (self.digits(np.arange(self.size)) @ self.trace_basis) % self.p

    @cached_property
    def zech(self) -> np.ndarray:
        """``zech[k] = dlog(1 + alpha^k)``, or -1 where 1 + alpha^k = 0."""
        self._need_tables()
        d = self.digits(self.powers)
        d[:, 0] = (d[:, 0] + 1) % self.p
        idx = self.encode(d)
        out = self.dlog_table[idx].astype(np.int64)
        out[idx == 0] = -1
        return out

    @cached_property
    def squares_mask(self) -> np.ndarray:
        """Boolean mask over indices: nonzero squares."""
        self._need_tables()
        mask = (self.dlog_table % 2 == 0)
        mask[0] = False
        return mask


@dataclass(frozen=True)
class FieldElem:
    field: FieldDesc = dc_field(repr=False, compare=False)
    coords: tuple[int, ...]

    def __hash__(self):
        return hash((self.field.p, self.coords))

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field.same_as(other.field) and self.coords == other.coords

    def __repr__(self):
        return f"FieldElem({format_poly(self.coords).replace('x', 'a')})"

    @property
    def index(self) -> int:
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other) -> "FieldElem":
        if isinstance(other, int):
            return self.field.scalar(other)
        if not self.field.same_as(other.field):
            raise FieldError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return F.zero
        if F.has_tables:
            k = int(F.dlog_table[self.index]) + int(F.dlog_table[other.index])
            return F.from_index(int(F.powers[k % F.order]))
        return F.elem(poly_mulmod(list(self.coords), list(other.coords), list(F.modulus), F.p))

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        if self.is_zero():
            raise FieldError("inversion of zero")
        return self ** (self.field.order - 1)

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __pow__(self, e: int) -> "FieldElem":
        F = self.field
        if e < 0:
            return self.inv() ** (-e)
        if self.is_zero():
            return F.one if e == 0 else F.zero
        if F.has_tables:
            return F.from_index(int(F.powers[(int(F.dlog_table[self.index]) * e) % F.order]))
        result, base = F.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, k: int = 1) -> "FieldElem":
        """x -> x^(p^k)."""
        return self ** (self.field.p ** (k % self.field.n))


def arith(x: FieldElem, y: FieldElem | int | None, op: str) -> FieldElem:
    """Dispatch ``add|sub|mul|inv|pow|frobenius``; ``y`` is the exponent for pow/frobenius."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "pow":
        return x ** int(y)
    if op == "frobenius":
        return x.frobenius(int(y))
    raise ValueError(f"unknown op {op!r}")


def trace(x: FieldElem, target_degree: int) -> FieldElem:
    """Relative trace from GF(p^n) down to GF(p^target_degree)."""
    n = x.field.n
    if target_degree < 1 or n % target_degree:
        raise FieldError(f"target degree {target_degree} does not divide {n}")
    acc, y = x, x
    for _ in range(n // target_degree - 1):
        y = y.frobenius(target_degree)
        acc = acc + y
    return acc


def quad_char(x: FieldElem) -> int:
    """Quadratic character of GF(p^n): 0, +1 on nonzero squares, -1 otherwise."""
    if x.is_zero():
        return 0
    F = x.field
    if F.has_tables:
        return 1 if int(F.dlog_table[x.index]) % 2 == 0 else -1
    return 1 if x ** (F.order // 2) == F.one else -1


def legendre(a: int, p: int) -> int:
    """Quadratic character of the prime field F_p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def dlog(x: FieldElem) -> int:
    if x.is_zero():
        raise FieldError("dlog of zero")
    x.field._need_tables()
    return int(x.field.dlog_table[x.index])


# --- construction -------------------------------------------------------------


def _power_table(p: int, n: int, modulus) -> np.ndarray:
    """Indices of alpha^0 .. alpha^(p^n - 2), built by block doubling."""
    order = p**n - 1
    # row i of C = coordinates of alpha^(i+1)
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        C[i, i + 1] = 1
    C[n - 1] = [(-c) % p for c in modulus[:n]]
    P = np.zeros((order, n), dtype=np.int64)
    P[0, 0] = 1
    filled, step = 1, C.copy()
    while filled < order:
        take = min(filled, order - filled)
        P[filled:filled + take] = (P[:take] @ step) % p
        filled += take
        step = (step @ step) % p
    return P @ (p ** np.arange(n, dtype=np.int64))


def _dlog_dtype(size: int):
    width = max(1, (int(size).bit_length() + 7) // 8)
    return width, np.dtype(f"<u{width}" if width in (1, 2, 4, 8) else "<u8")


def _cache_path(cache_dir, p, n, modulus) -> Path:
    tag = "-".join(map(str, modulus))
    return Path(cache_dir) / f"dlog_p{p}_n{n}_{tag}.bin"


def _read_cache(path: Path, p: int, n: int, modulus) -> np.ndarray | None:
    try:
        raw = path.read_bytes()
        head, body = raw.split(b"\n", 1)
        meta = json.loads(head)
        if (meta.get("format_version") != CACHE_FORMAT_VERSION or meta["p"] != p
                or meta["n"] != n or tuple(meta["modulus"]) != tuple(modulus)):
            return None
        width = meta["width"]
        size = p**n
        if len(body) != width * size:
            return None
        arr = np.frombuffer(body, dtype=np.uint8).reshape(size, width).astype(np.int64)
        table = (arr * (256 ** np.arange(width, dtype=np.int64))).sum(axis=1)
        if table[1] != 0:
            return None
        return table
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _write_cache(path: Path, p, n, modulus, table: np.ndarray) -> None:
    width, _ = _dlog_dtype(p**n)
    meta = {"format_version": CACHE_FORMAT_VERSION, "p": p, "n": n,
            "modulus": list(modulus), "generator": "root of modulus; dlog base alpha",
            "width": width}
    raw = table.astype("<u8").view(np.uint8).reshape(-1, 8)[:, :width]
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(json.dumps(meta, sort_keys=True).encode() + b"\n" + raw.tobytes())
    os.replace(tmp, path)


def build_field(p: int, n: int, *, cap: int = DEFAULT_CAP, tables: bool = True,
                modulus=None, cache_dir=None) -> FieldDesc:
    """Construct GF(p^n).

    Args:
        p: odd prime.
        n: extension degree, at least 1.
        cap: largest p^n for which tables are built.
        tables: build the power/dlog tables (raises CapExceededError above cap).
        modulus: override the canonical modulus (must be primitive).
        cache_dir: directory for the persisted dlog table.
    """
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise FieldError(f"p = {p} is not an odd prime")
    if n < 1:
        raise FieldError(f"degree n = {n} must be at least 1")
    if tables and p**n > cap:
        raise CapExceededError(f"p^n = {p**n} exceeds cap {cap}; use no-dlog mode or raise the cap")
    if modulus is None:
        modulus = canonical_modulus(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1 or not is_primitive(list(modulus), p):
            raise FieldError(f"{format_poly(modulus)} is not a primitive monic polynomial of degree {n}")
    if not tables:
        return FieldDesc(p, n, modulus)

    path = _cache_path(cache_dir, p, n, modulus) if cache_dir else None
    table = _read_cache(path, p, n, modulus) if path and path.exists() else None
    powers = None
    if table is not None:
        log.debug("dlog cache hit %s", path)
        order = p**n - 1
        powers = np.empty(order, dtype=np.int64)
        powers[table[1:]] = np.arange(1, p**n, dtype=np.int64)
    else:
        powers = _power_table(p, n, modulus)
        table = np.full(p**n, p**n - 1, dtype=np.int64)
        table[powers] = np.arange(p**n - 1, dtype=np.int64)
        if path:
            _write_cache(path, p, n, modulus, table)
    return FieldDesc(p, n, modulus, powers, table)


def cache_status(p: int, n: int, cache_dir, modulus=None) -> str:
    """``hit``, ``miss`` or ``disabled`` for the dlog cache of GF(p^n)."""
    if not cache_dir:
        return "disabled"
    modulus = modulus or canonical_modulus(p, n)
    path = _cache_path(cache_dir, p, n, modulus)
    return "hit" if path.exists() and _read_cache(path, p, n, modulus) is not None else "miss"
