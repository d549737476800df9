"""Exact fields (Q and GF(p)) and the handful of matrix routines the algebra
modules need.

Matrices are numpy arrays.  Over Q they hold ``Fraction`` objects
(``dtype=object``); over GF(p) they hold canonical residues in ``int64``
when p is small enough that a dot product cannot overflow, otherwise Python
ints in an object array.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .reports import MalformedInput

# p*p*4096 < 2**63 keeps int64 matmuls of inner dimension <= 4096 exact
_INT64_PRIME_LIMIT = 46_000


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Base class; use :func:`field` to get an instance."""

    name: str
    dtype: object

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        return self.array(np.zeros(shape, dtype=np.int64))

    def eye(self, k: int) -> np.ndarray:
        return self.array(np.eye(k, dtype=np.int64))

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return self.reduce(a @ b)

    def inv(self, x):
        raise NotImplementedError

    def parse(self, token):
        raise NotImplementedError

    def format(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"field({self.name!r})"


class Rationals(Field):
    name = "Q"
    dtype = object

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        out = np.empty(a.shape, dtype=object)
        flat_in, flat_out = a.reshape(-1), out.reshape(-1)
        for i, v in enumerate(flat_in):
            flat_out[i] = v if isinstance(v, Fraction) else Fraction(v)
        return out

    def inv(self, x):
        return 1 / Fraction(x)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        # clear denominators and multiply integers; int64 when it provably fits
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        A, da = _integerize(a)
        B, db = _integerize(b)
        bound = _max_abs(A) * _max_abs(B) * a.shape[-1]
        if bound < 2 ** 62:
            P = (A.astype(np.int64) @ B.astype(np.int64)).astype(object)
        else:
            P = A @ B
        P = np.asarray(P, dtype=object)
        den = da * db
        # results repeat heavily (mostly 0 and small ints): build each Fraction once
        cache: dict = {}
        flat = P.reshape(-1)
        out = np.empty(flat.shape, dtype=object)
        for i, v in enumerate(flat):
            f = cache.get(v)
            if f is None:
                f = cache[v] = Fraction(int(v), den)
            out[i] = f
        return out.reshape(P.shape)

    def parse(self, token):
        try:
            return Fraction(str(token).strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"not a rational: {token!r}") from None

    def format(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_numerator = np.frompyfunc(lambda v: v.numerator, 1, 1)
_denominator = np.frompyfunc(lambda v: v.denominator, 1, 1)


def _integerize(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer matrix and common denominator with ``a == ints / den``."""
    if a.size == 0:
        return np.zeros(a.shape, dtype=object), 1
    dens = _denominator(a)
    den = 1
    for d in set(dens.reshape(-1).tolist()):
        if d != 1 and den % d:
            den = den * d // gcd(den, d)
    nums = _numerator(a)
    if den == 1:
        return nums, 1
    return nums * (den // dens), den


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(a.max(), -a.min()))


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise MalformedInput(f"{p} is not prime", field="field")
        self.p = p
        self.name = f"Fp:{p}"
        self.dtype = np.int64 if p < _INT64_PRIME_LIMIT else object

    def array(self, data) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype.kind in "iu" and self.dtype is np.int64:
            return data.astype(np.int64) % self.p
        a = np.array(data, dtype=object)
        flat = [int(Fraction(v).numerator * pow(Fraction(v).denominator, -1, self.p))
                if isinstance(v, Fraction) else int(v) for v in a.reshape(-1)]
        out = np.array([v % self.p for v in flat], dtype=self.dtype)
        return out.reshape(a.shape)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def parse(self, token):
        try:
            if isinstance(token, str) and "/" in token:
                num, den = token.split("/")
                return int(num) * pow(int(den), -1, self.p) % self.p
            return int(token) % self.p
        except (ValueError, TypeError):
            raise MalformedInput(f"not a residue: {token!r}") from None

    def format(self, x):
        return int(x) % self.p


def field(descriptor: str | Field) -> Field:
    """Parse ``"Q"`` or ``"Fp:<p>"``."""
    if isinstance(descriptor, Field):
        return descriptor
    d = str(descriptor).strip()
    if d == "Q":
        return Rationals()
    if d.startswith("Fp:"):
        try:
            p = int(d[3:])
        except ValueError:
            raise MalformedInput(f"bad field descriptor {descriptor!r}", field="field") from None
        return PrimeField(p)
    raise MalformedInput(f"bad field descriptor {descriptor!r}", field="field")


# -- elimination --------------------------------------------------------------

def rref(F: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = F.array(a).copy() if a.dtype != F.dtype else a.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = F.reduce(m[r] * F.inv(m[r, c]))
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            m[hit] = F.reduce(m[hit] - np.outer(col[hit], m[r]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(F: Field, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(rref(F, a)[1])


def row_space(F: Field, rows: np.ndarray) -> np.ndarray:
    """Canonical (RREF) basis of the span of ``rows``."""
    if rows.shape[0] == 0:
        return F.zeros((0, rows.shape[1]))
    return rref(F, rows)[0]


def column_space(F: Field, a: np.ndarray) -> np.ndarray:
    """Basis of the image as columns (canonical, from the RREF of the transpose)."""
    return row_space(F, a.T).T


def nullspace(F: Field, a: np.ndarray) -> np.ndarray:
    """Basis of ``{x : a x = 0}`` as columns, one per free variable."""
    rows, cols = a.shape
    if rows == 0:
        return F.eye(cols)
    R, piv = rref(F, a)
    free = [c for c in range(cols) if c not in piv]
    out = F.zeros((cols, len(free)))
    for j, c in enumerate(free):
        out[c, j] = 1
        for i, pc in enumerate(piv):
            out[pc, j] = -R[i, c]
    return F.reduce(out)


def same_span(F: Field, a: np.ndarray, b: np.ndarray) -> bool:
    """Do the column spans of ``a`` and ``b`` coincide?"""
    ra, rb = row_space(F, a.T), row_space(F, b.T)
    return ra.shape == rb.shape and bool(np.all(ra == rb))


def solve(F: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (b may be a matrix), or None."""
    rows, cols = a.shape
    bb = b.reshape(rows, -1)
    aug = np.concatenate([F.array(a), F.array(bb)], axis=1)
    R, piv = rref(F, aug)
    if any(p >= cols for p in piv):
        return None
    x = F.zeros((cols, bb.shape[1]))
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols:]
    return x.reshape((cols,) + b.shape[1:])


def inverse(F: Field, a: np.ndarray) -> np.ndarray | None:
    k = a.shape[0]
    if a.shape != (k, k):
        return None
    if k == 0:
        return F.zeros((0, 0))
    x = solve(F, a, F.eye(k))
    if x is None or rank(F, a) != k:
        return None
    return x


def is_zero(a: np.ndarray) -> bool:
    return bool(np.all(a == 0))


@dataclass(frozen=True)
class Quotient:
    """V / W for W given by an RREF basis; the complement is spanned by the
    standard basis vectors at the non-pivot coordinates."""

    F: Field
    dim: int
    ideal: np.ndarray          # RREF rows spanning W
    pivots: tuple[int, ...]
    keep: tuple[int, ...]      # standard coordinates forming the complement basis

    @classmethod
    def of(cls, F: Field, dim: int, rows: np.ndarray) -> "Quotient":
        if rows.shape[0]:
            R, piv = rref(F, rows)
        else:
            R, piv = F.zeros((0, dim)), []
        piv = tuple(int(c) for c in piv)
        keep = tuple(c for c in range(dim) if c not in piv)
        return cls(F, dim, R, piv, keep)

    @property
    def qdim(self) -> int:
        return len(self.keep)

    def projection(self) -> np.ndarray:
        """Matrix of V -> V/W in the complement basis."""
        F = self.F
        P = F.zeros((self.qdim, self.dim))
        col = {c: j for j, c in enumerate(self.keep)}
        for c, j in col.items():
            P[j, c] = 1
        keep = list(self.keep)
        for i, pc in enumerate(self.pivots):
            P[:, pc] = F.reduce(-self.ideal[i, keep]) if keep else P[:, pc]
        return P

    def section(self) -> np.ndarray:
        """Matrix of the lift V/W -> V onto the complement."""
        L = self.F.zeros((self.dim, self.qdim))
        for j, c in enumerate(self.keep):
            L[c, j] = 1
        return L
