"""Extension-field arithmetic GF(p^m) with vector and matrix representations.

A field is defined by a primitive polynomial
``P(x) = a_0 + a_1 x + ... + a_{m-1} x^{m-1} + x^m`` over GF(p) and a fixed
primitive root ``z = x mod P(x)``.  Nonzero elements are stored as discrete
logs (powers of z), so multiplication and inversion are exponent arithmetic
and addition goes through precomputed log/antilog tables.

Beyond plain arithmetic this module provides the vectorization machinery:
every element has a coordinate vector over GF(p) (``vector``), every
element acts on those vectors through an m x m matrix over GF(p)
(``operator``, a power of the companion matrix of P), and sets of elements
have a well-defined rank over any intermediate subfield GF(p^s)
(``rank_over_subfield``).
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import (
    DivisionByZero,
    IncompatibleSubfield,
    NotIrreducible,
    NotPrimitive,
    ZeroVector,
)

MAX_FIELD_SIZE = 1 << 16


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), little-endian coefficient lists
# ---------------------------------------------------------------------------

def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, mod, p)


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = (a[i] * inv_lead) % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b != [0]:
        db = len(b) - 1
        if db == 0:
            a, b = b, [0]  # nonzero constant divides everything
            continue
        # a mod b via synthetic division
        r = list(a)
        inv_lead = pow(b[-1], -1, p)
        for i in range(len(r) - 1, db - 1, -1):
            c = (r[i] * inv_lead) % p
            if c:
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - c * b[j]) % p
        a, b = b, _trim(r[:db] if len(r) > db else r)
    return a


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _is_irreducible(poly, p):
    """Rabin test: x^(p^m) == x mod P, and x^(p^(m/q)) - x coprime to P
    for every prime divisor q of m."""
    m = len(poly) - 1
    x = [0, 1]
    xq = _poly_powmod(x, p ** m, poly, p)
    if xq != _poly_mod(x, poly, p):
        return False
    for q in _prime_factors(m):
        h = _poly_powmod(x, p ** (m // q), poly, p)
        g = _poly_gcd(poly, _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# field and elements
# ---------------------------------------------------------------------------

class FieldSpec:
    """GF(p^m) defined by a primitive polynomial.

    Args:
        p: prime characteristic.
        poly: m+1 coefficients a_0..a_m over GF(p), monic (a_m = 1).

    Raises:
        NotIrreducible: the polynomial factors over GF(p).
        NotPrimitive: irreducible, but x has multiplicative order < p^m - 1.
    """

    def __init__(self, p: int, poly) -> None:
        poly = [int(c) % p for c in poly]
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if len(poly) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if poly[-1] != 1:
            raise ValueError("polynomial must be monic")
        self.p = p
        self.poly = tuple(poly)
        self.m = len(poly) - 1
        self.q = p ** self.m
        if self.q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {self.q} exceeds {MAX_FIELD_SIZE}")
        if poly[0] == 0:
            raise NotIrreducible(f"x divides {self._poly_str()}")
        if not _is_irreducible(list(poly), p):
            raise NotIrreducible(f"{self._poly_str()} is reducible over GF({p})")
        # order of x mod P must be p^m - 1: check x^((q-1)/r) != 1 for every
        # prime divisor r (this is the companion-matrix order condition)
        for r in _prime_factors(self.q - 1):
            if _trim(_poly_powmod([0, 1], (self.q - 1) // r, list(poly), p)) == [1]:
                raise NotPrimitive(
                    f"{self._poly_str()} is irreducible but not primitive over GF({p})")
        self._build_tables()

    def _poly_str(self) -> str:
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.poly) if c]
        return " + ".join(terms)

    def _build_tables(self) -> None:
        p, m = self.p, self.m
        exp_table = []
        cur = [0] * m
        cur[0] = 1
        for _ in range(self.q - 1):
            idx = 0
            for c in reversed(cur):
                idx = idx * p + c
            exp_table.append(idx)
            carry = cur[m - 1]
            cur = [((cur[i - 1] if i else 0) - carry * self.poly[i]) % p
                   for i in range(m)]
        if len(set(exp_table)) != self.q - 1:  # pragma: no cover
            raise NotPrimitive("table construction did not exhaust the group")
        log_table: list = [None] * self.q
        for e, idx in enumerate(exp_table):
            log_table[idx] = e
        self.exp_table = exp_table
        self.log_table = log_table

    # -- element constructors ------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, None)

    def one(self) -> "FieldElement":
        return FieldElement(self, 0)

    def zeta(self) -> "FieldElement":
        """The fixed primitive root (x mod P)."""
        return FieldElement(self, 1)

    def element(self, exp) -> "FieldElement":
        """Element from its discrete log; None (or the string "0") is zero."""
        if exp is None or exp == "0":
            return self.zero()
        return FieldElement(self, int(exp) % (self.q - 1))

    def from_index(self, idx: int) -> "FieldElement":
        """Element from its packed coordinate index (base-p digits)."""
        if idx == 0:
            return self.zero()
        return FieldElement(self, self.log_table[idx])

    def from_coords(self, coords) -> "FieldElement":
        """Element with the given GF(p) coordinates b_0..b_{m-1}."""
        idx = 0
        for c in reversed(list(coords)):
            idx = idx * self.p + int(c) % self.p
        return self.from_index(idx)

    def scalar(self, c: int) -> "FieldElement":
        """The base-field scalar c, embedded as c * 1."""
        return self.from_coords([c] + [0] * (self.m - 1))

    def elements(self):
        yield self.zero()
        yield from self.nonzero_elements()

    def nonzero_elements(self):
        for e in range(self.q - 1):
            yield FieldElement(self, e)

    def subfield(self, s: int) -> "SubfieldSpec":
        return SubfieldSpec(self, s)

    # -- structural equality --------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldSpec)
                and self.p == other.p and self.poly == other.poly)

    def __hash__(self) -> int:
        return hash((self.p, self.poly))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "poly": list(self.poly)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return cls(obj["p"], obj["poly"])


class FieldElement:
    """One element of a FieldSpec, stored as a discrete log (None = zero)."""

    __slots__ = ("field", "exp")

    def __init__(self, field: FieldSpec, exp) -> None:
        self.field = field
        self.exp = exp if exp is None else exp % (field.q - 1)

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    @property
    def index(self) -> int:
        """Packed base-p coordinate index."""
        return 0 if self.exp is None else self.field.exp_table[self.exp]

    def coords(self) -> list:
        idx = self.index
        p = self.field.p
        out = []
        for _ in range(self.field.m):
            out.append(idx % p)
            idx //= p
        return out

    def vector(self) -> np.ndarray:
        """Coordinate column over GF(p): the coefficients of 1, z, ..., z^{m-1}."""
        return np.array(self.coords(), dtype=np.int64)

    def operator(self) -> np.ndarray:
        """The m x m multiplication matrix over GF(p): column j is the
        coordinate vector of self * z^j.  These are exactly the powers of
        the companion matrix of the defining polynomial (zero maps to the
        zero matrix)."""
        f = self.field
        mat = np.zeros((f.m, f.m), dtype=np.int64)
        if self.exp is None:
            return mat
        for j in range(f.m):
            mat[:, j] = FieldElement(f, self.exp + j).vector()
        return mat

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise ValueError(f"elements of different fields: {self!r}, {other!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        f = self.field
        if f.p == 2:
            return f.from_index(self.index ^ other.index)
        coords = [(a + b) % f.p for a, b in zip(self.coords(), other.coords())]
        return f.from_coords(coords)

    def __sub__(self, other):
        other = self._check(other)
        f = self.field
        if f.p == 2:
            return f.from_index(self.index ^ other.index)
        coords = [(a - b) % f.p for a, b in zip(self.coords(), other.coords())]
        return f.from_coords(coords)

    def __neg__(self):
        return self.field.zero() - self

    def __mul__(self, other):
        other = self._check(other)
        if self.exp is None or other.exp is None:
            return self.field.zero()
        return FieldElement(self.field, self.exp + other.exp)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def inverse(self) -> "FieldElement":
        if self.exp is None:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.field, -self.exp)

    def __pow__(self, e: int) -> "FieldElement":
        if self.exp is None:
            if e > 0:
                return self.field.zero()
            if e == 0:
                return self.field.one()
            raise DivisionByZero("negative power of zero")
        return FieldElement(self.field, self.exp * e)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.exp == other.exp)

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.poly, self.exp))

    def __str__(self) -> str:
        if self.exp is None:
            return "0"
        if self.exp == 0:
            return "1"
        return f"z^{self.exp}"

    def __repr__(self) -> str:
        return f"{self.field!r}:{self}"

    def to_json(self):
        return "0" if self.exp is None else self.exp


class SubfieldSpec:
    """The subfield GF(p^s) inside GF(p^m), s | m.

    Its multiplicative group is generated by ``generator = z^((p^m-1)/(p^s-1))``
    and ``generator^0 .. generator^(s-1)`` is a GF(p)-basis of the subfield.
    """

    def __init__(self, field: FieldSpec, s: int) -> None:
        if s < 1 or field.m % s != 0:
            raise IncompatibleSubfield(
                f"subfield degree {s} does not divide m={field.m}")
        self.field = field
        self.s = s
        self.order = field.p ** s
        self.exp_step = (field.q - 1) // (self.order - 1)
        self.generator = FieldElement(field, self.exp_step)

    def contains(self, x: FieldElement) -> bool:
        """True iff x = 0 or x^(p^s) = x."""
        if x.field != self.field:
            raise ValueError("element from a different field")
        return x.exp is None or x.exp % self.exp_step == 0

    def basis(self) -> list:
        return [self.generator ** t for t in range(self.s)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubfieldSpec)
                and self.field == other.field and self.s == other.s)

    def __hash__(self) -> int:
        return hash((self.field, self.s))

    def __repr__(self) -> str:
        return f"GF({self.field.p}^{self.s}) in {self.field!r}"


def is_in_subfield(x: FieldElement, sub: SubfieldSpec) -> bool:
    return sub.contains(x)


# ---------------------------------------------------------------------------
# ranks, left operators, subfield coordinates
# ---------------------------------------------------------------------------

def rank_over_subfield(elems, sub: SubfieldSpec) -> int:
    """Dimension over GF(p^s) of the span of the given field elements.

    Computed as the GF(p)-rank of the expanded set {w^t * a_i} for the
    subfield basis w^0..w^(s-1), divided by s.  Zero elements contribute
    nothing; an empty list has rank 0.
    """
    field = sub.field
    exps = []
    for a in elems:
        if a.field != field:
            raise ValueError("elements from different fields")
        if a.exp is not None:
            exps.append(a.exp)
    return _rank_exps(field, exps, sub)


def _rank_exps(field: FieldSpec, exps, sub: SubfieldSpec) -> int:
    """rank_over_subfield on raw discrete logs (all nonzero)."""
    q1 = field.q - 1
    expanded = [(e + t * sub.exp_step) % q1 for e in exps for t in range(sub.s)]
    if field.p == 2:
        r = linalg.bit_rank(field.exp_table[e] for e in expanded)
    else:
        rows = np.array(
            [FieldElement(field, e).coords() for e in expanded], dtype=np.int64)
        r = linalg.rank_mod_p(rows, field.p) if len(rows) else 0
    assert r % sub.s == 0
    return r // sub.s


def find_left_operator(field: FieldSpec, source: np.ndarray,
                       target: np.ndarray) -> FieldElement:
    """The unique nonzero element b with source^T . operator(b) = target^T.

    source and target are nonzero GF(p) coordinate vectors.  Existence and
    uniqueness hold because the p^m - 1 products source^T . operator(.)
    are pairwise distinct, hence exhaust the nonzero row vectors.

    Returns the element b; its matrix is ``b.operator()``.
    """
    source = np.asarray(source, dtype=np.int64) % field.p
    target = np.asarray(target, dtype=np.int64) % field.p
    if not source.any() or not target.any():
        raise ZeroVector("source and target must be nonzero")
    # row i of L is source^T . operator(z^i); solving x^T L = target^T gives
    # the coordinates of b = sum x_i z^i
    L = np.zeros((field.m, field.m), dtype=np.int64)
    for i in range(field.m):
        L[i] = source @ FieldElement(field, i).operator() % field.p
    x = linalg.solve_mod_p(L.T, target, field.p)
    b = field.from_coords(x)
    assert not b.is_zero
    return b


def subfield_coords(x: FieldElement, sub: SubfieldSpec) -> list:
    """Coordinates of x over GF(p^s) in the basis 1, z, ..., z^(m/s - 1).

    Returns m/s subfield elements c_j with x = sum c_j z^j.  For s = 1 this
    is the usual coordinate vector with entries embedded as field elements.
    """
    field = sub.field
    alpha = field.m // sub.s
    # tower basis z^j * w^t as GF(p) columns
    T = np.zeros((field.m, field.m), dtype=np.int64)
    cols = [FieldElement(field, j) * (sub.generator ** t)
            for j in range(alpha) for t in range(sub.s)]
    for c, el in enumerate(cols):
        T[:, c] = el.vector()
    coeffs = linalg.solve_mod_p(T, x.vector(), field.p)
    out = []
    for j in range(alpha):
        c = field.zero()
        for t in range(sub.s):
            c = c + field.scalar(int(coeffs[j * sub.s + t])) * (sub.generator ** t)
        out.append(c)
    return out
