"""Exact arithmetic in GF(p^m).

Field elements are encoded as integer *codes*: the element
``c0 + c1*w + ... + c(m-1)*w^(m-1)`` (``w`` a root of the modulus) has code
``c0 + c1*p + ... + c(m-1)*p^(m-1)``.  Prime-field elements therefore have
codes ``0..p-1`` and integers embed by reduction mod p.

All bulk operations act on numpy integer arrays of codes.  Matrix products
are carried out in float64 BLAS on residues (exact, because every partial sum
stays far below 2**53) and reduced afterwards; for m > 1 the product is split
into base-p digit layers.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError

_TABLE_LIMIT = 1024
_FLOAT_EXACT = 2**52


# ---------------------------------------------------------------------------
# polynomials over GF(p) as little-endian int lists (used for setup only)


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = _trim(list(f))
    g = _trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], p - 2, p)
    q = [0] * max(len(f) - len(g) + 1, 1)
    while len(f) >= len(g) and f:
        shift = len(f) - len(g)
        c = f[-1] * inv_lead % p
        q[shift] = c
        for k, gk in enumerate(g):
            f[shift + k] = (f[shift + k] - c * gk) % p
        _trim(f)
    return _trim(q), f


def _poly_mulmod(f: list[int], g: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(f) + len(g))
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                prod[i + j] = (prod[i + j] + fi * gj) % p
    return _poly_divmod(prod, mod, p)[1]


def _poly_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _poly_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    A degree-m polynomial is irreducible iff it shares no factor with
    ``x^(p^k) - x`` for every ``1 <= k < m``.
    """
    f = _trim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xpow = [0, 1]
    for _ in range(1, m):
        # xpow <- xpow^p mod f
        acc = [1]
        base = xpow
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        xpow = acc
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(f, diff, p)) > 1:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def multiplicative_order(a: int, t: int) -> int:
    if t == 1:
        return 1
    if math.gcd(a, t) != 1:
        raise FieldError(f"{a} is not a unit modulo {t}")
    k, x = 1, a % t
    while x != 1:
        x = x * a % t
        k += 1
    return k


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------


class Field:
    """The finite field GF(p^m) together with a chosen primitive t-th root of unity.

    Use :func:`field_make` to construct; the constructor assumes its inputs
    are already validated.
    """

    def __init__(self, p: int, modulus: Sequence[int], t: int = 1, xi_code: int | None = None):
        self.p = p
        self.modulus = tuple(int(c) % p for c in modulus)
        self.m = len(self.modulus) - 1
        self.q = p**self.m
        self.t = t
        self._pows = np.array([p**k for k in range(self.m)], dtype=np.int64)
        # reduction of w^k, k < 2m-1, in the power basis
        red = np.zeros((max(2 * self.m - 1, 1), self.m), dtype=np.int64)
        cur = [0] * self.m
        cur[0] = 1
        for k in range(red.shape[0]):
            red[k] = cur
            # multiply cur by w
            top = cur[-1]
            cur = [0] + cur[:-1]
            for d in range(self.m):
                cur[d] = (cur[d] - top * self.modulus[d]) % p
        self._red = red
        self._build_tables()
        self._xi_code = 1 if xi_code is None else xi_code

    # -- construction helpers -------------------------------------------------

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        if self.m == 1:
            self._mul_tab = self._add_tab = None
            self._neg = (-np.arange(p)) % p
            inv = np.zeros(p, dtype=np.int64)
            for a in range(1, p):
                inv[a] = pow(a, p - 2, p)
            self._inv = inv
            return
        codes = np.arange(q, dtype=np.int64)
        if q <= _TABLE_LIMIT:
            self._add_tab = self._add_digits(codes[:, None], codes[None, :])
            self._mul_tab = self._mul_digits(codes[:, None], codes[None, :])
        else:
            self._add_tab = self._mul_tab = None
        self._neg = self.from_digits((-self.to_digits(codes)) % p)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = self._pow_code(a, q - 2)
        self._inv = inv

    # -- digits ------------------------------------------------------------------

    def to_digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pows) % self.p

    def from_digits(self, d) -> np.ndarray:
        return np.asarray(d, dtype=np.int64) @ self._pows

    def _add_digits(self, a, b):
        return self.from_digits((self.to_digits(a) + self.to_digits(b)) % self.p)

    def _mul_digits(self, a, b):
        da, db = self.to_digits(a), self.to_digits(b)
        shape = np.broadcast_shapes(da.shape[:-1], db.shape[:-1])
        prod = np.zeros(shape + (2 * self.m - 1,), dtype=np.int64)
        for r in range(self.m):
            for s in range(self.m):
                prod[..., r + s] += da[..., r] * db[..., s]
        return self.from_digits((prod % self.p) @ self._red % self.p)

    # -- vectorised arithmetic on code arrays ---------------------------------

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._add_tab[a, b]
        return self._add_digits(a, b)

    def neg(self, a) -> np.ndarray:
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub(self, a, b) -> np.ndarray:
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        if self._mul_tab is not None:
            return self._mul_tab[a, b]
        return self._mul_digits(a, b)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._inv[a]

    def sum(self, a, axis=None) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1 or self._in_prime_field(a):
            return a.sum(axis=axis) % self.p
        d = self.to_digits(a)
        if axis is None:
            return self.from_digits(d.reshape(-1, self.m).sum(axis=0) % self.p)
        axis = axis % a.ndim
        return self.from_digits(d.sum(axis=axis) % self.p)

    def segment_sum(self, values, segments, nseg: int) -> np.ndarray:
        """Sum the rows of ``values`` grouped by ``segments`` into ``nseg`` rows."""
        values = np.asarray(values, dtype=np.int64)
        segments = np.asarray(segments, dtype=np.int64)
        out = np.zeros((nseg,) + values.shape[1:], dtype=np.int64)
        if segments.size == 0:
            return out
        order = np.argsort(segments, kind="stable")
        segments = segments[order]
        values = values[order]
        uniq, starts = np.unique(segments, return_index=True)
        if self.m == 1 or self._in_prime_field(values):
            out[uniq] = np.add.reduceat(values, starts, axis=0) % self.p
            return out
        d = np.add.reduceat(self.to_digits(values), starts, axis=0) % self.p
        out[uniq] = self.from_digits(d)
        return out

    def _in_prime_field(self, a: np.ndarray) -> bool:
        return a.size == 0 or int(a.max(initial=0)) < self.p

    def matmul(self, a, b) -> np.ndarray:
        """Exact matrix product over the field (2-D operands or a 1-D vector)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        k = a.shape[-1]
        if k == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return np.zeros(shape, dtype=np.int64)
        p = self.p
        if k * (p - 1) ** 2 * max(self.m, 1) * 2 >= _FLOAT_EXACT:
            raise FieldError("inner dimension too large for exact float accumulation")
        if self.m == 1 or (self._in_prime_field(a) and self._in_prime_field(b)):
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return np.fmod(prod, p).astype(np.int64)
        da = self.to_digits(a).astype(np.float64)
        db = self.to_digits(b).astype(np.float64)
        m = self.m
        layers = []
        for deg in range(2 * m - 1):
            acc = None
            for r in range(max(0, deg - m + 1), min(deg, m - 1) + 1):
                term = da[..., r] @ db[..., deg - r]
                acc = term if acc is None else acc + term
            layers.append(np.fmod(acc, p))
        layers = np.stack(layers, axis=-1)
        digits = np.fmod(layers @ self._red.astype(np.float64), p).astype(np.int64)
        return self.from_digits(digits)

    def kron(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.mul(a[:, None, :, None], b[None, :, None, :])
        return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        result = self.eye(a.shape[0])
        base = a
        while e:
            if e & 1:
                result = self.matmul(result, base)
            e >>= 1
            if e:
                base = self.matmul(base, base)
        return result

    # -- scalar (python int code) arithmetic ----------------------------------

    def _pow_code(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_code(result, base)
            base = self._mul_code(base, base)
            e >>= 1
        return result

    def _mul_code(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if getattr(self, "_mul_tab", None) is not None:
            return int(self._mul_tab[a, b])
        return int(self._mul_digits(a, b))

    # -- element API -------------------------------------------------------------

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError("scalar belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return Scalar(self, int(value) % self.p)
        if isinstance(value, str):
            return parse_scalar(self, value)
        if isinstance(value, (list, tuple)):
            if len(value) != self.m:
                raise FieldError(f"expected {self.m} coefficients, got {len(value)}")
            return Scalar(self, int(self.from_digits([int(c) % self.p for c in value])))
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def from_code(self, code: int) -> "Scalar":
        return Scalar(self, int(code))

    def code(self, value) -> int:
        """Code of anything convertible to a field element."""
        return self(value).code

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, 1)

    @property
    def xi(self) -> "Scalar":
        return Scalar(self, self._xi_code)

    @property
    def gen(self) -> "Scalar":
        """The class of ``w`` in GF(p)[w]/(modulus)."""
        return Scalar(self, self.p % self.q if self.m > 1 else 0)

    def elements(self) -> list["Scalar"]:
        return [Scalar(self, c) for c in range(self.q)]

    def pth_root(self, x) -> "Scalar":
        return pth_root(self(x))

    def _key(self):
        return (self.p, self.modulus, self.t, self._xi_code)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}) mod {self.modulus}"


class Scalar:
    """An element of a :class:`Field`.  Immutable."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def coeffs(self) -> list[int]:
        return [int(c) for c in self.field.to_digits(self.code)]

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError("mixing scalars from different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, code) -> "Scalar":
        return Scalar(self.field, int(code))

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(c, self.code))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self._wrap(self.field._mul_code(self.code, c))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._wrap(self.field._inv[self.code])

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self * Scalar(self.field, c).inverse()

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return Scalar(self.field, c) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.field._pow_code(self.code, e))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def literal(self) -> str:
        """The CLI literal: an integer in a prime field, else a coefficient list."""
        if self.field.m == 1:
            return str(self.code)
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        if self.field.m == 1:
            return str(self.code)
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"


def parse_scalar(field: Field, text: str) -> Scalar:
    """Parse a scalar literal: ``"2"`` or ``"c0,c1,...,c(m-1)"``."""
    text = text.strip()
    if "," in text:
        parts = [s.strip() for s in text.split(",")]
        try:
            coeffs = [int(s) for s in parts]
        except ValueError as exc:
            raise FieldError(f"bad scalar literal {text!r}") from exc
        if len(coeffs) != field.m:
            raise FieldError(f"scalar literal {text!r} needs {field.m} coefficients")
        return field(coeffs)
    try:
        return field(int(text))
    except ValueError as exc:
        raise FieldError(f"bad scalar literal {text!r}") from exc


def pth_root(x: Scalar) -> Scalar:
    """The unique p-th root ``x^(p^(m-1))`` of ``x``."""
    f = x.field
    return x ** (f.p ** (f.m - 1))


def field_make(p: int, t: int = 1) -> Field:
    """Smallest field GF(p^m) containing a primitive t-th root of unity.

    The modulus is the first irreducible monic polynomial of degree m when the
    coefficient vectors are ordered by their code; the root of unity is the
    first element of exact order t in code order.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise FieldError(f"p={p} is not prime")
    if t < 1:
        raise FieldError("t must be positive")
    if t % p == 0:
        raise FieldError(f"p={p} divides t={t}")
    p, t = int(p), int(t)
    m = multiplicative_order(p, t)
    if p**m > 1 << 16:
        raise FieldError(f"GF({p}^{m}) is larger than supported")
    modulus = None
    for code in range(p**m):
        low = [(code // p**k) % p for k in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            modulus = cand
            break
    assert modulus is not None
    field = Field(p, modulus, t)
    primes = _prime_factors(t)
    xi = None
    for code in range(1, field.q):
        if field._pow_code(code, t) != 1:
            continue
        if all(field._pow_code(code, t // r) != 1 for r in primes):
            xi = code
            break
    if xi is None:
        raise FieldError(f"no element of order {t} in GF({p}^{m})")
    field._xi_code = xi
    return field


def as_codes(field: Field, values: Iterable) -> np.ndarray:
    return np.array([field.code(v) for v in values], dtype=np.int64)
