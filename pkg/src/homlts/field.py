"""Exact scalar fields: the rationals and prime fields GF(p), p > 3.

Arrays over a field are plain numpy arrays.  Over GF(p) they hold int64
residues in ``[0, p)``; over the rationals they are object arrays whose
entries are Python ``int`` (integral values) or ``Fraction`` (the rest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

__all__ = [
    "Field",
    "FieldError",
    "FieldMismatchError",
    "QQ",
    "GF",
    "is_prime",
]

# int64 residues are safe while every binary contraction sums fewer than
# 2**23 products of two residues.
_INT64_PRIME_LIMIT = 1 << 20

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (exact below 3.3e24)."""
    if n < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in bases:
        if n % q == 0:
            return n == q
    r, s = n - 1, 0
    while r % 2 == 0:
        r //= 2
        s += 1
    for a in bases:
        x = pow(a, r, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _normalize_rational(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


_normalize_rational_ufunc = np.frompyfunc(_normalize_rational, 1, 1)


@dataclass(frozen=True)
class Field:
    """A field of characteristic 0 (the rationals) or a prime p > 3."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (is_prime(p) and p > 3):
            raise FieldError(f"unsupported characteristic {p}: need 0 or a prime p > 3")

    # -- identity -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def dtype(self):
        if self.characteristic and self.characteristic < _INT64_PRIME_LIMIT:
            return np.int64
        return object

    def __str__(self):
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    __repr__ = __str__

    def require_same(self, other: "Field"):
        if self != other:
            raise FieldMismatchError(f"field mismatch: {self} vs {other}")

    # -- scalars --------------------------------------------------------

    def scalar(self, x):
        """Coerce ``x`` (int, Fraction, or ``"p/q"`` string) into the field."""
        if isinstance(x, str):
            m = _RATIONAL_RE.match(x)
            if m is None:
                raise FieldError(f"cannot parse scalar {x!r}")
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise FieldError(f"zero denominator in {x!r}")
            x = Fraction(num, den)
        elif isinstance(x, (bool, np.bool_)):
            raise FieldError("booleans are not field scalars")
        elif isinstance(x, (Integral, np.integer)):
            x = int(x)
        elif isinstance(x, Rational):
            x = Fraction(x)
        else:
            raise FieldError(f"not an exact scalar: {x!r} ({type(x).__name__})")
        if self.is_rational:
            return _normalize_rational(Fraction(x))
        p = self.characteristic
        x = Fraction(x)
        if x.denominator % p == 0:
            raise FieldError(f"{x} has no image in GF({p})")
        return (x.numerator * pow(x.denominator, -1, p)) % p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return _normalize_rational(Fraction(1) / Fraction(x))
        return pow(int(x), -1, self.characteristic)

    def format(self, x) -> str:
        if self.is_rational:
            x = Fraction(x)
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    # -- arrays ---------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Build a field array from nested lists/arrays of exact scalars."""
        if isinstance(data, np.ndarray) and data.dtype != object:
            if data.dtype.kind not in "iub":
                raise FieldError(f"inexact array dtype {data.dtype}")
            if data.dtype.kind == "b":
                raise FieldError("boolean arrays are not field arrays")
            if self.is_rational:
                return data.astype(object)
            return self.reduce(data.astype(self.dtype))
        arr = np.array(data, dtype=object)
        flat = [self.scalar(x) for x in arr.ravel()]
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = flat if flat else []
        if self.dtype is np.int64:
            out = out.astype(np.int64)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is np.int64:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Bring an arithmetic result back into canonical residues (no-op over Q)."""
        if self.is_rational:
            return arr
        return np.mod(arr, self.characteristic)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Canonical form: residues in [0, p), or integral Fractions demoted to int."""
        if self.is_rational:
            arr = np.asarray(arr, dtype=object)
            if arr.size == 0:
                return arr.copy()
            return _normalize_rational_ufunc(arr).astype(object)
        return self.reduce(np.asarray(arr, dtype=self.dtype))

    def check(self, arr: np.ndarray) -> np.ndarray:
        """Reject arrays whose storage cannot belong to this field."""
        arr = np.asarray(arr)
        if self.dtype is np.int64:
            if arr.dtype != np.int64:
                raise FieldMismatchError(f"array of dtype {arr.dtype} is not over {self}")
        elif arr.dtype != object:
            raise FieldMismatchError(f"array of dtype {arr.dtype} is not over {self}")
        elif not self.is_rational:
            if any(not isinstance(x, int) or not 0 <= x < self.characteristic for x in arr.ravel()):
                raise FieldMismatchError(f"array entries are not residues of {self}")
        return arr

    def einsum(self, subscripts: str, *operands) -> np.ndarray:
        """Exact einsum; operands are contracted pairwise and reduced after each step."""
        if len(operands) <= 2:
            return self.reduce(np.einsum(subscripts, *operands))
        inputs, output = subscripts.split("->")
        specs = inputs.split(",")
        acc, acc_spec = operands[0], specs[0]
        for k in range(1, len(operands)):
            remaining = "".join(specs[k + 1:]) + output
            keep = "".join(
                dict.fromkeys(ch for ch in acc_spec + specs[k] if ch in remaining)
            )
            acc = self.reduce(np.einsum(f"{acc_spec},{specs[k]}->{keep}", acc, operands[k]))
            acc_spec = keep
        return self.reduce(np.einsum(f"{acc_spec}->{output}", acc))

    def matmul(self, a, b) -> np.ndarray:
        return self.reduce(np.asarray(a) @ np.asarray(b))

    def matpow(self, a: np.ndarray, k: int) -> np.ndarray:
        out = self.eye(a.shape[0])
        for _ in range(k):
            out = self.matmul(a, out)
        return out

    def is_zero(self, arr) -> bool:
        return not np.any(np.asarray(arr) != 0)

    def equal(self, a, b) -> bool:
        a, b = np.asarray(a), np.asarray(b)
        return a.shape == b.shape and self.is_zero(self.reduce(a - b))

    def random_array(self, rng: np.random.Generator, shape, bound: int = 3) -> np.ndarray:
        """Random entries: residues over GF(p), small integers in [-bound, bound] over Q."""
        if self.is_rational:
            vals = rng.integers(-bound, bound + 1, size=shape)
            return vals.astype(object) if np.ndim(vals) else int(vals)
        p = self.characteristic
        vals = rng.integers(0, p, size=shape)
        return vals.astype(self.dtype)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
