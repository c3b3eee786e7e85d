"""Stern's diatomic sequence s(n) and the twisted sequence t(n).

Three independent evaluation routes are provided:

* ``stern_range`` / ``twisted_range`` unroll the defining recurrences and act
  as ground truth;
* ``stern`` / ``twisted`` evaluate a product of 2x2 digit matrices along the
  binary expansion of ``n``;
* ``stern_pair`` walks the digits with the two-term recursion
  ``s(2a+x) = s(a) + x*s(a+1)``.

All values are Python ints, so inputs of any size are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

BitString = tuple[int, ...]


def stern_range(limit: int) -> list[int]:
    """Return ``[s(0), ..., s(limit-1)]`` from the recurrence."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    s = [0] * limit
    if limit > 1:
        s[1] = 1
    for k in range(2, limit):
        h = k >> 1
        s[k] = s[h] + s[h + 1] if k & 1 else s[h]
    return s


def twisted_range(limit: int) -> list[int]:
    """Return ``[t(0), ..., t(limit-1)]`` from the recurrence."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    t = [0] * limit
    if limit > 1:
        t[1] = 1
    for k in range(2, limit):
        h = k >> 1
        t[k] = -t[h] - t[h + 1] if k & 1 else -t[h]
    return t


def bits_of(n: int) -> BitString:
    """Binary digits of ``n``, least significant first; ``()`` for zero."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n == 0:
        return ()
    return tuple(1 if c == "1" else 0 for c in reversed(bin(n)[2:]))


def from_bits(bits: Iterable[int]) -> int:
    return sum(b << i for i, b in enumerate(bits))


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def row_times(self, x: int, y: int) -> tuple[int, int]:
        """Row vector ``[x, y]`` multiplied on the left of this matrix."""
        return x * self.a + y * self.c, x * self.b + y * self.d

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)


def transfer_matrix(b: int) -> Mat2:
    """Digit matrix ``[[1, 1-b], [b, 1]]``."""
    if b not in (0, 1) or isinstance(b, bool):
        raise ValueError(f"digit must be 0 or 1, got {b!r}")
    return Mat2(1, 1 - b, b, 1)


def digit_product(bits: Sequence[int]) -> Mat2:
    """``M(b_{m-1}) @ ... @ M(b_1)`` for an LSB-first digit string.

    Materialises the full product; used by tests and small inputs.  The
    evaluators below fold a row vector through the same factors instead.
    """
    p = Mat2.identity()
    for i in range(len(bits) - 2, 0, -1):
        p = p @ transfer_matrix(bits[i])
    return p


def _fold(x: int, y: int, n: int) -> tuple[int, int, int]:
    # Row vector [x, y] times M(b_{m-1}) ... M(b_1), specialised to the digit
    # matrices: b=1 gives [x+y, y], b=0 gives [x, x+y].  Returns (x, y, m).
    digits = bin(n)[3:]  # b_{m-1} ... b_0
    for c in digits[:-1]:
        if c == "1":
            x += y
        else:
            y += x
    return x, y, len(digits)


def stern(n: int) -> int:
    """s(n) by the digit-matrix product (table values for n <= 1)."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n <= 1:
        return n
    x, y, _ = _fold(1, 1, n)
    return x + y if n & 1 else x


def twisted(n: int) -> int:
    """t(n) by the signed digit-matrix product (table values for n <= 1)."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n <= 1:
        return n
    x, y, m = _fold(1, -1, n)
    v = x + y if n & 1 else x
    return -v if m & 1 else v


def stern_pair(n: int) -> tuple[int, int]:
    """Return ``(s(n), s(n+1))`` by descending the binary digits of ``n``."""
    if n < 1:
        raise ValueError("stern_pair requires n >= 1")
    lo, hi = 1, 1  # (s(1), s(2))
    for c in bin(n)[3:]:
        if c == "1":
            lo, hi = lo + hi, hi
        else:
            lo, hi = lo, lo + hi
    return lo, hi


@dataclass(frozen=True)
class Rational:
    num: int
    den: int

    def __post_init__(self) -> None:
        if self.num < 1 or self.den < 1:
            raise ValueError("Rational holds positive numerator and denominator")

    def is_reduced(self) -> bool:
        return gcd(self.num, self.den) == 1

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def rational_at(n: int) -> Rational:
    """The n-th term ``s(n+1)/s(n)`` of the Stern-Brocot enumeration."""
    if n < 1:
        raise ValueError("rational_at requires n >= 1")
    a, b = stern_pair(n)
    return Rational(b, a)


def rationals(count: int) -> list[Rational]:
    """``rational_at(1..count)`` computed from one recurrence table."""
    s = stern_range(count + 2)
    return [Rational(s[n + 1], s[n]) for n in range(1, count + 1)]
