"""Truncated formal power series with exact integer coefficients.

A :class:`ZSeries` stores the coefficients of ``z^0 .. z^(trunc-1)``; every
operation states its output truncation, and operations that lose high-order
information (``shift_down``, ``divide_exact``) shrink ``trunc`` instead of
inventing coefficients.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Sequence


class SeriesError(ValueError):
    """Base class for ring-level failures."""


class TruncMismatch(SeriesError):
    pass


class NotDivisible(SeriesError):
    """Low-order coefficients forbid the requested division."""


class NonUnitDivisor(SeriesError):
    """Leading coefficient of the divisor is not +1 or -1."""


@dataclass(frozen=True)
class ZSeries:
    trunc: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.trunc < 0:
            raise SeriesError("trunc must be non-negative")
        if len(self.coeffs) != self.trunc:
            raise SeriesError(f"expected {self.trunc} coefficients, got {len(self.coeffs)}")

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.trunc

    def __add__(self, other: ZSeries) -> ZSeries:
        return add(self, other)

    def __sub__(self, other: ZSeries) -> ZSeries:
        return sub(self, other)

    def __neg__(self) -> ZSeries:
        return neg(self)

    def __mul__(self, other: ZSeries | int) -> ZSeries:
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def retrunc(self, trunc: int) -> ZSeries:
        """Drop coefficients at and above ``trunc`` (never extends)."""
        if trunc > self.trunc:
            raise SeriesError(f"cannot extend a series known to order {self.trunc} to {trunc}")
        return ZSeries(trunc, self.coeffs[:trunc])

    def __repr__(self) -> str:
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"ZSeries({' + '.join(terms) or '0'} + O(z^{self.trunc}))"


def from_coeffs(c: Iterable[int], trunc: int) -> ZSeries:
    c = tuple(c)
    if len(c) > trunc:
        raise SeriesError(f"{len(c)} coefficients do not fit in trunc {trunc}")
    return ZSeries(trunc, c + (0,) * (trunc - len(c)))


def zero(trunc: int) -> ZSeries:
    return ZSeries(trunc, (0,) * trunc)


def monomial(k: int, trunc: int, c: int = 1) -> ZSeries:
    """``c*z^k``; vanishes when ``k >= trunc``."""
    out = [0] * trunc
    if k < trunc:
        out[k] = c
    return ZSeries(trunc, tuple(out))


def poly(terms: dict[int, int], trunc: int) -> ZSeries:
    """Polynomial from ``{exponent: coefficient}``, truncated."""
    out = [0] * trunc
    for k, c in terms.items():
        if k < trunc:
            out[k] += c
    return ZSeries(trunc, tuple(out))


def _check(a: ZSeries, b: ZSeries) -> None:
    if a.trunc != b.trunc:
        raise TruncMismatch(f"truncation orders differ: {a.trunc} vs {b.trunc}")


def add(a: ZSeries, b: ZSeries) -> ZSeries:
    _check(a, b)
    return ZSeries(a.trunc, tuple(map(operator.add, a.coeffs, b.coeffs)))


def sub(a: ZSeries, b: ZSeries) -> ZSeries:
    _check(a, b)
    return ZSeries(a.trunc, tuple(map(operator.sub, a.coeffs, b.coeffs)))


def neg(a: ZSeries) -> ZSeries:
    return ZSeries(a.trunc, tuple(-c for c in a.coeffs))


def scale(a: ZSeries, c: int) -> ZSeries:
    return ZSeries(a.trunc, tuple(c * x for x in a.coeffs))


def mul_schoolbook(a: ZSeries, b: ZSeries) -> ZSeries:
    """Cauchy product by the quadratic definition."""
    _check(a, b)
    n = a.trunc
    sparse = [(i, x) for i, x in enumerate(a.coeffs) if x]
    other = [(i, x) for i, x in enumerate(b.coeffs) if x]
    if len(other) < len(sparse):
        sparse, other = other, sparse
    out = [0] * n
    for i, x in sparse:
        for j, y in other:
            if i + j >= n:
                break
            out[i + j] += x * y
    return ZSeries(n, tuple(out))


def _pack(cs: Sequence[int], width: int) -> int:
    # sum(c_k << (8*width*k)) for signed c_k; positive and negative parts are
    # packed separately so every slot fits in unsigned bytes.
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in cs)
    negp = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in cs)
    return int.from_bytes(pos, "little") - int.from_bytes(negp, "little")


def mul(a: ZSeries, b: ZSeries) -> ZSeries:
    """Truncated Cauchy product.

    Evaluates both operands at a large power of two (Kronecker substitution),
    multiplies the resulting big integers and reads the coefficients back.
    Each slot is wide enough to hold any product coefficient plus a bias that
    keeps every slot non-negative, so the result is bit-identical to
    :func:`mul_schoolbook`.
    """
    _check(a, b)
    n = a.trunc
    if n == 0:
        return a
    # drop trailing zeros so the big-int product stays small for sparse inputs
    ac, bc = _trim(a.coeffs), _trim(b.coeffs)
    if not ac or not bc:
        return zero(n)
    if min(len(ac), len(bc)) <= 8:
        return mul_schoolbook(a, b)
    bound = max(abs(c) for c in ac) * max(abs(c) for c in bc) * min(len(ac), len(bc))
    bits = bound.bit_length() + 2
    width = (bits + 7) // 8
    prod = _pack(ac, width) * _pack(bc, width)
    keep = min(n, len(ac) + len(bc) - 1)
    half = 1 << (8 * width - 1)
    bias = int.from_bytes(half.to_bytes(width, "little") * keep, "little")
    mask_bytes = width * keep
    raw = ((prod + bias) & ((1 << (8 * mask_bytes)) - 1)).to_bytes(mask_bytes, "little")
    out = [
        int.from_bytes(raw[k * width : (k + 1) * width], "little") - half
        for k in range(keep)
    ]
    return ZSeries(n, tuple(out) + (0,) * (n - keep))


def _trim(cs: tuple[int, ...]) -> tuple[int, ...]:
    end = len(cs)
    while end and not cs[end - 1]:
        end -= 1
    return cs[:end]


def compose_pow(a: ZSeries, k: int, out_trunc: int) -> ZSeries:
    """``a(z^k)`` to order ``out_trunc``."""
    if k < 1:
        raise SeriesError("exponent k must be >= 1")
    need = -(-out_trunc // k)
    if a.trunc < need:
        raise SeriesError(f"need input order {need} for z^{k} up to {out_trunc}, have {a.trunc}")
    out = [0] * out_trunc
    out[::k] = a.coeffs[:need]
    return ZSeries(out_trunc, tuple(out))


def shift_up(a: ZSeries, k: int) -> ZSeries:
    """Multiply by ``z^k``; the top ``k`` coefficients fall off."""
    if k < 0:
        raise SeriesError("shift must be non-negative")
    k = min(k, a.trunc)
    return ZSeries(a.trunc, (0,) * k + a.coeffs[: a.trunc - k])


def shift_down(a: ZSeries, k: int) -> ZSeries:
    """Divide by ``z^k``; result has order ``a.trunc - k``."""
    if k < 0 or k > a.trunc:
        raise SeriesError(f"cannot divide a series of order {a.trunc} by z^{k}")
    if any(a.coeffs[:k]):
        raise NotDivisible(f"series is not divisible by z^{k}: valuation {valuation(a)}")
    return ZSeries(a.trunc - k, a.coeffs[k:])


def valuation(a: ZSeries) -> int:
    for i, c in enumerate(a.coeffs):
        if c:
            return i
    return a.trunc


def divide_exact(a: ZSeries, b: ZSeries) -> ZSeries:
    """Quotient ``q`` with ``q*b == a`` to order ``a.trunc - valuation(b)``.

    The divisor must have a leading coefficient of +1 or -1, which keeps the
    long division inside the integers.
    """
    if a.trunc > b.trunc:
        raise TruncMismatch(f"dividend order {a.trunc} exceeds divisor order {b.trunc}")
    v = valuation(b)
    if v >= b.trunc:
        raise NotDivisible("division by a series with no nonzero stored coefficient")
    lead = b.coeffs[v]
    if lead not in (1, -1):
        raise NonUnitDivisor(f"leading coefficient {lead} is not a unit")
    if valuation(a) < v:
        raise NotDivisible(f"dividend valuation {valuation(a)} below divisor valuation {v}")
    num = a.coeffs[v:]
    den = b.coeffs[v:]
    n = len(num)
    # den reversed, so den[i-j] for j < i is a contiguous slice of rden
    rden = den[::-1]
    base = len(den) - 1
    q: list[int] = []
    for i in range(n):
        acc = num[i]
        if i:
            lo = max(0, i - base)
            acc -= sum(map(operator.mul, q[lo:i], rden[base - i + lo : base]))
        q.append(acc if lead == 1 else -acc)
    return ZSeries(n, tuple(q))


def eq_upto(a: ZSeries, b: ZSeries, n: int) -> tuple[int, int, int] | None:
    """``None`` if coefficients ``0..n-1`` agree, else ``(index, a_k, b_k)``."""
    if n > a.trunc or n > b.trunc or n < 0:
        raise SeriesError(f"cannot compare to order {n} (have {a.trunc}, {b.trunc})")
    for k in range(n):
        if a.coeffs[k] != b.coeffs[k]:
            return k, a.coeffs[k], b.coeffs[k]
    return None
