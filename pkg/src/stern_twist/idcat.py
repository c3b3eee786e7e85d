"""Generating series of s and t, and exact checks of their identities.

Every identity is checked over the integers.  Identities with denominators
or negative powers of ``z`` are cross-multiplied first; only the quotient
series U, G and H are produced by actual series division.

All verifiers accept an optional :class:`Tables` holding the sequence values
they read.  Passing deliberately corrupted tables is how the mutation tests
confirm that the checks are sensitive.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Callable

from . import seqcore
from .zseries import (
    ZSeries,
    compose_pow,
    divide_exact,
    eq_upto,
    from_coeffs,
    monomial,
    mul,
    poly,
    shift_up,
    zero,
)


class IdentityId(str, enum.Enum):
    FUNCTIONAL_S = "lemma_2_1_S"
    FUNCTIONAL_T = "lemma_2_1_T"
    T_ITERATED = "lemma_2_2"
    BACHER_PRODUCT = "thm_2_3"
    PARTIAL_SUM = "lemma_2_4"
    TSPP = "lemma_2_5"
    TS_RATIO = "eq_2_2"
    CONJECTURE1 = "thm_1_1"
    CONJECTURE2I = "thm_1_2_i"
    CONJECTURE2II = "thm_1_2_ii"
    PSS = "lemma_3_1"
    LEMMA32 = "lemma_3_2"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Report:
    identity_id: IdentityId
    params: dict[str, int]
    status: str
    effective_order: int
    mismatch: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if (self.status == "fail") != (self.mismatch is not None):
            raise ValueError("a failing report must carry its mismatch, a passing one must not")
        if self.effective_order > self.params.get("N", self.effective_order):
            raise ValueError("effective order exceeds the requested order")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["identity_id"] = self.identity_id.value
        if self.mismatch is not None:
            i, lhs, rhs = self.mismatch
            d["mismatch"] = {"index": i, "lhs": lhs, "rhs": rhs}
        return d

    def __str__(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.identity_id.value:<12} {ps:<16} {self.status.upper():<4} order={self.effective_order}"
        if self.mismatch is not None:
            i, lhs, rhs = self.mismatch
            line += f" first mismatch at {i}: {lhs} != {rhs}"
        return line


@dataclass(frozen=True)
class Tables:
    """Values ``s(0..)`` and ``t(0..)`` read by the series builders."""

    s: tuple[int, ...]
    t: tuple[int, ...] = field(default=())

    def need(self, s_len: int, t_len: int) -> Tables:
        if len(self.s) < s_len or len(self.t) < t_len:
            raise ValueError(
                f"tables too short: need s[{s_len}], t[{t_len}], have s[{len(self.s)}], t[{len(self.t)}]"
            )
        return self


@lru_cache(maxsize=4)
def _default_tables(size: int) -> Tables:
    return Tables(tuple(seqcore.stern_range(size)), tuple(seqcore.twisted_range(size)))


def oracle_tables(s_len: int, t_len: int = 0) -> Tables:
    size = max(s_len, t_len, 16)
    return _default_tables(1 << (size - 1).bit_length())


def _resolve(tables: Tables | None, s_len: int, t_len: int) -> Tables:
    if tables is None:
        return oracle_tables(s_len, t_len)
    return tables.need(s_len, t_len)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# --- named series -----------------------------------------------------------


def gen_S(N: int, tables: Tables | None = None) -> ZSeries:
    if N < 1:
        raise ValueError("order must be >= 1")
    tab = _resolve(tables, N, 0)
    return ZSeries(N, tab.s[:N])


def gen_T(N: int, tables: Tables | None = None) -> ZSeries:
    if N < 1:
        raise ValueError("order must be >= 1")
    tab = _resolve(tables, 0, N)
    return ZSeries(N, tab.t[:N])


def gen_U(N: int, tables: Tables | None = None) -> ZSeries:
    """u(0..N-1), the quotient of ``sum t(3+n) z^n`` by S(z)."""
    tab = _resolve(tables, N + 1, N + 4)
    num = ZSeries(N + 1, tab.t[3 : N + 4])
    return divide_exact(num, gen_S(N + 1, tab))


def gen_G(N: int, tables: Tables | None = None) -> ZSeries:
    """Quotient of ``sum (s(2+n) - s(1+n)) z^n`` by S(z), to order N."""
    tab = _resolve(tables, N + 3, 0)
    num = ZSeries(N + 1, tuple(tab.s[2 + n] - tab.s[1 + n] for n in range(N + 1)))
    return divide_exact(num, gen_S(N + 1, tab))


def gen_H(N: int, tables: Tables | None = None) -> ZSeries:
    """Quotient of ``-sum (t(2+n) + t(1+n)) z^n`` by S(z), to order N."""
    tab = _resolve(tables, N + 1, N + 3)
    num = ZSeries(N + 1, tuple(-(tab.t[2 + n] + tab.t[1 + n]) for n in range(N + 1)))
    return divide_exact(num, gen_S(N + 1, tab))


def bacher_factor(i: int, N: int) -> ZSeries:
    """``1 + z^(2^i) + z^(2^(i+1))``."""
    return poly({0: 1, 1 << i: 1, 2 << i: 1}, N)


def prod_B(e: int, N: int) -> ZSeries:
    """Product of ``bacher_factor(i)`` for ``i < e``; the constant 1 for e=0."""
    if e < 0:
        raise ValueError("e must be >= 0")
    p = monomial(0, N)
    for i in range(e):
        p = mul(p, bacher_factor(i, N))
    return p


def alt_prod_sum(e: int, N: int) -> ZSeries:
    """``sum_{j<e} (-1)^j prod_B(j)``."""
    acc = zero(N)
    p = monomial(0, N)
    for j in range(e):
        acc = acc + p if j % 2 == 0 else acc - p
        p = mul(p, bacher_factor(j, N))
    return acc


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _report(ident: IdentityId, params: dict[str, int], lhs: ZSeries, rhs: ZSeries, n: int) -> Report:
    miss = eq_upto(lhs, rhs, n)
    return Report(ident, params, "pass" if miss is None else "fail", n, miss)


# --- verifiers --------------------------------------------------------------


def verify_functional_S(N: int, tables: Tables | None = None) -> Report:
    """``S(z^2) (1+z+z^2) == z S(z)``."""
    if N < 4:
        raise ValueError("order must be >= 4")
    S = gen_S(N, tables)
    lhs = mul(compose_pow(S, 2, N), bacher_factor(0, N))
    rhs = shift_up(S, 1)
    return _report(IdentityId.FUNCTIONAL_S, {"N": N}, lhs, rhs, N)


def verify_functional_T(N: int, tables: Tables | None = None) -> Report:
    """``T(z^2) (1+z+z^2) == -z (T(z) - 2z)``."""
    if N < 4:
        raise ValueError("order must be >= 4")
    T = gen_T(N, tables)
    lhs = mul(compose_pow(T, 2, N), bacher_factor(0, N))
    rhs = -shift_up(T - monomial(1, N, 2), 1)
    return _report(IdentityId.FUNCTIONAL_T, {"N": N}, lhs, rhs, N)


def _neg_monomial_prod(lo: int, hi: int, N: int) -> ZSeries:
    # prod_{lo <= i < hi} (-z^(2^i)) = (-1)^(hi-lo) z^(2^hi - 2^lo)
    return monomial((1 << hi) - (1 << lo), N, _sign(hi - lo))


def verify_T_iterated(e: int, N: int, tables: Tables | None = None) -> Report:
    """T at ``z^(2^e)`` in terms of T(z), with every denominator cleared."""
    if e < 1:
        raise ValueError("e must be >= 1")
    T = gen_T(N, tables)
    lhs = mul(compose_pow(T, 1 << e, N), prod_B(e, N))
    rhs = mul(T, _neg_monomial_prod(0, e, N))
    below = monomial(0, N)  # prod_{i<j} of the Bacher factors
    for j in range(e):
        term = mul(shift_up(below, 1 << j), _neg_monomial_prod(j, e, N))
        rhs = rhs - 2 * term
        below = mul(below, bacher_factor(j, N))
    return _report(IdentityId.T_ITERATED, {"e": e, "N": N}, lhs, rhs, N)


def verify_bacher_product(e: int, N: int | None = None, tables: Tables | None = None) -> Report:
    """``z (1 + z^(2^e)) prod_B(e) == (-1)^e sum_{n<=3*2^e} t(3*2^e+n) z^n``.

    Both sides are polynomials of degree at most ``3*2^e``; ``N`` defaults to
    the smallest order holding them, so the comparison is a full polynomial
    equality.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    base = 3 << e
    need = base + 2
    N = need if N is None else N
    if N < need:
        raise ValueError(f"order {N} cannot hold the degree-{base} polynomials (need {need})")
    tab = _resolve(tables, 0, 2 * base + 1)
    lhs = shift_up(mul(poly({0: 1, 1 << e: 1}, N), prod_B(e, N)), 1)
    rhs = _sign(e) * from_coeffs(tab.t[base : 2 * base + 1], N)
    return _report(IdentityId.BACHER_PRODUCT, {"e": e, "N": N}, lhs, rhs, N)


def _t_partial(tab: Tables, e: int, N: int) -> ZSeries:
    return from_coeffs(tab.t[: (3 << e) + 1], N)


def _poly_order(e: int, N: int | None) -> int:
    need = (3 << e) + 1
    N = need if N is None else N
    if N < need:
        raise ValueError(f"order {N} cannot hold the degree-{need - 1} polynomials (need {need})")
    return N


def verify_partial_sum(e: int, N: int | None = None, tables: Tables | None = None) -> Report:
    """First expansion of ``sum_{n<=3*2^e} t(n) z^n`` as a polynomial identity."""
    if e < 1:
        raise ValueError("e must be >= 1")
    N = _poly_order(e, N)
    lhs = _t_partial(_resolve(tables, 0, (3 << e) + 1), e, N)
    rhs = poly({1: 1, 2: -1}, N)
    p = monomial(0, N)
    for k in range(e):
        term = mul(shift_up(p, 3 * (1 << k) + 1), poly({0: 1, 1 << k: 1}, N))
        rhs = rhs + _sign(k) * term
        p = mul(p, bacher_factor(k, N))
    return _report(IdentityId.PARTIAL_SUM, {"e": e, "N": N}, lhs, rhs, N)


def verify_tspp(e: int, N: int | None = None, tables: Tables | None = None) -> Report:
    """Second expansion of ``sum_{n<=3*2^e} t(n) z^n`` as a polynomial identity."""
    if e < 1:
        raise ValueError("e must be >= 1")
    N = _poly_order(e, N)
    lhs = _t_partial(_resolve(tables, 0, (3 << e) + 1), e, N)
    first = shift_up(2 * alt_prod_sum(e, N), 1)
    second = shift_up(mul(poly({0: -1, 1 << e: 1}, N), prod_B(e, N)), 1)
    rhs = first - _sign(e) * second
    return _report(IdentityId.TSPP, {"e": e, "N": N}, lhs, rhs, N)


def verify_TS_ratio(e: int, N: int, tables: Tables | None = None) -> Report:
    """``T(z^(2^e)) S(z) == (-1)^e S(z^(2^e)) (T(z) - 2z alt_prod_sum(e))``."""
    if e < 0:
        raise ValueError("e must be >= 0")
    tab = _resolve(tables, N, N)
    S, T = gen_S(N, tab), gen_T(N, tab)
    k = 1 << e
    lhs = mul(compose_pow(T, k, N), S)
    inner = T - shift_up(2 * alt_prod_sum(e, N), 1)
    rhs = _sign(e) * mul(compose_pow(S, k, N), inner)
    return _report(IdentityId.TS_RATIO, {"e": e, "N": N}, lhs, rhs, N)


def verify_conjecture1(e: int, N: int, tables: Tables | None = None) -> Report:
    """``sum t(3*2^e+n) z^n == (-1)^e S(z) U(z^(2^e))``."""
    if e < 0:
        raise ValueError("e must be >= 0")
    k = 1 << e
    inner = _ceil_div(N, k) + 1
    tab = _resolve(tables, max(N, inner + 1), max(3 * k + N, inner + 4))
    lhs = ZSeries(N, tab.t[3 * k : 3 * k + N])
    U = gen_U(inner, tab)
    rhs = _sign(e) * mul(gen_S(N, tab), compose_pow(U, k, N))
    return _report(IdentityId.CONJECTURE1, {"e": e, "N": N}, lhs, rhs, N)


def verify_conjecture2i(e: int, N: int, tables: Tables | None = None) -> Report:
    """``sum (s(2^(e+1)+n) - s(2^e+n)) z^n == G(z^(2^e)) S(z)``."""
    if e < 0:
        raise ValueError("e must be >= 0")
    k = 1 << e
    inner = _ceil_div(N, k) + 1
    tab = _resolve(tables, max(2 * k + N, inner + 3), 0)
    lhs = ZSeries(N, tuple(tab.s[2 * k + n] - tab.s[k + n] for n in range(N)))
    rhs = mul(compose_pow(gen_G(inner, tab), k, N), gen_S(N, tab))
    return _report(IdentityId.CONJECTURE2I, {"e": e, "N": N}, lhs, rhs, N)


def verify_conjecture2ii(e: int, N: int, tables: Tables | None = None) -> Report:
    """``(-1)^(e+1) sum (t(2^(e+1)+n) + t(2^e+n)) z^n == H(z^(2^e)) S(z)``."""
    if e < 0:
        raise ValueError("e must be >= 0")
    k = 1 << e
    inner = _ceil_div(N, k) + 1
    tab = _resolve(tables, max(N, inner + 1), max(2 * k + N, inner + 3))
    sg = _sign(e + 1)
    lhs = ZSeries(N, tuple(sg * (tab.t[2 * k + n] + tab.t[k + n]) for n in range(N)))
    rhs = mul(compose_pow(gen_H(inner, tab), k, N), gen_S(N, tab))
    return _report(IdentityId.CONJECTURE2II, {"e": e, "N": N}, lhs, rhs, N)


def verify_pss(k: int, N: int | None = None, tables: Tables | None = None) -> Report:
    """``z prod_B(k)`` written as two blocks of Stern values."""
    if k < 0:
        raise ValueError("k must be >= 0")
    p = 1 << k
    need = 2 * p
    N = need if N is None else N
    if N < need:
        raise ValueError(f"order {N} cannot hold the degree-{need - 1} polynomials (need {need})")
    tab = _resolve(tables, p + 1, 0)
    lhs = shift_up(prod_B(k, N), 1)
    terms = {n: tab.s[n] for n in range(1, p + 1)}
    terms.update({n + p: tab.s[p - n] for n in range(1, p)})
    rhs = poly(terms, N)
    return _report(IdentityId.PSS, {"k": k, "N": N}, lhs, rhs, N)


def verify_lemma32(e: int, tables: Tables | None = None) -> Report:
    """Three pointwise relations between t and s for ``1 <= n <= 2^e``.

    The mismatch index is ``n``; relations are tried in order, so the reported
    values belong to the first relation that breaks at that ``n``.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    p = 1 << e
    tab = _resolve(tables, p + 1, 2 * p + p + 1)
    s, t = tab.s, tab.t
    sg = _sign(e)
    for n in range(1, p + 1):
        checks = (
            (t[2 * p + n] + t[p + n], -sg * s[n]),
            (t[p + n], sg * (s[p - n] - s[n])),
            (t[2 * p + n], -sg * s[p - n]),
        )
        for lhs, rhs in checks:
            if lhs != rhs:
                return Report(IdentityId.LEMMA32, {"e": e, "N": p}, "fail", n - 1, (n, lhs, rhs))
    return Report(IdentityId.LEMMA32, {"e": e, "N": p}, "pass", p)


# --- catalog ----------------------------------------------------------------

# identity -> (lowest parameter, runner(param, order, tables)); None means the
# identity takes no parameter and runs once.
_Runner = Callable[[int, int, "Tables | None"], Report]

CATALOG: dict[IdentityId, tuple[int | None, _Runner]] = {
    IdentityId.FUNCTIONAL_S: (None, lambda _, N, tb: verify_functional_S(N, tb)),
    IdentityId.FUNCTIONAL_T: (None, lambda _, N, tb: verify_functional_T(N, tb)),
    IdentityId.T_ITERATED: (1, lambda e, N, tb: verify_T_iterated(e, N, tb)),
    IdentityId.BACHER_PRODUCT: (1, lambda e, N, tb: verify_bacher_product(e, None, tb)),
    IdentityId.PARTIAL_SUM: (1, lambda e, N, tb: verify_partial_sum(e, None, tb)),
    IdentityId.TSPP: (1, lambda e, N, tb: verify_tspp(e, None, tb)),
    IdentityId.TS_RATIO: (1, lambda e, N, tb: verify_TS_ratio(e, N, tb)),
    IdentityId.CONJECTURE1: (0, lambda e, N, tb: verify_conjecture1(e, N, tb)),
    IdentityId.CONJECTURE2I: (0, lambda e, N, tb: verify_conjecture2i(e, N, tb)),
    IdentityId.CONJECTURE2II: (0, lambda e, N, tb: verify_conjecture2ii(e, N, tb)),
    IdentityId.PSS: (0, lambda k, N, tb: verify_pss(k, None, tb)),
    IdentityId.LEMMA32: (1, lambda e, N, tb: verify_lemma32(e, tb)),
}


def parse_ids(names: list[str]) -> list[IdentityId]:
    """Resolve identity names (or ``all``) in catalog order; raises on unknown names."""
    if not names or "all" in names:
        return list(CATALOG)
    wanted = set()
    for name in names:
        try:
            wanted.add(IdentityId(name))
        except ValueError:
            known = ", ".join(i.value for i in IdentityId)
            raise ValueError(f"unknown identity {name!r}; known: all, {known}") from None
    return [i for i in CATALOG if i in wanted]


def cells(ids: list[IdentityId], emax: int) -> list[tuple[IdentityId, int | None]]:
    out: list[tuple[IdentityId, int | None]] = []
    for ident in ids:
        lo = CATALOG[ident][0]
        if lo is None:
            out.append((ident, None))
        else:
            out.extend((ident, e) for e in range(lo, emax + 1))
    return out


def run_cell(ident: IdentityId, param: int | None, order: int, tables: Tables | None = None) -> Report:
    return CATALOG[ident][1](param if param is not None else 0, order, tables)


def run_catalog(
    ids: list[IdentityId], emax: int, order: int, tables: Tables | None = None, jobs: int = 1
) -> list[Report]:
    """Run every (identity, parameter) cell; results come back in catalog order."""
    todo = cells(ids, emax)
    if jobs > 1 and len(todo) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_cell, i, p, order, tables) for i, p in todo]
            return [f.result() for f in futures]
    return [run_cell(i, p, order, tables) for i, p in todo]
