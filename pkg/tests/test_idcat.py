import random

import pytest

from stern_twist import idcat
from stern_twist.idcat import IdentityId, Report, Tables
from stern_twist.seqcore import stern_range, twisted_range
from stern_twist.zseries import ZSeries, from_coeffs, mul, poly, shift_up

SIZE = 2048
S = stern_range(SIZE)
T = twisted_range(SIZE)


def tampered(seq, index, delta=1):
    s, t = list(S), list(T)
    (s if seq == "s" else t)[index] += delta
    return Tables(tuple(s), tuple(t))


def brute_quotient(num, den, n):
    # plain integer long division with den[0] == 1
    q = []
    for i in range(n):
        q.append(num[i] - sum(q[j] * den[i - j] for j in range(i)))
    return q


def test_gen_S_T():
    assert idcat.gen_S(8).coeffs == (0, 1, 1, 2, 1, 3, 2, 3)
    assert idcat.gen_T(8).coeffs == (0, 1, -1, 0, 1, 1, 0, -1)
    assert idcat.gen_S(1).coeffs == (0,)


def test_gen_U_prefix():
    u = idcat.gen_U(40)
    assert u.coeffs[:6] == (1, 0, -2, 0, 0, -2)
    assert list(u.coeffs) == brute_quotient(T[4:], S[1:], 40)


def test_gen_G_H_prefix():
    g, h = idcat.gen_G(30), idcat.gen_H(30)
    assert g.coeffs[:3] == (1, -2, 2)
    assert h.coeffs[:3] == (1, -2, -2)
    num_g = [S[3 + n] - S[2 + n] for n in range(30)]
    num_h = [-(T[3 + n] + T[2 + n]) for n in range(30)]
    assert list(g.coeffs) == brute_quotient(num_g, S[1:], 30)
    assert list(h.coeffs) == brute_quotient(num_h, S[1:], 30)


@pytest.mark.parametrize(
    "gen, numer",
    [
        (idcat.gen_U, lambda n: T[3 + n]),
        (idcat.gen_G, lambda n: S[2 + n] - S[1 + n]),
        (idcat.gen_H, lambda n: -(T[2 + n] + T[1 + n])),
    ],
)
def test_quotients_roundtrip(gen, numer):
    N = 300
    q = gen(N)
    lhs = mul(from_coeffs(q.coeffs, N + 1), idcat.gen_S(N + 1))
    assert lhs.coeffs[:N] == tuple(numer(n) for n in range(N))


def test_prod_B():
    assert idcat.prod_B(0, 5) == poly({0: 1}, 5)
    assert idcat.prod_B(1, 5) == poly({0: 1, 1: 1, 2: 1}, 5)
    assert idcat.prod_B(2, 10).coeffs == (1, 1, 2, 1, 2, 1, 1, 0, 0, 0)


def test_functional_equations():
    for N in (4, 8192):
        assert idcat.verify_functional_S(N).passed
        assert idcat.verify_functional_T(N).passed


def test_functional_T_detects_tampering():
    r = idcat.verify_functional_T(64, tampered("t", 5))
    assert not r.passed
    assert r.mismatch[0] <= 11


def test_T_iterated_base_case_coincides_with_functional_T():
    assert idcat.verify_T_iterated(1, 4096).passed
    bad = tampered("t", 37, 3)
    a = idcat.verify_T_iterated(1, 512, bad)
    b = idcat.verify_functional_T(512, bad)
    assert a.mismatch == b.mismatch is not None


def test_T_iterated_e5():
    assert idcat.verify_T_iterated(5, 4096).passed


@pytest.mark.parametrize("e", range(1, 7))
def test_neg_monomial_sign(e):
    m = idcat._neg_monomial_prod(0, e, 1 << (e + 1))
    assert m.coeffs[(1 << e) - 1] == (-1) ** e


def test_bacher_product_e1_polynomial():
    # z(1+z^2)(1+z+z^2) expanded by hand
    expected = (0, 1, 1, 2, 1, 1, 0, 0)
    lhs = shift_up(mul(poly({0: 1, 2: 1}, 8), idcat.prod_B(1, 8)), 1)
    assert lhs.coeffs == expected
    assert T[6:13] == [0, -1, -1, -2, -1, -1, 0]
    assert tuple(-c for c in T[6:13]) + (0,) == expected
    r = idcat.verify_bacher_product(1)
    assert r.passed and r.effective_order == 8


def test_bacher_product_e4():
    r = idcat.verify_bacher_product(4, 256)
    assert r.passed
    with pytest.raises(ValueError):
        idcat.verify_bacher_product(4, 40)


def test_partial_sum():
    assert T[:7] == [0, 1, -1, 0, 1, 1, 0]
    assert idcat.verify_partial_sum(1).passed
    assert idcat.verify_partial_sum(3, 64).passed
    with pytest.raises(ValueError):
        idcat.verify_partial_sum(3, 20)


def test_tspp_e1_terms():
    N = 8
    first = shift_up(2 * idcat.alt_prod_sum(1, N), 1)
    second = shift_up(mul(poly({0: -1, 2: 1}, N), idcat.prod_B(1, N)), 1)
    assert first == poly({1: 2}, N)
    # -(-1)^1 * second
    assert second == poly({1: -1, 2: -1, 4: 1, 5: 1}, N)
    assert idcat.verify_tspp(4, 128).passed


@pytest.mark.parametrize("e", range(1, 9))
def test_tspp_and_partial_sum_agree(e):
    assert idcat.verify_tspp(e).passed and idcat.verify_partial_sum(e).passed


def test_TS_ratio():
    assert idcat.verify_TS_ratio(1, 2048).passed
    assert idcat.verify_TS_ratio(0, 256).passed
    assert idcat.verify_TS_ratio(6, 4096).passed


def test_conjecture1_e1_fixture():
    # T(z) - z + z^2 - z^4 - z^5 is divisible by z^6, giving sum t(6+n) z^n
    N = 64
    poly_part = poly({1: -1, 2: 1, 4: -1, 5: -1}, N)
    top = idcat.gen_T(N) + poly_part
    assert top.coeffs[:6] == (0,) * 6
    assert top.coeffs[6:] == tuple(T[6:N])
    r = idcat.verify_conjecture1(1, 2048)
    assert r.passed
    assert T[6] == 0 and T[7] == -1


def test_conjecture1_e0_is_definitional():
    assert idcat.verify_conjecture1(0, 512).passed


@pytest.mark.parametrize("e", range(0, 4))
def test_conjecture2(e):
    assert idcat.verify_conjecture2i(e, 1024).passed
    assert idcat.verify_conjecture2ii(e, 1024).passed


def test_conjecture2ii_e0_coefficient():
    assert -(T[3] + T[2]) == 1
    hs = mul(idcat.gen_H(8), idcat.gen_S(8))
    assert hs.coeffs[1] == 1


def test_pss():
    assert idcat.verify_pss(0).passed
    assert shift_up(idcat.prod_B(1, 4), 1) == poly({1: 1, 2: 1, 3: 1}, 4)
    assert idcat.verify_pss(1).passed
    assert idcat.verify_pss(6, 256).passed
    with pytest.raises(ValueError):
        idcat.verify_pss(6, 100)


def test_lemma32():
    assert T[5] + T[3] == 1 == S[1]
    # boundary n = 2^e at e = 2: t(8) = -1, t(12) = 0
    assert T[8] == (S[0] - S[4]) and T[12] == 0
    for e in (1, 2, 10):
        r = idcat.verify_lemma32(e)
        assert r.passed and r.effective_order == 1 << e


def test_lemma32_reports_first_break():
    r = idcat.verify_lemma32(3, tampered("t", 8 + 5))
    assert not r.passed
    assert r.mismatch[0] == 5


def test_report_invariants():
    with pytest.raises(ValueError):
        Report(IdentityId.PSS, {"k": 0, "N": 2}, "fail", 2)
    with pytest.raises(ValueError):
        Report(IdentityId.PSS, {"k": 0, "N": 2}, "pass", 2, (0, 1, 2))
    with pytest.raises(ValueError):
        Report(IdentityId.PSS, {"k": 0, "N": 2}, "pass", 3)
    r = idcat.verify_functional_S(16, tampered("s", 3))
    d = r.to_dict()
    assert d["identity_id"] == "lemma_2_1_S" and d["status"] == "fail"
    assert set(d["mismatch"]) == {"index", "lhs", "rhs"}


def test_short_tables_rejected():
    with pytest.raises(ValueError):
        idcat.verify_functional_S(64, Tables(tuple(S[:10]), tuple(T[:10])))


MUTATION_SUITE = [
    lambda tb: idcat.verify_functional_S(1024, tb),
    lambda tb: idcat.verify_functional_T(1024, tb),
    lambda tb: idcat.verify_conjecture1(1, 1024, tb),
    lambda tb: idcat.verify_conjecture2i(1, 1024, tb),
]


def test_random_mutations_detected():
    rng = random.Random(11)
    for _ in range(20):
        seq = rng.choice("st")
        bad = tampered(seq, rng.randrange(512), rng.choice([-3, -1, 1, 2]))
        assert any(not check(bad).passed for check in MUTATION_SUITE)


def test_parse_ids_and_cells():
    assert idcat.parse_ids(["all"]) == list(IdentityId)
    assert idcat.parse_ids(["thm_1_1", "lemma_2_1_S"]) == [IdentityId.FUNCTIONAL_S, IdentityId.CONJECTURE1]
    with pytest.raises(ValueError):
        idcat.parse_ids(["nonsense"])
    cells = idcat.cells([IdentityId.FUNCTIONAL_S, IdentityId.CONJECTURE1, IdentityId.PSS], 2)
    assert cells == [
        (IdentityId.FUNCTIONAL_S, None),
        (IdentityId.CONJECTURE1, 0),
        (IdentityId.CONJECTURE1, 1),
        (IdentityId.CONJECTURE1, 2),
        (IdentityId.PSS, 0),
        (IdentityId.PSS, 1),
        (IdentityId.PSS, 2),
    ]


def test_run_catalog_parallel_matches_serial():
    ids = idcat.parse_ids(["all"])
    serial = idcat.run_catalog(ids, 2, 256)
    parallel = idcat.run_catalog(ids, 2, 256, jobs=2)
    assert serial == parallel
    assert all(r.passed for r in serial)
