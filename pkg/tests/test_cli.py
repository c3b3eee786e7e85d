import io
import json
import subprocess
import sys

import pytest

from stern_twist.cli import main
from stern_twist.seqcore import stern_range, twisted_range


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("value", "s", "5"), "3\n"),
        (("value", "t", "11"), "-1\n"),
        (("value", "s", "0"), "0\n"),
        (("value", "s", "0xB"), "5\n"),
    ],
)
def test_value(argv, expected):
    assert run(*argv) == (0, expected)


def test_value_json():
    code, text = run("value", "t", "13", "--format", "json")
    assert code == 0
    assert json.loads(text) == {"seq": "t", "n": "13", "value": "1"}


def test_value_huge_decimal_input():
    n = (1 << 20000) + 12345
    code, text = run("value", "s", str(n))
    assert code == 0
    code_hex, text_hex = run("value", "s", hex(n))
    assert text == text_hex


@pytest.mark.parametrize("bad", [["value", "s", "-3"], ["value", "s", "abc"], ["value", "q", "1"], []])
def test_parse_failures_exit_2(bad, capsys):
    code, out = run(*bad)
    assert code == 2 and out == ""
    assert "error" in capsys.readouterr().err


def test_bfile():
    assert run("bfile", "s", "0", "4") == (0, "0 0\n1 1\n2 1\n3 2\n4 1\n")
    assert run("bfile", "t", "0", "2") == (0, "0 0\n1 1\n2 -1\n")


def test_bfile_inverted_range(capsys):
    assert run("bfile", "s", "5", "4") == (2, "")
    assert "start" in capsys.readouterr().err


def test_bfile_roundtrip():
    for seq, oracle in (("s", stern_range(1001)), ("t", twisted_range(1001))):
        code, text = run("bfile", seq, "0", "1000")
        assert code == 0 and text.endswith("\n") and "\r" not in text
        parsed = [tuple(map(int, line.split(" "))) for line in text.splitlines()]
        assert parsed == list(enumerate(oracle))


def test_bfile_large_offsets_use_matrix_path():
    start = 1 << 40
    code, text = run("bfile", "s", str(start), str(start + 2))
    assert code == 0
    assert text == f"{start} 1\n{start + 1} {41}\n{start + 2} {40}\n"


def test_rationals():
    assert run("rationals", "3") == (0, "1/1\n2/1\n1/2\n")
    assert run("rationals", "1") == (0, "1/1\n")
    code, _ = run("rationals", "65536", "--check-distinct")
    assert code == 0


def test_series():
    assert run("series", "S", "--order", "8") == (0, "0 1 1 2 1 3 2 3\n")
    assert run("series", "U", "--order", "6") == (0, "1 0 -2 0 0 -2\n")
    code, text = run("series", "T", "--order", "3", "--format", "bfile")
    assert text == "0 0\n1 1\n2 -1\n"
    code, text = run("series", "G", "--order", "3", "--format", "json")
    assert json.loads(text) == {"series": "G", "order": 3, "coeffs": [1, -2, 2]}
    assert run("series", "S", "--order", "0")[0] == 2


def test_verify_smoke():
    code, text = run("verify", "thm_1_1", "--emax", "1", "--order", "64")
    assert code == 0
    assert text.splitlines()[-1] == "2/2 passed"


def test_verify_all():
    code, text = run("verify", "all", "--emax", "4", "--order", "1024")
    assert code == 0
    lines = text.splitlines()
    assert all("PASS" in line for line in lines[:-1])
    ids = [line.split()[0] for line in lines[:-1]]
    assert ids[:2] == ["lemma_2_1_S", "lemma_2_1_T"]


def test_verify_json_has_report_fields():
    code, text = run("verify", "lemma_3_1", "thm_1_2_ii", "--emax", "2", "--order", "128", "--format", "json")
    assert code == 0
    rows = json.loads(text)
    assert {tuple(sorted(r)) for r in rows} == {
        ("effective_order", "identity_id", "mismatch", "params", "status")
    }
    assert [r["identity_id"] for r in rows] == ["thm_1_2_ii"] * 3 + ["lemma_3_1"] * 3


def test_verify_unknown_id(capsys):
    code, _ = run("verify", "nonsense")
    assert code == 2
    err = capsys.readouterr().err
    assert "usage" in err and "nonsense" in err


def test_verify_order_too_small_is_usage_error():
    assert run("verify", "thm_2_3", "--emax", "3", "--order", "8")[0] == 0
    assert run("verify", "lemma_2_1_S", "--order", "2")[0] == 2


def test_verify_failure_exit_1(monkeypatch):
    from stern_twist import idcat

    real = idcat.verify_pss

    def broken(k, N=None, tables=None):
        r = real(k, N, tables)
        return idcat.Report(r.identity_id, r.params, "fail", 0, (0, 1, 2))

    monkeypatch.setitem(idcat.CATALOG, idcat.IdentityId.PSS, (0, lambda k, N, tb: broken(k)))
    code, text = run("verify", "lemma_3_1", "--emax", "1")
    assert code == 1
    assert "FAIL" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stern_twist", "value", "t", "11"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "-1\n"
