import io
import json
from contextlib import redirect_stderr, redirect_stdout

from transword.cli import main


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_reduce_inverse_pair():
    code, out, _ = run(
        ["reduce", "-e", "st(-,0,{sel(S1)(k)}) st(+,0,{sel(S1)(k)})", "--family", "k=2"]
    )
    assert code == 0
    assert "result: []" in out


def test_project_telescope():
    code, out, _ = run(["project", "-e", "st(+,0,{a(k) a(k+1)^-1})", "-N", "3"])
    assert code == 0
    assert "result: [a0]" in out


def test_demo_separation_verdict():
    code, out, _ = run(["demo-separation", "-k", "4"])
    assert code == 0
    assert "16/16 patterns distinct" in out
    assert "all match" in out


def test_demo_abelian_json():
    code, out, _ = run(["demo-abelian", "-k", "4", "-p", "3", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["distinct"] == 16 == data["expected"]


def test_decompose_report():
    code, out, _ = run(
        ["decompose", "-e", "[b0] st(+,1,{sel(S1)(k)})", "--family", "k=2"]
    )
    assert code == 0
    assert "maximal(S1,0,+)" in out


def test_apply_ff():
    code, out, _ = run(
        [
            "apply-ff",
            "-e",
            "st(+,0,{sel(S1)(k)})",
            "-f",
            "f{S1->T, S2->S2}",
            "--family",
            "k=2",
        ]
    )
    assert code == 0
    assert "st(+,0,{a(k)})" in out


def test_apply_endo_named_rule():
    code, out, _ = run(["apply-endo", "-e", "[a1 a2]", "-s", "doubling"])
    assert code == 0
    assert "[a2 a3 a4 a5]" in out


def test_hag_germs():
    code, out, _ = run(["hag", "-e", "[a0] st(+,2,{sel(S2)(k)})", "--family", "k=2"])
    assert code == 0
    result = [l for l in out.splitlines() if l.startswith("result:")][0]
    assert "germ-seq" in result and "sel(S2)" in result


def test_embedding_check_cli():
    code, out, _ = run(["embedding-check", "-s", "doubling", "--nmax", "2", "--lenmax", "3"])
    assert code == 0
    assert "verdict: PASS" in out


def test_parse_error_exit_code():
    code, _, err = run(["reduce", "-e", "[a0 oops]"])
    assert code == 2
    assert "parse error" in err and "column" in err


def test_domain_error_exit_code():
    code, _, err = run(["decompose", "-e", "[a0]"])  # missing --family
    assert code == 1
    assert "family" in err


def test_byte_determinism():
    args = ["demo-separation", "-k", "5", "--format", "json"]
    assert run(args) == run(args)
    args = ["embedding-check", "-s", "telescope", "--nmax", "1", "--lenmax", "2"]
    assert run(args) == run(args)
