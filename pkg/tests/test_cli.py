from __future__ import annotations

import io
import json

import pytest

from graphtc import cli
from graphtc.cli import Outcome, run
from graphtc.tc_certificate import replay

THETA_TEXT = """\
v t
v b
e a t b
e m t b
e c t b
pos t 0 1/2
pos b 0 -1/2
poly a 0 1/2 -1/2 0 0 -1/2
poly c 0 1/2 1/2 0 0 -1/2
"""


def invoke(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# -- success paths ---------------------------------------------------------------


def test_graph_info():
    code, out, _ = invoke("graph", "info", "--graph", "k5")
    assert code == 0
    assert "essential: 0 1 2 3 4" in out
    assert any(line.split() == ["m", "5"] for line in out.splitlines())


def test_planarity_reports_kuratowski_witness():
    code, out, _ = invoke("planarity", "--graph", "k33", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["planar"] is False and data["kuratowski"] == "K3,3"


def test_discretize_counts():
    code, out, _ = invoke("discretize", "--graph", "star", "--k", "2", "--parts", "1", "--json")
    assert code == 0
    assert json.loads(out)["cells"] == [12, 12, 0]


def test_homology_of_k5():
    code, out, _ = invoke("homology", "--graph", "k5", "--k", "2", "--parts", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == [1, 12, 1]


@pytest.mark.parametrize("coeff", ["F2", "Z"])
def test_homology_coefficients(coeff):
    code, out, _ = invoke("homology", "--graph", "theta", "--k", "2", "--coeff", coeff)
    assert code == 0 and out


def test_tc_exact_prints_the_value_first():
    code, out, _ = invoke("tc", "exact", "--graph", "theta", "--k", "4", "--r", "2")
    assert code == 0
    assert out.splitlines()[0] == "4"


def test_tc_bound_below_2m_is_bounds_only():
    code, out, _ = invoke("tc", "exact", "--graph", "tree3", "--k", "4", "--r", "2")
    assert code == 0
    assert out.splitlines()[0] == "bounds only"


def test_tc_json_replays(tmp_path):
    path = tmp_path / "cert.json"
    code, _, _ = invoke("tc", "bound", "--graph", "tree3", "--k", "5", "--r", "3", "--json", str(path))
    assert code == 0
    text = path.read_text(encoding="utf-8")
    assert replay(text).to_json() == text


def test_graph_file_input(tmp_path):
    path = tmp_path / "theta.txt"
    path.write_text(THETA_TEXT, encoding="utf-8")
    code, out, _ = invoke("tc", "exact", "--graph", str(path), "--k", "4", "--r", "3")
    assert code == 0 and out.splitlines()[0] == "6"


@pytest.mark.parametrize(
    "lemma,extra",
    [
        ("kronecker", ["--k", "5"]),
        ("orthogonal", ["--trials", "3"]),
        ("star-degree", ["--trials", "2"]),
        ("2q", []),
        ("2theta", ["--parts", "4"]),
        ("nonplanar", ["--graph", "k33"]),
        ("cohomological-planarity", ["--graph", "theta"]),
    ],
)
def test_verify_lemmas_pass(lemma, extra):
    code, out, _ = invoke("verify", "lemma", lemma, *extra)
    assert code == 0
    assert out.splitlines()[-1] == f"{lemma}: PASS"


def test_output_is_byte_stable():
    argv = ("verify", "lemma", "orthogonal", "--trials", "4", "--seed", "7", "--json")
    assert invoke(*argv) == invoke(*argv)
    argv = ("tc", "bound", "--graph", "theta", "--k", "5", "--r", "2", "--json")
    assert invoke(*argv) == invoke(*argv)


def test_trace_goes_to_stderr():
    code, out, err = invoke("tc", "bound", "--graph", "theta", "--k", "4", "--r", "2", "--trace")
    assert code == 0
    assert "pairing: ok" in out
    assert json.loads(err)["valid"] is True


# -- failure paths ---------------------------------------------------------------------


def test_precondition_exit_code_names_the_hypothesis():
    code, _, err = invoke("tc", "bound", "--graph", "lollipop", "--k", "4", "--r", "2")
    assert code == 2
    assert "[hypothesis: m(Γ) ≥ 2]" in err


def test_nonplanar_tc_query_is_a_precondition_failure():
    code, _, err = invoke("tc", "bound", "--graph", "k5", "--k", "4", "--r", "2")
    assert code == 2 and "precondition violated" in err


def test_missing_graph_source():
    code, _, err = invoke("graph", "info", "--graph", "no-such-graph")
    assert code == 2 and "graph source exists" in err


def test_resource_ceiling_exit_code():
    code, _, err = invoke("homology", "--graph", "k5", "--k", "3", "--max-cells", "1000")
    assert code == 3 and "resource limit" in err


def test_failed_check_exit_code(monkeypatch):
    monkeypatch.setitem(cli.LEMMA_COMMANDS, "2q", lambda args: Outcome({}, ["tampered"], ok=False))
    code, out, _ = invoke("verify", "lemma", "2q")
    assert code == 1
    assert out.splitlines()[-1] == "2q: FAIL"


def test_bad_arguments_exit_through_argparse():
    with pytest.raises(SystemExit) as err:
        invoke("verify", "lemma", "nonsense")
    assert err.value.code == 2
