import io
import json

import pytest

from cubic_lattices.cli import run


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_l0():
    code, out, _ = call("analyze", "--catalog", "L0", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["signature"] == [20, 2] and doc["factors"] == [3]
    assert doc["q"] == ["2/3"] and doc["l"] == 1 and doc["signature_mod8"] == 2


def test_analyze_u_and_diag():
    code, out, _ = call("analyze", "--catalog", "U", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["factors"] == [] and doc["det"] == -1
    code, out, _ = call("analyze", "--catalog", "diag:4,4,6,8", "--json", "--prime", "3")
    doc = json.loads(out)
    assert doc["factors"] == [2, 4, 4, 24] and list(doc["local"]) == ["3"]


def test_roots_e8():
    code, out, _ = call("roots", "--catalog", "E8", "--json")
    assert code == 0 and json.loads(out)["count"] == 240


def test_decisions_exit_codes():
    code, out, _ = call("decide-a0", "--catalog", "diag:4,4,6,8", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "YES"
    code, out, _ = call("decide-a0", "--gram", "[[2]]", "--json")
    assert code == 1 and json.loads(out)["certificates"]["root"] == [1]
    code, out, _ = call("decide-t", "--catalog", "A2(-1)")
    assert code == 2 and "no τ with q=2/3" in out
    code, out, _ = call("decide-a", "--catalog", "diag:3,6")
    assert code == 0 and "verdict: YES" in out
    code, out, _ = call("genus-local", "--catalog", "diag:4,4,6,8")
    assert code == 1


def test_decide_t_certificate(tmp_path):
    cert = tmp_path / "k.json"
    cert.write_text("[[6]]")
    code, out, _ = call("decide-t", "--catalog", "diag:-6+A2+U+E8+E8", "--certificate", str(cert), "--json")
    assert code == 0 and json.loads(out)["certificates"]["K"] == [[6]]
    code, _, _ = call("decide-t", "--catalog", "diag:-6+A2+U+E8+E8", "--budget", "rank=1,seconds=5")
    assert code == 0


def test_genus_local_from_json(monkeypatch):
    data = json.dumps({"t_plus": 1, "t_minus": 0, "form": {"factors": [6], "q": ["1/6"], "b": [["1/6"]]}})
    code, out, _ = call("genus-local", "-", "--json", stdin=data, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["verdict"] == "YES"


def test_stdin_and_text_format(monkeypatch):
    code, out, _ = call("shortvec", "-", "--bound", "2", "--json", stdin="2\n2 1\n1 2\n", monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["count"] == 6


def test_glue_command(monkeypatch):
    data = json.dumps({"left": [[2]], "right": [[-2]], "generators": [[1]], "images": [[1]]})
    code, out, _ = call("glue", "-", "--json", stdin=data, monkeypatch=monkeypatch)
    doc = json.loads(out)
    assert code == 0 and doc["det"] == -1 and doc["even"]


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("analyze",),
    ("shortvec", "--catalog", "A2"),
    ("analyze", "--catalog", "A2", "--gram", "[[2]]"),
    ("decide-t", "--catalog", "A2(-1)", "--budget", "speed=3"),
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 64


@pytest.mark.parametrize("argv", [
    ("analyze", "--gram", "[[1, 2], [3, 4]]"),
    ("analyze", "--gram", "[[1, 1], [1, 1]]"),
    ("analyze", "--gram", "{oops"),
    ("decide-a0", "--catalog", "diag:1,4"),
    ("decide-t", "--catalog", "U"),
    ("roots", "--catalog", "U"),
    ("analyze", "/nonexistent/file"),
    ("analyze", "--catalog", "NOPE"),
])
def test_malformed_input(argv):
    assert call(*argv)[0] == 65


def test_json_round_trip_is_byte_identical():
    for argv in (("analyze", "--catalog", "diag:4,4,6,8"), ("decide-a", "--catalog", "diag:3,6"),
                 ("decide-a0", "--catalog", "diag:4,4,6,8")):
        _, out, _ = call(*argv, "--json")
        assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


def test_catalog_listing_and_random():
    code, out, _ = call("catalog", "--json")
    assert code == 0 and "E8" in json.loads(out)
    _, a, _ = call("catalog", "--random", "3", "--seed", "7", "--json")
    _, b, _ = call("catalog", "--random", "3", "--seed", "7", "--json")
    assert a == b and len(json.loads(a)["gram"]) == 3
