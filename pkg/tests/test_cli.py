import json
import subprocess
import sys

import pytest

from omegaineq.cli import run
from omegaineq.decide import Witness, replay_witness
from omegaineq.monoid import OrderedMonoid
from omegaineq.lang import LangExpr
from omegaineq.terms import parse_term


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_examples(capsys):
    code, out, _ = call(capsys, "decide", "1", "a", "--level", "1/2")
    assert code == 0 and out.strip() == "holds"
    code, out, _ = call(capsys, "decide", "(a b)^w", "a^w b^w", "--level", "1/2")
    assert code == 1
    assert out.splitlines()[0] == "fails"
    assert "witness subword: ba" in out


def test_mu(capsys):
    code, out, _ = call(capsys, "mu", "(a a b^w)^w a b^w")
    assert code == 0 and out.strip() == "(2,0)"


def test_unknown_exit_code(capsys):
    code, out, _ = call(capsys, "decide", "(a b)^w", "(a b)^w b (a b)^w", "--level", "5/2",
                        "--budget-languages", "3")
    assert code == 2 and out.startswith("unknown")


def test_level_syntax(capsys):
    assert call(capsys, "decide", "(a b)^w", "(a b)^w b (a b)^w", "--level", "1.5")[0] == 0
    assert call(capsys, "decide", "(a b)^w", "(a b)^w b (a b)^w", "--level", "3/2")[0] == 0


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["decide", "a"],
    ["decide", "((a", "a", "--level", "1"],
    ["decide", "a", "a", "--level", "1/3"],
    ["decide", "a", "a", "--level", "7/2"],
    ["decide", "a", "a", "--level", "1", "--budget-languages", "-1"],
    ["enum-monoids", "--max-size", "5"],
    ["subword", "AB", "a"],
    ["synt", "--expr", "{not json"],
])
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 64
    assert err


def test_json_and_text_agree(capsys):
    for lhs, rhs, level in [("1", "x", "1"), ("(a b)^w", "(a b)^w b (a b)^w", "3/2"), ("a", "a b", "1/2")]:
        code_t, text, _ = call(capsys, "decide", lhs, rhs, "--level", level)
        code_j, raw, _ = call(capsys, "--format", "json", "decide", lhs, rhs, "--level", level)
        data = json.loads(raw)
        assert code_t == code_j
        assert data["verdict"] == text.splitlines()[0]
        assert data["query"] == {"lhs": lhs, "rhs": rhs, "level": level}


def test_json_witness_replays(capsys):
    _, raw, _ = call(capsys, "--format", "json", "decide", "1", "x", "--level", "1")
    evidence = json.loads(raw)["evidence"]
    w = Witness.from_dict(evidence)
    assert replay_witness(w, parse_term("1"), parse_term("x"), 1)


def test_term_commands(capsys):
    assert call(capsys, "canonical-j", "(b a)^w a")[1].strip() == "(ab)^w"
    assert call(capsys, "normalize", "(a b)^w a")[1].strip() == "a (b a)^w"
    _, out, _ = call(capsys, "decomps", "a b")
    assert out.splitlines() == ["(1, a b)", "(a, 1 b)", "(a 1, b)", "(a b, 1)"]
    _, raw, _ = call(capsys, "--format", "json", "decomps", "(a b)^w", "--exp-bound", "1")
    assert len(json.loads(raw)["decompositions"]) == 20
    assert call(capsys, "subword", "ba", "(a b)^w")[0] == 0
    assert call(capsys, "subword", "ba", "a^w b^w")[0] == 1


def test_synt_inline_and_file(capsys, tmp_path):
    expr = '{"level": "1/2", "expr": {"product": ["all", "a", "all"]}}'
    code, out, _ = call(capsys, "synt", "--expr", expr, "--alphabet", "ab")
    assert code == 0
    assert "order: 1 < a" in out and "filter: {a}" in out
    path = tmp_path / "lang.json"
    path.write_text(expr)
    code, raw, _ = call(capsys, "--format", "json", "synt", "--expr", str(path), "--alphabet", "ab")
    data = json.loads(raw)
    m = OrderedMonoid.from_dict(data["monoid"])
    assert len(m) == 2 and data["filter"] == ["a"]
    assert LangExpr.from_dict(data["language"]).to_dict() == json.loads(expr)


def test_check_proof(capsys, tmp_path):
    proof = {"level": "3/2", "steps": [{"lhs": "(a b)^w", "rhs": "(a b)^w b (a b)^w",
                                         "rule": {"type": "gamma", "u": "a b", "v": "b"}}]}
    path = tmp_path / "proof.json"
    path.write_text(json.dumps(proof))
    code, out, _ = call(capsys, "check-proof", str(path))
    assert code == 0 and out.startswith("valid")
    proof["steps"][0]["rule"]["v"] = "a a"
    path.write_text(json.dumps(proof))
    code, out, _ = call(capsys, "check-proof", str(path))
    assert code == 1 and "invalid at step 0" in out


def test_proof_from_decide_checks(capsys, tmp_path):
    _, raw, _ = call(capsys, "--format", "json", "decide", "a^w (a b)^w", "a^w (a b)^w b (a b)^w",
                     "--level", "3/2")
    evidence = json.loads(raw)["evidence"]
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"level": evidence["level"], "steps": evidence["steps"]}))
    assert call(capsys, "check-proof", str(path))[0] == 0


def test_enumerations(capsys):
    _, out, _ = call(capsys, "enum-langs", "--level", "0", "--count", "5")
    assert out.splitlines() == ["0", "A*"]
    _, raw, _ = call(capsys, "--format", "json", "enum-langs", "--level", "1", "--count", "4", "--alphabet", "a")
    assert [LangExpr.from_dict(d).level.twice for d in json.loads(raw)] == [2] * 4
    _, out, _ = call(capsys, "enum-monoids", "--max-size", "2")
    assert out.splitlines()[0] == "5 ordered monoids"
    _, raw, _ = call(capsys, "--format", "json", "enum-monoids", "--max-size", "3", "--up-to-iso")
    assert len(json.loads(raw)) == 42


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "omegaineq.cli", "decide", "1", "a", "--level", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout.startswith("fails")
