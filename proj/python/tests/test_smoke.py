import json
import os
from pathlib import Path

import jsonschema
import pytest

import lrbac

ROOT = Path(__file__).resolve().parents[2]
CORPUS = Path(os.environ.get("LRBAC_CORPUS_DIR", ROOT / "corpus"))
SCHEMA = json.loads(Path(os.environ.get("LRBAC_SCHEMA", ROOT / "schema" / "lrbac-output.schema.json")).read_text())
FILES = sorted(CORPUS.glob("*.lr"))


def run_json(*args, stdin=""):
    code, out, _ = lrbac.run_cli([*args, "--json"], stdin)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_roles():
    assert lrbac.dominates("amp(A)", "A")
    assert not lrbac.dominates("A", "amp(A)")
    assert lrbac.equiv("A | !A", "1")
    assert lrbac.canonical_role("Bob & Alice | AdminAtom") == "AdminAtom | Alice & Bob"


def test_type_and_eval():
    src = (CORPUS / "filesystem.lr").read_text()
    assert lrbac.type_of(src, "necessary") == "[0]Str"
    out = lrbac.evaluate(src, "Admin")
    assert out["status"] == "value"
    assert out["term"] == '["data1"]'
    assert lrbac.evaluate(src, "Charlie")["status"] == "role_error"


def test_errors_raise():
    with pytest.raises(lrbac.ParseError):
        lrbac.type_of("check {A ()")
    with pytest.raises(lrbac.TypeError):
        lrbac.type_of("check ()")


@pytest.mark.parametrize("path", FILES, ids=[p.name for p in FILES])
@pytest.mark.parametrize("system", ["sufficient", "necessary"])
def test_corpus_check_validates(path, system):
    code, doc = run_json("check", "--system", system, str(path))
    assert code in (0, 1)
    assert (code == 0) == (doc["status"] == "ok")


@pytest.mark.parametrize("path", FILES, ids=[p.name for p in FILES])
def test_corpus_eval_and_trace_validate(path):
    for cmd in ("eval", "trace"):
        code, doc = run_json(cmd, "--role", "A | amp(B) | amp(E)", "--amp", str(path))
        assert code in (0, 1)
        if doc["status"] == "ok":
            assert "value" in doc


STATUS_CASES = {
    "ok": (["eval", "--role", "B", "-"], "check {B} ()", 0),
    "type_error": (["check", "-"], "check ()", 1),
    "role_error": (["eval", "--role", "A", "-"], "check {B} ()", 1),
    "amp_error": (["eval", "--amp", "--role", "1", "-"], "up[B] [()]", 1),
    "stuck": (["eval", "--role", "1", "-"], "check ()", 1),
    "fuel_exhausted": (["eval", "--role", "1", "--fuel", "5", "-"], "fix (\\x:[0]Unit. x)", 1),
    "parse_error": (["check", "-"], "check {A ()", 2),
    "negative": (["prove", "A >= B"], "", 1),
    "usage_error": (["check", "--system", "gamma", "-"], "[()]", 2),
}


@pytest.mark.parametrize("status", sorted(STATUS_CASES))
def test_every_status_validates(status):
    args, stdin, expected = STATUS_CASES[status]
    code, doc = run_json(*args, stdin=stdin)
    assert doc["status"] == status
    assert code == expected


def test_oracle_summary_validates():
    code, doc = run_json("oracle", "--terms", "5")
    assert code == 0
    assert {row["check"] for row in doc["oracle"]} == {
        "sufficiency",
        "necessity",
        "preservation",
        "progress",
        "monotonicity",
        "amp_safety",
    }
