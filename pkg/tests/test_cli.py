import io
import json
import shutil
import subprocess

import pytest

from multikleisli.builtins import builtin_theory
from multikleisli.cli import main
from multikleisli.schemas import dump_theory, dumps


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else dumps(doc), encoding="utf-8")
    return str(path)


def broken_ass(tmp_path):
    doc = dump_theory(builtin_theory("ass", 2))
    typing = {e["id"]: (tuple(e["inputs"]), e["output"]) for e in doc["elements"]}
    s = next(s for s in doc["subst"] if len(typing[s["outer"]][0]) == 2 and all(len(typing[y][0]) == 1 for y in s["inner"]))
    (other,) = [x for x, t in typing.items() if t == typing[s["result"]] and x != s["result"]]
    s["result"] = other
    return write(tmp_path, "broken.theory.json", doc)


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["laws", "builtin:as"], "arity counts: 0:1, 1:1, 2:1, 3:1"),
        (["laws", "ass.theory.json"], "arity counts: 0:1, 1:1, 2:2, 3:6"),
        (["clone", "--carrier", "2", "--op", "meet"], "arity counts: 1, 3, 7 (n = 1..3)"),
        (["symmetrize", "builtin:as", "--counts"], "0:1, 1:1, 2:2, 3:6"),
        (["forget", "builtin:semilattice", "--to", "symmetric", "--counts"], "0:0, 1:1, 2:3, 3:7"),
        (["monad-eval", "builtin:comm", "--set-size", "2"], "|T(X)| = 10 for |X| = 2"),
        (["models", "builtin:comm", "--algebra", "Z/2"], "models of Comm in Z/2: 1"),
        (["factorize", "chain2-hom.prof.json"], "3 objects, 6 morphisms"),
        (["validate", "comm.theory.json"], "theory/v1"),
    ],
)
def test_documented_examples(argv, needle):
    code, text = run(*argv)
    assert code == 0
    assert needle in text


def test_envelope_counts_are_function_counts():
    code, text = run("envelope", "builtin:comm", "-K", "4", "--counts")
    assert code == 0
    rows = [[int(c) for c in line.split()] for line in text.splitlines()]
    assert rows == [[n**m for n in range(5)] for m in range(5)]


def test_adjoint_check_json():
    code, text = run("adjoint-check", "builtin:as", "builtin:ass", "--triangles", "--json")
    report = json.loads(text)
    assert code == 0 and report["ok"]
    assert (report["left_count"], report["right_count"]) == (2, 2)
    assert len(report["pairing"]) == 2


def test_law_violations_exit_one(tmp_path):
    path = broken_ass(tmp_path)
    code, text = run("laws", path, "--json")
    assert code == 1
    report = json.loads(text)
    assert not report["ok"] and report["violations"]
    code, text = run("laws", path)
    assert code == 1 and "FAILED" in text


def test_envelope_of_a_broken_theory_exits_one(tmp_path):
    code, text = run("envelope", broken_ass(tmp_path))
    assert code == 1 and "envelope-input" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["laws", "missing.theory.json"],
        ["laws", "builtin:lie"],
        ["frobnicate"],
        ["laws", "builtin:as", "-K", "-1"],
        ["clone", "--carrier", "2"],
        ["clone", "--carrier", "2", "--op", "nand"],
        ["symmetrize", "builtin:comm"],
        ["forget", "builtin:as", "--to", "planar"],
        ["adjoint-check", "builtin:ass", "builtin:as"],
        ["models", "builtin:comm", "--algebra", "no-such"],
        ["monad-eval", "builtin:comm", "--set-size", "x"],
        ["compose", "chain2-hom.prof.json", "as.theory.json"],
    ],
)
def test_input_errors_exit_two(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_bad_files_exit_two(tmp_path, capsys):
    code, _ = run("validate", write(tmp_path, "x.json", "{not json"))
    assert code == 2
    assert "invalid JSON" in capsys.readouterr().err
    doc = dump_theory(builtin_theory("as", 2))
    doc["unit"] = {}
    code, _ = run("laws", write(tmp_path, "y.json", doc))
    assert code == 2
    assert "$.unit" in capsys.readouterr().err


def test_bound_larger_than_the_file(tmp_path, capsys):
    path = write(tmp_path, "as2.json", dump_theory(builtin_theory("as", 2)))
    assert run("laws", path, "-K", "1")[0] == 0
    assert run("laws", path, "-K", "3")[0] == 2


def test_ceiling_exits_three(monkeypatch, capsys):
    monkeypatch.setenv("MULTIKLEISLI_CEILING", "0")
    code, _ = run("adjoint-check", "builtin:as", "builtin:ass")
    assert code == 3
    assert "MULTIKLEISLI_CEILING" in capsys.readouterr().err
    monkeypatch.setenv("MULTIKLEISLI_CEILING", "lots")
    assert run("laws", "builtin:as")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["laws", "builtin:ass", "--json"],
        ["adjoint-check", "builtin:as", "builtin:ass", "--json"],
        ["monad-eval", "builtin:semilattice", "--json"],
        ["clone", "--carrier", "2", "--op", "xor", "--json"],
        ["symmetrize", "builtin:as", "--json"],
        ["envelope", "builtin:ass", "-K", "2", "--json"],
    ],
)
def test_json_output_is_deterministic(argv):
    first = run(*argv)
    assert first[0] == 0
    assert first == run(*argv)
    json.loads(first[1])


def test_emitted_documents_reload(tmp_path):
    code, text = run("symmetrize", "builtin:as", "-K", "2")
    assert code == 0
    code, report = run("laws", write(tmp_path, "sym.json", text), "--json")
    assert code == 0 and json.loads(report)["arity_counts"] == {"0": 1, "1": 1, "2": 2}
    assert run("validate", write(tmp_path, "sym.json", text))[0] == 0
    code, text = run("envelope", "builtin:ass", "-K", "2", "--check")
    assert code == 0
    assert run("validate", write(tmp_path, "env.json", text))[0] == 0
    code, text = run("clone", "--carrier", "2", "--op", "meet", "--emit")
    assert code == 0
    assert run("laws", write(tmp_path, "meet.json", text))[0] == 0
    assert run("validate", write(tmp_path, "meet.json", text))[0] == 0
    code, text = run("forget", "builtin:ass", "--to", "planar", "-K", "2")
    assert code == 0
    assert run("validate", write(tmp_path, "forgot.json", text))[0] == 0
    code, text = run("compose", "chain2-hom.prof.json", "chain2-hom.prof.json")
    assert code == 0
    assert run("validate", write(tmp_path, "comp.json", text))[0] == 0


def test_compose_counts():
    code, text = run("compose", "chain2-hom.prof.json", "chain2-hom.prof.json", "--counts")
    assert code == 0 and text == "1 1\n0 1\n"


@pytest.mark.skipif(shutil.which("multikleisli") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["multikleisli", "laws", "builtin:comm"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("ok\n")
