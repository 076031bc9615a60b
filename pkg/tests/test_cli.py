import json
from pathlib import Path

import pytest

from equivk.cli import main

INPUTS = Path(__file__).parent.parent / "inputs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out)


def test_compute_reflection_line(capsys):
    code, doc = machine(capsys, "compute", "--builtin", "cyclic", "--m", "2",
                        "--action", "reflection", "--ambient", "1")
    assert code == 0
    r = doc["report"]
    assert (r["rank_k0"], r["rank_k1"]) == (1, 0)
    assert r["verification"]["pinc_formula"]["rank_k0"] == 1


def test_compute_sym_verify(capsys):
    code, doc = machine(capsys, "compute", "--builtin", "sym", "--n", "3", "--verify")
    assert code == 0
    subs = doc["report"]["verification"]
    assert set(subs) == {"karoubi", "partition_formula"}
    assert all((s["rank_k0"], s["rank_k1"]) == (1, 1) for s in subs.values())


def test_compute_text_output(capsys):
    code, out, _ = run(capsys, "compute", "--builtin", "cyclic", "--m", "6", "--action", "reflection")
    assert code == 0
    assert out.splitlines()[0] == "group: cyclic m=6 action=reflection"
    assert "rank K^0" in out


@pytest.mark.parametrize("name, ranks", [("z2_reflection", (1, 0)), ("s3_permutation", (1, 1)),
                                         ("d4_square", (4, 0)), ("z5_rotation", (5, 0))])
def test_shipped_inputs(capsys, name, ranks):
    code, doc = machine(capsys, "compute", str(INPUTS / f"{name}.json"), "--verify")
    assert code == 0
    r = doc["report"]
    assert (r["rank_k0"], r["rank_k1"]) == ranks


def test_output_is_deterministic_apart_from_timing(capsys):
    outs = []
    for _ in range(2):
        _, doc = machine(capsys, "compute", "--builtin", "dihedral", "--m", "5", "--verify")
        doc["report"].pop("timing")
        outs.append(json.dumps(doc, sort_keys=True))
    assert outs[0] == outs[1]


def test_stdin_non_orthogonal(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO('{"dimension": 1, "generators": [[["2"]]]}'))
    code, _, err = run(capsys, "compute", "-")
    assert code == 2
    assert "computation failed" in err


def test_usage_errors(capsys):
    assert run(capsys, "partitions", "1")[0] == 1
    assert run(capsys, "compute")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_odd_reflection_order_is_computation_error(capsys):
    code, _, _ = run(capsys, "compute", "--builtin", "cyclic", "--m", "3", "--action", "reflection")
    assert code == 2


def test_group_cap(capsys):
    code, _, err = run(capsys, "compute", "--builtin", "sym", "--n", "5", "--cap", "50")
    assert code == 2


def test_partitions_table(capsys):
    code, doc = machine(capsys, "partitions", "6")
    assert code == 0
    assert doc["report"]["rows"][-1] == {"n": 6, "a": 2, "b": 2, "p": 2, "i": 2}


def test_gl_table_command(capsys):
    code, out, _ = run(capsys, "gl-table", "4")
    assert code == 0
    rows = out.splitlines()[1:]
    assert rows[0].split() == ["2", "Z", "(+)_N", "Z"]


def test_builtin_list(capsys):
    code, out, _ = run(capsys, "builtin", "list")
    assert code == 0
    assert "hyperoctahedral" in out


def test_verify_single_check(capsys):
    code, doc = machine(capsys, "verify", "--check", "partition_identities")
    assert code == 0
    assert doc["report"]["passed"]


def test_verify_tampered_fails(capsys):
    code, doc = machine(capsys, "verify", "--check", "decomposition_criterion", "--tamper-cocycle")
    assert code == 3
    (check,) = doc["report"]["checks"]
    assert not check["passed"]
    assert "class_index" in check["detail"]
