import json

import numpy as np
import pytest

from skewpencil import (
    CanonicalBlock,
    CanonicalStructure,
    enumerate_structures,
    make_structure_pair,
    pair_to_json,
    structure_to_json,
)
from skewpencil.cli import main

from helpers import count_structures_dp, random_skew_pair


def write_structure(tmp_path, blocks, name="structure.json"):
    st = CanonicalStructure(blocks)
    path = tmp_path / name
    path.write_text(json.dumps(structure_to_json(st)))
    return st, path


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pattern_command(tmp_path, capsys):
    _, path = write_structure(tmp_path, (CanonicalBlock("L", 5),))
    code, out, _ = run(capsys, ["pattern", str(path)])
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 11 and obj["params"] == 0
    assert not any(any(row) for row in obj["maskA"])


def test_codim_command(tmp_path, capsys):
    _, path = write_structure(tmp_path, (CanonicalBlock("L", 5),))
    code, out, _ = run(capsys, ["codim", str(path)])
    assert code == 0 and out.strip() == "0"


def test_codim_H1(tmp_path, capsys):
    _, path = write_structure(tmp_path, (CanonicalBlock("H", 1, 0.0),))
    code, out, _ = run(capsys, ["codim", str(path)])
    assert code == 0 and out.strip() == "1"


def test_verify_command_ok(tmp_path, capsys):
    _, path = write_structure(tmp_path, (CanonicalBlock("H", 1, 0.0),))
    code, out, _ = run(capsys, ["verify", str(path)])
    assert code == 0
    obj = json.loads(out)
    assert obj["all_ok"]
    assert obj["global"]["rank_T"] == 1 and obj["global"]["params_p"] == 1
    assert obj["global"]["ambient"] == 2


def test_verify_exit_1_on_failure(tmp_path, capsys):
    # eigenvalues closer than the pattern tolerance but exactly distinct:
    # the pattern takes the equal-eigenvalue branch while the exact ranks
    # see two different eigenvalues, so the direct sum overshoots
    _, path = write_structure(
        tmp_path, (CanonicalBlock("H", 1, 0.0), CanonicalBlock("H", 1, 1e-11)))
    code, out, _ = run(capsys, ["verify", str(path)])
    assert code == 1
    obj = json.loads(out)
    assert not obj["all_ok"]
    assert obj["global"]["rank_T"] + obj["global"]["params_p"] > obj["global"]["ambient"]


def test_verify_float_backend(tmp_path, capsys):
    _, path = write_structure(tmp_path, (CanonicalBlock("K", 1), CanonicalBlock("L", 1)))
    code, out, _ = run(capsys, ["verify", str(path), "--backend", "float"])
    assert code == 0
    assert json.loads(out)["all_ok"]


def test_reduce_zero_perturbation(tmp_path, capsys):
    st, spath = write_structure(tmp_path, (CanonicalBlock("H", 1, 0.0),))
    base = make_structure_pair(st)
    zero = pair_to_json(type(base)(np.zeros((2, 2)), np.zeros((2, 2))))
    ppath = tmp_path / "pert.json"
    ppath.write_text(json.dumps(zero))
    code, out, _ = run(capsys, ["reduce", "--base", str(spath), "--perturbation", str(ppath)])
    assert code == 0
    obj = json.loads(out)
    assert obj["converged"] and obj["iterations"] == []
    assert obj["pattern_supported"]


def test_reduce_random_perturbation(tmp_path, capsys):
    rng = np.random.default_rng(4)
    st, spath = write_structure(tmp_path, (CanonicalBlock("K", 2),))
    pert = random_skew_pair(rng, 4, scale=1e-3)
    ppath = tmp_path / "pert.json"
    ppath.write_text(json.dumps(pair_to_json(pert)))
    code, out, _ = run(capsys, ["reduce", "--base", str(spath), "--perturbation", str(ppath)])
    assert code == 0
    obj = json.loads(out)
    assert obj["converged"]
    assert obj["iterations"][-1]["off_pattern_norm"] <= 1e-10


def test_reduce_dimension_mismatch_exits_2(tmp_path, capsys):
    rng = np.random.default_rng(4)
    _, spath = write_structure(tmp_path, (CanonicalBlock("K", 2),))
    pert = random_skew_pair(rng, 3, scale=1e-3)
    ppath = tmp_path / "pert.json"
    ppath.write_text(json.dumps(pair_to_json(pert)))
    code, _, err = run(capsys, ["reduce", "--base", str(spath), "--perturbation", str(ppath)])
    assert code == 2
    assert "error" in err


def test_corpus_command(tmp_path, capsys):
    code, out, _ = run(capsys, ["corpus", "--max-dim", "6", "--seed", "7"])
    assert code == 0
    lines = out.strip().splitlines()
    header = json.loads(lines[0])
    assert header == {"count": 173, "max_dim": 6, "seed": 7}
    assert len(lines) == 1 + header["count"]
    # every line parses back into a structure of dimension <= 6
    dims = []
    for line in lines[1:]:
        obj = json.loads(line)
        st = CanonicalStructure(tuple(
            CanonicalBlock(b["kind"], b["n"], complex(*b.get("lambda", [0, 0])))
            for b in obj["blocks"]))
        dims.append(st.dim)
    assert max(dims) <= 6


def test_corpus_count_matches_partition_dp(capsys):
    # independent partition-style counter agrees with the enumeration
    for max_dim in (1, 2, 3, 4, 5, 6):
        assert len(enumerate_structures(max_dim)) == count_structures_dp(max_dim)


def test_corpus_byte_identical(capsys):
    code1, out1, _ = run(capsys, ["corpus", "--max-dim", "5", "--seed", "1"])
    code2, out2, _ = run(capsys, ["corpus", "--max-dim", "5", "--seed", "1"])
    assert code1 == code2 == 0
    assert out1 == out2


def test_pattern_byte_identical(tmp_path, capsys):
    _, path = write_structure(
        tmp_path, (CanonicalBlock("H", 2, 1j), CanonicalBlock("L", 1)))
    _, out1, _ = run(capsys, ["pattern", str(path)])
    _, out2, _ = run(capsys, ["pattern", str(path)])
    assert out1 == out2


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, ["codim", "/nonexistent/structure.json"])
    assert code == 2
    assert "error" in err


def test_bad_json_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, ["pattern", str(path)])
    assert code == 2


def test_bad_schema_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"blocks": [{"kind": "Z", "n": 1}]}))
    code, _, err = run(capsys, ["verify", str(path)])
    assert code == 2


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
