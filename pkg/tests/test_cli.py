from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from finite_groupoids import formats
from finite_groupoids.algebra import Bimodule, FiniteDimAlgebra
from finite_groupoids import linalg as la
from finite_groupoids.cli import run
from finite_groupoids.constructions import cyclic_groupoid, pair_groupoid
from finite_groupoids.core import validate_groupoid
from finite_groupoids.enumeration import enumerate_groupoids


def cli(*argv):
    buf = io.StringIO()
    code = run([str(a) for a in argv], stdout=buf)
    return code, buf.getvalue()


def cli_json(*argv):
    code, out = cli("--report", "json", *argv)
    doc = json.loads(out)
    assert doc["exit_code"] == code
    return code, doc


@pytest.fixture
def pair2_file(tmp_path):
    p = tmp_path / "pair2.json"
    assert cli("construct", "pair", 2, "-o", p)[0] == 0
    return p


@pytest.fixture
def mutated_file(tmp_path):
    g = pair_groupoid(2)
    d = formats.groupoid_to_json(g)
    d["mu"][0][0] = 1
    p = tmp_path / "mutated.json"
    formats.write_json(p, d)
    return p


# -- documented examples ---------------------------------------------------------

def test_check_constructed_pair2(pair2_file):
    code, out = cli("check", pair2_file)
    assert code == 0
    assert out.splitlines()[0] == "valid groupoid, base size 2"


def test_enumerate_three_up_to_iso():
    code, out = cli("enumerate", 3, "--up-to-iso")
    assert code == 0
    assert out.startswith("n=3: 3 groupoids up to isomorphism")


def test_check_mutated_names_axioms(mutated_file):
    code, out = cli("check", mutated_file)
    assert code == 1
    assert out.startswith("invalid groupoid")
    assert "A4" in out


# -- exit codes --------------------------------------------------------------------

def test_malformed_file_exit_2_names_field(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2, "sigma": [0, 7], "tau": [0, 0], "mu": [[0, 1], [1, 0]]}')
    code, out = cli("check", p)
    assert code == 2 and "sigma" in out


def test_unparseable_and_missing_files_exit_2(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert cli("check", p)[0] == 2
    assert cli("check", tmp_path / "nope.json")[0] == 2


def test_resource_limit_exit_2():
    code, out = cli("enumerate", 6, "--limit", 5)
    assert code == 2 and "resource limit" in out


def test_unknown_flag_is_rejected():
    with pytest.raises(SystemExit) as exc:
        cli("check", "--frobnicate", "x.json")
    assert exc.value.code == 2


def test_exactly_one_subcommand_required():
    with pytest.raises(SystemExit) as exc:
        cli()
    assert exc.value.code == 2


def test_check_category_only(tmp_path):
    g = cyclic_groupoid(2)
    d = formats.groupoid_to_json(g)
    d["mu"][1][1] = 1
    p = tmp_path / "monoid.json"
    formats.write_json(p, d)
    assert cli("check", "--category", p)[0] == 0
    code, out = cli("check", p)
    assert code == 1 and "G2" in out


# -- JSON mode ---------------------------------------------------------------------

def test_json_report_is_superset_of_text(pair2_file, mutated_file):
    for argv in (("check", pair2_file), ("check", mutated_file), ("enumerate", 3),
                 ("base", pair2_file), ("classical", pair2_file), ("dualize", pair2_file)):
        code, text = cli(*argv)
        jcode, doc = cli_json(*argv)
        assert code == jcode
        assert doc["text"] == text.splitlines()
        assert doc["command"] == argv[0]
        assert doc["status"] == {0: "ok", 1: "invalid", 2: "error"}[code]


def test_json_report_lists_axiom_ids(mutated_file):
    code, doc = cli_json("check", mutated_file)
    assert code == 1 and doc["report"]["valid"] is False
    assert {"A4", "A8"} <= {v["axiom"] for v in doc["report"]["violations"]}


def test_json_error_names_field(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 1, "sigma": [0], "tau": [0]}')
    code, doc = cli_json("check", p)
    assert code == 2 and doc["result"]["field"] == "mu"


# -- construct / enumerate round trips ----------------------------------------------

@pytest.mark.parametrize("kind,args", [("pair", ["3"]), ("group", ["S3"]), ("group", ["Z4"]),
                                       ("partial-bij", ["2"])])
def test_construct_files_round_trip(tmp_path, kind, args):
    p = tmp_path / "g.json"
    assert cli("construct", kind, *args, "-o", p)[0] == 0
    g = formats.load_groupoid(p)
    assert validate_groupoid(g).ok
    assert formats.dumps(formats.groupoid_to_json(g)) == p.read_text()


def test_construct_union_and_product(tmp_path, pair2_file):
    z2 = tmp_path / "z2.json"
    cli("construct", "group", "Z2", "-o", z2)
    for kind, n in (("union", 6), ("product", 8)):
        code, doc = cli_json("construct", kind, pair2_file, z2)
        assert code == 0 and doc["result"]["n"] == n
        assert validate_groupoid(formats.groupoid_from_json(doc["result"]["groupoid"])).ok


def test_construct_group_from_cayley_file(tmp_path):
    p = tmp_path / "z3.json"
    formats.write_json(p, {"table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "unit": 0})
    code, out = cli("construct", "group", p)
    assert code == 0 and "base size 1" in out
    formats.write_json(p, {"table": [[0, 1], [1, 1]], "unit": 0})
    code, out = cli("construct", "group", p)
    assert code == 1 and "inverse" in out


def test_construct_bad_arguments():
    assert cli("construct", "pair", "x")[0] == 2
    assert cli("construct", "group", "NoSuchGroup")[0] == 2
    assert cli("construct", "union", "one.json")[0] == 2


def test_enumerate_emit_dir_round_trip(tmp_path):
    d = tmp_path / "out"
    code, out = cli("enumerate", 4, "--emit-dir", d)
    assert code == 0
    files = sorted(d.iterdir())
    assert len(files) == 7
    reps = enumerate_groupoids(4).representatives
    for i, g in enumerate(reps):
        f = d / f"gpd_4_{i}.json"
        assert formats.load_groupoid(f) == g
        assert cli("check", f)[0] == 0


def test_enumerate_labeled_count():
    code, doc = cli_json("enumerate", 3, "--labeled")
    assert code == 0 and doc["result"]["count_labeled"] == 10


# -- base, classical, hom -------------------------------------------------------------

def test_base_and_classical(pair2_file):
    code, doc = cli_json("base", pair2_file)
    assert doc["result"] == {"base": [0, 3], "group_object": False}
    code, doc = cli_json("classical", pair2_file)
    assert code == 0 and doc["result"]["source"] == [0, 1, 0, 1]


def test_base_of_invalid_file_exits_1(mutated_file):
    assert cli("base", mutated_file)[0] == 1
    assert cli("classical", mutated_file)[0] == 1


def test_hom(tmp_path, pair2_file):
    z2 = tmp_path / "z2.json"
    cli("construct", "group", "Z2", "-o", z2)
    m = tmp_path / "map.json"
    m.write_text("[0, 0, 0, 0]")
    assert cli("hom", pair2_file, z2, m)[0] == 0
    m.write_text('{"map": [1, 0]}')
    code, out = cli("hom", z2, z2, m)
    assert code == 1 and "H1" in out
    m.write_text("[0]")
    assert cli("hom", z2, z2, m)[0] == 2


# -- dualize and cogroupoid files -------------------------------------------------------

def test_dualize_and_check_cogroupoid(tmp_path, pair2_file):
    c = tmp_path / "c.json"
    code, out = cli("dualize", pair2_file, "--field", "Fp:7", "-o", c)
    assert code == 0 and "dim C = 4, dim C2 = 8, cobase dim = 2" in out
    assert cli("cogroupoid", "check", c)[0] == 0
    code, out = cli("cogroupoid", "hopf", c)
    assert code == 1 and "not a Hopf algebra" in out


def test_hopf_from_group_dual(tmp_path):
    z3, c = tmp_path / "z3.json", tmp_path / "c.json"
    cli("construct", "group", "Z3", "-o", z3)
    assert cli("dualize", z3, "-o", c)[0] == 0
    code, doc = cli_json("cogroupoid", "hopf", c)
    assert code == 0 and doc["result"]["hopf"] is True
    assert doc["result"]["counit"] == ["1", "0", "0"]


def test_tampered_cogroupoid_file_exit_1(tmp_path, pair2_file):
    c = tmp_path / "c.json"
    cli("dualize", pair2_file, "--field", "Fp:7", "-o", c)
    d = json.loads(c.read_text())
    d["U"]["matrix"] = [[int(i == j) for j in range(4)] for i in range(4)]
    c.write_text(json.dumps(d))
    code, out = cli("cogroupoid", "check", c)
    assert code == 1 and "coA15" in out


def test_bad_field_is_malformed(pair2_file):
    assert cli("dualize", pair2_file, "--field", "Fp:9")[0] == 2


# -- algebra files ------------------------------------------------------------------------

def test_algebra_build_extension_then_structure(tmp_path):
    F = la.field("Fp:5")
    H = FiniteDimAlgebra(F, 1, F.array([[[1]]]))
    N = Bimodule(F, 1, F.array([[[1]]]), F.array([[[1]]]))
    hp, np_, out = tmp_path / "H.json", tmp_path / "N.json", tmp_path / "G.json"
    formats.write_json(hp, formats.algebra_to_json(H))
    formats.write_json(np_, formats.bimodule_to_json(N))
    code, text = cli("algebra", "build-ext", hp, np_, "-o", out)
    assert code == 0 and "dim G = 2, dim G2 = 3" in text
    assert cli("algebra", "check", out)[0] == 0
    code, doc = cli_json("algebra", "structure", out)
    assert code == 0 and doc["result"]["all_pass"] is True
    assert doc["result"]["dim_N"] == doc["result"]["dim_H"] == 1
    assert cli("algebra", "build-ext", hp)[0] == 2


def test_algebra_bad_bimodule_exit_1(tmp_path):
    F = la.field("Fp:5")
    H = FiniteDimAlgebra(F, 1, F.array([[[1]]]))
    N = Bimodule(F, 1, F.array([[[2]]]), F.array([[[1]]]))
    hp, np_ = tmp_path / "H.json", tmp_path / "N.json"
    formats.write_json(hp, formats.algebra_to_json(H))
    formats.write_json(np_, formats.bimodule_to_json(N))
    code, out = cli("algebra", "build-ext", hp, np_)
    assert code == 1 and "left-associativity" in out


# -- action files ----------------------------------------------------------------------------

def test_action_self_check_semidirect(tmp_path):
    z3, a = tmp_path / "z3.json", tmp_path / "a.json"
    cli("construct", "group", "Z3", "-o", z3)
    code, out = cli("action", "self", z3, "-o", a)
    assert code == 0 and "1 orbits on 3 points" in out
    assert cli("action", "check", a)[0] == 0
    g = tmp_path / "ag.json"
    code, out = cli("action", "semidirect", a, "-o", g)
    assert code == 0 and "action groupoid n=9, base size 3" in out
    assert validate_groupoid(formats.load_groupoid(g)).ok


def test_broken_action_file_exit_1(tmp_path):
    a = tmp_path / "a.json"
    z3 = tmp_path / "z3.json"
    cli("construct", "group", "Z3", "-o", z3)
    cli("action", "self", z3, "-o", a)
    d = json.loads(a.read_text())
    d["theta"][1][0] = 0
    a.write_text(json.dumps(d))
    for sub in ("check", "semidirect"):
        code, out = cli("action", sub, a)
        assert code == 1 and "Act4" in out


# -- process-level -----------------------------------------------------------------------------

def test_module_entry_point_runs(pair2_file):
    r = subprocess.run([sys.executable, "-m", "finite_groupoids", "check", str(pair2_file)],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert r.stdout.startswith("valid groupoid, base size 2")


def test_output_is_deterministic(pair2_file):
    outs = {cli("--report", "json", "dualize", pair2_file, "--field", "Fp:7")[1]
            for _ in range(2)}
    assert len(outs) == 1
