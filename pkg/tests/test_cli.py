"""Serialization round-trips and command-line behaviour (exit codes,
determinism, JSON reports)."""

import json
import random

import pytest

from gerbecalc.cli import main
from gerbecalc.deligne import (
    DeligneCochain,
    _face_domain,
    cochain_add,
    cochain_sub,
    deligne_differential,
    random_cochain,
    zero_cochain,
)
from gerbecalc.holonomy import random_assignment
from gerbecalc.nerve import coned_ball, icosahedron, simplex_nerve
from gerbecalc.serialize import (
    assignment_from_json,
    assignment_to_json,
    cochain_from_json,
    cochain_to_json,
    complex_from_json,
    complex_to_json,
    dump_json,
    matrix_from_json,
    matrix_to_json,
    nerve_from_json,
    nerve_to_json,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- serialization round-trips ---------------------------------------------


def test_nerve_round_trip():
    nerve = simplex_nerve(4)
    doc = json.loads(json.dumps(nerve_to_json(nerve)))
    assert nerve_from_json(doc) == nerve


def test_complex_and_cochain_round_trip():
    cc = icosahedron()
    nerve = cc.nerve()
    doc = json.loads(json.dumps(complex_to_json(cc)))
    cc2 = complex_from_json(doc)
    assert cc2.triangles == cc.triangles
    assert cc2.charts == cc.charts
    assert cc2.coords == cc.coords

    rng = random.Random(3)
    c0 = {
        f: {s: rng.random() for s in _face_domain(cc, f, 0)}
        for f in nerve.faces_of_size(2)
    }
    c1 = {
        f: {s: rng.uniform(-2, 2) for s in _face_domain(cc, f, 1)}
        for f in nerve.faces_of_size(1)
    }
    gauge = DeligneCochain(
        nerve=nerve, degree=1, level=2, components=(c0, c1), complex=cc
    )
    c = cochain_add(zero_cochain(nerve, 2, 2, complex=cc), deligne_differential(gauge))
    doc = json.loads(json.dumps(cochain_to_json(c)))
    c2 = cochain_from_json(doc)
    diff = cochain_sub(c, c2)
    worst = 0.0
    for comp in diff.components:
        for val in comp.values():
            entries = val.values() if isinstance(val, dict) else (val,)
            worst = max(worst, max(abs(float(x)) for x in entries))
    assert worst < 1e-15


def test_pure_nerve_cochain_round_trip_is_exact():
    nerve = simplex_nerve(4)
    c = random_cochain(nerve, 2, 2, random.Random(5))
    doc = json.loads(json.dumps(cochain_to_json(c)))
    assert cochain_from_json(doc).components == c.components


def test_assignment_and_matrix_round_trip():
    cc = icosahedron()
    asg = random_assignment(cc, random.Random(7))
    doc = json.loads(json.dumps(assignment_to_json(asg)))
    asg2 = assignment_from_json(doc)
    assert asg2.triangle_chart == asg.triangle_chart
    assert asg2.vertex_chart == asg.vertex_chart

    m = [[1 + 2j, 0.5j], [-1.25, 3 - 4j]]
    assert (matrix_from_json(matrix_to_json(m)) == m).all()


# -- exit codes and outputs ------------------------------------------------


def test_k0_e8(capsys):
    code, out, _ = run_cli(capsys, "k0", "E8")
    assert code == 0
    assert "k0: 60" in out


def test_k0_missing_argument(capsys):
    code, _, _ = run_cli(capsys, "k0")
    assert code == 2


def test_bad_type_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "k0", "Z9")
    assert code == 2
    assert "error:" in err


def test_alcove_and_centralizer(capsys):
    code, out, _ = run_cli(capsys, "alcove", "A2")
    assert code == 0 and "vertex 0" in out
    code, out, _ = run_cli(capsys, "centralizer", "A2", "--face", "0")
    assert code == 0 and "centralizer root count" in out


def test_grpcoh_forms(capsys):
    code, out, _ = run_cli(capsys, "grpcoh", "--group", "2,2", "--degree", "2")
    assert code == 0 and "Z/2" in out
    code, out, _ = run_cli(capsys, "grpcoh", "center", "A", "3")
    assert code == 0 and "Z/4" in out
    code, _, _ = run_cli(capsys, "grpcoh")
    assert code == 2


def test_help_exits_zero(capsys):
    for argv in (["--help"], ["deligne", "--help"], ["lienum", "wzw", "--help"]):
        assert run_cli(capsys, *argv)[0] == 0


def test_unknown_subcommand(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2


# -- deligne subcommands on file fixtures ----------------------------------


@pytest.fixture()
def coboundary_file(tmp_path):
    nerve = simplex_nerve(4)
    c = deligne_differential(random_cochain(nerve, 1, 2, random.Random(2)))
    path = tmp_path / "cochain.json"
    dump_json(cochain_to_json(c), path)
    return str(path)


def test_deligne_check_and_trivialize(capsys, coboundary_file):
    code, out, _ = run_cli(capsys, "deligne", "check", coboundary_file)
    assert code == 0 and "[pass]" in out
    code, out, _ = run_cli(capsys, "deligne", "trivialize", coboundary_file)
    assert code == 0 and "round-trip defect" in out
    code, out, _ = run_cli(capsys, "deligne", "dd", coboundary_file)
    assert code == 0 and "is zero: True" in out


def test_deligne_check_fails_on_non_cocycle(capsys, tmp_path):
    nerve = simplex_nerve(4)
    c = random_cochain(nerve, 2, 2, random.Random(9))
    path = tmp_path / "bad.json"
    dump_json(cochain_to_json(c), path)
    code, out, _ = run_cli(capsys, "deligne", "check", str(path))
    assert code == 1 and "[FAIL]" in out


def test_missing_file_is_error(capsys):
    assert run_cli(capsys, "deligne", "check", "/nonexistent.json")[0] == 2


# -- holonomy subcommands --------------------------------------------------


@pytest.fixture()
def surface_files(tmp_path):
    cc = icosahedron()
    nerve = cc.nerve()
    rng = random.Random(31)
    rho = {t: rng.uniform(-1, 1) for t in cc.tri_keys}
    z = zero_cochain(nerve, 2, 2, complex=cc)
    b = {
        f: {s: rho[s] for s in _face_domain(cc, f, 2)}
        for f in nerve.faces_of_size(1)
    }
    c = DeligneCochain(
        nerve=nerve, degree=2, level=2,
        components=(z.components[0], z.components[1], b), complex=cc,
    )
    asg = random_assignment(cc, rng)
    paths = {}
    for name, doc in (
        ("complex", complex_to_json(cc)),
        ("cochain", cochain_to_json(c, include_spaces=False) | {"nerve": nerve_to_json(nerve)}),
        ("assignment", assignment_to_json(asg)),
    ):
        paths[name] = str(tmp_path / f"{name}.json")
        dump_json(doc, paths[name])
    return paths


def test_holonomy_surface_cli(capsys, surface_files):
    code, out, _ = run_cli(
        capsys,
        "holonomy", "surface",
        "--complex", surface_files["complex"],
        "--cochain", surface_files["cochain"],
        "--assignment", surface_files["assignment"],
    )
    assert code == 0 and "holonomy:" in out


def test_holonomy_stokes_cli(capsys, tmp_path):
    ball = coned_ball(icosahedron())
    nerve = ball.nerve()
    rng = random.Random(33)
    b_global = {t: rng.uniform(-1, 1) for t in ball.tri_keys}
    z = zero_cochain(nerve, 2, 2, complex=ball)
    b = {
        f: {s: b_global[s] for s in _face_domain(ball, f, 2)}
        for f in nerve.faces_of_size(1)
    }
    c = DeligneCochain(
        nerve=nerve, degree=2, level=2,
        components=(z.components[0], z.components[1], b), complex=ball,
    )
    H = {
        tet: sum(
            (-1) ** j * b_global[tuple(x for m, x in enumerate(tet) if m != j)]
            for j in range(4)
        )
        for tet in ball.tet_keys
    }
    asg = random_assignment(ball.boundary_surface(), rng)
    paths = {}
    docs = {
        "complex": complex_to_json(ball),
        "cochain": cochain_to_json(c, include_spaces=False)
        | {"nerve": nerve_to_json(nerve)},
        "field": {",".join(str(x) for x in tet): v for tet, v in H.items()},
        "assignment": assignment_to_json(asg),
    }
    for name, doc in docs.items():
        paths[name] = str(tmp_path / f"{name}.json")
        dump_json(doc, paths[name])
    code, out, _ = run_cli(
        capsys,
        "holonomy", "stokes",
        "--complex", paths["complex"],
        "--cochain", paths["cochain"],
        "--field", paths["field"],
        "--assignment", paths["assignment"],
    )
    assert code == 0 and "boundary equals bulk" in out


# -- lienum subcommands ----------------------------------------------------


def test_lienum_integrate_h(capsys):
    code, out, _ = run_cli(capsys, "lienum", "integrate-h", "--resolution", "16")
    assert code == 0 and "integral equals 1" in out


def test_lienum_project_deterministic_json(capsys):
    code1, out1, _ = run_cli(
        capsys, "--json", "lienum", "project", "--group", "su3", "--seed", "4"
    )
    code2, out2, _ = run_cli(
        capsys, "--json", "lienum", "project", "--group", "su3", "--seed", "4"
    )
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["ok"] is True
    xi = doc["results"]["alcove point"]
    assert abs(sum(xi)) < 1e-9 and xi == sorted(xi, reverse=True)


def test_lienum_verify_omega_rejects_su2(capsys):
    code, _, err = run_cli(capsys, "lienum", "verify-omega", "--group", "su2")
    assert code == 2 and "su3" in err


def test_json_report_shape(capsys):
    code, out, _ = run_cli(capsys, "--json", "k0", "G2")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == ["--json", "k0", "G2"]
    assert doc["results"]["k0"] == 2
    assert doc["ok"] is True
