"""End-to-end exercises of the command-line front end and its exit codes."""

import json
import os

import pytest

from tangentcat import serialize
from tangentcat.cli import main
from tangentcat.polycore import Polynomial, PolyMap
from tangentcat.tangent import Space
from tangentcat.connection import canonical_connection, christoffel_connection


def write_connection(tmp_path, c, name="conn.json"):
    path = tmp_path / name
    path.write_text(serialize.dumps(serialize.connection_to_json(c)))
    return str(path)


def write_bundle(tmp_path, b, name="bundle.json"):
    path = tmp_path / name
    path.write_text(serialize.dumps(serialize.bundle_to_json(b)))
    return str(path)


def christoffel_linear():
    x = Polynomial.variable(1, 0)
    return christoffel_connection(Space.euclidean(1), (((x,),),))


# ------------------------------------------------------------------- verify


def test_verify_connection_passes(tmp_path, capsys):
    path = write_connection(tmp_path, canonical_connection(1))
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out


def test_verify_bundle_passes(tmp_path, capsys):
    from tangentcat.dbundle import tangent_bundle

    path = write_bundle(tmp_path, tangent_bundle(Space.euclidean(2)))
    assert main(["verify", "--kind", "bundle", path]) == 0
    assert "verdict: pass" in capsys.readouterr().out


def test_verify_corrupted_lift_exits_2(tmp_path, capsys):
    from tangentcat.dbundle import tangent_bundle

    b = tangent_bundle(Space.euclidean(1))
    doc = serialize.bundle_to_json(b)
    doc["lambda"]["components"][3] = serialize.poly_to_json(
        Polynomial.variable(2, 0) * Polynomial.variable(2, 1)
    )
    path = tmp_path / "bad.json"
    path.write_text(serialize.dumps(doc))
    assert main(["verify", "--kind", "bundle", str(path)]) == 2
    out = capsys.readouterr().out
    assert "verdict: fail" in out
    assert "axiom 2" in out


def test_verify_malformed_json_exits_1(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    assert main(["verify", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_verify_schema_error_exits_1(tmp_path, capsys):
    path = tmp_path / "schema.json"
    path.write_text(json.dumps({"bundle": {}}))
    assert main(["verify", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_verify_missing_file_exits_1(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "absent.json")]) == 1
    assert "error:" in capsys.readouterr().err


# --------------------------------------------------------------- degree guard


def test_degree_guard_rejects_high_degree(tmp_path, capsys):
    x = Polynomial.variable(1, 0)
    steep = x
    for _ in range(9):
        steep = steep * x  # degree 10
    c = christoffel_connection(Space.euclidean(1), (((steep,),),))
    path = write_connection(tmp_path, c)
    assert main(["verify", path]) == 1
    assert "degree" in capsys.readouterr().err
    assert main(["--max-degree", "20", "verify", path]) == 0
    capsys.readouterr()


def test_degree_guard_env_variable(tmp_path, capsys, monkeypatch):
    path = write_connection(tmp_path, christoffel_linear())
    monkeypatch.setenv("TANGENTCAT_MAX_DEGREE", "1")
    assert main(["verify", path]) == 1
    capsys.readouterr()
    monkeypatch.setenv("TANGENTCAT_MAX_DEGREE", "nope")
    assert main(["verify", path]) == 1
    assert "TANGENTCAT_MAX_DEGREE" in capsys.readouterr().err


# ----------------------------------------------------------------- derive-h


def test_derive_h_writes_sidecar_and_is_idempotent(tmp_path, capsys):
    path = write_connection(tmp_path, christoffel_linear())
    assert main(["derive-h", path]) == 0
    sidecar = str(tmp_path / "conn.h.json")
    assert os.path.exists(sidecar)
    first = open(sidecar).read()
    capsys.readouterr()
    assert main(["derive-h", path]) == 0
    assert open(sidecar).read() == first
    h = serialize.map_from_json(json.loads(first))
    assert h.domain_dim == 3 and h.codomain_dim == 4
    # v-component of H for the table Gamma = x is -x t u.
    x = Polynomial.variable(3, 0)
    t = Polynomial.variable(3, 1)
    u = Polynomial.variable(3, 2)
    assert h.components[3] == -(x * t * u)


def test_derive_h_fails_for_defective_K(tmp_path, capsys):
    c = canonical_connection(1)
    doc = serialize.connection_to_json(c)
    del doc["H"]
    scaled = serialize.map_to_json(
        PolyMap.from_components(
            4, [Polynomial.variable(4, 0), Polynomial.variable(4, 3).scale(2)]
        )
    )
    doc["K"] = scaled
    path = tmp_path / "bad.json"
    path.write_text(serialize.dumps(doc))
    assert main(["derive-h", str(path)]) == 2
    assert "verdict: fail" in capsys.readouterr().out
    assert not os.path.exists(tmp_path / "bad.h.json")


# -------------------------------------------------------------- total-bundle


def test_total_bundle_writes_verified_structure(tmp_path, capsys):
    path = write_connection(tmp_path, canonical_connection(1))
    assert main(["total-bundle", path]) == 0
    out = capsys.readouterr().out
    sidecar = str(tmp_path / "conn.total.json")
    assert sidecar in out
    doc = json.loads(open(sidecar).read())
    bundle = serialize.bundle_from_json(doc)
    assert bundle.total.dim == 4 and bundle.base.dim == 1
    # zeta-hat sends x to (x, 0, 0, 0).
    assert [str(p) for p in bundle.zeta.components] == ["x0", "0", "0", "0"]


# ---------------------------------------------------------------- decompose


def test_decompose_text_output(tmp_path, capsys):
    path = write_connection(tmp_path, christoffel_linear())
    assert main(["decompose", path, "1,2,3,4"]) == 0
    assert capsys.readouterr().out == "(1, 2), (1, 3), (1, 10)\n"


def test_decompose_json_output(tmp_path, capsys):
    path = write_connection(tmp_path, canonical_connection(1))
    assert main(["--format", "json", "decompose", path, "1/2,2,3,4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["components"] == [["1/2", "2"], ["1/2", "3"], ["1/2", "4"]]


def test_decompose_bad_point_exits_1(tmp_path, capsys):
    path = write_connection(tmp_path, canonical_connection(1))
    assert main(["decompose", path, "1,2,x"]) == 1
    capsys.readouterr()
    assert main(["decompose", path, "1,2"]) == 1
    assert "expected" in capsys.readouterr().err


# --------------------------------------------------------------------- demo


@pytest.mark.parametrize("name", ["canonical", "christoffel", "tangent-axioms"])
def test_demos_pass(name, capsys):
    assert main(["demo", name]) == 0
    assert "verdict: pass" in capsys.readouterr().out


def test_demo_json_output_is_stable(capsys):
    assert main(["--format", "json", "demo", "canonical"]) == 0
    first = capsys.readouterr().out
    assert main(["--format", "json", "demo", "canonical"]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["verdict"] == "pass"
