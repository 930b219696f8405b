import json
import math

import jsonschema
import pytest

import lfd


@pytest.fixture(scope="module")
def e12():
    return lfd.compute(preset="E_12", samples=100)


def test_presets():
    names = {p["name"]: p for p in lfd.presets()}
    assert names["E_12"]["signature"] == (2, 3, 7)
    assert names["E_18"]["k"] == 2
    assert not names["E_16"]["realizable"]


def test_compute_report(e12):
    assert e12["status"] == "ok"
    report = e12["report"]
    assert report["complex"]["euler_characteristic"] == 2
    assert report["tiling"]["covered"] == 100
    assert math.isclose(report["volume"]["invariant"], math.pi**2 / 84, rel_tol=1e-7)
    assert all(report["checks"].values())


def test_report_matches_schema(e12):
    schema = json.loads(lfd.schema_path().read_text())
    jsonschema.validate(e12["report"], schema)
    jsonschema.validate(lfd.compute(signature=(2, 3, 9), level=3)["report"], schema)


def test_obj_lines(e12):
    lines = e12["obj"].splitlines()
    verts = [l for l in lines if l.startswith("v ")]
    assert verts and all(len(c.split(".")[1]) == 9 for l in verts for c in l.split()[1:])
    assert any(l.startswith("g face_") for l in lines)


def test_unrealizable_and_invalid():
    assert lfd.compute(signature=[2, 3, 9], level=3)["status"] == "unrealizable"
    with pytest.raises(lfd.Error):
        lfd.compute(signature="2,3,6")
    with pytest.raises(ValueError):
        lfd.compute(nonsense=1)


def test_export(tmp_path):
    status, paths = lfd.export(tmp_path, preset="E_12", samples=20, format="json,obj")
    assert status == "ok"
    assert sorted(p.rsplit("/", 1)[1] for p in paths) == ["domain.obj", "report.json"]


def test_tiling_and_analogues():
    t = lfd.verify_tiling(preset="E_12", samples=50, seed=3)
    assert t["covered"] == 50 and t["double_interior"] == 0
    hexagon = lfd.so2(6)
    assert all(math.isclose(math.hypot(*v), 2 / math.sqrt(3), rel_tol=1e-12) for v in hexagon["vertices"])
    boosts = lfd.so11(0.5, 3)
    assert all(math.isclose(b - a, 0.5, abs_tol=1e-12) for _, a, b in boosts["faces"])
    assert lfd.json_number(1 / 3) == 0.333333333333
