import json

import pytest

from kaninj import (
    MonotoneMap,
    antichain,
    chain,
    class_bottom,
    class_join,
    join_map,
    map_to_json,
    point,
    poset_to_json,
    vee,
)
from kaninj.cli import main
from kaninj.serialize import class_to_json


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def out_json(capsys):
    return json.loads(capsys.readouterr().out)


def collapse_class():
    return {
        "name": "collapse",
        "maps": [map_to_json(MonotoneMap(chain(2), point(), [0, 0]))],
    }


def test_kan_strict(tmp_path, capsys):
    f = write(tmp_path, "f.json", map_to_json(MonotoneMap(antichain(2), vee(), [0, 1])))
    h = write(tmp_path, "h.json", map_to_json(join_map()))
    assert main(["kan", f, h]) == 0
    data = out_json(capsys)
    assert data["exists"] and data["strict"]


def test_kan_nonexistent(tmp_path, capsys):
    # the legs have no upper bound at all in the antichain itself
    ident = write(
        tmp_path, "ident.json", map_to_json(MonotoneMap.identity(antichain(2)))
    )
    h = write(tmp_path, "h.json", map_to_json(join_map()))
    assert main(["kan", ident, h]) == 1
    assert out_json(capsys)["exists"] is False


def test_dense_verdicts(tmp_path, capsys):
    unit = write(
        tmp_path, "unit.json", map_to_json(MonotoneMap(chain(2), chain(3), [1, 2]))
    )
    assert main(["dense", unit]) == 0
    assert out_json(capsys)["dense"] is True
    bot = write(tmp_path, "bot.json", map_to_json(MonotoneMap(point(), chain(2), [0])))
    assert main(["dense", bot]) == 1
    assert out_json(capsys)["dense"] is False


def test_injective_exit_codes(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_bottom()))
    strong = write(tmp_path, "c2.json", poset_to_json(chain(2)))
    neither = write(tmp_path, "a2.json", poset_to_json(antichain(2)))
    assert main(["injective", strong, klass]) == 0
    assert out_json(capsys)["verdict"] == "strong"
    assert main(["injective", neither, klass]) == 1
    assert out_json(capsys)["verdict"] == "neither"
    # weak but not strong: chain(2) along the collapse map
    ck = write(tmp_path, "ck.json", collapse_class())
    assert main(["injective", strong, ck]) == 3
    assert out_json(capsys)["verdict"] == "weak"
    assert main(["injective", strong, ck, "--weak"]) == 0
    assert main(["injective", neither, ck, "--weak"]) == 0


def test_injective_dual(tmp_path, capsys):
    # chain(2) has a bottom but its dual test asks for a top, which it
    # also has, while vee only has a top
    klass = write(tmp_path, "k.json", class_to_json(class_bottom()))
    v = write(tmp_path, "v.json", poset_to_json(vee()))
    assert main(["injective", v, klass]) == 1
    assert main(["injective", v, klass, "--dual"]) == 0


def test_reflect_and_convergence(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    x = write(tmp_path, "x.json", poset_to_json(antichain(2)))
    assert main(["reflect", x, klass]) == 0
    data = out_json(capsys)
    assert data["converged"] and len(data["reflected"]["elements"]) == 3
    assert "stages" not in data
    assert main(["reflect", x, klass, "--max-steps", "2"]) == 4
    assert out_json(capsys)["converged"] is False


def test_reflect_trace_and_dot(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    x = write(tmp_path, "x.json", poset_to_json(antichain(2)))
    dot_dir = tmp_path / "dots"
    assert main(["reflect", x, klass, "--trace", "--dot", str(dot_dir)]) == 0
    data = out_json(capsys)
    assert len(data["stages"]) == len(data["stage_sizes"])
    assert len(data["connectors"]) == len(data["stages"]) - 1
    names = {p.name for p in dot_dir.iterdir()}
    assert "reflected.dot" in names and "stage0.dot" in names


def test_extend(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    p = write(
        tmp_path, "p.json", map_to_json(MonotoneMap(antichain(2), vee(), [0, 1]))
    )
    assert main(["extend", p, klass]) == 0
    data = out_json(capsys)
    assert set(data) == {"unit", "extension", "stages_used"}
    # the extension restricts along the unit back to p
    unit = data["unit"]["map"]
    ext = data["extension"]["map"]
    assert {k: ext[v] for k, v in unit.items()} == {"a0": "a", "a1": "b"}


def test_extend_rejects_weak_target(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    p = write(
        tmp_path, "p.json", map_to_json(MonotoneMap.identity(antichain(2)))
    )
    assert main(["extend", p, klass]) == 1


def test_cone(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    assert main(["cone", klass]) == 0
    data = out_json(capsys)
    assert len(data["cones"]) == 1
    cone = data["cones"][0]
    # the cylinder holds one copy of the domain and one of the codomain
    assert len(cone["cone"]["elements"]) == 2 + 3


def test_saturate(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_bottom()))
    assert main(["saturate", klass, "--size-cap", "3"]) == 0
    data = out_json(capsys)
    assert data["ok"] and all(row["ok"] for row in data["witnesses"])


def test_verify_suite(tmp_path, capsys):
    assert main(["verify", "colimits", "--size-cap", "3"]) == 0
    assert out_json(capsys)["passed"] is True
    assert main(["verify", "colimits", "--size-cap", "3", "--mutate"]) == 1
    assert out_json(capsys)["passed"] is False


def test_enumerate(capsys):
    assert main(["enumerate", "3"]) == 0
    data = out_json(capsys)
    assert data["count"] == 9
    assert main(["enumerate", "-1"]) == 2


def test_invalid_inputs(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_bottom()))
    assert main(["injective", str(tmp_path / "missing.json"), klass]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["injective", str(bad), klass]) == 2
    shapeless = write(tmp_path, "shapeless.json", {"elements": "oops"})
    assert main(["injective", shapeless, klass]) == 2


def test_bad_subcommand_and_suite(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["verify", "no-such-suite"]) == 2


def test_odd_max_steps_rejected(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    x = write(tmp_path, "x.json", poset_to_json(antichain(2)))
    assert main(["reflect", x, klass, "--max-steps", "3"]) == 2


def test_cap_cuts_search(tmp_path, capsys):
    klass = write(tmp_path, "k.json", class_to_json(class_join()))
    x = write(tmp_path, "x.json", poset_to_json(antichain(2)))
    assert main(["reflect", x, klass, "--cap", "1"]) == 2
