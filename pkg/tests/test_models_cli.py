from __future__ import annotations

import json

import pytest

from impbench import models
from impbench.cli import main
from impbench.errors import Diagnostic
from impbench.fixtures import (
    boolean_lattice,
    chain,
    closed_frame_kl,
    default_fixture_dir,
    discrete2_category,
    sierpinski,
    square,
    tiny_b_frame,
    write_fixtures,
)
from impbench.implication import heyting
from impbench.lattice import MonotoneMap
from impbench.represent import AdjointData
from impbench.topology import ContinuousMap, wbs_from_core


def test_lattice_round_trip():
    for L in (chain(4), square()):
        assert models.lattice_from_model(models.lattice_to_model(L)) == L


def test_implication_round_trip():
    imp = heyting(square())
    assert models.implication_from_model(models.implication_to_model(imp)) == imp


def test_space_and_map_round_trip():
    X = sierpinski()
    d = models.space_to_model(X)
    assert models.space_from_model(d) == X
    f = ContinuousMap(X, X, {"a": "a", "b": "a"})
    assert models.map_from_model(models.map_to_model(f)) == f


def test_strongspace_round_trip():
    S = wbs_from_core(sierpinski(), "a")
    d = models.strongspace_to_model(S)
    back = models.strongspace_from_model(d)
    assert back.space == S.space and back.imp == S.imp


def test_frame_round_trip_standard_and_small_b():
    for K in (closed_frame_kl(), tiny_b_frame()):
        d = models.frame_to_model(K)
        back = models.frame_from_model(d)
        assert back.points == K.points
        assert back.succ == K.succ
        assert back.B == K.B
        assert back.N == K.N


def test_standard_frame_model_omits_defaults():
    d = models.frame_to_model(closed_frame_kl())
    assert "B" not in d and "N" not in d


def test_frame_model_defaults_reconstruct_standard():
    d = {"points": ["k", "l"], "leq": [[1, 1], [0, 1]], "R": []}
    K = models.frame_from_model(d)
    assert K.is_standard() and K.is_full()


def test_adjoints_round_trip():
    L = chain(3)
    nab = MonotoneMap(L, L, (0, 1, 1))
    F = MonotoneMap(L, L, (0, 2, 2))
    D = AdjointData(L, nab, F)
    back = models.adjoints_from_model(models.adjoints_to_model(D))
    assert back.lattice == L
    assert back.nabla.mapping == nab.mapping
    assert back.F.mapping == F.mapping


def test_category_round_trip():
    S = discrete2_category()
    d = models.category_to_model(S)
    back, names = models.category_from_model(d)
    assert len(back.objects) == len(S.objects)
    assert len(back.maps) == len(S.maps)
    assert set(names) == set(d["spaces"])


def test_parse_model_reports_json_position(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{\n  \"elements\": [,]\n}\n")
    with pytest.raises(Diagnostic, match="line 2"):
        models.parse_model(str(p), "lattice")


def test_parse_model_unknown_kind(tmp_path):
    with pytest.raises(Diagnostic, match="parse-error"):
        models.parse_model("whatever.json", "poem")


def test_dumps_is_stable():
    d = models.lattice_to_model(square())
    assert models.dumps(d) == models.dumps(json.loads(models.dumps(d)))
    assert models.dumps(d).endswith("\n")


# -- the command line -------------------------------------------------------


def fx(name: str) -> str:
    return f"{default_fixture_dir()}/{name}"


def test_cli_classify_trivial_chain2(capsys):
    code = main(["classify", "--implication", fx("implication-trivial-chain2.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "wbi: True" in out and "core: 1" in out


def test_cli_frame_query(capsys):
    code = main(
        [
            "frame",
            "algebra",
            "--frame",
            fx("frame-closed-not-open.json"),
            "--query",
            "K -> {l}",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "result: {}" in out


def test_cli_geometry_enumerate(capsys):
    code = main(["geometry", "--category", fx("category-discrete2.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "count: 4" in out


def test_cli_wbs_cores(capsys):
    code = main(["wbs", "--space", fx("space-sierpinski.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert "cores: ['{a}', '{a,b}']" in out


def test_cli_validate_rejects_bad_input(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"elements": ["a", "b"], "leq": [[1, 0], [0, 1]]}')
    code = main(["validate", str(p), "--kind", "lattice"])
    out = capsys.readouterr().out
    assert code == 1
    assert "status: fail" in out


def test_cli_json_reports_are_byte_identical(capsys):
    args = ["--format", "json", "enumerate", "--lattice", fx("lattice-chain3.json")]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    body = json.loads(first)
    assert body["status"] == "ok"
    assert {"name": "count", "value": 9} in body["findings"]


def test_cli_guard_flag_and_env(monkeypatch, tmp_path, capsys):
    big = tmp_path / "b3.json"
    big.write_text(models.dumps(models.lattice_to_model(boolean_lattice("pqr"))))
    code = main(["enumerate", "--lattice", str(big), "--filter", "open", "--guard", "2"])
    assert code == 1
    assert "size-guard-exceeded" in capsys.readouterr().out
    monkeypatch.setenv("IMPBENCH_GUARD", "2")
    code = main(["enumerate", "--lattice", str(big), "--filter", "open"])
    assert code == 1
    monkeypatch.delenv("IMPBENCH_GUARD")
    code = main(["enumerate", "--lattice", str(big), "--filter", "open"])
    assert code == 0


def test_cli_selftest_rejects_unknown_module(capsys):
    code = main(["selftest", "--only", "nonsense"])
    assert code == 1
    assert "no criterion matches" in capsys.readouterr().out


def test_cli_fixtures_regenerates_identical_files(tmp_path):
    names = write_fixtures(str(tmp_path))
    for name in names:
        fresh = (tmp_path / name).read_text()
        bundled = open(fx(name)).read()
        assert fresh == bundled, name
