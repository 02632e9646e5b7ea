import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import tmesh

FIXTURES = Path(os.environ.get("TMESH_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def load(name):
    return json.loads((FIXTURES / name).read_text())


def test_mesh_k_analysis():
    rep = tmesh.analyze(load("mesh_k.json"), 3)
    assert rep["rank"] == 16
    assert rep["dimension"]["general"] == 56
    assert rep["diagonalizable"] is False
    assert rep["blocks"][0]["key_cycle_det"] == "5/9"


def test_grid_dimension():
    grid = {
        "domain": {"x0": 0, "y0": 0, "x1": 3, "y1": 3},
        "hsegments": [{"y": 1, "x0": 0, "x1": 3}, {"y": 2, "x0": 0, "x1": 3}],
        "vsegments": [{"x": 1, "y0": 0, "y1": 3}, {"x": 2, "y0": 0, "y1": 3}],
    }
    assert tmesh.dimension(grid, 2)["general"] == 25


def test_witness_and_stable():
    w = tmesh.witness(load("mesh_k.json"), 3, seed=1)
    assert w["status"] == "witness-found"
    assert w["method"] == "closed-form"
    assert w["witness"] == 2
    assert (w["rank_before"], w["rank_after"]) == (16, 15)
    assert tmesh.witness(load("three_edges.json"), 2, seed=1)["status"] == "stable-by-diagonalizability"
    sampled = tmesh.witness(load("mesh_k_k1_gt.json"), 3, seed=3, target=(1, 7))
    assert sampled["method"] == "sampled"


def test_structural_maps():
    iso = tmesh.isomorphic(load("sic_t1.json"), load("sic_t2.json"))
    assert iso["isomorphic"] and iso["axis_swapped"]
    assert tmesh.similar(load("similar_t1.json"), load("similar_t2.json"))["status"] == "similar"


def test_partition_and_sample():
    p = tmesh.partition(load("three_edges_gt.json"), 2)
    assert p["s"] == 0 and p["order"] == [0, 1, 2]
    assert tmesh.sample(load("three_edges_gt.json"), 2, 20, 1) == {9: 20}


def test_exact_helpers():
    assert tmesh.det([[1, 2], [3, 4]]) == -2
    assert tmesh.det([["1/2", 0], [0, "2/3"]]) == Fraction(1, 3)
    assert tmesh.rank([[1, 2], [2, 4]]) == 1


def test_random_mesh_and_render():
    m = tmesh.random_mesh(7, steps=6)
    assert tmesh.validate(m)["valid"]
    assert tmesh.random_mesh(7, steps=6) == m
    assert tmesh.render_svg(m).startswith("<svg")


def test_errors():
    assert not tmesh.validate('{"domain": {"x0": 0, "y0": 0, "x1": 4, "y1": 4},'
                              ' "hsegments": [{"y": 2, "x0": 0, "x1": 3}], "vsegments": []}')["valid"]
    with pytest.raises(tmesh.ParseError):
        tmesh.analyze("{", 2)
    with pytest.raises(tmesh.TMeshError):
        tmesh.witness(load("mesh_k.json"), 3, seed=1, target=(1, 5))
