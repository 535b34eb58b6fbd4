import json

import numpy as np
import pytest
from hypothesis import given, settings

from nlsgraph import build_graph, load_fixture, load_graph, save_graph
from nlsgraph.errors import (DuplicateEdge, FileIO, GraphFileError, NonPositiveMeasure,
                             UnknownEndpoint)
from nlsgraph.graphio import graph_from_dict, graph_to_dict

from conftest import graphs


def same(a, b):
    assert a.vertices == b.vertices
    assert a.mu.tobytes() == b.mu.tobytes()
    assert a.edges == b.edges
    if a.potential is None:
        assert b.potential is None
    else:
        assert a.potential.tobytes() == b.potential.tobytes()


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=15))
def test_round_trip(tmp_path_factory, g):
    path = tmp_path_factory.mktemp("io") / "g.json"
    save_graph(g, path)
    same(g, load_graph(path))


def test_round_trip_with_potential(tmp_path):
    g = build_graph({"a": 0.1, "b": 1 / 3}, [("a", "b", 2 / 7)], potential=[1.5, np.pi])
    save_graph(g, tmp_path / "g.json")
    same(g, load_graph(tmp_path / "g.json"))


def test_fixture_round_trip():
    g, _ = load_fixture("g6-table1")
    same(g, graph_from_dict(json.loads(json.dumps(graph_to_dict(g)))))


@pytest.mark.parametrize("doc, exc, where", [
    ({"vertices": []}, GraphFileError, "vertices"),
    ({"vertices": [{"id": "a"}]}, GraphFileError, "vertices[0]"),
    ({"vertices": [{"id": "a", "mu": "x"}]}, GraphFileError, "vertices[0].mu"),
    ({"vertices": [{"id": "a", "mu": 1}, {"id": "b", "mu": -1}]}, NonPositiveMeasure, "vertices[1]"),
    ({"vertices": [{"id": "a", "mu": 1, "h": 1}, {"id": "b", "mu": 1}]}, GraphFileError, "vertices[1]"),
    ({"vertices": [{"id": "a", "mu": 1}], "edges": [{"u": "a", "v": "q", "w": 1}]},
     UnknownEndpoint, "edges[0]"),
    ({"vertices": [{"id": "a", "mu": 1}, {"id": "b", "mu": 1}],
      "edges": [{"u": "a", "v": "b", "w": 1}, {"u": "b", "v": "a", "w": 1}]}, DuplicateEdge, "edges[1]"),
])
def test_diagnostics(doc, exc, where):
    with pytest.raises(exc) as info:
        graph_from_dict(doc)
    assert str(info.value).startswith(where)


def test_file_errors(tmp_path):
    with pytest.raises(FileIO):
        load_graph(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [\n  {"id": "a",, "mu": 1}]}')
    with pytest.raises(GraphFileError, match=r"bad.json:2:"):
        load_graph(bad)
    with pytest.raises(FileIO):
        save_graph(load_fixture("path2")[0], tmp_path / "nodir" / "g.json")
