import json

import pytest

from hopforest.canonical import canonical_form
from hopforest.errors import InvalidInput
from hopforest.families import colored_partition_poset, figure_lattice, partition_lattice
from hopforest.jsonio import dumps, interval_from_json, interval_to_json, load, loads
from hopforest.poset import interval_from_covers


def same(P, Q):
    return P.names == Q.names and P.up == Q.up and P.tags == Q.tags and P.coloring == Q.coloring


@pytest.mark.parametrize(
    "P",
    [
        figure_lattice(1),
        partition_lattice(4),
        colored_partition_poset((2, 1), 2),
        interval_from_covers(["0", "x", "1"], [("0", "x"), ("x", "1")], colors={"0": 1, "x": 2, "1": 1}),
    ],
)
def test_roundtrip(P):
    Q = loads(dumps(P))
    assert same(P, Q)
    assert canonical_form(P) == canonical_form(Q)


def test_integer_colors_written_as_colors():
    P = interval_from_covers(["0", "1"], [("0", "1")], colors={"0": 1, "1": 3})
    assert interval_to_json(P)["colors"] == {"0": 1, "1": 3}


def test_redundant_covers_tolerated():
    P = loads(json.dumps({"elements": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"], ["0", "1"]]}))
    assert P.covers() == [(0, 1), (1, 2)]


def test_load_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(dumps(figure_lattice(2)))
    assert same(load(str(path)), figure_lattice(2))
    with pytest.raises(InvalidInput):
        load(str(tmp_path / "missing.json"))


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"elements": "ab"}',
        '{"elements": ["0", "1"], "covers": [["0"]]}',
        '{"elements": ["0", "1"], "covers": "x"}',
        '{"elements": ["0", "1"], "covers": [["0", "1"]], "colors": {"0": "red", "1": 1}}',
        '{"elements": ["0", "1"], "covers": [["0", "1"]], "colors": {"0": true, "1": 1}}',
        '{"elements": ["0", "1"], "covers": [["0", "1"]], "tags": {"0": 1, "1": 1}}',
        '{"elements": ["0", "1"], "covers": [["0", "1"]], "coloring": "absolute", "tags": {"0": 1}}',
        '{"elements": ["0", "1"], "covers": [["0", "1"]], "colors": {"0": 1}, "tags": {}}',
        '{"elements": ["0", "a", "b"], "covers": [["0", "a"], ["0", "b"]]}',
        '{"elements": ["0", "1"], "covers": [["0", "1"], ["1", "0"]]}',
        '{"elements": ["0", "0"], "covers": []}',
    ],
)
def test_rejects_bad_input(text):
    with pytest.raises(InvalidInput):
        loads(text)


def test_from_json_needs_object():
    with pytest.raises(InvalidInput):
        interval_from_json(["a"])
