import json

import pytest

from glat import fileformat, gallery
from glat.cohomology import h1_profile
from glat.errors import InputError, NotFinite, NotUnimodular, ParseError
from glat.report import cohomology_report


@pytest.mark.parametrize("make", [gallery.torus_pi_lattice, gallery.torus_w_lattice,
                                  lambda: gallery.trepalin_lattice(2)])
def test_round_trip(make):
    lat = make()
    text = fileformat.dumps(lat)
    back = fileformat.loads(text)
    assert back.name == lat.name and back.labels == lat.labels
    assert back.action == lat.action
    assert [m.rows for m in back.group.elements] == [m.rows for m in lat.group.elements]
    assert fileformat.dumps(back) == text
    assert cohomology_report(back).human() == cohomology_report(lat).human()
    assert [str(v) for v in h1_profile(back).values()] == [str(v) for v in h1_profile(lat).values()]


def test_load_and_dump_files(tmp_path, torus_pi):
    path = tmp_path / "pi.json"
    fileformat.dump(torus_pi, path)
    assert fileformat.load(path).action == torus_pi.action


def test_whitespace_insensitive_and_big_integers(torus_pi):
    doc = json.loads(fileformat.dumps(torus_pi))
    compact = json.dumps(doc, separators=(",", ":"))
    assert fileformat.loads(compact).action == torus_pi.action
    doc = {"rank": 1, "group": {"generators": {"t": [[-1]]}},
           "action": {"generators": {"t": [[-1]]}}}
    lat = fileformat.loads(json.dumps(doc))
    assert lat.rank == 1 and lat.group.order == 2


def test_generator_order_follows_key_order():
    doc = {"rank": 2, "group": {"generators": {"b": [[1, 0], [0, -1]], "a": [[-1, 0], [0, 1]]}},
           "action": {"generators": {"a": [[-1, 0], [0, 1]], "b": [[1, 0], [0, -1]]}}}
    lat = fileformat.loads(json.dumps(doc))
    assert list(lat.group.generator_names) == ["b", "a"]


def _err(text):
    with pytest.raises(ParseError) as info:
        fileformat.loads(text)
    return info.value


def test_parse_errors_carry_location():
    e = _err('{"rank": 1,\n "group": ]')
    assert e.line == 2
    e = _err(json.dumps({"group": {}, "action": {}}))
    assert e.field == "rank"
    text = '{\n "rank": 1,\n "group": {"generators": {"t": [[-1, 0]]}},\n "action": {"generators": {"t": [[-1]]}}\n}'
    e = _err(text)
    assert e.field == "group.generators.t" and e.line == 3
    text = '{\n "rank": 1,\n "group": {"generators": {"t": [[-1]]}},\n "action": {"generators": {"t": [["x"]]}}\n}'
    e = _err(text)
    assert e.field == "action.generators.t" and e.line == 4
    e = _err(json.dumps({"rank": 2, "group": {"generators": {"t": [[-1]]}},
                         "action": {"generators": {"t": [[1, 0], [0, 1]]}}, "basis_labels": ["a"]}))
    assert e.field == "basis_labels"
    e = _err(json.dumps({"rank": 1, "group": {"generators": {"t": [[-1]]}}, "action": {"generators": {}}}))
    assert e.field == "action.generators"
    e = _err(json.dumps({"rank": 1, "group": {"generators": {"t": [[-1]]}},
                         "action": {"generators": {"t": [[-1]], "u": [[1]]}}}))
    assert e.field == "action.generators.u"


def test_semantic_errors():
    with pytest.raises(NotUnimodular):
        fileformat.loads(json.dumps({"rank": 1, "group": {"generators": {"t": [[2]]}},
                                     "action": {"generators": {"t": [[1]]}}}))
    with pytest.raises(NotFinite):
        fileformat.loads(json.dumps({"rank": 1, "group": {"generators": {"t": [[1, 1], [0, 1]]}},
                                     "action": {"generators": {"t": [[1]]}}}), element_cap=20)
    # rho has order 2 in the group but the proposed image has order 4
    with pytest.raises(InputError):
        fileformat.loads(json.dumps({"rank": 2, "group": {"generators": {"t": [[-1]]}},
                                     "action": {"generators": {"t": [[0, -1], [1, 0]]}}}))
