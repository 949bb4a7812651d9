import math
import random

import pytest

from streetwalker.geometry import Point2, SimplePolygon, dist, segment_inside
from streetwalker.streets import (
    StreetGeometryError,
    StreetParseError,
    StreetPropertyError,
    build_street,
    load_street,
    save_street,
    shortest_path,
    validate_street,
)
from streetwalker.generators import gen_random_street

from conftest import L_SHAPE, UNIT_SQUARE
from helpers import brute_force_shortest


# corridor with a deep pocket at the far end of the chain opposite the
# target; the long ceiling lip hoods the pocket so its interior sees nothing
# of the s-to-t chain: not a street
NON_STREET = [(0.0, 0.0), (10.0, 0.0), (10.0, 1.0), (-8.0, 1.0), (-8.0, 6.0),
              (-9.0, 6.0), (-9.0, 0.0)]


def test_chain_split():
    poly = SimplePolygon(UNIT_SQUARE)
    street = build_street(poly, 0, 2)
    assert street.right_chain == (0, 1, 2)
    assert street.left_chain == (0, 3, 2)
    assert street.chain_fraction(1) == 0.5
    assert street.chain_fraction(0) == 0.0
    assert street.chain_fraction(2) == 1.0


def test_validate_convex():
    poly = SimplePolygon(UNIT_SQUARE)
    for t_index in (1, 2, 3):
        ok, witness = validate_street(poly, 0, t_index)
        assert ok and witness is None


def test_validate_corridor_rectangle():
    poly = SimplePolygon([(0, 0), (10, 0), (10, 1), (0, 1)])
    ok, _ = validate_street(poly, 0, 2)
    assert ok


def test_validate_rejects_dead_end_pocket():
    poly = SimplePolygon(NON_STREET)
    ok, witness = validate_street(poly, 0, 2)
    assert not ok
    assert witness is not None
    # the witness sits in or at the hooded pocket
    assert witness.x <= -7.9 and witness.y >= 0.9
    with pytest.raises(StreetPropertyError):
        build_street(poly, 0, 2)


def test_validate_symmetric_in_chains():
    poly = SimplePolygon(NON_STREET)
    # swapping s and t swaps the chains; the verdict must not change
    ok_a, _ = validate_street(poly, 0, 2)
    ok_b, _ = validate_street(poly, 2, 0)
    assert ok_a == ok_b == False


def test_shortest_path_square():
    poly = SimplePolygon(UNIT_SQUARE)
    adjacent = shortest_path(build_street(poly, 0, 1))
    assert abs(adjacent.length - 1.0) < 1e-12
    diagonal = shortest_path(build_street(poly, 0, 2))
    assert abs(diagonal.length - math.sqrt(2)) < 1e-12
    assert len(diagonal.waypoints) == 2


def test_shortest_path_bends_at_reflex():
    poly = SimplePolygon(L_SHAPE)
    street = build_street(poly, 1, 4)   # (2,0) -> (1,2)
    geo = shortest_path(street)
    expected = math.sqrt(2) + 1.0
    assert abs(geo.length - expected) < 1e-9
    assert any(dist(w, (1.0, 1.0)) < 1e-9 for w in geo.waypoints[1:-1])
    # interior waypoints are reflex vertices
    reflex = {poly.vertices[i] for i in poly.reflex_indices()}
    for w in geo.waypoints[1:-1]:
        assert w in reflex


def test_shortest_path_matches_brute_force_on_random_streets():
    for seed in range(8):
        street = gen_random_street(seed)
        geo = shortest_path(street)
        assert abs(geo.length - brute_force_shortest(street)) < 1e-9


def test_shortest_path_lower_bound_and_samples():
    street = build_street(SimplePolygon(L_SHAPE), 1, 4)
    geo = shortest_path(street)
    assert geo.length >= dist(street.s, street.t) - 1e-12
    # no sampled valid polyline through a random interior waypoint is shorter
    rng = random.Random(11)
    poly = street.polygon
    tried = 0
    while tried < 40:
        q = (rng.uniform(0, 2), rng.uniform(0, 2))
        if poly.contains(q) != 1:
            continue
        if not (segment_inside(poly, street.s, q)
                and segment_inside(poly, q, street.t)):
            continue
        tried += 1
        assert dist(street.s, q) + dist(q, street.t) >= geo.length - 1e-9


def test_street_file_round_trip():
    poly = SimplePolygon(UNIT_SQUARE)
    street = build_street(poly, 0, 2)
    text = save_street(street)
    again = load_street(text)
    assert again.s_index == street.s_index
    assert again.t_index == street.t_index
    assert again.polygon.vertices == street.polygon.vertices
    assert save_street(again) == text


def test_street_file_round_trip_random():
    for seed in (0, 3, 5):
        street = gen_random_street(seed)
        text = save_street(street)
        again = load_street(text)
        assert again.polygon.vertices == street.polygon.vertices


def test_load_street_accepts_comments():
    text = ("# a square street\n"
            "street v=4\n0.0 0.0\n1.0 0.0\n1.0 1.0\n0.0 1.0\n"
            "# indices follow\ns=0 t=2\n")
    street = load_street(text)
    assert street.polygon.n == 4


@pytest.mark.parametrize("text", [
    "",
    "street v=three\n",
    "street v=4\n0 0\n1 0\n1 1\n0 1\ns=0 t=2\nextra garbage\n",
    "street v=4\n0 0\n1 0\n1 1\ns=0 t=2\n",
    "street v=4\n0 0\n1 0\n1 1\n0 1\ns=0 t=9\n",
    "street v=4\n0 0\n1 zz\n1 1\n0 1\ns=0 t=2\n",
])
def test_load_street_parse_errors(text):
    with pytest.raises(StreetParseError):
        load_street(text)


def test_load_street_geometry_error():
    text = "street v=4\n0 0\n1 1\n1 0\n0 1\ns=0 t=2\n"
    with pytest.raises(StreetGeometryError):
        load_street(text)


def test_load_street_property_error():
    lines = ["street v=%d" % len(NON_STREET)]
    lines += ["%r %r" % v for v in NON_STREET]
    lines.append("s=0 t=2")
    with pytest.raises(StreetPropertyError) as err:
        load_street("\n".join(lines) + "\n")
    assert err.value.witness is not None
