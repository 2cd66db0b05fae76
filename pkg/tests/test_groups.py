import random

import pytest

from cherednik import linalg
from cherednik.cyclo import CycloNum
from cherednik.groups import (
    GroupTooLarge,
    build_coxeter,
    build_cyclic,
    build_from_spec,
    build_grpn,
    conjugacy_classes,
    coordinate_names,
    param_coordinates,
    strata,
)

ORDERS = {
    "a1": 2,
    "a2": 6,
    "a3": 24,
    "b2": 8,
    "b3": 48,
    "g2": 12,
    "i2(5)": 10,
    "h3": 120,
    "d4": 192,
    "grpn:1,1,3": 6,
    "grpn:2,1,2": 8,
    "grpn:2,1,3": 48,
    "grpn:3,1,2": 18,
    "grpn:3,3,2": 6,
    "grpn:4,2,2": 16,
    "cyclic:2": 2,
    "cyclic:3": 3,
}


@pytest.fixture(scope="module", params=sorted(ORDERS))
def group(request):
    return request.param, build_from_spec(request.param)


def test_order(group):
    spec, g = group
    assert g.order == ORDERS[spec]


def test_closed_under_products_and_inverses(group):
    _, g = group
    rng = random.Random(1)
    for _ in range(50):
        i, j = rng.randrange(g.order), rng.randrange(g.order)
        k = g.mul(i, j)
        prod = linalg.matmul(g.matrix(i), g.matrix(j))
        assert [list(r) for r in prod] == [list(r) for r in g.matrix(k)]
        assert g.mul(i, g.inverse(i)) == 0


def test_reflection_count_matches_hyperplanes(group):
    _, g = group
    assert len(g.reflections) == sum(h.order - 1 for h in g.hyperplanes)
    for r in g.reflections:
        assert sum(1 for h in g.hyperplanes if r in h.pointwise_stabilizer) == 1


def test_hyperplane_stabilizers_are_cyclic(group):
    _, g = group
    for h in g.hyperplanes:
        assert len(h.pointwise_stabilizer) == h.order
        assert g.element_order(h.rotation_generator) == h.order
        # r_H acts on V/H by exp(2 pi i / n_H)
        assert g.det(h.rotation_generator) == CycloNum.zeta(h.order)


def test_conjugation_preserves_orbits(group):
    _, g = group
    labels = {k: h.orbit for k, h in enumerate(g.hyperplanes)}
    for w in g.gen_index:
        for r in g.reflections:
            conj = g.mul(g.mul(w, r), g.inverse(w))
            assert labels[g.reflection_hyperplane[conj]] == labels[g.reflection_hyperplane[r]]


def test_parabolics_generated_by_reflections(group):
    _, g = group
    refl = set(g.reflections)
    for st in strata(g):
        gens = [w for w in st.parabolic if w in refl]
        assert sorted(g.subgroup(gens)) == sorted(st.parabolic)


def test_closure_order_extremes(group):
    _, g = group
    ss = strata(g)
    origin = [s for s in ss if len(s.parabolic) == g.order]
    open_ = [s for s in ss if len(s.parabolic) == 1]
    assert len(origin) == 1 and len(open_) == 1
    for s in ss:
        assert origin[0].orbit_id in s.below
        assert s.orbit_id in open_[0].below


def test_generated_by_reflections(group):
    _, g = group
    assert len(g.subgroup(g.reflections)) == g.order


@pytest.mark.parametrize(
    "spec, reflections, orbits",
    [("a2", 3, 1), ("h3", 15, 1), ("grpn:2,1,2", 4, 2), ("cyclic:2", 1, 1)],
)
def test_reflections_and_orbits(spec, reflections, orbits):
    g = build_from_spec(spec)
    assert len(g.reflections) == reflections
    assert len(g.orbit_labels) == orbits


def test_f4_counts():
    g = build_from_spec("f4")
    assert g.order == 1152
    assert len(g.reflections) == 24
    assert len(g.orbit_labels) == 2
    assert len(strata(g)) == 12
    assert len(conjugacy_classes(g)) == 25


def test_h3_strata_names():
    g = build_from_spec("h3")
    assert [s.name for s in strata(g)] == ["H3", "H2", "A1xA1", "A2", "A1", "1"]


def test_b2_strata():
    g = build_grpn(2, 1, 2)
    ss = strata(g)
    assert len(ss) == 4
    lines = [s for s in ss if s.dimension == 1]
    assert len(lines) == 2
    assert {len(s.parabolic) for s in lines} == {2}
    # one line orbit per hyperplane orbit
    orbit_of_line = {g.hyperplanes[next(iter(s.hyperplanes))].orbit for s in lines}
    assert len(orbit_of_line) == 2


def test_cyclic_strata():
    g = build_cyclic(2)
    ss = strata(g)
    assert [len(s.parabolic) for s in ss] == [2, 1]


def test_parameter_coordinates():
    assert coordinate_names(build_cyclic(2)) == ["x1"]
    assert len(param_coordinates(build_grpn(2, 1, 2))) == 2
    g = build_grpn(3, 1, 2)
    coords = param_coordinates(g)
    per_orbit = {}
    for label, _ in coords:
        per_orbit[label] = per_orbit.get(label, 0) + 1
    assert sorted(per_orbit.values()) == [1, 2]


def test_conjugacy_class_sizes():
    assert sorted(len(c) for c in conjugacy_classes(build_from_spec("a2"))) == [1, 2, 3]
    assert len(conjugacy_classes(build_from_spec("b2"))) == 5
    assert len(conjugacy_classes(build_from_spec("h3"))) == 10


def test_known_orders_of_families():
    for n in (2, 3, 4):
        assert build_grpn(1, 1, n).order == [1, 1, 2, 6, 24][n]
        assert build_grpn(2, 1, n).order == 2**n * [1, 1, 2, 6, 24][n]
    assert build_grpn(3, 1, 3).order == 27 * 6


def test_size_cap():
    with pytest.raises(GroupTooLarge, match="group too large or infinite"):
        build_coxeter([[1, 3, 3], [3, 1, 3], [3, 3, 1]], cap=500)


def test_json_spec_and_bad_spec():
    g = build_from_spec({"kind": "coxeter", "matrix": [[1, 4], [4, 1]]})
    assert g.order == 8
    assert build_from_spec({"kind": "grpn", "r": 2, "p": 1, "n": 1}).order == 2
    with pytest.raises(ValueError):
        build_from_spec("nonsense")
