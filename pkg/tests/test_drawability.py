import random

import pytest

from orthodraw.drawability import (
    AXIS_X,
    AXIS_Y,
    DrawabilityError,
    aux_to_text,
    build_auxiliary,
    extract_incomplete_cycle,
    find_class_cycle,
    test_drawable as check_drawable,
    topological_order,
)
from orthodraw.graph import Graph
from orthodraw.shape import D, L, R, Shape, U, is_cycle_complete

from conftest import random_valid_shape


def cycle_graph(p):
    return Graph(p, [(k, (k + 1) % p) for k in range(p)])


def staircase_shape(p):
    """Alternating R and U labels; never complete, never drawable."""
    return Shape({e: R if e % 2 == 0 else U for e in range(p)})


def test_alignment_classes_of_square():
    g = cycle_graph(4)
    shape = Shape({0: R, 1: U, 2: L, 3: D})
    aux_x = build_auxiliary(g, shape, AXIS_X)
    # edges 1 and 3 are vertical, merging {1,2} and {0,3}
    assert aux_x.num_classes == 2
    assert aux_x.class_of[1] == aux_x.class_of[2]
    assert aux_x.class_of[0] == aux_x.class_of[3]
    assert len(aux_x.arcs) == 2
    for arc in aux_x.arcs:
        # both horizontal edges run from the {0,3} class to the {1,2} class
        assert arc.src == aux_x.class_of[0]
        assert arc.dst == aux_x.class_of[1]


def test_arc_orientation_follows_labels():
    g = Graph(2, [(0, 1)])
    aux = build_auxiliary(g, Shape({0: L}), AXIS_X)
    (arc,) = aux.arcs
    assert (arc.u, arc.v) == (1, 0)
    aux_y = build_auxiliary(g, Shape({0: D}), AXIS_Y)
    (arc,) = aux_y.arcs
    assert (arc.u, arc.v) == (1, 0)


def test_unknown_axis_rejected():
    g = cycle_graph(4)
    with pytest.raises(DrawabilityError):
        build_auxiliary(g, Shape({e: R for e in range(4)}), "z")


def test_topological_order_none_on_cycle():
    g = cycle_graph(4)
    shape = staircase_shape(4)
    aux = build_auxiliary(g, shape, AXIS_X)
    assert topological_order(aux) is None
    assert find_class_cycle(aux) is not None


def test_complete_square_is_drawable():
    g = cycle_graph(4)
    res = check_drawable(g, Shape({0: R, 1: U, 2: L, 3: D}))
    assert res.drawable
    assert len(res.x_order) == res.aux_x.num_classes
    assert len(res.y_order) == res.aux_y.num_classes


def test_incomplete_square_yields_witness():
    g = cycle_graph(4)
    res = check_drawable(g, staircase_shape(4))
    assert not res.drawable
    assert res.axis == AXIS_X


def test_find_class_cycle_prefers_short():
    g = cycle_graph(6)
    # 0-1-2-3 goes R,U,L,U: x classes oscillate, y strictly rises then falls
    shape = Shape({0: R, 1: U, 2: L, 3: U, 4: R, 5: D})
    aux = build_auxiliary(g, shape, AXIS_X)
    cyc = find_class_cycle(aux)
    if cyc is not None:
        assert len(cyc) >= 1


def test_witness_cycle_is_incomplete_simple_cycle():
    rng = random.Random(21)
    seen_witness = 0
    while seen_witness < 50:
        p = rng.randint(4, 12)
        g = cycle_graph(p)
        shape = random_valid_shape(g, rng)
        if shape is None:
            continue
        res = check_drawable(g, shape)
        if res.drawable:
            continue
        cyc = extract_incomplete_cycle(g, shape, res)
        assert len(cyc) == len(set(cyc)) >= 3
        for i, a in enumerate(cyc):
            assert g.edge_between(a, cyc[(i + 1) % len(cyc)]) is not None
        assert not is_cycle_complete(g, shape, cyc).complete
        seen_witness += 1


def test_witness_cycles_on_dense_graphs():
    rng = random.Random(22)
    from conftest import random_connected_deg4

    found = 0
    while found < 40:
        g = random_connected_deg4(rng, rng.randint(5, 9))
        shape = random_valid_shape(g, rng)
        if shape is None:
            continue
        res = check_drawable(g, shape)
        if res.drawable:
            continue
        cyc = extract_incomplete_cycle(g, shape, res)
        assert not is_cycle_complete(g, shape, cyc).complete
        found += 1


def test_stale_witness_detected():
    g = cycle_graph(4)
    res = check_drawable(g, staircase_shape(4))
    assert not res.drawable
    # relabeling the witness edges vertical invalidates the witness
    with pytest.raises(DrawabilityError):
        extract_incomplete_cycle(g, Shape({0: U, 1: R, 2: D, 3: L}), res)


def test_aux_text_dump():
    g = cycle_graph(4)
    aux = build_auxiliary(g, Shape({0: R, 1: U, 2: L, 3: D}), AXIS_X)
    text = aux_to_text(aux)
    assert text.startswith("digraph aux_x {")
    assert "->" in text
