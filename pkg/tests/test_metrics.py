import csv
import io
import random

import pytest

from orthodraw.graph import Graph
from orthodraw.layout import Drawing, assign_coordinates
from orthodraw.metrics import (
    METRIC_FIELDS,
    MetricsError,
    MetricsReport,
    batch_compare,
    comparison_to_json_dict,
    compute_metrics,
    count_crossings,
    normalize_external,
    report_to_json_dict,
    reports_to_csv,
)
from orthodraw.shape import R, Shape, U


def test_square_metrics():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    shape = Shape({0: R, 1: U, 2: "L", 3: "D"})
    d = assign_coordinates(g, shape)
    rep = compute_metrics(g, d, elapsed=1.5)
    assert rep.bends == 0
    assert rep.crossings == 0
    assert rep.area == 4
    assert rep.total_edge_length == 4
    assert rep.max_edge_length == 1
    assert rep.bends_deviation == 0.0
    assert rep.edge_length_deviation == 0.0
    assert rep.time_seconds == 1.5


def test_dummy_turn_counts_as_base_edge_bend():
    # one base edge subdivided into an L: 0 -> dummy 1 -> 2
    g = Graph(3, [(0, 1), (1, 2)], dummy_parent={1: 0}, origin=[0, 0], base_edges=[(0, 2)])
    d = assign_coordinates(g, Shape({0: R, 1: U}))
    rep = compute_metrics(g, d)
    assert rep.bends == 1
    assert rep.max_bends == 1
    assert rep.total_edge_length == 2
    assert rep.max_edge_length == 2


def test_crossing_counted_between_distinct_base_edges():
    g = Graph(4, [(0, 1), (2, 3)])
    d = Drawing(
        coords={0: (0, 1), 1: (2, 1), 2: (1, 0), 3: (1, 2)},
        polylines={0: ((0, 1), (2, 1)), 1: ((1, 0), (1, 2))},
    )
    assert count_crossings(g, d) == 1


def test_endpoint_touch_is_not_a_crossing():
    g = Graph(4, [(0, 1), (2, 3)])
    d = Drawing(
        coords={0: (0, 1), 1: (2, 1), 2: (2, 1), 3: (2, 3)},
        polylines={0: ((0, 1), (2, 1)), 1: ((2, 1), (2, 3))},
    )
    assert count_crossings(g, d) == 0


def test_same_base_edge_never_crosses_itself():
    g = Graph(3, [(0, 1), (1, 2)], dummy_parent={1: 0}, origin=[0, 0], base_edges=[(0, 2)])
    d = Drawing(
        coords={0: (0, 1), 1: (2, 1), 2: (1, 2)},
        polylines={0: ((0, 1), (2, 1)), 1: ((1, 0), (1, 2))},
    )
    assert count_crossings(g, d) == 0


# -- normalization ----------------------------------------------------------


def fig11_like_raw():
    """Raw x-coordinates mirroring the worked external-layout example: two
    bends 25 units left of an aligned triple, a quadruple 30 units further,
    and a final pair misaligned by 4 units."""
    raw = [
        (14, 25.0, 0.0),
        (18, 25.0, 20.0),
        (19, 25.0, 40.0),
        (1, 55.0, 0.0),
        (9, 55.0, 20.0),
        (6, 55.0, 40.0),
        (11, 55.0, 60.0),
        (5, 75.0, 0.0),
        (15, 79.0, 20.0),
    ]
    bends = [(0.0, 0.0), (0.0, 20.0)]
    return raw, bends


def test_worked_example_cluster_assignment():
    raw, bends = fig11_like_raw()
    norm = normalize_external(raw, bends)
    assert {p[0] for p in norm.bends} == {0}
    assert {norm.coords[v][0] for v in (14, 18, 19)} == {1}
    assert {norm.coords[v][0] for v in (1, 9, 6, 11)} == {2}
    assert {norm.coords[v][0] for v in (5, 15)} == {3}


def test_normalization_idempotent_on_own_output():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(3, 12)
        raw = [
            (i, 20.0 * rng.randint(0, 6) + rng.uniform(-2.5, 2.5),
             20.0 * rng.randint(0, 6) + rng.uniform(-2.5, 2.5))
            for i in range(n)
        ]
        first = normalize_external(raw)
        again = normalize_external([(i, x, y) for i, (x, y) in first.coords.items()])
        assert again.coords == first.coords


def test_grid_like_axis_passes_through():
    norm = normalize_external([(0, 0, 0), (1, 1, 0), (2, 2, 0), (3, 3, 0)])
    assert [norm.coords[i][0] for i in range(4)] == [0, 1, 2, 3]


def test_ambiguous_gap_rejected():
    with pytest.raises(MetricsError):
        normalize_external([(0, 0.0, 0.0), (1, 10.0, 0.0), (2, 40.0, 0.0)])


def test_overwide_cluster_rejected():
    with pytest.raises(MetricsError):
        normalize_external([(0, 0.0, 0.0), (1, 5.0, 0.0), (2, 10.0, 0.0), (3, 50.0, 0.0)])


def test_empty_input_rejected():
    with pytest.raises(MetricsError):
        normalize_external([])


def test_normalized_area():
    raw, bends = fig11_like_raw()
    norm = normalize_external(raw, bends)
    w, h = norm.width_height()
    assert (w, h) == (3, 3)
    assert norm.area == 16


# -- batch comparison ---------------------------------------------------------


def _report(k: float) -> MetricsReport:
    return MetricsReport(
        bends=int(k),
        crossings=int(k) % 3,
        bends_deviation=k / 2,
        max_bends=int(k),
        area=int(k * k),
        total_edge_length=int(3 * k),
        max_edge_length=int(k),
        edge_length_deviation=0.0,
        time_seconds=k,
    )


def test_batch_compare_recovers_exact_relations():
    a = {i: _report(i) for i in range(1, 9)}
    # B's time is exactly 2*A + 3; B's max edge length is A's squared
    b = {
        i: MetricsReport(
            bends=_report(i).bends + 1,
            crossings=_report(i).crossings,
            bends_deviation=_report(i).bends_deviation,
            max_bends=_report(i).max_bends,
            area=_report(i).area,
            total_edge_length=_report(i).total_edge_length,
            max_edge_length=i * i,
            edge_length_deviation=0.0,
            time_seconds=2.0 * i + 3.0,
        )
        for i in range(1, 9)
    }
    by_metric = {c.metric: c for c in batch_compare(a, b)}
    assert set(by_metric) == set(METRIC_FIELDS)

    time_cmp = by_metric["time_seconds"]
    slope, intercept = time_cmp.linear_fit
    assert abs(slope - 2.0) < 1e-9 and abs(intercept - 3.0) < 1e-9
    assert abs(time_cmp.r2_linear - 1.0) < 1e-9
    assert time_cmp.wins_a == 100.0 and time_cmp.wins_b == 0.0 and time_cmp.ties == 0.0

    mel_cmp = by_metric["max_edge_length"]
    a2, a1, a0 = mel_cmp.quadratic_fit
    assert abs(a2 - 1.0) < 1e-9 and abs(a1) < 1e-9 and abs(a0) < 1e-9
    assert abs(mel_cmp.r2_quadratic - 1.0) < 1e-9
    assert by_metric["area"].ties == 100.0

    bends_cmp = by_metric["bends"]
    assert bends_cmp.wins_a == 100.0
    assert bends_cmp.rows[0] == (1, 1, 2)


def test_batch_compare_constant_series():
    a = {i: _report(2) for i in range(4)}
    b = {i: _report(2) for i in range(4)}
    for c in batch_compare(a, b):
        assert c.ties == 100.0
        assert abs(c.r2_linear - 1.0) < 1e-9


def test_batch_compare_rejects_mismatched_ids():
    with pytest.raises(MetricsError):
        batch_compare({1: _report(1)}, {2: _report(1)})
    with pytest.raises(MetricsError):
        batch_compare({}, {})


# -- emitters -----------------------------------------------------------------


def test_csv_emitter_roundtrips():
    reports = {"a": _report(1), "b": _report(4)}
    text = reports_to_csv(reports)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["instance"] + list(METRIC_FIELDS)
    assert len(rows) == 3
    assert rows[1][0] == "a"
    assert rows[2][rows[0].index("bends")] == "4"


def test_json_emitters():
    payload = report_to_json_dict(_report(2))
    assert set(payload) == set(METRIC_FIELDS)
    comps = batch_compare({0: _report(1)}, {0: _report(2)})
    blob = comparison_to_json_dict(comps)
    assert set(blob) == set(METRIC_FIELDS)
    assert blob["bends"]["rows"] == [[0, 1, 2]]
