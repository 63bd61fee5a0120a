import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmemristor.analysis import (ENTANGLEMENT_THRESHOLD, EntanglementEvent,
                                 HysteresisLoop, concurrence,
                                 entanglement_events, loop_metrics,
                                 split_loops)
from qmemristor.dynamics import TimeGrid
from qmemristor.errors import DimensionError
from qmemristor.measurement import ObservableTrace, QubitSeries

from conftest import random_density_matrix, random_unitary


def make_trace(v, i, n_qubits=1):
    v = np.asarray(v, dtype=float)
    i = np.asarray(i, dtype=float)
    zeros = np.zeros_like(v)
    q = QubitSeries(zeros, zeros, zeros, zeros, zeros, v, i)
    return ObservableTrace(t=np.arange(v.size, dtype=float),
                           qubits=tuple([q] * n_qubits))


def polygon_loop(points):
    return HysteresisLoop(period=0, points=np.asarray(points, dtype=float))


def star_polygon(rng, n_vertices, center=(0.0, 0.0)):
    """Random star-shaped (hence simple) polygon around ``center``."""
    angles = np.sort(rng.uniform(0, 2 * math.pi, size=n_vertices))
    radii = rng.uniform(0.3, 1.5, size=n_vertices)
    return np.column_stack([center[0] + radii * np.cos(angles),
                            center[1] + radii * np.sin(angles)])


def convex_polygon(rng, n_vertices, center=(0.0, 0.0)):
    """Random convex polygon: points on an axis-aligned random ellipse."""
    angles = np.sort(rng.uniform(0, 2 * math.pi, size=n_vertices))
    rx, ry = rng.uniform(0.5, 2.0, size=2)
    return np.column_stack([center[0] + rx * np.cos(angles),
                            center[1] + ry * np.sin(angles)])


def bowtie_polygon(rng):
    """Self-intersecting quad whose two lobes cross exactly at the origin."""
    slope = rng.uniform(0.3, 1.5)
    w1, w2 = rng.uniform(0.4, 2.0, size=2)
    h1, h2 = slope * w1, slope * w2
    pts = np.array([(-w1, -h1), (-w1, h1), (w2, -h2), (w2, h2)])
    return pts, w1 * h1 + w2 * h2


def monte_carlo_area(points, rng, samples=200_000):
    """Ray-casting point-in-polygon estimate; independent of the shoelace."""
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    box_area = np.prod(hi - lo)
    pts = rng.uniform(lo, hi, size=(samples, 2))
    x0, y0 = points[:, 0], points[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    inside = np.zeros(samples, dtype=bool)
    for a_x, a_y, b_x, b_y in zip(x0, y0, x1, y1):
        crosses = ((a_y > pts[:, 1]) != (b_y > pts[:, 1]))
        with np.errstate(divide="ignore", invalid="ignore"):
            x_at = a_x + (pts[:, 1] - a_y) * (b_x - a_x) / (b_y - a_y)
        inside ^= crosses & (pts[:, 0] < x_at)
    return box_area * inside.mean()


class TestSplitLoops:
    def test_counts(self):
        grid = TimeGrid(20, 30)
        n = grid.n_steps + 1
        t = np.linspace(0, 40 * math.pi, n)
        trace = make_trace(np.sin(t), np.cos(t))
        loops = split_loops(trace, grid)
        assert len(loops) == 20
        assert all(l.points.shape == (30, 2) for l in loops)
        assert [l.period for l in loops] == list(range(20))

    def test_normalization_by_global_maxima(self):
        grid = TimeGrid(1, 10)
        v = np.linspace(-4.0, 4.0, 11)
        i = np.linspace(-2.0, 2.0, 11)
        loops = split_loops(make_trace(v, i), grid)
        pts = loops[0].points
        assert np.abs(pts[:, 0]).max() <= 1.0 + 1e-12
        assert np.abs(pts[:, 1]).max() <= 1.0 + 1e-12

    def test_reports_dropped_fragment(self, caplog):
        grid = TimeGrid(1, 10)
        v = np.sin(np.linspace(0, 4 * math.pi, 25))  # 2 loops + 5 leftovers
        with caplog.at_level(logging.INFO, logger="qmemristor.analysis"):
            loops = split_loops(make_trace(v, v), grid)
        assert len(loops) == 2
        assert any("incomplete period" in rec.message for rec in caplog.records)

    def test_rejects_short_trace(self):
        grid = TimeGrid(1, 30)
        with pytest.raises(ValueError):
            split_loops(make_trace(np.zeros(10), np.zeros(10)), grid)

    def test_degenerate_diagonal_loops(self):
        grid = TimeGrid(2, 12)
        t = np.linspace(0, 4 * math.pi, grid.n_steps + 1)
        s = np.sin(t)
        for loop in split_loops(make_trace(s, s), grid):
            assert loop_metrics(loop).area == pytest.approx(0.0, abs=1e-12)


class TestLoopMetrics:
    def test_circle_form_factor(self):
        angles = np.linspace(0, 2 * math.pi, 1001)[:-1]
        loop = polygon_loop(np.column_stack([np.cos(angles), np.sin(angles)]))
        m = loop_metrics(loop)
        assert m.form_factor == pytest.approx(1.0, abs=1e-3)
        assert m.area == pytest.approx(math.pi, rel=1e-4)

    def test_unit_square(self):
        loop = polygon_loop([(0, 0), (1, 0), (1, 1), (0, 1)])
        m = loop_metrics(loop)
        assert m.area == pytest.approx(1.0, abs=1e-12)
        assert m.perimeter == pytest.approx(4.0, abs=1e-12)
        assert m.form_factor == pytest.approx(math.pi / 4, abs=1e-9)
        assert m.pinch_distance == pytest.approx(0.0, abs=1e-12)

    def test_collinear_loop(self):
        loop = polygon_loop([(0, 0), (1, 1), (2, 2), (1, 1)])
        m = loop_metrics(loop)
        assert m.area == 0.0
        assert m.form_factor == 0.0

    def test_degenerate_perimeter(self):
        with pytest.raises(ValueError):
            loop_metrics(polygon_loop([(1, 1), (1, 1), (1, 1)]))

    def test_open_loop_rejected(self):
        loop = HysteresisLoop(0, np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]),
                              closed=False)
        with pytest.raises(ValueError):
            loop_metrics(loop)

    def test_bowtie_sums_lobes(self):
        # signed shoelace cancels the two triangles; the lobe split keeps both
        loop = polygon_loop([(-1, -1), (-1, 1), (1, -1), (1, 1)])
        m = loop_metrics(loop)
        assert m.area == pytest.approx(2.0, abs=1e-12)
        assert m.pinch_distance == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_off_axis_convex_loop_unaffected_by_split(self):
        # a circle straddling V=0 splits into two same-orientation lobes
        # whose absolute areas recompose the full disk
        angles = np.linspace(0, 2 * math.pi, 400)[:-1]
        pts = np.column_stack([0.3 + np.cos(angles), np.sin(angles)])
        m = loop_metrics(polygon_loop(pts))
        assert m.area == pytest.approx(math.pi, rel=1e-3)

    def test_isoperimetric_bound(self, rng):
        for _ in range(200):
            m = loop_metrics(polygon_loop(star_polygon(rng, 12, center=(0.8, 0.5))))
            assert 0.0 <= m.form_factor <= 1.0 + 1e-9

    @given(angle=st.floats(0, 2 * math.pi), scale=st.floats(0.1, 10),
           dx=st.floats(-5, 5), dy=st.floats(-5, 5))
    @settings(max_examples=60, deadline=None)
    def test_similarity_invariance(self, angle, scale, dx, dy):
        # convex loops: any near-origin split is a two-cut split, which
        # recomposes the area exactly, so F cannot depend on the placement
        rng = np.random.default_rng(42)
        pts = convex_polygon(rng, 14)
        rot = np.array([[math.cos(angle), -math.sin(angle)],
                        [math.sin(angle), math.cos(angle)]])
        moved = scale * pts @ rot.T + np.array([dx, dy])
        f0 = loop_metrics(polygon_loop(pts)).form_factor
        f1 = loop_metrics(polygon_loop(moved)).form_factor
        assert f1 == pytest.approx(f0, rel=1e-9)

    def test_area_against_monte_carlo(self, rng):
        # independent oracle for the shoelace path: simple polygons placed
        # anywhere, including straddling the V axis
        for _ in range(40):
            center = rng.uniform(-1, 1, size=2)
            pts = star_polygon(rng, rng.integers(6, 20), center=center)
            exact = loop_metrics(polygon_loop(pts)).area
            estimate = monte_carlo_area(pts, rng, samples=120_000)
            assert estimate == pytest.approx(exact, rel=0.01, abs=5e-3)

    def test_lobe_area_against_monte_carlo(self, rng):
        # independent oracle for the lobe-splitting path: even-odd parity
        # integrates the union of the two disjoint lobes of a bowtie
        for _ in range(10):
            pts, exact_area = bowtie_polygon(rng)
            m = loop_metrics(polygon_loop(pts))
            assert m.area == pytest.approx(exact_area, abs=1e-12)
            estimate = monte_carlo_area(pts, rng, samples=150_000)
            assert estimate == pytest.approx(exact_area, rel=0.015)


def wootters_oracle(rho):
    """Brute-force concurrence: eigenvalues of rho*rho_tilde directly."""
    sy = np.array([[0, -1j], [1j, 0]])
    flip = np.kron(sy, sy)
    lams = np.linalg.eigvals(rho @ flip @ rho.conj() @ flip)
    lams = np.sqrt(np.clip(np.sort(lams.real)[::-1], 0.0, None))
    return max(0.0, lams[0] - lams[1] - lams[2] - lams[3])


class TestConcurrence:
    def test_bell_state(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1 / math.sqrt(2)
        assert concurrence(np.outer(bell, bell.conj())) == pytest.approx(1.0, abs=1e-10)

    def test_product_state(self, rng):
        for _ in range(20):
            rho = np.kron(random_density_matrix(rng), random_density_matrix(rng))
            assert concurrence(rho) <= 1e-10

    def test_werner_state(self):
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1 / math.sqrt(2)
        werner = 0.5 * np.outer(bell, bell.conj()) + 0.5 * np.eye(4) / 4
        # closed form max(0, (3p-1)/2) at p = 1/2
        assert concurrence(werner) == pytest.approx(0.25, abs=1e-9)
        assert wootters_oracle(werner) == pytest.approx(0.25, abs=1e-9)

    def test_against_bruteforce_oracle(self, rng):
        for _ in range(300):
            rho = random_density_matrix(rng, 4)
            assert concurrence(rho) == pytest.approx(wootters_oracle(rho), abs=1e-9)

    def test_bounds_on_random_states(self, rng):
        for _ in range(10_000):
            c = concurrence(random_density_matrix(rng, 4))
            assert 0.0 <= c <= 1.0

    def test_local_unitary_invariance(self, rng):
        for _ in range(100):
            rho = random_density_matrix(rng, 4)
            u = np.kron(random_unitary(rng), random_unitary(rng))
            rotated = u @ rho @ u.conj().T
            assert concurrence(rotated) == pytest.approx(concurrence(rho), abs=1e-9)

    def test_rejects_single_qubit(self, rng):
        with pytest.raises(DimensionError):
            concurrence(random_density_matrix(rng, 2))


class TestEntanglementEvents:
    def test_monotone_decay(self):
        t = np.linspace(0, 10, 50)
        c = np.exp(-t) * 0.5
        events = entanglement_events(zip(t, c))
        kinds = [e.kind for e in events]
        assert kinds == ["death"]

    def test_all_zero(self):
        t = np.linspace(0, 10, 50)
        assert entanglement_events(zip(t, np.zeros(50))) == []

    def test_rise_without_prior_death_is_not_birth(self):
        t = np.arange(5.0)
        c = [0.0, 0.0, 0.1, 0.2, 0.3]
        assert entanglement_events(zip(t, c)) == []

    def test_death_then_birth(self):
        t = np.arange(8.0)
        c = [0.3, 0.2, 0.0, 0.0, 0.0, 0.2, 0.3, 0.3]
        events = entanglement_events(zip(t, c))
        assert [e.kind for e in events] == ["death", "birth"]
        assert events[0].time == 2.0
        assert events[1].time == 5.0

    def test_single_sample_dip_ignored(self):
        t = np.arange(6.0)
        c = [0.3, 0.2, 0.0, 0.2, 0.3, 0.3]
        assert entanglement_events(zip(t, c)) == []

    def test_threshold_value(self):
        assert ENTANGLEMENT_THRESHOLD == 1e-4
