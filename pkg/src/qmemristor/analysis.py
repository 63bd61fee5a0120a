"""Hysteresis-loop geometry and two-qubit entanglement analytics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import ops
from .dynamics import TimeGrid
from .errors import DimensionError
from .linalg import hermitian_eigenvalues, require_density_matrix
from .measurement import ObservableTrace

log = logging.getLogger(__name__)

ENTANGLEMENT_THRESHOLD = 1e-4


@dataclass(frozen=True)
class HysteresisLoop:
    """One driving period of the I-V curve, in normalized units."""
    period: int
    points: np.ndarray  # shape (n, 2), columns (V, I)
    closed: bool = True


@dataclass(frozen=True)
class LoopMetrics:
    area: float
    perimeter: float
    form_factor: float
    pinch_distance: float


def split_loops(trace: ObservableTrace, grid: TimeGrid,
                qubit: int = 0) -> list[HysteresisLoop]:
    """Cut a trace into per-period loops, normalized by the trace maxima.

    Voltage and current are each divided by their global absolute maximum
    before any geometry. A trailing fragment shorter than a full period is
    dropped (and logged); a trace shorter than one period is an error.
    """
    q = trace.qubits[qubit]
    v = np.asarray(q.voltage, dtype=float)
    i = np.asarray(q.current, dtype=float)
    s = grid.steps_per_period
    if v.size < s:
        raise ValueError(f"trace has {v.size} points, need at least one period ({s})")
    v_scale = np.abs(v).max() or 1.0
    i_scale = np.abs(i).max() or 1.0
    pts = np.column_stack([v / v_scale, i / i_scale])
    n_loops = pts.shape[0] // s
    leftover = pts.shape[0] - n_loops * s
    if leftover:
        log.info("dropping %d trailing point(s) of an incomplete period", leftover)
    return [HysteresisLoop(period=k, points=pts[k * s:(k + 1) * s])
            for k in range(n_loops)]


ORIGIN_CROSSING_FRACTION = 0.05


def _shoelace(points: np.ndarray) -> float:
    x = points[:, 0]
    y = points[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _origin_lobes(points: np.ndarray) -> list[np.ndarray]:
    """Cut the cycle into lobes at V sign changes that pass near the origin.

    A pinched figure-eight self-crosses at the origin, so only crossings of
    the V axis within ORIGIN_CROSSING_FRACTION of the loop extent count as
    cut points; crossings far from the origin belong to an ordinary simple
    loop and must not be cut (cutting a concave boundary at arbitrary
    chords does not recompose its area). The interpolated V = 0 point of a
    qualifying edge joins both adjacent lobes, making a two-cut split exact.
    """
    v = points[:, 0]
    extent = float(np.hypot(points[:, 0], points[:, 1]).max())
    sign = np.where(v >= 0.0, 1, -1)
    cuts = []
    for idx in range(len(points)):
        if sign[idx] == sign[(idx + 1) % len(points)]:
            continue
        crossing = _crossing_point(points, idx)
        if math.hypot(crossing[0], crossing[1]) <= ORIGIN_CROSSING_FRACTION * extent:
            cuts.append(idx)
    if len(cuts) < 2:
        return [points]
    lobes = []
    for a, b in zip(cuts, cuts[1:] + [cuts[0] + len(points)]):
        chunk = [_crossing_point(points, a)]
        for offset in range(a + 1, b + 1):
            chunk.append(points[offset % len(points)])
        chunk.append(_crossing_point(points, b % len(points)))
        lobes.append(np.array(chunk))
    return lobes


def _crossing_point(points: np.ndarray, edge_start: int) -> np.ndarray:
    p = points[edge_start]
    q = points[(edge_start + 1) % len(points)]
    frac = p[0] / (p[0] - q[0])
    return p + frac * (q - p)


def loop_metrics(loop: HysteresisLoop) -> LoopMetrics:
    """Area, perimeter, form factor and pinch distance of a closed loop.

    The area of a pinched (self-crossing) loop is the sum of the absolute
    lobe areas, lobes being the arcs between near-origin sign changes of V;
    a plain signed shoelace would cancel the two halves of the figure-eight.
    The form factor 4*pi*area/perimeter^2 is 1 for a circle.
    """
    if not loop.closed:
        raise ValueError("loop_metrics requires a closed loop")
    pts = np.asarray(loop.points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise ValueError(f"loop needs at least 3 (V, I) points, got shape {pts.shape}")
    edges = np.roll(pts, -1, axis=0) - pts
    perimeter = float(np.hypot(edges[:, 0], edges[:, 1]).sum())
    if perimeter == 0.0:
        raise ValueError("degenerate loop with zero perimeter")
    area = sum(abs(_shoelace(lobe)) for lobe in _origin_lobes(pts))
    form = 4.0 * math.pi * area / perimeter ** 2
    pinch = float(np.hypot(pts[:, 0], pts[:, 1]).min())
    return LoopMetrics(area=area, perimeter=perimeter, form_factor=form,
                       pinch_distance=pinch)


_SPIN_FLIP = np.kron(ops.SIGMA_Y, ops.SIGMA_Y)


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit state.

    C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    eigenvalues of rho * (sy (x) sy) * conj(rho) * (sy (x) sy). Computed here
    through the Hermitian form sqrt(rho) rho_tilde sqrt(rho), which shares its
    spectrum with the product.

    References
    ----------
    https://en.wikipedia.org/wiki/Concurrence_(quantum_computing)
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionError(f"concurrence expects a 4x4 state, got {rho.shape}")
    require_density_matrix(rho, 4, context="concurrence input")
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    evals, vecs = np.linalg.eigh(rho)
    evals = np.where(evals < 0.0, 0.0, evals)  # clamp the >= -1e-10 tail
    sqrt_rho = (vecs * np.sqrt(evals)) @ vecs.conj().T
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    m = 0.5 * (m + m.conj().T)
    lams = hermitian_eigenvalues(m)
    # the square root turns O(eps) spectral noise into O(1e-8); anything
    # below this floor is unresolvable and belongs to the zero modes
    lams = np.sqrt(np.where(lams < 1e-14, 0.0, lams))
    c = lams[0] - lams[1] - lams[2] - lams[3]
    return float(min(max(c, 0.0), 1.0))


@dataclass(frozen=True)
class EntanglementEvent:
    kind: str  # "death" or "birth"
    time: float


def entanglement_events(c_trace) -> list[EntanglementEvent]:
    """Sudden-death and sudden-birth events of a concurrence time series.

    A death is a downward crossing of the threshold sustained for at least
    two consecutive samples; a birth is the next upward crossing after a
    death. ``c_trace`` is a sequence of (t, C) pairs.
    """
    pairs = list(c_trace)
    events: list[EntanglementEvent] = []
    if not pairs:
        return events
    above = pairs[0][1] > ENTANGLEMENT_THRESHOLD
    dead = False
    for idx in range(1, len(pairs)):
        t, c = pairs[idx]
        if above and c <= ENTANGLEMENT_THRESHOLD:
            nxt = pairs[idx + 1][1] if idx + 1 < len(pairs) else None
            if nxt is None or nxt <= ENTANGLEMENT_THRESHOLD:
                events.append(EntanglementEvent("death", float(t)))
                above = False
                dead = True
            # a one-sample dip is threshold noise, not a death
        elif not above and c > ENTANGLEMENT_THRESHOLD:
            if dead:
                events.append(EntanglementEvent("birth", float(t)))
            above = True
    return events
