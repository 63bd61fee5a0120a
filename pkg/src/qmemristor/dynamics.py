"""Time-stepped evolution engine and its two independent oracles.

The digital trajectory applies one amplitude-damping map per grid step, with
the log-amplitude kappa obtained by adaptive quadrature of the decay rate.
`analytic_oracle` evaluates the closed-form interaction-picture solution;
`lindblad_oracle` integrates the lab-frame master equation with classical RK4.
Both exist so the digital path can be checked against routes that share none
of its code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ops
from .errors import IntegrationError
from .linalg import dagger, require_density_matrix

STEPS_PER_PERIOD_FLOOR = 8


@dataclass(frozen=True)
class DecayProfile:
    """Oscillating decay rate gamma0 * (1 - sin(cos(omega*t))).

    The modulation keeps the rate strictly positive (|sin(cos x)| <= sin 1).
    ``rate_override`` replaces the formula entirely; it exists for tests and
    oracle cross-checks that need a constant or zero rate.
    """
    gamma0: float
    omega: float
    quad_tol: float = 1e-10
    rate_override: Callable[[float], float] | None = None

    def __post_init__(self):
        if not self.gamma0 > 0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.quad_tol > 0:
            raise ValueError(f"quad_tol must be positive, got {self.quad_tol}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of `periods` driving periods, `steps_per_period` steps each."""
    periods: int
    steps_per_period: int = 30

    def __post_init__(self):
        if self.periods < 1:
            raise ValueError(f"periods must be >= 1, got {self.periods}")
        if self.steps_per_period < STEPS_PER_PERIOD_FLOOR:
            raise ValueError(
                f"steps_per_period must be >= {STEPS_PER_PERIOD_FLOOR} "
                f"(finite-difference current needs resolution), got {self.steps_per_period}")

    @property
    def n_steps(self) -> int:
        return self.periods * self.steps_per_period

    def dt(self, omega: float) -> float:
        return 2.0 * math.pi / (omega * self.steps_per_period)

    def times(self, omega: float) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt(omega)


@dataclass(frozen=True)
class InitialState:
    """Pure state cos(a)|e> + sin(a) e^{ib} |g>."""
    a: float
    b: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.a <= math.pi / 2:
            raise ValueError(f"a must lie in [0, pi/2], got {self.a}")
        if not 0.0 <= self.b < 2.0 * math.pi:
            raise ValueError(f"b must lie in [0, 2*pi), got {self.b}")

    def ket(self) -> np.ndarray:
        return np.array([math.cos(self.a),
                         math.sin(self.a) * np.exp(1j * self.b)], dtype=complex)

    def density_matrix(self) -> np.ndarray:
        psi = self.ket()
        return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class TrajectoryState:
    """State of a trajectory after `step` evolution steps, at time `time`.

    ``rho`` is the interaction-picture density matrix (2x2 for a single
    memristor, 4x4 for a coupled pair).
    """
    step: int
    time: float
    rho: np.ndarray


def decay_rate(t: float, p: DecayProfile) -> float:
    """Decay rate at time t (override-aware). Positive for the default profile."""
    if p.rate_override is not None:
        return p.rate_override(t)
    return p.gamma0 * (1.0 - math.sin(math.cos(p.omega * t)))


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    # strict acceptance (|delta| <= tol rather than 15*tol) plus the
    # Richardson term keeps the realized error well under the nominal tol
    if depth <= 0 or abs(delta) <= tol:
        return left + right + delta / 15.0
    return (_adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + _adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1))


def adaptive_quadrature(f: Callable[[float], float], a: float, b: float,
                        tol: float, max_panel: float = math.inf) -> float:
    """Adaptive Simpson integral of f over [a, b] to absolute tolerance tol.

    ``max_panel`` caps the width of the initial panels. Periodic integrands
    sampled at period-commensurate points can fool the refinement estimate,
    so callers integrating over many oscillations must cap panels below the
    oscillation period.
    """
    if b == a:
        return 0.0
    n_panels = max(1, math.ceil((b - a) / max_panel)) if math.isfinite(max_panel) else 1
    edges = np.linspace(a, b, n_panels + 1)
    panel_tol = tol / n_panels
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        m = 0.5 * (lo + hi)
        fa, fm, fb = f(lo), f(m), f(hi)
        whole = _simpson(fa, fm, fb, hi - lo)
        total += _adaptive_simpson(f, lo, fa, hi, fb, m, fm, whole, panel_tol, depth=48)
    return total


def kappa(t_start: float, t_end: float, p: DecayProfile) -> float:
    """Log-amplitude kappa = -(1/2) * integral of the decay rate over [t_start, t_end].

    Additive over adjacent intervals; <= 0 whenever the rate is nonnegative.
    """
    if t_end < t_start:
        raise ValueError(f"reversed interval [{t_start}, {t_end}]")
    if t_end == t_start:
        return 0.0
    if p.rate_override is not None:
        f = p.rate_override
    else:
        g0, w, sin, cos = p.gamma0, p.omega, math.sin, math.cos

        def f(t: float) -> float:
            return g0 * (1.0 - sin(cos(w * t)))

    integral = adaptive_quadrature(f, t_start, t_end, p.quad_tol,
                                   max_panel=p.period / 4.0)
    return -0.5 * integral


def kappa_schedule(grid: TimeGrid, p: DecayProfile) -> np.ndarray:
    """Per-step kappa(t_i, t_{i+1}) for every step of the grid."""
    times = grid.times(p.omega)
    return np.array([kappa(times[i], times[i + 1], p) for i in range(grid.n_steps)])


def theta_schedule(grid: TimeGrid, p: DecayProfile) -> np.ndarray:
    """Collision rotation angles theta_i = arccos(e^{kappa_i}), each in [0, pi/2)."""
    amps = np.exp(kappa_schedule(grid, p))
    return np.arccos(np.clip(amps, 0.0, 1.0))


def run_single(init: InitialState, p: DecayProfile, grid: TimeGrid,
               mode: str = "kraus") -> list[TrajectoryState]:
    """Digital trajectory of one memristor over the grid.

    mode 'kraus' applies the per-step Kraus map directly; 'collision' routes
    every step through the explicit system-ancilla circuit. The two agree
    entrywise to machine precision.
    """
    if mode not in ("kraus", "collision"):
        raise ValueError(f"mode must be 'kraus' or 'collision', got {mode!r}")
    times = grid.times(p.omega)
    kappas = kappa_schedule(grid, p)
    rho = init.density_matrix()
    states = [TrajectoryState(0, 0.0, rho)]
    for i, k in enumerate(kappas):
        if mode == "kraus":
            rho = ops.apply_channel(rho, ops.damping_kraus(min(k, 0.0)))
        else:
            theta = math.acos(min(math.exp(k), 1.0))
            rho = ops.collision_step(rho, theta)
        require_density_matrix(rho, 2, context=f"single trajectory, step {i + 1}")
        states.append(TrajectoryState(i + 1, float(times[i + 1]), rho))
    return states


def run_coupled(init1: InitialState, init2: InitialState,
                p1: DecayProfile, p2: DecayProfile, grid: TimeGrid,
                spec: ops.InteractionSpec) -> list[TrajectoryState]:
    """Digital trajectory of two coupled memristors.

    Each step damps both qubits independently (Kraus pairs extended by the
    identity on the partner, four cross terms) and then applies the coupling
    gate. Requires both profiles to share omega so one grid drives both.
    """
    if p1.omega != p2.omega:
        raise ValueError(f"profiles must share omega, got {p1.omega} and {p2.omega}")
    times = grid.times(p1.omega)
    k1 = kappa_schedule(grid, p1)
    k2 = kappa_schedule(grid, p2)
    rho = np.kron(init1.density_matrix(), init2.density_matrix())
    states = [TrajectoryState(0, 0.0, rho)]
    for i in range(grid.n_steps):
        pair1 = ops.damping_kraus(min(k1[i], 0.0))
        pair2 = ops.damping_kraus(min(k2[i], 0.0))
        stepped = np.zeros((4, 4), dtype=complex)
        for e in (pair1.e0, pair1.e1):
            for f in (pair2.e0, pair2.e1):
                op = np.kron(e, f)
                stepped += op @ rho @ dagger(op)
        rho = ops.apply_interaction(stepped, spec)
        require_density_matrix(rho, 4, context=f"coupled trajectory, step {i + 1}")
        states.append(TrajectoryState(i + 1, float(times[i + 1]), rho))
    return states


def analytic_oracle(init: InitialState, p: DecayProfile, t: float) -> np.ndarray:
    """Closed-form interaction-picture state at time t.

    The excited amplitude decays by e^{kappa(0, t)} while the ground
    population absorbs the difference; coherences scale by the same factor.
    """
    k = kappa(0.0, t, p)
    amp = math.exp(k)
    ce = math.cos(init.a) * amp
    coher = math.cos(init.a) * math.sin(init.a) * np.exp(-1j * init.b) * amp
    return np.array([[ce * ce, coher],
                     [np.conj(coher), 1.0 - ce * ce]], dtype=complex)


def _liouvillian_parts(omega: float) -> tuple[np.ndarray, np.ndarray]:
    """Constant and rate-proportional parts of the vectorized master equation.

    Row-major vec convention: vec(A rho B) = kron(A, B^T) vec(rho).
    """
    ident = ops.IDENTITY_2
    h = 0.5 * omega * ops.SIGMA_Z
    ham = -1j * (np.kron(h, ident) - np.kron(ident, h.T))
    sm, sp = ops.SIGMA_MINUS, ops.SIGMA_PLUS
    n_op = sp @ sm
    diss = (np.kron(sm, sp.T)
            - 0.5 * (np.kron(n_op, ident) + np.kron(ident, n_op.T)))
    return ham, diss


def lindblad_oracle(init: InitialState, p: DecayProfile, t_end: float,
                    dt_ode: float = 1e-3) -> np.ndarray:
    """Lab-frame state at t_end from RK4 integration of the master equation.

    Fixed-step classical Runge-Kutta on the vectorized equation; global error
    is O(dt_ode^4). Raises IntegrationError if the trace drifts by more than
    1e-6, the sign of a step size too coarse for the dynamics.
    """
    if dt_ode <= 0:
        raise ValueError(f"dt_ode must be positive, got {dt_ode}")
    v = init.density_matrix().reshape(4)
    n_full, rem = divmod(t_end, dt_ode)
    n_full = int(n_full)
    if n_full:
        prop = _rk4_propagator(p, np.arange(n_full) * dt_ode, dt_ode)
        v = _ordered_product(prop) @ v
    if rem > 1e-12 * max(1.0, t_end):
        prop = _rk4_propagator(p, np.array([n_full * dt_ode]), float(rem))
        v = prop[0] @ v
    rho = v.reshape(2, 2)
    drift = abs(rho.trace() - 1.0)
    if drift > 1e-6:
        raise IntegrationError(f"trace drifted by {drift:.3e}; decrease dt_ode")
    return rho


def _rk4_propagator(p: DecayProfile, starts: np.ndarray, h: float) -> np.ndarray:
    """Stacked one-step RK4 propagators for steps [t, t+h], t in ``starts``.

    The master equation is linear, so the classical Runge-Kutta update is a
    matrix acting on vec(rho); building all steps at once lets the final
    state come from one ordered product instead of a Python-level loop.
    """
    ham, diss = _liouvillian_parts(p.omega)
    rate = np.array([[decay_rate(t, p), decay_rate(t + 0.5 * h, p), decay_rate(t + h, p)]
                     for t in starts])
    l_lo = ham + rate[:, 0, None, None] * diss
    l_mid = ham + rate[:, 1, None, None] * diss
    l_hi = ham + rate[:, 2, None, None] * diss
    ident = np.eye(4, dtype=complex)
    k1 = l_lo
    k2 = l_mid @ (ident + 0.5 * h * k1)
    k3 = l_mid @ (ident + 0.5 * h * k2)
    k4 = l_hi @ (ident + h * k3)
    return ident + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    """Product mats[n-1] @ ... @ mats[0] by pairwise reduction."""
    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            tail = mats[-1]
            mats = mats[1::2] @ mats[0:-1:2]
            mats = np.concatenate([mats, tail[None]])
        else:
            mats = mats[1::2] @ mats[0::2]
    return mats[0]
