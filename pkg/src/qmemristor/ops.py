"""Gate and channel catalog.

Pauli operators, single-qubit rotations, the amplitude-damping Kraus pair and
its collision-circuit realization, two-qubit coupling unitaries, and the
rotating-frame conversion of transverse Bloch components.

Basis ordering follows :mod:`qmemristor.linalg`: |e> = index 0, |g> = index 1,
so sigma_z |e> = +|e> and sigma_minus maps |e> to |g>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .linalg import dagger, partial_trace

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)   # |e><g|
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g><e|
PROJ_E = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
PROJ_G = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
SWAP = np.array([[1, 0, 0, 0],
                 [0, 0, 1, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1]], dtype=complex)

PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}

INTERACTION_KINDS = ("none", "native", "controlled_rotation", "partial_swap")
DAGGER_CONVENTIONS = ("paper", "standard")


def rotation(axis: str, angle: float) -> np.ndarray:
    """Half-angle rotation exp(-i*angle*sigma_axis/2)."""
    sigma = PAULI[axis]
    return math.cos(angle / 2) * IDENTITY_2 - 1j * math.sin(angle / 2) * sigma


def free_evolution(t: float, omega: float) -> np.ndarray:
    """exp(-i H t) for H = omega*sigma_z/2 (the constant offset is dropped)."""
    return np.diag([np.exp(-0.5j * omega * t), np.exp(0.5j * omega * t)])


@dataclass(frozen=True)
class KrausPair:
    """Two-operator Kraus representation of a qubit channel.

    Completeness E0^dag E0 + E1^dag E1 = I is expected to hold to 1e-12.
    """
    e0: np.ndarray
    e1: np.ndarray

    def completeness_defect(self) -> float:
        total = dagger(self.e0) @ self.e0 + dagger(self.e1) @ self.e1
        return float(np.abs(total - IDENTITY_2).max())


def damping_kraus(kappa: float) -> KrausPair:
    """Amplitude-damping Kraus pair for log-amplitude kappa <= 0.

    E0 = diag(e^kappa, 1) keeps the excited amplitude scaled by e^kappa;
    E1 moves the lost population to the ground state.
    """
    if kappa > 0:
        raise ValueError(f"kappa must be <= 0, got {kappa}")
    amp = math.exp(kappa)
    e0 = np.array([[amp, 0.0], [0.0, 1.0]], dtype=complex)
    e1 = np.array([[0.0, 0.0], [math.sqrt(1.0 - amp * amp), 0.0]], dtype=complex)
    return KrausPair(e0, e1)


def apply_channel(rho: np.ndarray, k: KrausPair) -> np.ndarray:
    """E0 rho E0^dag + E1 rho E1^dag."""
    return k.e0 @ rho @ dagger(k.e0) + k.e1 @ rho @ dagger(k.e1)


def collision_step(rho: np.ndarray, theta: float) -> np.ndarray:
    """One damping collision realized as an explicit two-qubit circuit.

    A fresh ancilla |0> is rotated by Ry(2*theta) conditioned on the system
    being excited, then an ancilla-controlled NOT de-excites the system; the
    ancilla is traced out. Equals the Kraus channel with kappa = ln(cos theta).
    """
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DimensionError(f"collision_step expects a 2x2 state, got {rho.shape}")
    ry = rotation("y", 2.0 * theta)
    cry = np.kron(PROJ_E, ry) + np.kron(PROJ_G, IDENTITY_2)
    # ancilla (fast index) controls, system (slow index) is the target
    anc0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    anc1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    cnot = np.kron(IDENTITY_2, anc0) + np.kron(SIGMA_X, anc1)
    u = cnot @ cry
    joint = np.kron(rho, anc0)
    return partial_trace(u @ joint @ dagger(u), keep=1)


def frame_to_schroedinger(sx_i: float, sy_i: float, t: float,
                          omega: float) -> tuple[float, float]:
    """Rotate interaction-picture transverse Bloch components into the lab frame.

    The free evolution omega*sigma_z/2 advances the transverse components by
    the angle omega*t about z. Accepts scalars or numpy arrays.
    """
    c = np.cos(omega * t)
    s = np.sin(omega * t)
    return c * sx_i - s * sy_i, s * sx_i + c * sy_i


@dataclass(frozen=True)
class InteractionSpec:
    """Choice of the two-qubit coupling applied after each evolution step.

    kind 'native' is exp(-i*delta*sigma_axis (x) sigma_axis); a controlled
    rotation conditions a half-angle rotation of the target on the control
    qubit being excited; 'partial_swap' is the exchange family
    exp(-i*delta*(sigma_x(x)sigma_x + sigma_y(x)sigma_y)/2), which reaches a
    full swap (up to local phases) at delta = pi/2. A power of the SWAP
    matrix itself would commute with every permutation-symmetric state and
    therefore could not couple identically prepared memristors at all.
    dagger_convention 'paper' conjugates states as A^dag rho A, 'standard'
    as A rho A^dag; the two differ only by delta -> -delta.
    """
    kind: str = "none"
    axis: str = "y"
    delta: float = 0.0
    control: int = 1
    dagger_convention: str = "paper"

    def __post_init__(self):
        if self.kind not in INTERACTION_KINDS:
            raise ValueError(f"unknown interaction kind {self.kind!r}")
        if self.axis not in ("x", "y", "z"):
            raise ValueError(f"axis must be x, y or z, got {self.axis!r}")
        if not math.isfinite(self.delta):
            raise ValueError("delta must be finite")
        if self.control not in (1, 2):
            raise ValueError(f"control must be 1 or 2, got {self.control!r}")
        if self.dagger_convention not in DAGGER_CONVENTIONS:
            raise ValueError(f"unknown dagger convention {self.dagger_convention!r}")


def interaction_unitary(spec: InteractionSpec) -> np.ndarray:
    """4x4 unitary for the configured coupling gate."""
    d = spec.delta
    if spec.kind == "none":
        return IDENTITY_4.copy()
    if spec.kind == "native":
        sigma = PAULI[spec.axis]
        # (sigma (x) sigma)^2 = I, so the exponential closes in two terms
        return math.cos(d) * IDENTITY_4 - 1j * math.sin(d) * np.kron(sigma, sigma)
    if spec.kind == "partial_swap":
        # exchange generator acts only on the |eg>, |ge> block
        gate = IDENTITY_4.copy()
        gate[1:3, 1:3] = np.array([[math.cos(d), -1j * math.sin(d)],
                                   [-1j * math.sin(d), math.cos(d)]])
        return gate
    gate = np.kron(PROJ_E, rotation(spec.axis, d)) + np.kron(PROJ_G, IDENTITY_2)
    if spec.control == 2:
        gate = SWAP @ gate @ SWAP
    return gate


def apply_interaction(rho: np.ndarray, spec: InteractionSpec) -> np.ndarray:
    """Conjugate a two-qubit state by the coupling gate.

    Ordering follows ``spec.dagger_convention``; unitarity makes both CPTP.
    """
    a = interaction_unitary(spec)
    if spec.dagger_convention == "paper":
        return dagger(a) @ rho @ a
    return a @ rho @ dagger(a)
