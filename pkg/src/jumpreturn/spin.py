"""Small-dimension unitary algebra for one and two spin-1/2 nuclei.

Conventions used throughout the package:

* Rotations are active, ``R(theta, phi) = exp(-i theta (cos(phi) Ix + sin(phi) Iy))``
  with ``I_alpha = sigma_alpha / 2``.  ``phi = 0`` is an x pulse, ``phi = pi/2`` a y pulse.
* ``rot_z(theta) = exp(-i theta Iz)``.
* In the rotating frame spin I precesses at ``+delta_omega`` and spin S at
  ``-delta_omega``.
* Two-spin operators are Kronecker products with spin I as the left factor.

All angles are in radians.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

IX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
IY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
IZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)

# two-spin product operators, spin I on the left
I_X, I_Y, I_Z = (np.kron(op, ID2) for op in (IX, IY, IZ))
S_X, S_Y, S_Z = (np.kron(ID2, op) for op in (IX, IY, IZ))


class SpinPairPropagator(NamedTuple):
    """Uncoupled two-spin propagator stored as one 2x2 unitary per spin."""

    uI: np.ndarray
    uS: np.ndarray

    def full(self) -> np.ndarray:
        return kron(self.uI, self.uS)


def rot(theta: float, phase: float = 0.0) -> np.ndarray:
    """Rotation by `theta` about the in-plane axis at azimuth `phase`."""
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    return np.array(
        [[c, -1j * s * np.exp(-1j * phase)],
         [-1j * s * np.exp(1j * phase), c]],
        dtype=complex,
    )


def rot_z(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex
    )


def off_resonance_propagator(f: float, nominal_angle: float, phase: float = 0.0) -> np.ndarray:
    """Propagator of a constant-amplitude pulse applied off resonance.

    Parameters
    ----------
    f : float
        Off-resonance fraction, offset divided by nutation rate.  Signed.
    nominal_angle : float
        Nutation angle ``omega1 * t`` the pulse would produce on resonance.
    phase : float
        Azimuth of the rf field in the xy-plane.

    Returns
    -------
    np.ndarray
        ``exp(-i omega1 t (cos(phase) Ix + sin(phase) Iy + f Iz))`` in closed form.
    """
    if nominal_angle < 0:
        raise ValueError("nominal_angle must be non-negative")
    gamma = np.sqrt(1.0 + f * f)
    zeta = gamma * nominal_angle / 2
    c = np.cos(zeta)
    s = np.sin(zeta) / gamma
    return np.array(
        [[c - 1j * f * s, -1j * s * np.exp(-1j * phase)],
         [-1j * s * np.exp(1j * phase), c + 1j * f * s]],
        dtype=complex,
    )


def free_precession(delta_omega: float, J: float, tau: float) -> np.ndarray:
    """Exact two-spin free-precession propagator over time `tau`.

    The Hamiltonian ``delta_omega (Iz - Sz) + pi J 2 Iz Sz`` is diagonal in the
    product basis, so the exponential is taken entrywise.  `delta_omega` is in
    rad/s, `J` in Hz, `tau` in seconds (negative values are allowed here).
    """
    iz = np.array([0.5, 0.5, -0.5, -0.5])
    sz = np.array([0.5, -0.5, 0.5, -0.5])
    energies = delta_omega * (iz - sz) + np.pi * J * 2 * iz * sz
    return np.diag(np.exp(-1j * energies * tau))


def kron(uI: np.ndarray, uS: np.ndarray) -> np.ndarray:
    return np.kron(uI, uS)


def expm_hermitian(H: np.ndarray, t: float = 1.0) -> np.ndarray:
    """``exp(-i H t)`` for Hermitian `H` via eigendecomposition."""
    w, v = np.linalg.eigh(H)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def _check_dims(u: np.ndarray, v: np.ndarray) -> None:
    if u.shape != v.shape or u.shape[0] != u.shape[1]:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")


def fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """Normalized trace overlap ``|Tr(v^dagger u)| / N``."""
    _check_dims(u, v)
    return float(min(1.0, abs(np.trace(v.conj().T @ u)) / u.shape[0]))


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Frobenius distance between `u` and `v` minimized over a global phase.

    The optimal phase is ``lambda = Tr(v^dagger u) / |Tr(v^dagger u)|``; the
    residual ``||u - lambda v||_F`` is then evaluated directly, which avoids the
    cancellation in ``sqrt(2N (1 - fidelity))`` for nearly equal operators.
    """
    _check_dims(u, v)
    overlap = np.trace(v.conj().T @ u)
    lam = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(u - lam * v))


def equivalent_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-10) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return phase_distance(u, v) <= tol


def pair_distance(a: SpinPairPropagator, b: SpinPairPropagator) -> float:
    """Largest per-spin phase distance between two propagator pairs."""
    return max(phase_distance(a.uI, b.uI), phase_distance(a.uS, b.uS))


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol)
