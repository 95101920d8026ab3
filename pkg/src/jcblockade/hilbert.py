"""Truncated composite Hilbert space: ladder operators and JC dressed states.

Ordering convention, fixed project-wide: composite operators are built as
cavity factor (x) atom factor, i.e. ``tensor(cavity_op, atom_op)``.  The atom
basis is (|->, |+>) so the excited state sits in the second slot.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidTruncationError


def fock_annihilation(n_max: int) -> np.ndarray:
    """Cavity annihilation operator on the (n_max+1)-dim Fock space.

    Nonzero entries a[n-1, n] = sqrt(n).
    """
    if n_max < 1:
        raise InvalidTruncationError("n_max must be >= 1 for a ladder operator")
    return np.diag(np.sqrt(np.arange(1, n_max + 1)), 1).astype(complex)


def atomic_lowering() -> np.ndarray:
    """Two-level lowering operator sigma_-; sigma_-[ground, excited] = 1."""
    return np.array([[0, 1], [0, 0]], dtype=complex)


def tensor(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Kronecker product with the project-wide cavity-first convention."""
    return np.kron(left, right)


@dataclass(frozen=True)
class CompositeOps:
    """Elementary operators embedded in the composite space."""

    n_max: int
    dim: int
    a: np.ndarray          # cavity annihilation
    ad: np.ndarray         # cavity creation
    sm: np.ndarray         # atomic lowering
    sp: np.ndarray         # atomic raising
    number: np.ndarray     # a^+ a
    excitation: np.ndarray  # sigma_+ sigma_-
    sz: np.ndarray         # 2 sigma_+ sigma_- - 1


def composite_operators(n_max: int) -> CompositeOps:
    """Embed the cavity and atom operators in the full (2*(n_max+1))-dim space."""
    a1 = fock_annihilation(n_max)
    sm1 = atomic_lowering()
    eye_f = np.eye(n_max + 1, dtype=complex)
    eye_a = np.eye(2, dtype=complex)
    a = tensor(a1, eye_a)
    sm = tensor(eye_f, sm1)
    ad = a.conj().T
    sp = sm.conj().T
    excitation = sp @ sm
    return CompositeOps(
        n_max=n_max,
        dim=2 * (n_max + 1),
        a=a,
        ad=ad,
        sm=sm,
        sp=sp,
        number=ad @ a,
        excitation=excitation,
        sz=2 * excitation - tensor(eye_f, eye_a),
    )


def basis_state(n_max: int, n: int, atom_excited: bool) -> np.ndarray:
    """Product state |n> (x) |+/-> as a composite-space vector."""
    dim = 2 * (n_max + 1)
    v = np.zeros(dim, dtype=complex)
    v[2 * n + (1 if atom_excited else 0)] = 1.0
    return v


def dressed_states(n_max: int):
    """The four lowest JC dressed states, embedded in the composite space.

    Returns (|0>, |1>, |2>, |3>) where

        |0> = |0,->
        |1> = (|1,-> - |0,+>)/sqrt(2)
        |2> = (|1,-> + |0,+>)/sqrt(2)
        |3> = (|2,-> - |1,+>)/sqrt(2)

    They diagonalize the undriven JC Hamiltonian on the first two couplets
    with energies 0, omega_0 -/+ g and 2*omega_0 - sqrt(2)*g.
    """
    if n_max < 2:
        raise InvalidTruncationError("dressed states need n_max >= 2")
    s = 1.0 / np.sqrt(2.0)
    k0 = basis_state(n_max, 0, False)
    k1 = s * (basis_state(n_max, 1, False) - basis_state(n_max, 0, True))
    k2 = s * (basis_state(n_max, 1, False) + basis_state(n_max, 0, True))
    k3 = s * (basis_state(n_max, 2, False) - basis_state(n_max, 1, True))
    return k0, k1, k2, k3
