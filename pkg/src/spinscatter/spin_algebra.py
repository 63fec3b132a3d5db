"""Dense linear algebra on the electron + two-impurity spin space.

Basis convention, used everywhere in the package: qubit 1 is the electron,
qubit 2 the impurity on site 0, qubit 3 the impurity on site m.  A product
state with bits ``(a1, a2, a3)`` (0 = up, 1 = down) has index
``4*a1 + 2*a2 + a3``.  Labels are three-character strings over ``{u, d}``,
e.g. ``"udd"`` for electron up, both impurities down (index 3).
"""
from __future__ import annotations

import numpy as np

from .errors import HermiticityError

N_QUBITS = 3
DIM = 2**N_QUBITS

_LETTERS = {"u": 0, "d": 1}


def basis_index(label: str) -> int:
    """Index of a product state given as e.g. ``"udd"``."""
    label = label.strip().lower()
    if len(label) != N_QUBITS or any(ch not in _LETTERS for ch in label):
        raise ValueError(f"spin label must be 3 characters over {{u,d}}, got {label!r}")
    a1, a2, a3 = (_LETTERS[ch] for ch in label)
    return 4 * a1 + 2 * a2 + a3


def basis_label(index: int) -> str:
    if not 0 <= index < DIM:
        raise ValueError(f"basis index out of range: {index}")
    return "".join("ud"[(index >> shift) & 1] for shift in (2, 1, 0))


def basis_state(label: str) -> np.ndarray:
    """Unit SpinVector for a product-state label."""
    v = np.zeros(DIM, dtype=complex)
    v[basis_index(label)] = 1.0
    return v


def heisenberg_pair() -> np.ndarray:
    """S_a . S_b for two spin-1/2 in the computational basis (uu, ud, du, dd).

    Triplet eigenvalue 1/4 (three-fold), singlet -3/4.
    """
    return np.array(
        [
            [0.25, 0.0, 0.0, 0.0],
            [0.0, -0.25, 0.5, 0.0],
            [0.0, 0.5, -0.25, 0.0],
            [0.0, 0.0, 0.0, 0.25],
        ],
        dtype=complex,
    )


def embed_pair(pair_op, qubits) -> np.ndarray:
    """Lift a two-qubit operator onto qubits ``(i, j)`` of the 3-qubit space.

    ``qubits`` are 1-based with ``i < j``; the remaining qubit sees the identity.
    """
    pair_op = np.asarray(pair_op, dtype=complex)
    if pair_op.shape != (4, 4):
        raise ValueError(f"pair operator must be 4x4, got {pair_op.shape}")
    i, j = qubits
    if not (1 <= i < j <= N_QUBITS):
        raise ValueError(f"invalid qubit pair {qubits!r}; need 1 <= i < j <= 3")
    spectator = ({1, 2, 3} - {i, j}).pop()
    # Tensor axes (out1, out2, out3, in1, in2, in3) for the 8x8 result.
    op4 = pair_op.reshape(2, 2, 2, 2)  # (out_i, out_j, in_i, in_j)
    full = np.zeros((2,) * 6, dtype=complex)
    for s in range(2):
        out_idx = [slice(None)] * 3
        in_idx = [slice(None)] * 3
        out_idx[spectator - 1] = s
        in_idx[spectator - 1] = s
        full[tuple(out_idx) + tuple(in_idx)] = op4
    return full.reshape(DIM, DIM)


def sz_total() -> np.ndarray:
    """Total S_z of the three spins."""
    sz = np.diag([0.5, -0.5]).astype(complex)
    eye = np.eye(2, dtype=complex)
    return (
        np.kron(np.kron(sz, eye), eye)
        + np.kron(np.kron(eye, sz), eye)
        + np.kron(np.kron(eye, eye), sz)
    )


def partial_trace_electron(op) -> np.ndarray:
    """Trace out qubit 1 of an 8x8 operator (or a stack of them).

    A single SpinVector ``v`` (shape ``(8,)``) is taken to mean ``|v><v|``.
    """
    op = np.asarray(op, dtype=complex)
    if op.ndim == 1:
        op = np.outer(op, op.conj())
    if op.shape[-2:] != (DIM, DIM):
        raise ValueError(f"expected (..., 8, 8) operator, got {op.shape}")
    blocks = op.reshape(op.shape[:-2] + (2, 4, 2, 4))
    return np.einsum("...aiaj->...ij", blocks)


def reduced_impurity_states(vectors) -> np.ndarray:
    """Tr_1 |v><v| for a stack of SpinVectors of shape ``(..., 8)``."""
    v = np.asarray(vectors, dtype=complex).reshape(np.shape(vectors)[:-1] + (2, 4))
    return np.einsum("...ai,...aj->...ij", v, v.conj())


def partial_transpose(rho, subsystem: str = "R") -> np.ndarray:
    """Transpose the indices of one impurity qubit of a 4x4 matrix (stack-aware).

    ``subsystem`` is ``"L"`` (qubit 2, site 0) or ``"R"`` (qubit 3, site m).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise ValueError(f"expected (..., 4, 4) matrix, got {rho.shape}")
    lead = rho.shape[:-2]
    t = rho.reshape(lead + (2, 2, 2, 2))  # (L, R, L', R')
    n = len(lead)
    axes = list(range(n))
    if subsystem.upper() == "R":
        axes += [n, n + 3, n + 2, n + 1]
    elif subsystem.upper() == "L":
        axes += [n + 2, n + 1, n, n + 3]
    else:
        raise ValueError(f"subsystem must be 'L' or 'R', got {subsystem!r}")
    return t.transpose(axes).reshape(lead + (4, 4))


def hermitian_eigenvalues(m, tol: float = 1e-10) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix (or stack).

    The input is symmetrized before solving; a Hermiticity defect larger than
    ``tol`` (absolute, max entry) raises :class:`HermiticityError`.
    """
    m = np.asarray(m, dtype=complex)
    adj = np.conj(np.swapaxes(m, -1, -2))
    defect = np.max(np.abs(m - adj)) if m.size else 0.0
    if defect > tol:
        raise HermiticityError(f"matrix is not Hermitian (max |M - M^H| = {defect:.3e})")
    return np.linalg.eigvalsh(0.5 * (m + adj))
