"""Complex dense linear algebra primitives.

Complex vectors and Hermitian matrices are plain ``numpy`` arrays throughout
the package.  The Hermitian invariant (``A == A.conj().T`` exactly) is kept by
materializing matrices through :func:`hermitize`, which treats the upper
triangle as authoritative; this eliminates symmetry drift when matrices come
out of iterative solvers.

All tolerances are relative to the matrix norm with an absolute floor of
1e-12, since the quantities handled here span roughly 200 dB of dynamic range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import NumericalFailure

ABS_FLOOR = 1e-12


def hermitize(a: np.ndarray) -> np.ndarray:
    """Return the Hermitian matrix whose upper triangle matches ``a``.

    The strict upper triangle of ``a`` is mirrored conjugately into the lower
    triangle and the diagonal imaginary part is dropped, so the result is
    exactly Hermitian regardless of rounding noise in ``a``.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    upper = np.triu(a, 1)
    return upper + upper.conj().T + np.diag(a.diagonal().real)


def is_hermitian(a: np.ndarray, tol: float = 0.0) -> bool:
    a = np.asarray(a)
    return bool(np.all(np.abs(a - a.conj().T) <= tol))


def eig_hermitian(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Parameters
    ----------
    a : ndarray
        Hermitian matrix.

    Returns
    -------
    (w, v) : tuple of ndarray
        ``w`` holds real eigenvalues sorted in descending order and ``v`` the
        matching orthonormal eigenvectors as columns, so that
        ``a @ v[:, i] == w[i] * v[:, i]``.  Ties keep the ascending-order
        position (stable sort), which makes the output deterministic.
    """
    a = np.asarray(a, dtype=complex)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"hermitian eigendecomposition failed: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def svd_complex(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition ``a = u @ diag(s) @ v.conj().T``.

    Returns ``(u, s, v)`` with singular values descending and ``u``, ``v``
    having orthonormal columns.
    """
    a = np.asarray(a, dtype=complex)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"complex SVD failed: {exc}") from exc
    return u, s, vh.conj().T


def complex_to_real_embed(a: np.ndarray) -> np.ndarray:
    """Embed a Hermitian matrix into a real symmetric matrix of twice the size.

    Maps ``A`` to ``[[Re A, -Im A], [Im A, Re A]]``.  Every eigenvalue of
    ``A`` appears twice in the embedding, so ``A`` is PSD iff the embedding
    is, and the trace doubles.
    """
    a = np.asarray(a, dtype=complex)
    return np.block([[a.real, -a.imag], [a.imag, a.real]])


def is_psd(a: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether ``lambda_min(a) >= -tol * max(1, ||a||)`` for Hermitian ``a``."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return True
    try:
        w = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigvalsh failed in PSD test: {exc}") from exc
    scale = max(1.0, float(np.abs(w).max()))
    return bool(w.min() >= -max(tol * scale, ABS_FLOOR))


def lambda_min(a: np.ndarray) -> float:
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.eigvalsh(a)[0])


@dataclass
class RealSymBlockMatrix:
    """Block-diagonal real symmetric matrix given as ``(offset, block)`` pairs.

    Used as the carrier for real-embedded semidefinite constraints.  Blocks
    must not overlap and each block must be symmetric.
    """

    dim: int
    blocks: list[tuple[int, np.ndarray]] = field(default_factory=list)

    def add_block(self, offset: int, block: np.ndarray) -> None:
        block = np.asarray(block, dtype=float)
        if block.ndim != 2 or block.shape[0] != block.shape[1]:
            raise ValueError("block must be square")
        if offset < 0 or offset + block.shape[0] > self.dim:
            raise ValueError("block exceeds matrix dimension")
        end = offset + block.shape[0]
        for off, blk in self.blocks:
            if off < end and offset < off + blk.shape[0]:
                raise ValueError("blocks overlap")
        if not np.allclose(block, block.T, atol=ABS_FLOOR, rtol=1e-12):
            raise ValueError("block is not symmetric")
        self.blocks.append((offset, 0.5 * (block + block.T)))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        for off, blk in self.blocks:
            n = blk.shape[0]
            out[off:off + n, off:off + n] = blk
        return out

    def eigenvalues(self) -> np.ndarray:
        vals = [np.linalg.eigvalsh(blk) for _, blk in self.blocks]
        covered = sum(blk.shape[0] for _, blk in self.blocks)
        if covered < self.dim:
            vals.append(np.zeros(self.dim - covered))
        return np.sort(np.concatenate(vals))[::-1]
