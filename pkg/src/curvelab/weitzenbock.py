"""Curvature terms of symmetric endomorphisms of two-forms.

Given a curvature operator R with components R_ab in the orthonormal
so(n) basis and a representation space V with skew generator matrices
D_a, the curvature term is the symmetric endomorphism

    K(R, V) = - sum_{a,b} R_ab D_a D_b.

On vectors and on (n-1)-forms it reproduces the Ricci form; on full
symmetric powers it is block-diagonal along the harmonic tower
``Sym^p = +_{m} r^{2m} Harm^{p-2m}``; on the traceless two-tensors its
diagonal in a Ricci eigenbasis recovers four times the Ricci eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import multilinear as ml
from .curvature import ricci


@dataclass
class SymmetricEndomorphism:
    """Symmetric matrix acting on a representation space.

    ``sym_defect`` is the largest asymmetry removed when the assembled
    matrix was symmetrized."""

    space: ml.RepSpace
    mat: np.ndarray
    sym_defect: float = 0.0

    @property
    def dim(self):
        return self.space.dim

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.mat)

    def lambda_min(self):
        return float(np.linalg.eigvalsh(self.mat)[0])

    def __repr__(self):
        return (
            f"SymmetricEndomorphism({self.space.kind}, n={self.space.n}, "
            f"p={self.space.p}, dim={self.dim})"
        )


def _assemble(Rmat, mats, dim):
    """Dense matrix of -sum_ab R_ab D_a D_b from sparse generators."""
    K = np.zeros((dim, dim))
    N = len(mats)
    for b in range(N):
        col = Rmat[:, b]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        acc = col[nz[0]] * mats[nz[0]]
        for a in nz[1:]:
            acc = acc + col[a] * mats[a]
        K -= (acc @ mats[b]).toarray()
    return K


def curvature_term(R, space):
    """Assemble K(R, V) on a representation space as a symmetric matrix.

    For traceless spaces the sum is assembled on the ambient symmetric
    power (where the generators are sparse) and conjugated onto the
    harmonic basis, which the generators preserve.
    """
    if R.n != space.n:
        raise ValueError(f"operator has n={R.n}, space has n={space.n}")
    if space.kind == "traceless":
        amb = ml.build_symmetric(space.n, space.p)
        K = _assemble(R.mat, amb.action_list, amb.dim)
        C = space.change_of_basis
        K = C @ K @ C.T
    else:
        K = _assemble(R.mat, space.action_list, space.dim)
    defect = float(np.max(np.abs(K - K.T)) / 2) if K.size else 0.0
    return SymmetricEndomorphism(space, 0.5 * (K + K.T), defect)


def quadratic_form(K, vec):
    """<K v, v> for a coordinate vector on K's space."""
    v = np.asarray(vec, dtype=float)
    return float(v @ K.mat @ v)


def bilinear_form(K, v, w):
    """<K v, w> for coordinate vectors on K's space."""
    return float(np.asarray(v, float) @ K.mat @ np.asarray(w, float))


# ---------------------------------------------------------------------------
# harmonic tower


@dataclass
class BlockStructure:
    """Conjugation of K(R, Sym^p) into the harmonic tower basis."""

    n: int
    p: int
    degrees: list          # harmonic degrees, descending from p by 2
    block_dims: list
    transform: np.ndarray  # orthogonal: columns ordered by tower block
    tower_matrix: np.ndarray
    offdiag_max: float
    spectra: dict          # degree -> eigenvalues of the tower block
    spectrum_mismatch: float


def _tower_transform(n, p):
    """Orthonormal basis of Sym^p grouped by harmonic degree.

    Block k consists of an orthonormalized basis of r^{2m} Harm^k with
    m = (p - k)/2, lifted through the r^2 multiplication maps.
    """
    blocks = []
    degrees = []
    k = p
    while k >= 0:
        cols = ml.build_traceless(n, k).change_of_basis.T
        j = k
        while j < p:
            cols = ml.r2_multiplication_matrix(n, j).toarray() @ cols
            j += 2
        q = np.linalg.qr(cols)[0]
        blocks.append(q)
        degrees.append(k)
        k -= 2
    return degrees, blocks


def block_structure(R, p, offdiag_tol=1e-9, spectrum_tol=1e-8):
    """Conjugate K(R, Sym^p) into the harmonic tower and verify the blocks.

    Raises if any off-diagonal block exceeds ``offdiag_tol`` or if a
    diagonal block's spectrum differs from the directly assembled
    K(R, Harm^k) by more than ``spectrum_tol``.
    """
    n = R.n
    amb = ml.build_symmetric(n, p)
    K = curvature_term(R, amb).mat
    degrees, blocks = _tower_transform(n, p)
    T = np.hstack(blocks)
    KT = T.T @ K @ T
    dims = [b.shape[1] for b in blocks]
    offs = np.cumsum([0] + dims)
    off_max = 0.0
    spectra = {}
    mismatch = 0.0
    for a, ka in enumerate(degrees):
        sl_a = slice(offs[a], offs[a + 1])
        for b in range(a + 1, len(degrees)):
            sl_b = slice(offs[b], offs[b + 1])
            off_max = max(off_max, float(np.max(np.abs(KT[sl_a, sl_b]))))
        block_eigs = np.linalg.eigvalsh(KT[sl_a, sl_a])
        spectra[ka] = block_eigs
        direct = curvature_term(R, ml.build_traceless(n, ka)).eigenvalues()
        if direct.size:
            mismatch = max(mismatch, float(np.max(np.abs(block_eigs - direct))))
    scale = max(1.0, float(np.max(np.abs(K))))
    if off_max > offdiag_tol * scale:
        raise RuntimeError(
            f"harmonic tower off-diagonal block too large: {off_max:.3e}"
        )
    if mismatch > spectrum_tol * scale:
        raise RuntimeError(
            f"tower block spectrum mismatch vs direct assembly: {mismatch:.3e}"
        )
    return BlockStructure(
        n=n,
        p=p,
        degrees=degrees,
        block_dims=dims,
        transform=T,
        tower_matrix=KT,
        offdiag_max=off_max,
        spectra=spectra,
        spectrum_mismatch=mismatch,
    )


# ---------------------------------------------------------------------------
# Ricci eigenbasis diagonal on traceless two-tensors


def berger_diagonal(R, tol=1e-8):
    """Evaluate K(R, Harm^2) on the Ricci eigenbasis diagonal.

    For each unit Ricci eigenvector v with eigenvalue lam, the quadratic
    form at ``(v . x)^2 - r^2/n`` equals ``4 lam``; this is asserted to
    ``tol`` (relative to the operator scale) and the table is returned as
    a list of ``(lam, v, value)``.
    """
    n = R.n
    space = ml.build_traceless(n, 2)
    K = curvature_term(R, space)
    lams, vecs = np.linalg.eigh(ricci(R))
    r2n = ml.r_squared(n).scale(1.0 / n)
    out = []
    scale = max(1.0, float(np.max(np.abs(R.mat))))
    for m in range(n):
        v = vecs[:, m]
        lin = ml.Polynomial(
            n, {tuple(int(i == k) for k in range(n)): v[i] for i in range(n)}
        )
        phi = lin * lin - r2n
        coords = ml.polynomial_coords(space, phi)
        val = quadratic_form(K, coords)
        if abs(val - 4.0 * lams[m]) > tol * scale:
            raise RuntimeError(
                f"diagonal value {val:.12e} != 4*{lams[m]:.12e} "
                f"(defect {abs(val - 4 * lams[m]):.3e})"
            )
        out.append((float(lams[m]), v, val))
    return out
