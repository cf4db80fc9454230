"""Graded products of symmetric two-tensors over exterior and symmetric powers.

Elements of grade p are symmetric matrices over a grade-p representation
space; the product of ``alpha (x) beta`` and ``gamma (x) delta`` wedges
(resp. multiplies) the factors slotwise.  Three algebras are supported:

* ``"wedge"``: grades are exterior powers, the product extends the
  classical metric product of symmetric two-forms;
* ``"sym"``: grades are symmetric powers, with polynomial multiplication
  in each slot;
* ``"sym0"``: grades are traceless symmetric powers; the product is the
  ``"sym"`` product followed by harmonic projection of each slot, which
  is well defined because the trace terms form an ideal.

Products are computed through the eigen-dyad decomposition of each
factor, which keeps positive semidefiniteness manifest.  The identity
``g^p = p! * Id`` on the grade-p space holds in all three algebras and is
available in closed form alongside the iterated product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import multilinear as ml

GRADE_CUTOFF = 12

_ALGEBRAS = ("wedge", "sym", "sym0")


def space_for(algebra, n, p):
    if algebra == "wedge":
        return ml.build_exterior(n, p)
    if algebra == "sym":
        return ml.build_symmetric(n, p)
    if algebra == "sym0":
        return ml.build_traceless(n, p)
    raise ValueError(f"unknown algebra {algebra!r}; expected one of {_ALGEBRAS}")


@dataclass
class KNElement:
    """Symmetric matrix over the grade-p space of one of the algebras."""

    algebra: str
    n: int
    grade: int
    mat: np.ndarray

    def __post_init__(self):
        space = space_for(self.algebra, self.n, self.grade)
        m = np.asarray(self.mat, dtype=float)
        if m.shape != (space.dim, space.dim):
            raise ValueError(
                f"grade-{self.grade} {self.algebra} element needs shape "
                f"{(space.dim, space.dim)}, got {m.shape}"
            )
        self.mat = 0.5 * (m + m.T)

    @property
    def space(self):
        return space_for(self.algebra, self.n, self.grade)

    def __repr__(self):
        return f"KNElement({self.algebra}, n={self.n}, grade={self.grade})"


def g_element(algebra, n):
    """The metric as the grade-1 element (identity matrix on R^n)."""
    return KNElement(algebra, n, 1, np.eye(space_for(algebra, n, 1).dim))


def identity_element(algebra, n, p):
    """Identity matrix on the grade-p space, i.e. g^p / p!."""
    return KNElement(algebra, n, p, np.eye(space_for(algebra, n, p).dim))


def g_power(algebra, n, p):
    """Closed form of the p-th power of the metric: p! times the identity."""
    if p < 0:
        raise ValueError("need p >= 0")
    e = identity_element(algebra, n, p)
    return KNElement(algebra, n, p, math.factorial(p) * e.mat)


# ---------------------------------------------------------------------------
# slotwise multiplication tables on coordinate vectors


@lru_cache(maxsize=None)
def _wedge_table(n, pa, pb):
    """COO table of the wedge map: (out, ia, ib, sign) quadruples."""
    ba = ml.wedge_basis(n, pa)
    bb = ml.wedge_basis(n, pb)
    index = {I: k for k, I in enumerate(ml.wedge_basis(n, pa + pb))}
    out, ia, ib, val = [], [], [], []
    for a, I in enumerate(ba):
        set_i = set(I)
        for b, J in enumerate(bb):
            if set_i & set(J):
                continue
            inv = sum(1 for i in I for j in J if i > j)
            out.append(index[tuple(sorted(I + J))])
            ia.append(a)
            ib.append(b)
            val.append(-1.0 if inv % 2 else 1.0)
    return (
        np.array(out, dtype=np.intp),
        np.array(ia, dtype=np.intp),
        np.array(ib, dtype=np.intp),
        np.array(val),
    )


@lru_cache(maxsize=None)
def _sym_table(n, pa, pb):
    """COO table of polynomial multiplication in normalized coordinates."""
    ba = ml.monomial_basis(n, pa)
    bb = ml.monomial_basis(n, pb)
    index = {e: k for k, e in enumerate(ml.monomial_basis(n, pa + pb))}
    out, ia, ib, val = [], [], [], []
    for a, ea in enumerate(ba):
        for b, eb in enumerate(bb):
            tot = tuple(x + y for x, y in zip(ea, eb))
            c = 1.0
            for x, y in zip(ea, eb):
                c *= math.comb(x + y, x)
            out.append(index[tot])
            ia.append(a)
            ib.append(b)
            val.append(math.sqrt(c))
    return (
        np.array(out, dtype=np.intp),
        np.array(ia, dtype=np.intp),
        np.array(ib, dtype=np.intp),
        np.array(val),
    )


def _pairwise_products(table, dim_out, Va, Vb):
    """Columns: slot products of every eigenvector pair, via a COO table."""
    out_idx, ia, ib, val = table
    U = np.zeros((dim_out, Va.shape[1], Vb.shape[1]))
    contrib = val[:, None, None] * Va[ia][:, :, None] * Vb[ib][:, None, :]
    np.add.at(U, out_idx, contrib)
    return U.reshape(dim_out, -1)


def _eig_dyads(mat, rel_tol=1e-13):
    lam, vec = np.linalg.eigh(mat)
    scale = float(np.max(np.abs(lam))) if lam.size else 0.0
    keep = np.abs(lam) > rel_tol * scale
    return lam[keep], vec[:, keep]


def _check_product(a, b, algebra):
    for x in (a, b):
        if x.algebra != algebra:
            raise ValueError(f"expected a {algebra!r} element, got {x.algebra!r}")
    if a.n != b.n:
        raise ValueError("n mismatch")
    if a.grade + b.grade > GRADE_CUTOFF:
        raise ValueError(
            f"product grade {a.grade + b.grade} exceeds cutoff {GRADE_CUTOFF}"
        )


def kn_wedge(a, b):
    """Product in the wedge algebra via eigen-dyad slotwise wedging."""
    _check_product(a, b, "wedge")
    n, p = a.n, a.grade + b.grade
    if p > n:
        raise ValueError(f"grade {p} exceeds n={n} in the wedge algebra")
    la, Va = _eig_dyads(a.mat)
    lb, Vb = _eig_dyads(b.mat)
    dim_out = ml.dim_exterior(n, p)
    U = _pairwise_products(_wedge_table(n, a.grade, b.grade), dim_out, Va, Vb)
    w = np.outer(la, lb).ravel()
    return KNElement("wedge", n, p, (U * w) @ U.T)


def kn_vee(a, b):
    """Product in the symmetric algebras via eigen-dyad slot multiplication.

    For ``"sym0"`` elements the slot products are harmonically projected,
    i.e. the product is taken in the quotient by the trace ideal.
    """
    if a.algebra not in ("sym", "sym0"):
        raise ValueError(f"kn_vee needs sym or sym0 elements, got {a.algebra!r}")
    _check_product(a, b, a.algebra)
    n, p = a.n, a.grade + b.grade
    la, Va = _eig_dyads(a.mat)
    lb, Vb = _eig_dyads(b.mat)
    if a.algebra == "sym0":
        Va = space_for("sym0", n, a.grade).change_of_basis.T @ Va
        Vb = space_for("sym0", n, b.grade).change_of_basis.T @ Vb
    dim_amb = ml.dim_symmetric(n, p)
    U = _pairwise_products(_sym_table(n, a.grade, b.grade), dim_amb, Va, Vb)
    if a.algebra == "sym0":
        U = space_for("sym0", n, p).change_of_basis @ U
    w = np.outer(la, lb).ravel()
    return KNElement(a.algebra, n, p, (U * w) @ U.T)


def kn_product(a, b):
    """Dispatch on the algebra of the factors."""
    return kn_wedge(a, b) if a.algebra == "wedge" else kn_vee(a, b)


def project_traceless(a):
    """Apply slotwise harmonic projection to a ``"sym"`` element."""
    if a.algebra != "sym":
        raise ValueError("project_traceless expects a 'sym' element")
    C = space_for("sym0", a.n, a.grade).change_of_basis
    return KNElement("sym0", a.n, a.grade, C @ a.mat @ C.T)


def iterated_g_power(algebra, n, p):
    """The p-fold product of the metric, computed by folding kn products.

    Cross-checks the closed form ``g_power``; grade 0 is the unit element.
    """
    if p < 0:
        raise ValueError("need p >= 0")
    if p == 0:
        return identity_element(algebra, n, 0)
    acc = g_element(algebra, n)
    for _ in range(p - 1):
        acc = kn_product(acc, g_element(algebra, n))
    return acc
