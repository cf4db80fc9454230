"""Representation spaces of so(n) and their infinitesimal generator matrices.

Three families of orthogonal representations are supported, each with an
explicit orthonormal basis and sparse skew-symmetric generator matrices
``D[(i, j)]`` for the standard basis of so(n):

* exterior powers of R^n, with the wedge basis ``e_{i1} ^ ... ^ e_{ip}``
  over strictly increasing index tuples in lexicographic order;
* symmetric powers of R^n, realised as homogeneous polynomials with the
  monomial basis ``x^l / sqrt(l!)`` in descending lexicographic order of
  the exponent tuple (so the degree-1 basis is ``x_1, ..., x_n``);
* traceless (harmonic) symmetric powers, the orthogonal complement of
  ``r^2 * Sym^{p-2}`` inside ``Sym^p``, carried by a computed orthonormal
  basis expressed in normalized-monomial coordinates.

The generator ``A[(i, j)]`` of so(n) is the matrix with ``+1`` in entry
``(i, j)`` and ``-1`` in entry ``(j, i)``, so ``A e_j = e_i`` and
``A e_i = -e_j``; the family over ``i < j`` is orthonormal.  On
polynomials it acts as ``x_i d/dx_j - x_j d/dx_i``.

See ``docs/bases.md`` for the frozen ordering and normalization rules.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy import sparse


# ---------------------------------------------------------------------------
# so(n) pair bookkeeping


def pair_basis(n):
    """Ordered basis labels of so(n): pairs (i, j), 1-based, i < j, lex order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def pair_index(n, i, j):
    """Position of the (unordered) pair {i, j} in the lexicographic pair basis."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j}) with n={n}")
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


def so_generator(n, i, j):
    """Dense n x n matrix of the generator with +1 at (i, j), -1 at (j, i)."""
    a = np.zeros((n, n))
    a[i - 1, j - 1] = 1.0
    a[j - 1, i - 1] = -1.0
    return a


# ---------------------------------------------------------------------------
# dimension formulas


def dim_exterior(n, p):
    return math.comb(n, p) if 0 <= p <= n else 0


def dim_symmetric(n, p):
    return math.comb(n + p - 1, p) if p >= 0 else 0


def dim_traceless(n, p):
    if p < 0:
        return 0
    if p < 2:
        return dim_symmetric(n, p)
    return dim_symmetric(n, p) - dim_symmetric(n, p - 2)


# ---------------------------------------------------------------------------
# basis enumeration


@lru_cache(maxsize=None)
def wedge_basis(n, p):
    """Strictly increasing p-tuples from {1..n}, lexicographically sorted."""
    return tuple(combinations(range(1, n + 1), p))


@lru_cache(maxsize=None)
def monomial_basis(n, p):
    """Exponent tuples of total degree p, descending lexicographic order.

    Descending order puts ``x_1^p`` first and ``x_n^p`` last, so for p = 1
    the basis coincides with ``e_1, ..., e_n``.
    """

    def gen(nvars, total):
        if nvars == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in gen(nvars - 1, total - first):
                yield (first,) + rest

    return tuple(gen(n, p))


def _factorial_prod(exps):
    out = 1
    for e in exps:
        out *= math.factorial(e)
    return out


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Homogeneous polynomial on R^n, stored as {exponent tuple: coefficient}.

    The inner product is the one that makes the monomials orthogonal with
    ``<x^l, x^l> = l!``; equivalently ``<phi, psi>`` applies phi as a
    constant-coefficient differential operator to psi.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs):
        self.n = int(n)
        clean = {}
        deg = None
        for exps, c in coeffs.items():
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for n={self.n}")
            d = sum(exps)
            if deg is None:
                deg = d
            elif d != deg:
                raise ValueError("polynomial is not homogeneous")
            clean[exps] = clean.get(exps, 0) + c
        self.coeffs = {k: v for k, v in clean.items() if v != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def monomial(cls, n, exps, coeff=1):
        return cls(n, {tuple(exps): coeff})

    @classmethod
    def variable(cls, n, i):
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): 1})

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        """Total degree; None for the zero polynomial."""
        for exps in self.coeffs:
            return sum(exps)
        return None

    def is_zero(self, tol=0.0):
        return all(abs(c) <= tol for c in self.coeffs.values())

    def __repr__(self):
        terms = sorted(self.coeffs.items(), reverse=True)
        if not terms:
            return "Polynomial(0)"
        bits = []
        for exps, c in terms[:6]:
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e > 0
            )
            bits.append(f"{c:+g}*{mono}" if mono else f"{c:+g}")
        if len(terms) > 6:
            bits.append("...")
        return f"Polynomial({' '.join(bits)})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        out = dict(self.coeffs)
        for exps, c in other.coeffs.items():
            out[exps] = out.get(exps, 0) + c
        return Polynomial(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, a):
        return Polynomial(self.n, {k: a * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def partial(self, i):
        """d/dx_i, 1-based."""
        out = {}
        for exps, c in self.coeffs.items():
            e = exps[i - 1]
            if e == 0:
                continue
            key = exps[: i - 1] + (e - 1,) + exps[i:]
            out[key] = out.get(key, 0) + e * c
        return Polynomial(self.n, out)

    def laplacian(self):
        out = {}
        for exps, c in self.coeffs.items():
            for i, e in enumerate(exps):
                if e >= 2:
                    key = exps[:i] + (e - 2,) + exps[i + 1 :]
                    out[key] = out.get(key, 0) + e * (e - 1) * c
        return Polynomial(self.n, out)

    def rotation_action(self, i, j):
        """Apply the generator (i, j): ``x_i d/dx_j - x_j d/dx_i``."""
        out = {}
        for exps, c in self.coeffs.items():
            li, lj = exps[i - 1], exps[j - 1]
            if lj:
                key = list(exps)
                key[i - 1] += 1
                key[j - 1] -= 1
                key = tuple(key)
                out[key] = out.get(key, 0) + lj * c
            if li:
                key = list(exps)
                key[i - 1] -= 1
                key[j - 1] += 1
                key = tuple(key)
                out[key] = out.get(key, 0) - li * c
        return Polynomial(self.n, out)

    def substitute_linear(self, Q):
        """Substitute x -> Q^T x, i.e. the rotation action of Q in O(n)."""
        Q = np.asarray(Q)
        xs = [
            Polynomial(self.n, {tuple(int(k == m) for m in range(self.n)): Q[k, i]
                                for k in range(self.n) if Q[k, i] != 0})
            for i in range(self.n)
        ]
        total = Polynomial.zero(self.n)
        for exps, c in self.coeffs.items():
            term = Polynomial(self.n, {(0,) * self.n: c})
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * xs[i]
            total = total + term
        return total

    # -- inner product and evaluation --------------------------------------

    def pairing(self, other):
        """<phi, psi> = sum_l l! a_l b_l (0 across different degrees)."""
        tot = 0
        for exps, c in self.coeffs.items():
            d = other.coeffs.get(exps)
            if d is not None:
                tot += _factorial_prod(exps) * c * d
        return tot

    def norm_sq(self):
        return self.pairing(self)

    def evaluate(self, points):
        """Evaluate at an (m, n) array of points; returns shape (m,)."""
        X = np.atleast_2d(np.asarray(points, dtype=float))
        vals = np.zeros(X.shape[0])
        for exps, c in self.coeffs.items():
            term = np.full(X.shape[0], float(c))
            for i, e in enumerate(exps):
                if e:
                    term *= X[:, i] ** e
            vals += term
        return vals


def r_squared(n):
    """The squared-radius polynomial sum_i x_i^2."""
    return Polynomial(
        n, {tuple(2 * (i == k) for k in range(n)): 1 for i in range(n)}
    )


def circle_harmonic(n, p):
    """Harmonic fixture Re (x_1 + i x_2)^p; squared norm 2^{p-1} p!."""
    if n < 2:
        raise ValueError("need n >= 2")
    coeffs = {}
    for k in range(0, p + 1, 2):
        exps = [0] * n
        exps[0] = p - k
        exps[1] = k
        coeffs[tuple(exps)] = math.comb(p, k) * (-1) ** (k // 2)
    return Polynomial(n, coeffs)


def harmonic_projection(poly):
    """Orthogonal projection onto harmonic polynomials of the same degree.

    Writes ``poly = h + r^2 * q`` with ``h`` harmonic and solves for ``q``
    from ``Lap(r^2 q) = Lap(poly)``, a square linear system on Sym^{p-2}
    since ``r^2 *`` is injective and the decomposition is orthogonal for
    the differential-operator pairing.
    """
    p = poly.degree
    if p is None or p < 2:
        return Polynomial(poly.n, dict(poly.coeffs))
    n = poly.n
    basis = monomial_basis(n, p - 2)
    index = {exps: k for k, exps in enumerate(basis)}
    r2 = r_squared(n)
    cols = []
    for exps in basis:
        img = (r2 * Polynomial.monomial(n, exps)).laplacian()
        col = np.zeros(len(basis))
        for e2, c in img.coeffs.items():
            col[index[e2]] = float(c)
        cols.append(col)
    A = np.column_stack(cols)
    rhs = np.zeros(len(basis))
    for e2, c in poly.laplacian().coeffs.items():
        rhs[index[e2]] = float(c)
    qvec = np.linalg.solve(A, rhs)
    q = Polynomial(n, {exps: qvec[k] for k, exps in enumerate(basis)})
    return poly - r2 * q


# ---------------------------------------------------------------------------
# representation spaces


class RepSpace:
    """An orthogonal representation of so(n) with explicit generator matrices.

    Attributes
    ----------
    kind : str
        "exterior", "symmetric", or "traceless".
    n, p : int
        Underlying dimension and power.
    dim : int
        Dimension of the representation space.
    basis : tuple
        Wedge index tuples or monomial exponent tuples.  For "traceless"
        this is the monomial basis of the ambient symmetric power.
    pairs : list of (i, j)
        so(n) basis labels, aligned with ``action_list``.
    action : dict
        ``(i, j) -> scipy.sparse.csr_matrix`` skew generator matrices.
    change_of_basis : ndarray or None
        For "traceless": rows are the orthonormal harmonic basis vectors in
        normalized-monomial coordinates of the ambient symmetric power.
    """

    def __init__(self, kind, n, p, dim, basis, action, change_of_basis=None):
        self.kind = kind
        self.n = n
        self.p = p
        self.dim = dim
        self.basis = basis
        self.pairs = pair_basis(n)
        self.action = action
        self.action_list = [action[ij] for ij in self.pairs]
        self.change_of_basis = change_of_basis

    def __repr__(self):
        return f"RepSpace({self.kind}, n={self.n}, p={self.p}, dim={self.dim})"


def _check_np(n, p):
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if p < 0:
        raise ValueError(f"need p >= 0, got {p}")


@lru_cache(maxsize=None)
def build_exterior(n, p):
    """Exterior power with wedge basis and sparse generator matrices."""
    _check_np(n, p)
    if p > n:
        raise ValueError(f"exterior power needs p <= n, got p={p}, n={n}")
    basis = wedge_basis(n, p)
    index = {I: k for k, I in enumerate(basis)}
    dim = len(basis)
    action = {}
    for (i, j) in pair_basis(n):
        rows, cols, vals = [], [], []
        for col, I in enumerate(basis):
            for t, it in enumerate(I):
                # generator sends e_j -> e_i and e_i -> -e_j
                if it == j:
                    new, sgn = i, 1
                elif it == i:
                    new, sgn = j, -1
                else:
                    continue
                rest = I[:t] + I[t + 1 :]
                if new in rest:
                    continue
                pos = sum(1 for r in rest if r < new)
                sgn *= -1 if (t - pos) % 2 else 1
                J = rest[:pos] + (new,) + rest[pos:]
                rows.append(index[J])
                cols.append(col)
                vals.append(sgn)
        action[(i, j)] = sparse.csr_matrix(
            (np.array(vals, dtype=float), (rows, cols)), shape=(dim, dim)
        )
    return RepSpace("exterior", n, p, dim, basis, action)


@lru_cache(maxsize=None)
def build_symmetric(n, p):
    """Symmetric power on the normalized monomial basis x^l / sqrt(l!).

    Entries are assembled from the exact integer action on monomials,
    ``l_j x^{l+e_i-e_j} - l_i x^{l-e_i+e_j}``, then rescaled, giving
    ``sqrt(l_j (l_i + 1))`` and ``-sqrt(l_i (l_j + 1))`` coefficients.
    """
    _check_np(n, p)
    basis = monomial_basis(n, p)
    index = {exps: k for k, exps in enumerate(basis)}
    dim = len(basis)
    action = {}
    for (i, j) in pair_basis(n):
        rows, cols, vals = [], [], []
        for col, exps in enumerate(basis):
            li, lj = exps[i - 1], exps[j - 1]
            if lj:
                tgt = list(exps)
                tgt[i - 1] += 1
                tgt[j - 1] -= 1
                rows.append(index[tuple(tgt)])
                cols.append(col)
                vals.append(math.sqrt(lj * (li + 1)))
            if li:
                tgt = list(exps)
                tgt[i - 1] -= 1
                tgt[j - 1] += 1
                rows.append(index[tuple(tgt)])
                cols.append(col)
                vals.append(-math.sqrt(li * (lj + 1)))
        action[(i, j)] = sparse.csr_matrix(
            (np.array(vals, dtype=float), (rows, cols)), shape=(dim, dim)
        )
    return RepSpace("symmetric", n, p, dim, basis, action)


@lru_cache(maxsize=None)
def r2_multiplication_matrix(n, p):
    """Multiplication by r^2 from Sym^p to Sym^{p+2}, orthonormal coordinates."""
    src = monomial_basis(n, p)
    dst = monomial_basis(n, p + 2)
    index = {exps: k for k, exps in enumerate(dst)}
    rows, cols, vals = [], [], []
    for col, exps in enumerate(src):
        for i in range(n):
            tgt = list(exps)
            tgt[i] += 2
            rows.append(index[tuple(tgt)])
            cols.append(col)
            vals.append(math.sqrt((exps[i] + 1) * (exps[i] + 2)))
    return sparse.csr_matrix(
        (np.array(vals), (rows, cols)), shape=(len(dst), len(src))
    )


@lru_cache(maxsize=None)
def build_traceless(n, p):
    """Harmonic part of the symmetric power, on a computed orthonormal basis.

    The basis is the orthogonal complement of the column space of the r^2
    multiplication map, obtained from a full SVD; it is orthonormal but not
    canonical.  Generators are conjugated from the ambient symmetric power.
    """
    _check_np(n, p)
    amb = build_symmetric(n, p)
    if p < 2:
        C = np.eye(amb.dim)
    else:
        M = r2_multiplication_matrix(n, p - 2).toarray()
        U = np.linalg.svd(M, full_matrices=True)[0]
        C = U[:, M.shape[1] :].T  # rows: orthonormal basis of the complement
    dim = C.shape[0]
    if dim != dim_traceless(n, p):
        raise RuntimeError(
            f"harmonic basis has dim {dim}, expected {dim_traceless(n, p)}"
        )
    action = {
        ij: sparse.csr_matrix(C @ (D @ C.T))
        for ij, D in amb.action.items()
    }
    return RepSpace("traceless", n, p, dim, amb.basis, action, change_of_basis=C)


# ---------------------------------------------------------------------------
# coordinate conversions


def polynomial_coords(space, poly, check=True):
    """Coordinates of a polynomial in a symmetric or traceless RepSpace."""
    if space.kind not in ("symmetric", "traceless"):
        raise ValueError("polynomial_coords needs a symmetric or traceless space")
    if poly.n != space.n:
        raise ValueError("variable-count mismatch")
    if poly.coeffs and poly.degree != space.p:
        raise ValueError(f"degree {poly.degree} != space power {space.p}")
    index = {exps: k for k, exps in enumerate(space.basis)}
    v = np.zeros(len(space.basis))
    for exps, c in poly.coeffs.items():
        v[index[exps]] = float(c) * math.sqrt(_factorial_prod(exps))
    if space.kind == "symmetric":
        return v
    C = space.change_of_basis
    out = C @ v
    if check:
        resid = np.linalg.norm(v - C.T @ out)
        if resid > 1e-9 * max(1.0, np.linalg.norm(v)):
            raise ValueError(
                f"polynomial is not harmonic (residual {resid:.3e}); "
                "apply harmonic_projection first"
            )
    return out


def coords_to_polynomial(space, vec):
    """Inverse of polynomial_coords (exact for harmonic input)."""
    vec = np.asarray(vec, dtype=float)
    if space.kind == "traceless":
        vec = space.change_of_basis.T @ vec
    elif space.kind != "symmetric":
        raise ValueError("coords_to_polynomial needs a symmetric or traceless space")
    coeffs = {}
    for k, exps in enumerate(space.basis):
        if vec[k] != 0.0:
            coeffs[exps] = vec[k] / math.sqrt(_factorial_prod(exps))
    return Polynomial(space.n, coeffs)


def wedge_coords(space, terms):
    """Vector of a linear combination of wedge monomials.

    ``terms`` is an iterable of ``(coeff, indices)`` with 1-based indices;
    unsorted index tuples are normalized with the sign of the sorting
    permutation, repeated indices contribute zero.
    """
    if space.kind != "exterior":
        raise ValueError("wedge_coords needs an exterior space")
    index = {I: k for k, I in enumerate(space.basis)}
    v = np.zeros(space.dim)
    for coeff, idxs in terms:
        idxs = tuple(idxs)
        if len(set(idxs)) != len(idxs):
            continue
        srt = tuple(sorted(idxs))
        perm = sorted(range(len(idxs)), key=lambda t: idxs[t])
        inv = 0
        for a in range(len(perm)):
            for b in range(a + 1, len(perm)):
                if perm[a] > perm[b]:
                    inv += 1
        v[index[srt]] += coeff * (-1 if inv % 2 else 1)
    return v


def rep_matrix(space, Q):
    """Matrix of the O(n) element Q acting on the representation space."""
    Q = np.asarray(Q, dtype=float)
    if space.kind == "exterior":
        out = np.empty((space.dim, space.dim))
        for col, I in enumerate(space.basis):
            ci = [i - 1 for i in I]
            for row, J in enumerate(space.basis):
                rj = [j - 1 for j in J]
                out[row, col] = np.linalg.det(Q[np.ix_(rj, ci)]) if I else 1.0
        return out
    if space.kind == "symmetric":
        cols = []
        for exps in space.basis:
            img = Polynomial.monomial(space.n, exps).substitute_linear(Q)
            v = polynomial_coords(build_symmetric(space.n, space.p), img)
            cols.append(v / math.sqrt(_factorial_prod(exps)))
        return np.column_stack(cols)
    amb = rep_matrix(build_symmetric(space.n, space.p), Q)
    C = space.change_of_basis
    return C @ amb @ C.T
