"""Certification of sectional-curvature bounds for curvature operators.

Three engines cooperate:

* ``sec_extremes``: projected-gradient optimization of the sectional
  curvature over the Grassmannian of 2-planes, batched over random
  restarts (plus a deterministic self-dual/anti-self-dual grid of
  starting planes when n = 4).  Produces extremal planes as witnesses.

* ``thorpe_certify`` (n = 4 only): the bound ``sec >= k`` holds iff some
  shift of the operator by a multiple of the Hodge star is positive
  semidefinite.  The least eigenvalue of ``R - k Id + t star`` is concave
  in t, so a golden-section search over a bracketing interval decides
  the question exactly up to tolerance.

* ``hierarchy_check``: for any n, nonnegativity of the curvature terms
  ``K(R - k Id, Harm^p)`` for p = 1, 2, ... is necessary for
  ``sec >= k`` (p = 1 is the Ricci test).  A negative eigenvalue at any
  level refutes the bound; an all-pass is only a necessary-condition
  pass and is reported as ``inconclusive_for_certification``.

The env var ``CURVELAB_THREADS`` caps worker threads used to split
optimization restarts; the default is serial and results do not depend
on the split.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import multilinear as ml
from . import weitzenbock as wz
from .curvature import CurvatureOperator, TwoPlane, sec
from .multilinear import pair_index

DEFAULT_SEED = 0xC04A7


def max_threads():
    """Worker cap from CURVELAB_THREADS; 1 (serial) when unset or invalid."""
    raw = os.environ.get("CURVELAB_THREADS", "")
    try:
        val = int(raw)
    except ValueError:
        return 1
    return max(1, val)


# ---------------------------------------------------------------------------
# Hodge star and self-dual splitting (n = 4)


def hodge_star_matrix():
    """Matrix of the Hodge star on two-forms of R^4 in the pair basis."""
    star = np.zeros((6, 6))
    for (a, b, s) in (
        ((1, 2), (3, 4), 1.0),
        ((1, 3), (2, 4), -1.0),
        ((1, 4), (2, 3), 1.0),
    ):
        ia, ib = pair_index(4, *a), pair_index(4, *b)
        star[ia, ib] = s
        star[ib, ia] = s
    return star


@dataclass(frozen=True)
class HodgeStar:
    """The Hodge star of R^4 with its eigenbasis bookkeeping."""

    mat: np.ndarray = field(default_factory=hodge_star_matrix)

    def apply(self, alpha):
        return self.mat @ np.asarray(alpha, dtype=float)

    def selfdual_basis(self):
        """Rows: orthonormal bases of the +1 and -1 eigenspaces."""
        plus = np.zeros((3, 6))
        minus = np.zeros((3, 6))
        s = 1.0 / math.sqrt(2.0)
        for r, ((i, j), (k, l), sg) in enumerate((
            ((1, 2), (3, 4), 1.0),
            ((1, 3), (2, 4), -1.0),
            ((1, 4), (2, 3), 1.0),
        )):
            a, b = pair_index(4, i, j), pair_index(4, k, l)
            plus[r, a] = s
            plus[r, b] = sg * s
            minus[r, a] = s
            minus[r, b] = -sg * s
        return plus, minus


def selfdual_split(alpha):
    """Split a two-form of R^4 into self-dual and anti-self-dual parts."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (6,):
        raise ValueError("expected a 6-vector in the pair basis")
    sa = hodge_star_matrix() @ alpha
    return 0.5 * (alpha + sa), 0.5 * (alpha - sa)


# ---------------------------------------------------------------------------
# golden-section maximization of a concave function


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, tol=1e-10):
    """Maximize a concave function on [lo, hi] by golden-section search.

    Concavity is sanity-checked along the way: each interior probe must
    sit on or above the chord through its neighbours (up to noise), which
    holds for every concave function -- kinked or monotone included --
    and fails for genuinely bimodal input.
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        slack = 1e-9 * max(1.0, abs(fa), abs(fb), abs(fc), abs(fd))
        if (fc + slack < fa + (fd - fa) * (c - a) / (d - a)
                or fd + slack < fc + (fb - fc) * (d - c) / (b - c)):
            raise RuntimeError(
                "concavity violation: an interior value fell below the chord "
                "through its neighbours"
            )
        if fc >= fd:
            b, fb = d, fd
            d, fd = c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, fa = c, fc
            c, fc = d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    ft, t = max((ft_, t_) for t_, ft_ in ((t, f(t)), (c, fc), (d, fd)))
    return t, ft


# ---------------------------------------------------------------------------
# sectional curvature extremes over the Grassmannian


@dataclass
class SecExtremes:
    min_value: float
    max_value: float
    min_plane: TwoPlane
    max_plane: TwoPlane
    restarts: int
    grad_tol: float
    converged_fraction: float


def _pair_arrays(n):
    pairs = ml.pair_basis(n)
    I = np.array([i - 1 for (i, j) in pairs])
    J = np.array([j - 1 for (i, j) in pairs])
    return I, J


def _batch_value(Rmat, x, y, I, J):
    s = x[:, I] * y[:, J] - x[:, J] * y[:, I]
    return np.einsum("bi,bi->b", s, s @ Rmat)


def _batch_grad(Rmat, x, y, I, J, n):
    s = x[:, I] * y[:, J] - x[:, J] * y[:, I]
    T = s @ Rmat
    f = np.einsum("bi,bi->b", s, T)
    Tm = np.zeros((x.shape[0], n, n))
    Tm[:, I, J] = T
    Tm[:, J, I] = -T
    gx = 2.0 * np.einsum("bij,bj->bi", Tm, y)
    gy = -2.0 * np.einsum("bij,bj->bi", Tm, x)
    # remove components inside the plane (they only reparametrize it)
    for g in (gx, gy):
        g -= x * np.einsum("bi,bi->b", g, x)[:, None]
        g -= y * np.einsum("bi,bi->b", g, y)[:, None]
    return f, gx, gy


def _retract(x, y):
    q = np.linalg.qr(np.stack([x, y], axis=2))[0]
    return np.ascontiguousarray(q[:, :, 0]), np.ascontiguousarray(q[:, :, 1])


def _ascend(Rmat, x, y, I, J, n, grad_tol, max_iter):
    """Batched projected-gradient ascent with Armijo backtracking from 0.5."""
    B = x.shape[0]
    step = np.full(B, 0.5)
    active = np.arange(B)
    for _ in range(max_iter):
        f, gx, gy = _batch_grad(Rmat, x[active], y[active], I, J, n)
        g2 = np.einsum("bi,bi->b", gx, gx) + np.einsum("bi,bi->b", gy, gy)
        live = np.sqrt(g2) > grad_tol
        if not np.any(live):
            active = active[:0]
            break
        idx = active[live]
        gx, gy, g2, f = gx[live], gy[live], g2[live], f[live]
        s = step[idx]
        remaining = np.arange(idx.size)
        stalled = np.zeros(idx.size, dtype=bool)
        for _bt in range(60):
            xs = x[idx[remaining]] + s[remaining, None] * gx[remaining]
            ys = y[idx[remaining]] + s[remaining, None] * gy[remaining]
            xs, ys = _retract(xs, ys)
            fc = _batch_value(Rmat, xs, ys, I, J)
            ok = fc >= f[remaining] + 1e-4 * s[remaining] * g2[remaining]
            acc = remaining[ok]
            x[idx[acc]] = xs[ok]
            y[idx[acc]] = ys[ok]
            remaining = remaining[~ok]
            if remaining.size == 0:
                break
            s[remaining] *= 0.5
            step[idx[remaining]] = s[remaining]
            if np.all(s[remaining] < 1e-17):
                stalled[remaining] = True
                break
        else:
            stalled[remaining] = True
        step[idx] = np.minimum(0.5, step[idx] * 2.0)
        active = idx[~stalled]
    f_final = _batch_value(Rmat, x, y, I, J)
    return f_final, x, y, B - active.size


def _fibonacci_sphere(k):
    i = np.arange(k) + 0.5
    z = 1.0 - 2.0 * i / k
    phi = np.arccos(np.clip(z, -1, 1))
    theta = math.pi * (1.0 + math.sqrt(5.0)) * i
    return np.column_stack(
        [np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta), z]
    )


def _grid_starts_n4(Rmat, per_direction=12, points=40):
    """Planes near the extremes of a deterministic S^2 x S^2 scan (n = 4).

    Decomposable unit two-forms of R^4 are exactly the sums of a self-dual
    and an anti-self-dual form of norm 1/sqrt(2) each, so pairs of sphere
    points parametrize the Grassmannian."""
    plus, minus = HodgeStar().selfdual_basis()
    u = _fibonacci_sphere(points)
    pv = (u @ plus) / math.sqrt(2.0)
    mv = (u @ minus) / math.sqrt(2.0)
    sig = (pv[:, None, :] + mv[None, :, :]).reshape(-1, 6)
    vals = np.einsum("bi,bi->b", sig, sig @ Rmat)
    order = np.argsort(vals)
    pick = np.concatenate([order[:per_direction], order[-per_direction:]])
    A = np.zeros((pick.size, 4, 4))
    I, J = _pair_arrays(4)
    A[:, I, J] = sig[pick]
    A[:, J, I] = -sig[pick]
    U = np.linalg.svd(A)[0]
    return np.ascontiguousarray(U[:, :, 0]), np.ascontiguousarray(U[:, :, 1])


def _random_frames(n, count, rng):
    g = rng.standard_normal((count, n, 2))
    q = np.linalg.qr(g)[0]
    return np.ascontiguousarray(q[:, :, 0]), np.ascontiguousarray(q[:, :, 1])


def sec_extremes(R, restarts=100, seed=None, grad_tol=1e-9, max_iter=10000):
    """Extremal sectional curvatures with extremal planes as witnesses.

    Projected-gradient ascent on the Grassmannian from ``restarts`` random
    frames (two independent runs for the maximum and the minimum), with
    Armijo backtracking from step 0.5.  For n = 4 a deterministic grid of
    self-dual/anti-self-dual starting planes is added to the batch.
    """
    n = R.n
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    I, J = _pair_arrays(n)
    workers = max_threads()

    def run(mat):
        x, y = _random_frames(n, restarts, rng)
        if n == 4:
            gx, gy = _grid_starts_n4(mat)
            x = np.vstack([x, gx])
            y = np.vstack([y, gy])
        if workers > 1 and x.shape[0] >= 2 * workers:
            chunks = np.array_split(np.arange(x.shape[0]), workers)
            results = []
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futs = [
                    pool.submit(
                        _ascend, mat, x[c].copy(), y[c].copy(), I, J, n,
                        grad_tol, max_iter
                    )
                    for c in chunks
                ]
                results = [f.result() for f in futs]
            f = np.concatenate([r[0] for r in results])
            xs = np.vstack([r[1] for r in results])
            ys = np.vstack([r[2] for r in results])
            conv = sum(r[3] for r in results)
        else:
            f, xs, ys, conv = _ascend(mat, x, y, I, J, n, grad_tol, max_iter)
        b = int(np.argmax(f))
        return f[b], xs[b], ys[b], conv, f.shape[0]

    fmax, xmax, ymax, conv_a, tot_a = run(R.mat)
    fmin_neg, xmin, ymin, conv_b, tot_b = run(-R.mat)
    return SecExtremes(
        min_value=float(-fmin_neg),
        max_value=float(fmax),
        min_plane=TwoPlane.orthonormalized(xmin, ymin),
        max_plane=TwoPlane.orthonormalized(xmax, ymax),
        restarts=restarts,
        grad_tol=grad_tol,
        converged_fraction=(conv_a + conv_b) / (tot_a + tot_b),
    )


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    """Outcome of a bound query ``sec >= k`` (or ``<= k``) for an operator."""

    n: int
    k: float
    direction: str            # "ge" or "le"
    verdict: str              # certified / refuted / inconclusive_for_certification
    method: str               # thorpe_exact / grassmann_opt / hierarchy
    strict: bool
    witness: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    @property
    def certified(self):
        return self.verdict == "certified"

    @property
    def refuted(self):
        return self.verdict == "refuted"

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "direction": self.direction,
            "verdict": self.verdict,
            "method": self.method,
            "strict": self.strict,
            "witness": self.witness,
            "tolerances": self.tolerances,
        }


def _plane_witness(R, k, restarts=40, seed=None):
    """Search for a plane violating sec >= k; returns (plane, value) or None."""
    ext = sec_extremes(R, restarts=restarts, seed=seed)
    if ext.min_value < k:
        return ext.min_plane, ext.min_value
    return None


def thorpe_sec_min(R, t_tol=1e-10):
    """Exact minimum sectional curvature for n = 4 via the star shift.

    ``min sec = max_t lambda_min(R + t star)``: the bound ``sec >= k``
    holds iff the shifted operator can be made positive semidefinite, and
    shifting by k Id moves every eigenvalue by -k.  Returns (value, t*).
    """
    if R.n != 4:
        raise ValueError("the star-shift argument needs n = 4")
    star = hodge_star_matrix()
    norm = float(np.linalg.norm(R.mat, 2))
    if norm == 0.0:
        return 0.0, 0.0
    span = 2.0 * norm

    def mu(t):
        return float(np.linalg.eigvalsh(R.mat + t * star)[0])

    t_star, val = golden_max(mu, -span, span, tol=t_tol)
    return val, t_star


def thorpe_certify(R, k, strict=False, t_tol=1e-10, witness_seed=None):
    """Decide sec >= k for n = 4 through the star-shift criterion.

    Certification threshold: the maximized least eigenvalue must be
    >= +1e-9 in strict mode, >= -1e-9 otherwise.  Refutations carry a
    violating plane found by optimization.  A strict query whose value
    lands inside the (-1e-9, +1e-9) boundary band is inconclusive: the
    non-strict bound holds, but equality cannot be separated from a
    strict margin at working precision.
    """
    if R.n != 4:
        raise ValueError("thorpe_certify needs n = 4")
    S = CurvatureOperator(4, R.mat - k * np.eye(6))
    val_shifted, t_star = thorpe_sec_min(S, t_tol=t_tol)
    tol = 1e-9
    tolerances = {"eig_tol": tol, "t_tol": t_tol, "strict": strict}
    witness = {"t_star": t_star, "mu_max": val_shifted}
    if val_shifted >= (tol if strict else -tol):
        return Certificate(
            n=4, k=k, direction="ge", verdict="certified",
            method="thorpe_exact", strict=strict,
            witness=witness, tolerances=tolerances,
        )
    if strict and val_shifted > -tol:
        return Certificate(
            n=4, k=k, direction="ge",
            verdict="inconclusive_for_certification",
            method="thorpe_exact", strict=strict,
            witness=witness, tolerances=tolerances,
        )
    found = _plane_witness(R, k, seed=witness_seed)
    if found is not None:
        plane, value = found
        witness["plane"] = {"x": plane.x.tolist(), "y": plane.y.tolist(),
                           "sec": value}
    return Certificate(
        n=4, k=k, direction="ge", verdict="refuted",
        method="thorpe_exact", strict=strict,
        witness=witness, tolerances=tolerances,
    )


@dataclass
class HierarchyResult:
    n: int
    k: float
    p_max: int
    rows: list                 # (p, lambda_min)
    refuted_at: int | None
    tol: float

    @property
    def verdict(self):
        return "refuted" if self.refuted_at is not None else (
            "inconclusive_for_certification"
        )

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "p_max": self.p_max,
            "rows": [{"p": p, "lambda_min": v} for (p, v) in self.rows],
            "refuted_at": self.refuted_at,
            "tol": self.tol,
            "verdict": self.verdict,
        }


def hierarchy_check(R, k, p_max=6, tol=1e-8):
    """Least eigenvalues of K(R - k Id, Harm^p) for p = 1..p_max.

    p = 1 is the Ricci test.  Any eigenvalue below ``-tol`` refutes
    ``sec >= k``; all-nonnegative rows are necessary-condition passes
    only, never a certification.
    """
    n = R.n
    S = CurvatureOperator(n, R.mat - k * np.eye(R.N))
    rows = []
    refuted_at = None
    for p in range(1, p_max + 1):
        lam = wz.curvature_term(S, ml.build_traceless(n, p)).lambda_min()
        rows.append((p, lam))
        if refuted_at is None and lam < -tol:
            refuted_at = p
    return HierarchyResult(n=n, k=k, p_max=p_max, rows=rows,
                          refuted_at=refuted_at, tol=tol)


@dataclass
class Witness:
    p: int
    value: float
    poly: ml.Polynomial

    def to_dict(self):
        return {
            "p": self.p,
            "value": self.value,
            "poly": [[list(e), c] for e, c in sorted(self.poly.coeffs.items(),
                                                     reverse=True)],
        }


def witness_search(R, k, p_max=6, tol=1e-8):
    """First hierarchy level with a negative direction, as a polynomial.

    Returns the eigenpolynomial of the most negative eigenvalue of
    K(R - k Id, Harm^p) at the first refuting level, or None if every
    level up to p_max passes.
    """
    n = R.n
    S = CurvatureOperator(n, R.mat - k * np.eye(R.N))
    for p in range(1, p_max + 1):
        space = ml.build_traceless(n, p)
        K = wz.curvature_term(S, space)
        lam, vec = np.linalg.eigh(K.mat)
        if lam[0] < -tol:
            return Witness(p=p, value=float(lam[0]),
                          poly=ml.coords_to_polynomial(space, vec[:, 0]))
    return None


def certify_bound(R, k, direction="ge", strict=False, p_max=6, seed=None):
    """Top-level bound decision for an operator.

    For n = 4 the star-shift criterion decides the question; for other n
    the hierarchy can refute (with an optimizer-found violating plane
    attached when available) but an all-pass is explicitly inconclusive.
    ``direction="le"`` is handled by negating the operator and the bound.
    """
    if direction not in ("ge", "le"):
        raise ValueError("direction must be 'ge' or 'le'")
    if direction == "le":
        inner = certify_bound(
            CurvatureOperator(R.n, -R.mat), -k, "ge", strict=strict,
            p_max=p_max, seed=seed,
        )
        witness = dict(inner.witness)
        if "plane" in witness:
            witness["plane"] = dict(witness["plane"])
            witness["plane"]["sec"] = -witness["plane"]["sec"]
        return Certificate(
            n=R.n, k=k, direction="le", verdict=inner.verdict,
            method=inner.method, strict=strict, witness=witness,
            tolerances=inner.tolerances,
        )
    if R.n == 4:
        return thorpe_certify(R, k, strict=strict, witness_seed=seed)
    hier = hierarchy_check(R, k, p_max=p_max)
    wit = {"hierarchy": hier.to_dict()}
    found = _plane_witness(R, k - 1e-9, seed=seed)
    if found is not None:
        plane, value = found
        wit["plane"] = {"x": plane.x.tolist(), "y": plane.y.tolist(),
                        "sec": value}
        return Certificate(
            n=R.n, k=k, direction="ge", verdict="refuted",
            method="grassmann_opt", strict=strict, witness=wit,
            tolerances={"eig_tol": hier.tol, "plane_margin": 1e-9},
        )
    if hier.refuted_at is not None:
        ws = witness_search(R, k, p_max=p_max)
        if ws is not None:
            wit["eigen_direction"] = ws.to_dict()
        return Certificate(
            n=R.n, k=k, direction="ge", verdict="refuted",
            method="hierarchy", strict=strict, witness=wit,
            tolerances={"eig_tol": hier.tol},
        )
    return Certificate(
        n=R.n, k=k, direction="ge",
        verdict="inconclusive_for_certification",
        method="hierarchy", strict=strict,
        witness={"hierarchy": hier.to_dict()},
        tolerances={"eig_tol": hier.tol},
    )
