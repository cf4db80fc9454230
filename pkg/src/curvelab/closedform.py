"""Closed forms of the curvature term on higher powers.

On exterior powers (2 <= p <= n-2) the curvature term is a metric-power
product of a fixed linear combination of the four decomposition parts:

    K(R, wedge^p) = [ 2(n-p)/(p-1) R_U + (n-2p)/(p-1) R_L
                      - 2 R_W + 4 R_w4 ] o g^{p-2} / (p-2)!

with the product taken in the wedge algebra.  On traceless symmetric
powers (p >= 2) the analogous statement combines the curvature terms of
the parts on the traceless two-tensors:

    K(R, Harm^p) = [ (n+p-2)/(n(p-1)) K(R_U) + (n+2p-4)/(n(p-1)) K(R_L)
                     + K(R_W) ] o g^{p-2} / (p-2)!

in the traceless symmetric algebra, where the four-form part drops out
entirely.  Both right-hand sides are assembled here from the eigen-dyad
products and compared against the directly assembled double sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import knalgebra as kn
from . import multilinear as ml
from . import weitzenbock as wz
from .curvature import CurvatureOperator, decompose


@dataclass(frozen=True)
class ThmBCoefficients:
    """Coefficient sets of the two closed forms at a given (n, p)."""

    n: int
    p: int
    wedge: tuple | None  # (A', B', C', D') or None outside 2 <= p <= n-2
    sym: tuple           # (A, B, C)

    @classmethod
    def for_np(cls, n, p):
        if p < 2:
            raise ValueError("closed forms need p >= 2")
        w = None
        if 2 <= p <= n - 2:
            w = (2.0 * (n - p) / (p - 1), (n - 2.0 * p) / (p - 1), -2.0, 4.0)
        s = ((n + p - 2.0) / (n * (p - 1)), (n + 2.0 * p - 4) / (n * (p - 1)), 1.0)
        return cls(n=n, p=p, wedge=w, sym=s)


def wedge_coefficients(n, p):
    c = ThmBCoefficients.for_np(n, p).wedge
    if c is None:
        raise ValueError(f"wedge closed form needs 2 <= p <= n-2, got p={p}, n={n}")
    return c


def sym_coefficients(n, p):
    return ThmBCoefficients.for_np(n, p).sym


def thmB_wedge_rhs(R, p):
    """Closed-form right-hand side on the exterior power wedge^p."""
    n = R.n
    A, B, C, D = wedge_coefficients(n, p)
    d = decompose(R)
    bracket = A * d.r_u + B * d.r_l + C * d.r_w + D * d.r_w4
    elt = kn.KNElement("wedge", n, 2, bracket)
    out = kn.kn_wedge(elt, kn.identity_element("wedge", n, p - 2))
    return wz.SymmetricEndomorphism(ml.build_exterior(n, p), out.mat)


def thmB_sym_rhs(R, p):
    """Closed-form right-hand side on the traceless symmetric power."""
    n = R.n
    A, B, C = sym_coefficients(n, p)
    d = decompose(R)
    harm2 = ml.build_traceless(n, 2)
    combined = (
        A * wz.curvature_term(CurvatureOperator(n, d.r_u), harm2).mat
        + B * wz.curvature_term(CurvatureOperator(n, d.r_l), harm2).mat
        + C * wz.curvature_term(CurvatureOperator(n, d.r_w), harm2).mat
    )
    elt = kn.KNElement("sym0", n, 2, combined)
    out = kn.kn_vee(elt, kn.identity_element("sym0", n, p - 2))
    return wz.SymmetricEndomorphism(harm2 if p == 2 else ml.build_traceless(n, p), out.mat)


def _spectral_distance(a, b):
    ea = np.linalg.eigvalsh(a)
    eb = np.linalg.eigvalsh(b)
    return float(np.max(np.abs(ea - eb))) if ea.size else 0.0


@dataclass
class ThmBRow:
    n: int
    p: int
    rep: str
    trials: int
    max_abs: float
    max_spectral: float

    def to_dict(self):
        return {
            "n": self.n,
            "p": self.p,
            "rep": self.rep,
            "trials": self.trials,
            "max_abs": self.max_abs,
            "max_spectral": self.max_spectral,
        }


@dataclass
class ThmBReport:
    tol: float
    seed: int
    rows: list = field(default_factory=list)

    @property
    def worst(self):
        return max(
            (max(r.max_abs, r.max_spectral) for r in self.rows), default=0.0
        )

    @property
    def passed(self):
        return self.worst <= self.tol

    def to_dict(self):
        return {
            "tol": self.tol,
            "seed": self.seed,
            "worst": self.worst,
            "passed": bool(self.passed),
            "rows": [r.to_dict() for r in self.rows],
        }


def random_operator(n, rng):
    """Symmetric matrix with entries uniform in [-1, 1] on the pair basis."""
    N = n * (n - 1) // 2
    A = rng.uniform(-1.0, 1.0, (N, N))
    return CurvatureOperator(n, 0.5 * (A + A.T))


def verify_thmB(n_values=(4, 5, 6), p_values=(2, 3, 4), trials=10, seed=0,
                tol=1e-8):
    """Compare both closed forms against direct assembly on random operators.

    Discrepancies are reported both entrywise (max absolute difference)
    and spectrally (max difference of sorted eigenvalues).
    """
    rng = np.random.default_rng(seed)
    report = ThmBReport(tol=tol, seed=seed)
    for n in n_values:
        for p in p_values:
            if p < 2:
                continue
            ops = [random_operator(n, rng) for _ in range(trials)]
            if 2 <= p <= n - 2:
                worst_abs = worst_spec = 0.0
                space = ml.build_exterior(n, p)
                for R in ops:
                    lhs = wz.curvature_term(R, space).mat
                    rhs = thmB_wedge_rhs(R, p).mat
                    worst_abs = max(worst_abs, float(np.max(np.abs(lhs - rhs))))
                    worst_spec = max(worst_spec, _spectral_distance(lhs, rhs))
                report.rows.append(
                    ThmBRow(n, p, "wedge", trials, worst_abs, worst_spec)
                )
            worst_abs = worst_spec = 0.0
            space = ml.build_traceless(n, p)
            for R in ops:
                lhs = wz.curvature_term(R, space).mat
                rhs = thmB_sym_rhs(R, p).mat
                worst_abs = max(worst_abs, float(np.max(np.abs(lhs - rhs))))
                worst_spec = max(worst_spec, _spectral_distance(lhs, rhs))
            report.rows.append(
                ThmBRow(n, p, "sym0", trials, worst_abs, worst_spec)
            )
    return report
