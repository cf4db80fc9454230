"""Littlewood-Richardson numbers and stable branching multiplicities.

Coefficients are counted by direct enumeration of skew semistandard
tableaux whose reverse reading word is a lattice word; everything is
exact integer arithmetic.  The restriction multiplicity of an orthogonal
irreducible labelled by a partition inside a general-linear irreducible
is the classical sum of LR numbers over partitions with all parts even.

The two verification routines below expand the symmetric square of a
traceless symmetric power (resp. of an exterior power) as a virtual sum
of general-linear characters and count the net occurrences of the four
orthogonal labels behind the curvature-operator decomposition:

* the trivial label () for the scalar part,
* (2) for the traceless-Ricci part,
* (2, 2) for the Weyl-type part,
* (1, 1, 1, 1) for the four-form part.

Expected tables: (1, 1, 1, 0) in the traceless symmetric case for every
p >= 2, and (1, 1, 1, 1) in the exterior case.  The counts are those of
the stable range; each table records the hypotheses (n >= 4 and, in the
exterior case, 2 <= p <= n-2) under which they apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class Partition:
    """Weakly decreasing tuple of positive integers (trailing zeros dropped)."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(x) for x in parts if x != 0)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not weakly decreasing: {parts}")
        if any(x < 0 for x in parts):
            raise ValueError(f"negative part: {parts}")
        self.parts = parts

    @property
    def size(self):
        return sum(self.parts)

    @property
    def length(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i] if i < len(self.parts) else 0

    def __eq__(self, other):
        other = other.parts if isinstance(other, Partition) else tuple(other)
        return self.parts == other

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    def contains(self, other):
        """Containment of Young diagrams."""
        return all(self[i] >= other[i] for i in range(other.length))

    def conjugate(self):
        if not self.parts:
            return Partition()
        out = []
        for c in range(self.parts[0]):
            out.append(sum(1 for p in self.parts if p > c))
        return Partition(out)

    def is_even(self):
        return all(p % 2 == 0 for p in self.parts)

    def hook_lengths(self):
        conj = self.conjugate()
        return [
            [self[r] - c + conj[c] - r - 1 for c in range(self[r])]
            for r in range(self.length)
        ]

    def gl_dimension(self, n):
        """Dimension of the general-linear irreducible, hook-content formula."""
        if self.length > n:
            return 0
        num = Fraction(1)
        for r in range(self.length):
            for c in range(self[r]):
                hook = self[r] - c + self.conjugate()[c] - r - 1
                num *= Fraction(n + c - r, hook)
        if num.denominator != 1:
            raise RuntimeError("hook-content product is not an integer")
        return int(num)


def _as_partition(x):
    return x if isinstance(x, Partition) else Partition(x)


@lru_cache(maxsize=None)
def _lr_cached(lam, mu, nu):
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size + mu.size != nu.size:
        return 0
    if not nu.contains(lam):
        return 0
    if mu.size == 0:
        return 1
    nrows = nu.length
    # cells of the skew shape in reverse reading order: rows top to bottom,
    # each row right to left -- the order in which the lattice condition
    # can be enforced incrementally.
    cells = []
    for r in range(nrows):
        lo, hi = lam[r], nu[r]
        for c in range(hi - 1, lo - 1, -1):
            cells.append((r, c))
    k = mu.length
    counts = [0] * (k + 1)
    fill = {}
    total = 0

    def rec(pos):
        nonlocal total
        if pos == len(cells):
            total += 1
            return
        r, c = cells[pos]
        right = fill.get((r, c + 1))
        above = fill.get((r - 1, c))
        lo_v = 1 if above is None else above + 1
        hi_v = k if right is None else right
        for v in range(lo_v, hi_v + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue
            counts[v] += 1
            fill[(r, c)] = v
            rec(pos + 1)
            del fill[(r, c)]
            counts[v] -= 1

    rec(0)
    return total


def lr_coefficient(lam, mu, nu):
    """Number of LR skew tableaux of shape nu/lam and content mu."""
    lam, mu, nu = _as_partition(lam), _as_partition(mu), _as_partition(nu)
    return _lr_cached(lam.parts, mu.parts, nu.parts)


def partitions_of(m, max_part=None):
    """All partitions of m (as tuples), largest part first."""
    if max_part is None:
        max_part = m
    if m == 0:
        return [()]
    out = []
    for first in range(min(m, max_part), 0, -1):
        for rest in partitions_of(m - first, first):
            out.append((first,) + rest)
    return out


def even_partitions_of(m):
    """Partitions of m with every part even."""
    if m % 2:
        return []
    return [tuple(2 * x for x in q) for q in partitions_of(m // 2)]


@lru_cache(maxsize=None)
def restriction_multiplicity(nu, lbar):
    """Stable multiplicity of the orthogonal label lbar inside S_nu.

    Classical branching: sum over partitions delta with all even parts of
    the LR number for nu over (delta, lbar).
    """
    nu_p, lb = Partition(nu), Partition(lbar)
    m = nu_p.size - lb.size
    if m < 0:
        return 0
    tot = 0
    for delta in even_partitions_of(m):
        tot += lr_coefficient(delta, lb, nu_p)
    return tot


TARGETS = {
    "U": (),
    "L": (2,),
    "W": (2, 2),
    "W4": (1, 1, 1, 1),
}


def sym_square_sym_contents(p):
    """GL contents of Sym^2(Sym^p): partitions (p+a, p-a), p+a even."""
    return [(p + a, p - a) for a in range(p + 1) if (p + a) % 2 == 0]


def tensor_sym_contents(p, q):
    """GL contents of Sym^p (x) Sym^q for p >= q (Pieri): (p+a, q-a)."""
    return [(p + a, q - a) for a in range(q + 1)]


def sym_square_wedge_contents(p):
    """GL contents of Sym^2(wedge^p): two-column shapes, even second column."""
    return [
        tuple([2] * (p - a) + [1] * (2 * a)) for a in range(0, p + 1, 2)
    ]


@dataclass
class LemmaTable:
    kind: str
    p: int
    counts: dict
    expected: dict
    hypotheses: str
    terms: list = field(default_factory=list)

    @property
    def passed(self):
        return self.counts == self.expected

    def to_dict(self):
        return {
            "kind": self.kind,
            "p": self.p,
            "counts": dict(self.counts),
            "expected": dict(self.expected),
            "passed": bool(self.passed),
            "hypotheses": self.hypotheses,
        }


def _net_counts(signed_contents):
    counts = {name: 0 for name in TARGETS}
    for name, lbar in TARGETS.items():
        net = 0
        for sign, contents in signed_contents:
            for nu in contents:
                net += sign * restriction_multiplicity(
                    Partition(nu).parts, lbar
                )
        if net < 0:
            raise RuntimeError(
                f"negative net multiplicity {net} for target {name}: "
                "virtual-sum bookkeeping is inconsistent"
            )
        counts[name] = net
    return counts


def verify_lemma_sym(p):
    """Net occurrences of the four labels in Sym^2 of the traceless power.

    Uses the virtual expansion
    Sym^2(Harm^p) = Sym^2(Sym^p) - Sym^2(Sym^{p-2}) - Sym^p (x) Sym^{p-2}
                    + Sym^{p-2} (x) Sym^{p-2}
    and expects exactly one occurrence each of (), (2), (2,2) and none of
    (1,1,1,1), for every p >= 2 in the stable range.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    signed = [
        (+1, sym_square_sym_contents(p)),
        (-1, sym_square_sym_contents(p - 2)),
        (-1, tensor_sym_contents(p, p - 2)),
        (+1, tensor_sym_contents(p - 2, p - 2)),
    ]
    counts = _net_counts(signed)
    return LemmaTable(
        kind="sym",
        p=p,
        counts=counts,
        expected={"U": 1, "L": 1, "W": 1, "W4": 0},
        hypotheses="stable range; counts apply for n >= 4",
        terms=signed,
    )


def verify_lemma_wedge(p):
    """Net occurrences of the four labels in Sym^2 of the exterior power.

    Expects exactly one occurrence of each label, for 2 <= p <= n-2 in
    the stable range.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    signed = [(+1, sym_square_wedge_contents(p))]
    counts = _net_counts(signed)
    return LemmaTable(
        kind="wedge",
        p=p,
        counts=counts,
        expected={"U": 1, "L": 1, "W": 1, "W4": 1},
        hypotheses="stable range; counts apply for n >= 4 and 2 <= p <= n-2",
        terms=signed,
    )
