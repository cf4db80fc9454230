"""Command-line surface: decompose, kterm, verify, certify.

Operator JSON schema (input and output):

    {"n": <int>, "basis": "lex-pairs", "matrix": [[... N x N ...]],
     "convention": "sec(X∧Y)=R(X∧Y,X∧Y)"}

with N = n(n-1)/2 and rows/columns indexed by the lexicographically
ordered pairs (i < j).  The ``basis`` and ``convention`` strings are
mandatory and validated so that inputs written under a different
convention fail loudly instead of silently producing wrong numbers.

Inputs are a file path, ``-`` for stdin, or a named fixture keyword
(``identity``, ``hodge-star``, ``s2xs2``, ``scal-part`` / ``RU``,
``traceless-ricci`` / ``RL``, ``weyl-type`` / ``RW``, ``four-form`` /
``RW4``), with ``--n`` fixing the dimension for fixtures.

Exit codes: 0 success, 1 verification failure (a verify suite with a
residual beyond tolerance, or a certify query that does not certify the
requested bound), 2 input error.
Numbers serialize through Python's shortest round-trip decimal repr, so
every emitted matrix re-ingests to bit-identical doubles.  Output is
accumulated fully and written once (atomically when ``--out`` is used).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import knalgebra as kn
from . import multilinear as ml
from . import weitzenbock as wz
from .certify import DEFAULT_SEED, certify_bound
from .closedform import random_operator, verify_thmB
from .curvature import CurvatureOperator, decompose
from .fixtures import ALIASES, FIXTURES, fixture_operator
from .littlewood import verify_lemma_sym, verify_lemma_wedge
from .spherical import c_constant, verify_integral_formula

BASIS_TAG = "lex-pairs"
CONVENTION_TAG = "sec(X∧Y)=R(X∧Y,X∧Y)"
ASYMMETRY_WARN = 1e-6
# Largest representation dimension kterm will materialize: the dense
# output matrix alone is dim^2 doubles, so refuse early and point the
# caller at the library API instead of exhausting memory.
MAX_KTERM_DIM = 10_000


class InputError(Exception):
    """Malformed operator input; message points at the offending field."""


def operator_to_json(R):
    return {
        "n": R.n,
        "basis": BASIS_TAG,
        "matrix": [[float(v) for v in row] for row in R.mat],
        "convention": CONVENTION_TAG,
    }


def operator_from_json(doc):
    if not isinstance(doc, dict):
        raise InputError("top level: expected a JSON object")
    for key in ("n", "basis", "matrix", "convention"):
        if key not in doc:
            raise InputError(f"field '{key}': missing (mandatory)")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise InputError(f"field 'n': expected an integer >= 3, got {n!r}")
    if doc["basis"] != BASIS_TAG:
        raise InputError(
            f"field 'basis': expected {BASIS_TAG!r}, got {doc['basis']!r}"
        )
    if doc["convention"] != CONVENTION_TAG:
        raise InputError(
            f"field 'convention': expected {CONVENTION_TAG!r}, "
            f"got {doc['convention']!r}"
        )
    N = n * (n - 1) // 2
    matrix = doc["matrix"]
    if not isinstance(matrix, list) or len(matrix) != N:
        got = len(matrix) if isinstance(matrix, list) else type(matrix).__name__
        raise InputError(f"field 'matrix': expected {N} rows for n={n}, got {got}")
    rows = []
    for r, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != N:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise InputError(
                f"field 'matrix[{r}]': expected {N} entries, got {got}"
            )
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError(
                    f"field 'matrix[{r}][{c}]': expected a number, got {v!r}"
                )
        rows.append([float(v) for v in row])
    return CurvatureOperator(n, np.array(rows))


def load_operator(source, n):
    """Resolve a CLI operator argument: fixture keyword, '-', or path."""
    if source in FIXTURES or source in ALIASES:
        return fixture_operator(source, n)
    if source == "-":
        text = sys.stdin.read()
    else:
        if not os.path.exists(source):
            raise InputError(
                f"input '{source}': not a file and not a fixture keyword "
                f"({', '.join(sorted(FIXTURES) + sorted(ALIASES))})"
            )
        with open(source) as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input: invalid JSON ({exc})") from None
    return operator_from_json(doc)


def emit(doc, out_path):
    text = json.dumps(doc, indent=2)
    if out_path is None:
        sys.stdout.write(text + "\n")
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text + "\n")
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _maybe_warn_asymmetry(doc, R):
    if R.asymmetry > ASYMMETRY_WARN:
        doc["warning"] = (
            f"input matrix asymmetry {R.asymmetry:.3e} exceeds "
            f"{ASYMMETRY_WARN}; symmetrized before use"
        )


# ---------------------------------------------------------------------------
# subcommands


def cmd_decompose(args):
    R = load_operator(args.input, args.n)
    dec = decompose(R)
    doc = {
        "n": R.n,
        "scal": dec.scal,
        "ricci": [[float(v) for v in row] for row in dec.ric],
        "parts": {},
        "reconstruction_residual": dec.reconstruction_residual,
        "orthogonality_residual": dec.orthogonality_residual,
    }
    for name in ("U", "L", "W", "W4"):
        doc["parts"][name] = operator_to_json(dec.operator(name))
        doc["parts"][name + "_norm"] = float(np.linalg.norm(dec.part(name)))
    if dec.degraded_n3:
        doc["note"] = (
            "n = 3: the conformal and four-form parts vanish identically"
        )
    _maybe_warn_asymmetry(doc, R)
    emit(doc, args.out)
    return 0


def _build_dimension(rep, n, p):
    """Largest basis the requested build materializes, without building it.

    The traceless space is carved out of the full symmetric power, so its
    build cost is governed by the ambient symmetric dimension, not by the
    (smaller) harmonic dimension.
    """
    if rep == "wedge":
        return math.comb(n, p)
    return math.comb(n + p - 1, p)


def cmd_kterm(args):
    R = load_operator(args.input, args.n)
    builders = {
        "wedge": ml.build_exterior,
        "sym": ml.build_symmetric,
        "sym0": ml.build_traceless,
    }
    dim = _build_dimension(args.rep, R.n, args.p)
    if dim > MAX_KTERM_DIM:
        raise InputError(
            f"space of dimension {dim} exceeds the CLI limit "
            f"{MAX_KTERM_DIM} (n={R.n}, rep={args.rep}, p={args.p}); "
            f"use the library API for spaces this large"
        )
    space = builders[args.rep](R.n, args.p)
    K = wz.curvature_term(R, space)
    spectrum = np.sort(np.linalg.eigvalsh(K.mat))
    doc = {
        "n": R.n,
        "rep": args.rep,
        "p": args.p,
        "dim": space.dim,
        "matrix": [[float(v) for v in row] for row in K.mat],
        "spectrum": [float(v) for v in spectrum],
        "lambda_min": float(spectrum[0]),
    }
    if args.rep == "sym":
        bs = wz.block_structure(R, args.p)
        doc["blocks"] = {
            "degrees": bs.degrees,
            "dims": bs.block_dims,
            "offdiag_max": bs.offdiag_max,
            "spectra": {str(d): [float(v) for v in bs.spectra[d]]
                        for d in bs.degrees},
        }
    _maybe_warn_asymmetry(doc, R)
    emit(doc, args.out)
    return 0


def cmd_verify(args):
    doc = {"suite": args.suite, "seed": args.seed}
    ok = True
    if args.suite == "thmB":
        report = verify_thmB(
            n_values=(args.n,), p_values=tuple(range(2, args.pmax + 1)),
            trials=args.trials, seed=args.seed,
        )
        ok = report.passed
        doc.update(report.to_dict())
    elif args.suite == "integral":
        rng = np.random.default_rng(args.seed)
        rows = []
        worst = 0.0
        for p in range(2, args.pmax + 1):
            R = random_operator(args.n, rng)
            rep = verify_integral_formula(
                R, p, trials=args.trials, seed=args.seed + p,
            )
            worst = max(worst, rep.worst)
            ok = ok and rep.passed
            rows.append({"p": p, "worst_rel": rep.worst, "passed": rep.passed,
                         "c_constant": c_constant(args.n, p)})
        doc.update({"n": args.n, "rows": rows, "worst_rel": worst,
                    "tol": 1e-7, "passed": ok})
    elif args.suite == "lemmas":
        rows = []
        for p in range(2, args.pmax + 1):
            ts = verify_lemma_sym(p)
            tw = verify_lemma_wedge(p)
            ok = ok and ts.passed and tw.passed
            rows.append({"p": p, "sym": ts.to_dict(), "wedge": tw.to_dict()})
        doc.update({"rows": rows, "passed": ok})
    elif args.suite == "gpowers":
        rows = []
        worst = 0.0
        for algebra in ("wedge", "sym", "sym0"):
            for p in range(2, min(args.pmax, 4) + 1):
                it = kn.iterated_g_power(algebra, args.n, p)
                expect = kn.g_power(algebra, args.n, p)
                res = float(np.abs(it.mat - expect.mat).max())
                worst = max(worst, res)
                ok = ok and res <= 1e-10
                rows.append({"algebra": algebra, "p": p, "residual": res})
        doc.update({"n": args.n, "rows": rows, "worst": worst,
                    "tol": 1e-10, "passed": ok})
    doc["passed"] = ok
    emit(doc, args.out)
    return 0 if ok else 1


def cmd_certify(args):
    R = load_operator(args.input, args.n)
    cert = certify_bound(
        R, args.k, direction=args.direction, strict=args.strict,
        p_max=args.pmax, seed=args.seed,
    )
    doc = cert.to_dict()
    _maybe_warn_asymmetry(doc, R)
    emit(doc, args.out)
    return 0 if cert.verdict == "certified" else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvelab",
        description=(
            "Curvature-operator toolkit: irreducible decomposition, "
            "curvature terms on tensor representations, identity "
            "verification suites, and sectional-curvature bound "
            "certification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        if with_input:
            p.add_argument(
                "input",
                help="operator JSON path, '-' for stdin, or fixture keyword",
            )
        p.add_argument("--n", type=int, default=4,
                       help="dimension for fixture inputs (default 4)")
        p.add_argument("--out", default=None,
                       help="write JSON here (atomic) instead of stdout")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="seed for any randomized step")

    p_dec = sub.add_parser("decompose",
                           help="split an operator into its four parts")
    add_common(p_dec)
    p_dec.set_defaults(func=cmd_decompose)

    p_kt = sub.add_parser("kterm",
                          help="curvature term on a representation")
    add_common(p_kt)
    p_kt.add_argument("--rep", choices=("wedge", "sym", "sym0"),
                      required=True, help="representation family")
    p_kt.add_argument("--p", type=int, required=True, help="degree")
    p_kt.set_defaults(func=cmd_kterm)

    p_ver = sub.add_parser("verify", help="run an identity suite")
    add_common(p_ver, with_input=False)
    p_ver.add_argument("--suite", required=True,
                       choices=("thmB", "integral", "lemmas", "gpowers"))
    p_ver.add_argument("--pmax", type=int, default=4,
                       help="largest degree exercised (default 4)")
    p_ver.add_argument("--trials", type=int, default=10,
                       help="random trials per case (default 10)")
    p_ver.set_defaults(func=cmd_verify)

    p_cert = sub.add_parser("certify",
                            help="decide a sectional-curvature bound")
    add_common(p_cert)
    p_cert.add_argument("--k", type=float, required=True,
                        help="the bound to certify")
    p_cert.add_argument("--direction", choices=("ge", "le"), default="ge",
                        help="bound direction (default: sec >= k)")
    p_cert.add_argument("--strict", action="store_true",
                        help="require strict inequality")
    p_cert.add_argument("--pmax", type=int, default=6,
                        help="hierarchy depth for n != 4 (default 6)")
    p_cert.set_defaults(func=cmd_certify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
