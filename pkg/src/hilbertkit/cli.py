"""Command-line front end: JSON in, JSON out.

    hilbertkit norms --input a.json
    echo '{"xi": [[1, 0], [0, 0]]}' | hilbertkit teleport
    hilbertkit verify --seed 42

Exit codes: 0 success, 1 invalid input or JSON, 2 numerical non-convergence,
3 verify-suite failure.  Only JSON is written to stdout; diagnostics go to
stderr (suppressed by ``--quiet``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import jsonio, norms, psumming, states, teleport, tensor
from .errors import HilbertKitError
from .verify import DEFAULT_BUDGET, verify_suite

EXIT_OK, EXIT_INPUT, EXIT_NOCONV, EXIT_VERIFY = 0, 1, 2, 3
SEED_ENV = "HILBERTKIT_SEED"


class InputError(HilbertKitError):
    pass


def _require(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"input JSON needs a {key!r} field")
    return doc[key]


def _cmd_kron(doc, args):
    a = jsonio.matrix_from_json(_require(doc, "a"))
    b = jsonio.matrix_from_json(_require(doc, "b"))
    return {"result": jsonio.matrix_to_json(tensor.kron(a, b))}


def _cmd_vec(doc, args):
    m = jsonio.matrix_from_json(_require(doc, "matrix"))
    return {"result": jsonio.matrix_to_json(tensor.vec(m))}


def _cmd_schmidt(doc, args):
    z = jsonio.tensor_from_json(doc)
    s = states.schmidt(z)
    return {
        "coeffs": [float(c) for c in s.coeffs],
        "probabilities": [float(p) for p in s.probabilities()],
        "rank": s.rank,
        "entangled": states.is_entangled(z),
        "left": jsonio.matrix_to_json(s.left),
        "right": jsonio.matrix_to_json(s.right),
    }


def _cmd_norms(doc, args):
    return norms.norm_report(jsonio.matrix_from_json(doc)).to_dict()


def _cmd_duality(doc, args):
    a = jsonio.matrix_from_json(doc)
    value, b = norms.trace_duality_max(a, seed=args.seed)
    return {"value": value, "maximizer": jsonio.matrix_to_json(b)}


def _cmd_teleport(doc, args):
    xi = jsonio.vector_from_json(_require(doc, "xi"))
    w = teleport.teleport_state(xi)
    names = ["T1", "T2", "T3", "T4"]
    branches = [
        {
            "branch": o.branch,
            "correction": names[o.branch - 1],
            "probability": o.probability,
            "post_state": jsonio.vector_to_json(o.post_state),
            "corrected": jsonio.vector_to_json(o.corrected),
            "residual": float(np.linalg.norm(o.corrected - xi)),
        }
        for o in teleport.teleport(xi)
    ]
    return {
        "w": jsonio.vector_to_json(w),
        "branches": branches,
        "equation_residual": teleport.teleportation_equation_residual(xi),
    }


def _cmd_gleason(doc, args):
    dim = _require(doc, "dim")
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise InputError("dim must be an integer")
    samples = _require(doc, "samples")
    if not isinstance(samples, list):
        raise InputError("samples must be a list")
    table = states.TableMeasure(
        [(jsonio.matrix_from_json(_require(s, "projection")), jsonio._number(_require(s, "value"), "value"))
         for s in samples]
    )
    probes = [p for _, p in states.gleason_probes(dim)] if dim >= 3 else []
    holdout = table.unused(probes)
    d = states.gleason_reconstruct(table, dim, holdout=holdout, tol=1e-8 * args.tol)
    return {
        "density": jsonio.matrix_to_json(d.matrix),
        "spectrum": [float(w) for w in d.spectrum],
        "holdout_count": len(holdout),
        "holdout_residual": states.max_holdout_residual(d, table, holdout) if holdout else 0.0,
    }


def _cmd_psum(doc, args):
    t = jsonio.matrix_from_json(_require(doc, "matrix"))
    p = doc.get("p", 2)
    budget = doc.get("budget", args.budget)
    seed = doc.get("seed", args.seed)
    for name, v in (("budget", budget), ("seed", seed)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"{name} must be an integer")
    if p == 2:
        est = psumming.pi2_certify(t)
    elif p == 1:
        if budget < 1:
            raise InputError("budget must be >= 1")
        est = psumming.pi1_lower_bound(t, budget, seed)
    else:
        psumming._check_p(p)
    return est.to_dict()


COMMANDS = {
    "kron": _cmd_kron,
    "vec": _cmd_vec,
    "schmidt": _cmd_schmidt,
    "norms": _cmd_norms,
    "duality": _cmd_duality,
    "teleport": _cmd_teleport,
    "gleason": _cmd_gleason,
    "psum": _cmd_psum,
}


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        return 42


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbertkit", description="Finite-dimensional Hilbert-space toolkit.")
    parser.add_argument("command", choices=sorted(list(COMMANDS) + ["verify"]))
    parser.add_argument("--input", default="-", help="JSON input file (default: stdin)")
    parser.add_argument("--seed", type=int, default=_default_seed(),
                        help=f"random seed (default 42, or ${SEED_ENV})")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search budget for pi_1")
    parser.add_argument("--tol", type=float, default=1.0, metavar="FACTOR",
                        help="scale every default tolerance by FACTOR")
    parser.add_argument("--quiet", action="store_true", help="no diagnostics on stderr")
    return parser


def _read_input(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return json.loads(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT

    def say(msg: str) -> None:
        if not args.quiet:
            print(msg, file=sys.stderr)

    if not (args.tol > 0 and np.isfinite(args.tol)):
        say("error: --tol must be a positive finite factor")
        return EXIT_INPUT

    if args.command == "verify":
        report = verify_suite(args.seed, args.tol, args.budget)
        print(jsonio.dumps(report))
        failed = report["summary"]["failed"]
        if failed:
            say(f"verify: {failed} of {report['summary']['total']} cases failed")
            return EXIT_VERIFY
        return EXIT_OK

    try:
        doc = _read_input(args.input)
        out = COMMANDS[args.command](doc, args)
    except ArithmeticError as exc:  # NoConvergence and failed numerical self-checks
        say(f"error: numerical failure: {exc}")
        return EXIT_NOCONV
    except (OSError, ValueError, TypeError, KeyError) as exc:
        # JSONDecodeError and every HilbertKitError are ValueErrors
        say(f"error: {exc}")
        return EXIT_INPUT
    print(jsonio.dumps(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
