"""Command-line front end.

Exit codes: 0 success / certificate passed, 1 certificate failed,
2 usage or malformed input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .documents import chain_document, dumps, load_chain_document, trace_csv
from .dual_hahn import ChainParameters, as_number, bi_grid, closed_form_weights, positivity_check, recurrence_coefficients
from .errors import DomainError, HahnPSTError, InvalidDesignError
from .orthopoly import christoffel_transform, stieltjes_reconstruct
from .pst import DesignRequest, certify_pst, design_chain, fidelity_trace, verify_christoffel_link
from .spinchain import (
    DEFLATION_TOL,
    MAX_SWEEPS,
    build_jacobi,
    eigensystem,
    first_component_weights,
    is_mirror_symmetric,
    spectral_weights,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_TIME_RE = re.compile(r"^\s*(?:(\d+(?:\.\d*)?)\s*\*?\s*)?pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


class IOFailure(Exception):
    pass


def rational_arg(text: str) -> Fraction:
    try:
        value = as_number(text)
    except (DomainError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not isinstance(value, Fraction):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational")
    return value


def time_arg(text: str) -> float:
    """Parse a time such as ``0.25``, ``pi/6`` or ``3*pi/4``."""
    m = _TIME_RE.match(text)
    if m:
        num, den = m.groups()
        return (float(num) if num else 1.0) * math.pi / (float(den) if den else 1.0)
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse time {text!r}") from None


def int_list_arg(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers separated by commas, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hahnpst",
        description="XX spin chains with perfect state transfer from dual -1 Hahn data.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--deflation-tol", type=float, default=DEFLATION_TOL,
                        help="eigensolver deflation tolerance relative to ||J||_inf (default %(default)g)")
    parser.add_argument("--max-sweeps", type=int, default=MAX_SWEEPS,
                        help="eigensolver iteration cap per eigenvalue (default %(default)d)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="build a PST chain from (parity, N, M1, M2)")
    p.add_argument("--parity", choices=("odd", "even"), required=True)
    p.add_argument("--N", type=int_list_arg, required=True,
                   help="chain length parameter; a comma list sweeps several N")
    p.add_argument("--M1", type=int, required=True)
    p.add_argument("--M2", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for a sweep")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("certify", help="certify PST for a chain file or (N, alpha, beta)")
    p.add_argument("chain", nargs="?", type=Path)
    p.add_argument("--N", type=int)
    p.add_argument("--alpha", type=rational_arg)
    p.add_argument("--beta", type=rational_arg)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("evolve", help="write the transfer amplitude trace as CSV")
    p.add_argument("chain", type=Path)
    p.add_argument("--t-max", type=time_arg, required=True, help="e.g. 2.5, pi/6, 3*pi/4")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("transform", help="Christoffel transform: remove an extreme level")
    p.add_argument("chain", type=Path)
    p.add_argument("--remove", choices=("top", "bottom"), default="top")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("reconstruct", help="rebuild b, u from the spectrum and spectral weights")
    p.add_argument("chain", type=Path)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("weights", help="compare closed-form, 1/|P'| and first-component weights")
    p.add_argument("chain", type=Path)
    p.add_argument("--tol", type=float, default=1e-12, help="mirror-symmetry tolerance")
    p.add_argument("--out", type=Path)
    return parser


def parse_invocation(argv=None) -> argparse.Namespace:
    """Parse ``argv``; malformed input exits with status 2."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "design":
        if args.jobs < 1:
            parser.error("--jobs must be positive")
        for N in args.N:
            try:
                DesignRequest(args.parity, N, args.M1, args.M2).validate()
            except InvalidDesignError as exc:
                parser.error(str(exc))
    elif args.command == "certify":
        explicit = (args.N, args.alpha, args.beta)
        if args.chain is None and None in explicit:
            parser.error("certify needs a chain file or all of --N, --alpha, --beta")
        if args.chain is not None and any(v is not None for v in explicit):
            parser.error("give either a chain file or --N/--alpha/--beta, not both")
    elif args.command == "evolve":
        if args.samples < 2:
            parser.error("--samples must be at least 2")
        if not args.t_max > 0:
            parser.error("--t-max must be positive")
    return args


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_chain(path: Path):
    try:
        return load_chain_document(_read_json(path))
    except HahnPSTError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _design_one(job):
    parity, N, M1, M2 = job
    p, cert = design_chain(DesignRequest(parity, N, M1, M2))
    return chain_document(recurrence_coefficients(p), p, cert)


def cmd_design(args):
    jobs = [(args.parity, N, args.M1, args.M2) for N in args.N]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            docs = list(pool.map(_design_one, jobs))
    else:
        docs = [_design_one(job) for job in jobs]
    return EXIT_OK, dumps(docs[0] if len(docs) == 1 else docs)


def cmd_certify(args):
    if args.chain is not None:
        _, p, _ = _load_chain(args.chain)
        if p is None:
            raise UsageError("chain file carries no (alpha, beta); certification needs them")
    else:
        p = ChainParameters(args.N, args.alpha, args.beta)
    if not p.exact:
        raise UsageError("certification needs rational alpha and beta")
    report = positivity_check(p)
    if not report:
        raise UsageError(f"positivity violated: need {report.violated}")
    cert = certify_pst(p, args.deflation_tol)
    doc = chain_document(recurrence_coefficients(p), p, cert)["certificate"]
    return (EXIT_OK if cert.passed else EXIT_FAIL), dumps(doc)


def cmd_evolve(args):
    _, _, chain = _load_chain(args.chain)
    dec = eigensystem(chain, args.deflation_tol, args.max_sweeps)
    return EXIT_OK, trace_csv(fidelity_trace(chain, args.t_max, args.samples, dec))


def cmd_transform(args):
    r, p, _ = _load_chain(args.chain)
    if p is not None and p.exact:
        spectrum = list(bi_grid(p).ascending)
    else:
        spectrum = eigensystem(build_jacobi(r), args.deflation_tol, args.max_sweeps).values.tolist()
    data = christoffel_transform(r, spectrum, remove=args.remove)
    extra = {"removedLevel": data.removed_level, "K": list(data.K)}
    if (args.remove == "top" and p is not None and p.odd and p.alpha == p.beta and p.N >= 3):
        link = verify_christoffel_link(p.N, p.alpha)
        extra["link"] = {
            "evenAlpha": link.even.alpha,
            "diagonalShift": link.shift,
            "residual": link.residual,
            "spectrumResidual": link.spectrum_residual,
        }
    return EXIT_OK, dumps(chain_document(data.transformed, **extra))


def cmd_reconstruct(args):
    r, _, chain = _load_chain(args.chain)
    dec = eigensystem(chain, args.deflation_tol, args.max_sweeps)
    w = spectral_weights(chain, dec)
    rec = stieltjes_reconstruct(dec.values.tolist(), w.tolist())
    b0 = np.array([float(v) for v in r.b])
    u0 = np.array([float(v) for v in r.u[1:-1]])
    b1, u1 = np.array(rec.b), np.array(rec.u[1:-1])
    scale_b = max(1.0, float(np.max(np.abs(b0))))
    doc = {
        "N": rec.N,
        "b": b1.tolist(),
        "u": u1.tolist(),
        "maxRelDeviationB": float(np.max(np.abs(b1 - b0))) / scale_b,
        "maxRelDeviationU": float(np.max(np.abs(u1 - u0) / u0)) if u0.size else 0.0,
    }
    return EXIT_OK, dumps(doc)


def cmd_weights(args):
    r, p, chain = _load_chain(args.chain)
    dec = eigensystem(chain, args.deflation_tol, args.max_sweeps)
    doc = {
        "spectrum": dec.values.tolist(),
        "characteristic": spectral_weights(chain, dec).tolist(),
        "firstComponent": first_component_weights(dec).tolist(),
        "mirror": is_mirror_symmetric(chain, args.tol),
    }
    if p is not None and positivity_check(p):
        table = closed_form_weights(p)
        grid = bi_grid(p)
        w = np.array([float(v) for v in grid.to_ascending(table.w)])
        doc["closedForm"] = (w / w.sum()).tolist()
        doc["kappa0"] = table.kappa0
    return EXIT_OK, dumps(doc)


COMMANDS = {
    "design": cmd_design,
    "certify": cmd_certify,
    "evolve": cmd_evolve,
    "transform": cmd_transform,
    "reconstruct": cmd_reconstruct,
    "weights": cmd_weights,
}


def render_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {out}: {exc}") from exc


def main(argv=None) -> int:
    args = parse_invocation(argv)
    try:
        code, text = COMMANDS[args.command](args)
        render_output(text, args.out)
    except IOFailure as exc:
        print(f"hahnpst: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, HahnPSTError) as exc:
        print(f"hahnpst {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
