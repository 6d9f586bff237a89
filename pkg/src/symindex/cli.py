"""Command line front end.

Subcommands mirror the library layers: ``index`` and ``iterate`` compute
path and model indices, ``recur`` scans for and verifies recurrence
certificates, ``collapse`` runs the filtered-complex normal form,
``shdim`` prints closed-form homology dimension tables, and ``mult``
exposes the multiplicity bounds, the ellipsoid family and the witness
counts.

Reports go to stdout (or ``--output``) as JSON or as an indented text
table (``--format``); both formats carry the same numbers, with reals
capped at 15 significant digits so repeated runs are byte-identical.
Every report embeds a manifest with the argument vector, the input hash,
the tolerance, the seed and the package version.  Exit codes: 0 success,
1 bad input, 2 search exhausted, 3 verification failure, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .errors import (
    DegeneracyError,
    InputError,
    NumericalError,
    SearchExhaustedError,
    SymindexError,
    UnwrapError,
    VerificationError,
)
from .homalg import FilteredComplex, collapse, homology, pages
from .mult import (
    ContactSetting,
    Ellipsoid,
    chat_limit_check,
    ellipsoid_capacity,
    ellipsoid_orbit_models,
    ellipsoid_spectral_invariants,
    lower_bound,
    mult_witness,
    resonance_check,
    verify_carrier_indices,
)
from .orbitmodel import OrbitModel
from .orbitmodel import cz_index as model_cz_index
from .orbitmodel import mean_index as model_mean_index
from .orbitmodel import mu_pm as model_mu_pm
from .orbitmodel import nullity as model_nullity
from .pathindex import (
    GeneratedPath,
    SampledPath,
    cz_index,
    integrate,
    iterate,
    mean_index,
    mu_pm,
    nullity,
    rs_index,
)
from .recurrence import (
    RecurrenceCertificate,
    find_recurrence,
    jump_intervals,
    verify_certificate,
)
from .shdim import sphere_sh_dims, stsn_sh_dims_cases, stsn_sh_dims_morsebott
from .symlin import DEFAULT_TOL


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors, not the exhausted-search exit code
    # that argparse's default SystemExit(2) would collide with
    def error(self, message):
        raise InputError(f"{message}\n{self.format_usage()}".rstrip())


def _canon(node):
    """Copy with every value reduced to a JSON scalar, reals at 15 digits."""
    if isinstance(node, dict):
        return {str(k): _canon(v) for k, v in node.items()}
    if isinstance(node, (list, tuple)):
        return [_canon(v) for v in node]
    if isinstance(node, Fraction):
        return str(node)
    if isinstance(node, np.ndarray):
        return _canon(node.tolist())
    if isinstance(node, np.integer):
        return int(node)
    if isinstance(node, (bool, int, str)) or node is None:
        return node
    if isinstance(node, (float, np.floating)):
        return float(f"{float(node):.15g}")
    raise TypeError(f"cannot serialize {type(node).__name__}")


def _fmt_scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def _render_text(doc: dict) -> str:
    lines: list[str] = []

    def walk(node, pad: str, label: str) -> None:
        if isinstance(node, dict):
            lines.append(f"{pad}{label}:")
            for k in sorted(node):
                walk(node[k], pad + "  ", k)
        elif isinstance(node, list):
            if all(not isinstance(v, (dict, list)) for v in node):
                body = ", ".join(_fmt_scalar(v) for v in node)
                lines.append(f"{pad}{label}: [{body}]")
            else:
                lines.append(f"{pad}{label}:")
                for i, v in enumerate(node):
                    walk(v, pad + "  ", f"[{i}]")
        else:
            lines.append(f"{pad}{label}: {_fmt_scalar(node)}")

    for k in sorted(doc):
        walk(doc[k], "", k)
    return "\n".join(lines) + "\n"


def _emit(doc: dict, args) -> None:
    doc = _canon(doc)
    if args.format == "text":
        text = _render_text(doc)
    else:
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(spec: str):
    try:
        raw = sys.stdin.buffer.read() if spec == "-" else Path(spec).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc}") from exc
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec} is not valid JSON: {exc}") from exc
    return payload, hashlib.sha256(raw).hexdigest()


def _resolve_tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        tol = args.tol
    else:
        env = os.environ.get("SYMINDEX_TOL")
        if env:
            try:
                tol = float(env)
            except ValueError as exc:
                raise InputError(f"SYMINDEX_TOL={env!r} is not a number") from exc
        else:
            tol = DEFAULT_TOL
    if not 0.0 < tol < 1.0:
        raise InputError(f"tolerance {tol} must lie in (0, 1)")
    return tol


def _manifest(args, argv, digest, tol) -> dict:
    return {
        "argv": list(argv),
        "input_sha256": digest,
        "tol": tol,
        "seed": args.seed,
        "version": __version__,
        "backend": _kernels.backend(),
    }


def _load_models(payload) -> list[OrbitModel]:
    if isinstance(payload, dict):
        if "models" in payload:
            payload = payload["models"]
        else:
            payload = [payload]
    if not isinstance(payload, list) or not payload:
        raise InputError('expected {"models": [...]}, a nonempty list, '
                         "or a single model object")
    return [OrbitModel.from_payload(p) for p in payload]


def _exact(x) -> str | None:
    return str(x) if isinstance(x, Fraction) else None


def _model_indices(model: OrbitModel, k: int, notes: list[str]) -> dict:
    mean = model_mean_index(model, k)
    lo, hi = model_mu_pm(model, k)
    try:
        cz = model_cz_index(model, k)
    except DegeneracyError as exc:
        cz = None
        notes.append(str(exc))
    return {
        "kind": "model",
        "half_dim": model.half_dim,
        "mean_index": float(mean),
        "mean_index_exact": _exact(mean),
        "nullity": model_nullity(model, k),
        "cz_index": cz,
        "mu_minus": lo,
        "mu_plus": hi,
    }


def _path_steps(args, payload) -> int | None:
    if args.steps is not None:
        return args.steps
    hint = payload.get("steps")
    if hint is None:
        return None
    try:
        return int(hint)
    except (TypeError, ValueError) as exc:
        raise InputError(f"steps hint {hint!r} is not an integer") from exc


def _cmd_index(args, argv) -> int:
    tol = _resolve_tol(args)
    payload, digest = _read_json(args.input)
    if not isinstance(payload, dict):
        raise InputError("expected a path or model payload object")
    notes: list[str] = []
    if "generator" in payload:
        gen = GeneratedPath.from_payload(payload)
        sp = integrate(gen, steps=_path_steps(args, payload), tol=tol)
        null = nullity(sp, tol)
        try:
            rs = rs_index(gen, tol, _path=sp)
        except (DegeneracyError, NumericalError, UnwrapError) as exc:
            rs = None
            notes.append(f"crossing index unavailable: {exc}")
        if null == 0:
            cz = cz_index(sp, tol)
        else:
            cz = None
            notes.append("endpoint is degenerate; no integer index")
        lo, hi = mu_pm(sp, tol=tol)
        result = {
            "kind": "path",
            "half_dim": gen.half_dim,
            "mean_index": mean_index(sp, tol),
            "nullity": null,
            "rs_index": rs,
            "cz_index": cz,
            "mu_minus": lo,
            "mu_plus": hi,
            "steps": int(sp.times.size - 1),
        }
    elif "samples" in payload:
        sp = SampledPath.from_payload(payload)
        null = nullity(sp, tol)
        if null == 0:
            cz = cz_index(sp, tol)
        else:
            cz = None
            notes.append("endpoint is degenerate; no integer index")
        notes.append("crossing index needs a generator payload")
        lo, hi = mu_pm(sp, tol=tol)
        result = {
            "kind": "path",
            "half_dim": sp.half_dim,
            "mean_index": mean_index(sp, tol),
            "nullity": null,
            "rs_index": None,
            "cz_index": cz,
            "mu_minus": lo,
            "mu_plus": hi,
            "steps": int(sp.times.size - 1),
        }
    else:
        result = _model_indices(OrbitModel.from_payload(payload), 1, notes)
    if notes:
        result["notes"] = notes
    _emit({"manifest": _manifest(args, argv, digest, tol), "result": result}, args)
    return 0


def _cmd_iterate(args, argv) -> int:
    tol = _resolve_tol(args)
    payload, digest = _read_json(args.input)
    if not isinstance(payload, dict):
        raise InputError("expected a path or model payload object")
    k = args.power
    notes: list[str] = []
    if "generator" in payload or "samples" in payload:
        if "generator" in payload:
            gen = GeneratedPath.from_payload(payload)
            sp = integrate(gen, steps=_path_steps(args, payload), tol=tol)
        else:
            sp = SampledPath.from_payload(payload)
        it = iterate(sp, k, tol)
        try:
            cz = cz_index(it, tol)
        except DegeneracyError as exc:
            cz = None
            notes.append(str(exc))
        lo, hi = mu_pm(it, tol=tol)
        result = {
            "kind": "path",
            "k": k,
            "mean_index": mean_index(it, tol),
            "nullity": nullity(it, tol),
            "cz_index": cz,
            "mu_minus": lo,
            "mu_plus": hi,
        }
    else:
        result = _model_indices(OrbitModel.from_payload(payload), k, notes)
        result["k"] = k
        del result["half_dim"]
    if notes:
        result["notes"] = notes
    _emit({"manifest": _manifest(args, argv, digest, tol), "result": result}, args)
    return 0


def _check_payload(check) -> dict | None:
    if check is None:
        return None
    return {
        "passed": check.passed,
        "records": len(check.records),
        "failures": [
            {"model": r.model, "ell": r.ell, "kind": r.kind, "detail": r.detail}
            for r in check.failures()
        ],
    }


def _jump_payload(report) -> dict:
    return {
        "mode": report.mode,
        "protected": [report.protected_low, report.protected_high],
        "windows": [
            {"model": w.model, "iterate": w.iterate, "low": w.low,
             "high": w.high, "side": w.side}
            for w in report.windows
        ],
    }


def _cmd_recur(args, argv) -> int:
    tol = _resolve_tol(args)
    payload, digest = _read_json(args.orbits)
    models = _load_models(payload)
    code = 0
    if args.certificate:
        cert_payload, _ = _read_json(args.certificate)
        cert = RecurrenceCertificate.from_payload(cert_payload)
        check = verify_certificate(cert, models, args.ell0, args.eta)
        result = {
            "mode": "verify",
            "certificate": cert.to_payload(),
            "check": _check_payload(check),
        }
        if args.jumps:
            result["jumps"] = _jump_payload(
                jump_intervals(cert, models, args.ell0, args.jumps))
        if not check.passed:
            code = 3
    else:
        found = find_recurrence(
            models, ell0=args.ell0, eta=args.eta, divisor=args.divisor,
            k_max=args.k_max, count=args.count,
            require_d_divisible=not args.no_d_divisible,
            skip_unverifiable=not args.allow_unverified)
        if not found.certificates:
            raise SearchExhaustedError(
                f"no certificate found scanning iterates up to "
                f"{args.divisor * args.k_max}")
        result = {
            "mode": "scan",
            "certificates": [c.to_payload() for c in found.certificates],
            "checks": [_check_payload(c) for c in found.checks],
            "scanned": found.scanned,
            "exhausted": found.exhausted,
            "notes": list(found.notes),
        }
        if args.jumps:
            result["jumps"] = [
                _jump_payload(jump_intervals(c, models, args.ell0, args.jumps))
                for c in found.certificates
            ]
        if any(c is not None and not c.passed for c in found.checks):
            code = 3
    _emit({"manifest": _manifest(args, argv, digest, tol), "result": result}, args)
    return code


def _cmd_collapse(args, argv) -> int:
    tol = _resolve_tol(args)
    payload, digest = _read_json(args.complex_file)
    if not isinstance(payload, dict):
        raise InputError("expected a filtered-complex payload object")
    fc = FilteredComplex.from_payload(payload)
    sp = pages(fc)
    col = collapse(sp, args.r0)

    betti = homology(fc.boundary, [g.degree for g in fc.generators])
    folded: dict[int, int] = {}
    for (f, c), dim in sp.infinity_dims().items():
        folded[f + c] = folded.get(f + c, 0) + dim
    consistent = all(folded.get(d, 0) == betti.get(d, 0)
                     for d in set(folded) | set(betti))

    result = {
        "size": fc.size,
        "pairs": [list(p) for p in sp.pairs],
        "stabilized_at": sp.stabilized_at,
        "pages": [
            {
                "r": p.r,
                "alive": len(p.basis),
                "dims": [[f, c, dim] for (f, c), dim in sorted(p.dims.items())],
            }
            for p in sp.pages
        ],
        "homology": [[d, dim] for d, dim in sorted(betti.items())],
        "consistent": consistent,
        "collapse": {
            "r0": col.r0,
            "size": len(col.positions),
            "bidegrees": [list(b) for b in col.bidegrees],
            "differential": col.differential.to_payload(),
            "harmonic_basis": col.harmonic.to_payload(),
            "intermediate": [list(x) for x in col.intermediate],
        },
    }
    _emit({"manifest": _manifest(args, argv, digest, tol), "result": result}, args)
    return 0 if consistent else 3


def _parse_degrees(spec: str) -> list[int]:
    try:
        if ".." in spec:
            a, b = spec.split("..")
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError("empty range")
            return list(range(lo, hi + 1))
        return [int(x) for x in spec.split(",")]
    except ValueError as exc:
        raise InputError(f"bad degree range {spec!r}: {exc}") from exc


def _cmd_shdim(args, argv) -> int:
    tol = _resolve_tol(args)
    degrees = _parse_degrees(args.degree_range)
    code = 0
    if args.manifold == "sphere":
        dims = sphere_sh_dims(args.n, degrees)
        result = {
            "manifold": "sphere",
            "n": args.n,
            "dims": [[k, dims[k]] for k in degrees],
        }
        if args.check:
            result["check"] = "sphere has a single closed form; nothing to cross-check"
    else:
        dims = stsn_sh_dims_cases(args.n, degrees)
        result = {
            "manifold": "stsn",
            "n": args.n,
            "dims": [[k, dims[k]] for k in degrees],
        }
        if args.check:
            mb = stsn_sh_dims_morsebott(args.n, degrees)
            agree = dims == mb
            result["check"] = {
                "morse_bott": [[k, mb[k]] for k in degrees],
                "agree": agree,
            }
            if not agree:
                code = 3
    _emit({"manifest": _manifest(args, argv, None, tol), "result": result}, args)
    return code


def _setting_from_args(args) -> ContactSetting:
    return ContactSetting(kind=args.kind, n=args.n, q=args.q,
                          nondegenerate=args.nondegenerate)


def _cmd_mult_bound(args, argv) -> int:
    tol = _resolve_tol(args)
    setting = _setting_from_args(args)
    bound = lower_bound(setting)
    result = {
        "setting": setting.to_payload(),
        "value": bound.value,
        "case": bound.case,
        "vacuous": bound.vacuous,
    }
    _emit({"manifest": _manifest(args, argv, None, tol), "result": result}, args)
    return 0


def _parse_radii_sq(spec: str) -> tuple[float, ...]:
    values: list[float] = []
    for token in spec.split(","):
        token = token.strip()
        try:
            values.append(float(Fraction(token)) if "/" in token else float(token))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad squared radius {token!r}: {exc}") from exc
    return tuple(values)


def _cmd_mult_ellipsoid(args, argv) -> int:
    tol = _resolve_tol(args)
    e = Ellipsoid(radii_sq=_parse_radii_sq(args.radii_sq))
    models = ellipsoid_orbit_models(e)
    reson = resonance_check(models)
    ok = reson.passed
    result = {
        "n": e.n,
        "radii_sq": list(e.radii_sq),
        "capacity": ellipsoid_capacity(e),
        "models": [m.to_payload() for m in models],
        "invariants": [s.to_payload()
                       for s in ellipsoid_spectral_invariants(e, args.count)],
        "resonance": {"passed": reson.passed, "common": reson.common,
                      "spread": reson.spread},
    }
    if args.check_carriers:
        carriers = verify_carrier_indices(e, args.count)
        ok = ok and carriers.passed
        result["carriers"] = {
            "passed": carriers.passed,
            "records": [
                {"position": r.position, "orbit": r.orbit, "iterate": r.iterate,
                 "index": r.index, "expected": r.expected, "mean": r.mean,
                 "ok": r.ok}
                for r in carriers.records
            ],
        }
    if args.check_limit:
        limit = chat_limit_check(e, args.count)
        ok = ok and limit.passed
        result["limit"] = {"passed": limit.passed, "degree": limit.degree,
                           "value": limit.value, "limit": limit.limit,
                           "gap": limit.gap, "bound": limit.bound}
    digest = hashlib.sha256(args.radii_sq.encode()).hexdigest()
    _emit({"manifest": _manifest(args, argv, digest, tol), "result": result}, args)
    return 0 if ok else 3


def _cmd_mult_witness(args, argv) -> int:
    tol = _resolve_tol(args)
    payload, digest = _read_json(args.orbits)
    models = _load_models(payload)
    setting = _setting_from_args(args)
    survey = mult_witness(setting, models, ell0=args.ell0, eta=args.eta,
                          k_max=args.k_max, count=args.count)
    reports = []
    mismatched = False
    for rep in survey.reports:
        if rep.matches is False:
            mismatched = True
        reports.append({
            "certificate": rep.certificate.to_payload(),
            "check": _check_payload(rep.check),
            "low": rep.low,
            "high": rep.high,
            "support": [list(x) for x in rep.support],
            "count": rep.count,
            "expected": rep.expected,
            "matches": rep.matches,
        })
    result = {
        "setting": setting.to_payload(),
        "bound": {"value": survey.bound.value, "case": survey.bound.case,
                  "vacuous": survey.bound.vacuous},
        "divisor": survey.divisor,
        "scanned": survey.scanned,
        "notes": list(survey.notes),
        "reports": reports,
    }
    _emit({"manifest": _manifest(args, argv, digest, tol), "result": result}, args)
    return 3 if mismatched else 0


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="numerical tolerance (default: SYMINDEX_TOL or 1e-8)")
    common.add_argument("-o", "--output", default=None,
                        help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default="json",
                        help="report format (default: json)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed recorded in the manifest; all subcommands "
                             "here are deterministic")

    parser = _Parser(prog="symindex",
                     description="index, recurrence and multiplicity computations "
                                 "for closed-orbit data")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common],
                       help="indices of a path or model")
    p.add_argument("--input", required=True,
                   help="path or model JSON (file or '-' for stdin)")
    p.add_argument("--steps", type=int, default=None,
                   help="integration step count override")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("iterate", parents=[common],
                       help="indices of the k-th iterate")
    p.add_argument("--input", required=True,
                   help="path or model JSON (file or '-' for stdin)")
    p.add_argument("-k", "--power", type=int, required=True)
    p.add_argument("--steps", type=int, default=None)
    p.set_defaults(func=_cmd_iterate)

    p = sub.add_parser("recur", parents=[common],
                       help="scan for or verify recurrence certificates")
    p.add_argument("--orbits", required=True,
                   help="orbit-model JSON (file or '-' for stdin)")
    p.add_argument("--l0", dest="ell0", type=int, default=3,
                   help="iterate window half-width")
    p.add_argument("--eta", type=float, default=0.25,
                   help="mean-index proximity target")
    p.add_argument("--divisor", type=int, default=1,
                   help="require the common index to be a multiple of this")
    p.add_argument("--kmax", dest="k_max", type=int, default=10 ** 6,
                   help="largest base iterate to scan")
    p.add_argument("--count", type=int, default=1,
                   help="number of certificates to collect")
    p.add_argument("--allow-unverified", action="store_true",
                   help="report candidates whose iterates are too small to verify")
    p.add_argument("--no-d-divisible", action="store_true",
                   help="do not require the common index to be a divisor multiple")
    p.add_argument("--certificate", default=None,
                   help="verify this certificate file instead of scanning")
    p.add_argument("--jumps", choices=["general", "strongly_nondegenerate"],
                   default=None, help="also emit the index windows around "
                                      "each certificate")
    p.set_defaults(func=_cmd_recur)

    p = sub.add_parser("collapse", parents=[common],
                       help="normal form, pages and collapse of a filtered complex")
    p.add_argument("--complex", dest="complex_file", required=True,
                   help="filtered-complex JSON (file or '-' for stdin)")
    p.add_argument("--r0", type=int, required=True,
                   help="fold the pages from this one on")
    p.set_defaults(func=_cmd_collapse)

    p = sub.add_parser("shdim", parents=[common],
                       help="closed-form homology dimension tables")
    p.add_argument("--manifold", choices=["sphere", "stsn"], required=True)
    p.add_argument("--n", dest="n", type=int, required=True)
    p.add_argument("--range", dest="degree_range", required=True,
                   help="degrees, either 'a..b' or a comma-separated list")
    p.add_argument("--check", action="store_true",
                   help="cross-validate the two stsn methods (exit 3 on mismatch)")
    p.set_defaults(func=_cmd_shdim)

    p = sub.add_parser("mult", help="multiplicity bounds and witnesses")
    msub = p.add_subparsers(dest="subcommand", required=True)

    b = msub.add_parser("bound", parents=[common],
                        help="closed-form orbit-count lower bound")
    b.add_argument("--kind", choices=["sphere", "stsn"], required=True)
    b.add_argument("--n", dest="n", type=int, required=True)
    b.add_argument("--q", dest="q", type=int, required=True)
    b.add_argument("--nondeg", dest="nondegenerate", action="store_true")
    b.set_defaults(func=_cmd_mult_bound)

    el = msub.add_parser("ellipsoid", parents=[common],
                         help="models, action spectrum and checks for an ellipsoid")
    el.add_argument("--radii-sq", dest="radii_sq", required=True,
                    help="comma-separated squared radii, e.g. 1,1.6,2.31")
    el.add_argument("--count", type=int, default=10,
                    help="number of action values to compute")
    el.add_argument("--check-carriers", action="store_true",
                    help="verify the carrier index identity (exit 3 on failure)")
    el.add_argument("--check-limit", action="store_true",
                    help="verify the capacity-per-degree limit (exit 3 on failure)")
    el.set_defaults(func=_cmd_mult_ellipsoid)

    w = msub.add_parser("witness", parents=[common],
                        help="recurrence window dimension counts")
    w.add_argument("--orbits", required=True,
                   help="orbit-model JSON (file or '-' for stdin)")
    w.add_argument("--kind", choices=["sphere", "stsn"], required=True)
    w.add_argument("--n", dest="n", type=int, required=True)
    w.add_argument("--q", dest="q", type=int, required=True)
    w.add_argument("--nondeg", dest="nondegenerate", action="store_true")
    w.add_argument("--l0", dest="ell0", type=int, default=3)
    w.add_argument("--eta", type=float, default=0.25)
    w.add_argument("--kmax", dest="k_max", type=int, default=10 ** 6)
    w.add_argument("--count", type=int, default=1)
    w.set_defaults(func=_cmd_mult_witness)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SearchExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except SymindexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
