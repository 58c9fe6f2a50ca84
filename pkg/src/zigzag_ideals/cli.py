"""Command-line entry point.

Exit codes: 0 success, 1 malformed input, 2 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .barcode import decompose, render_ascii
from .lemmas import SUITES, run_suites
from .linalg import get_field
from .quiver import QuiverWindow, Representation, support, tensor
from .spectrum import PointTensorIdeal, membership, spectrum_report
from .unbounded import DerivationCertificate, MalformedCertificate, check_derivation
from .witness import WitnessError, full_witness

EXIT_OK, EXIT_MALFORMED, EXIT_FAILED = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _load_rep(path: str, field: str | None) -> Representation:
    d = _load_json(path)
    if not isinstance(d, dict):
        raise InputError(f"{path}: expected a JSON object")
    if field is not None:
        d = {**d, "field": field}
    try:
        return Representation.from_json(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not a representation ({exc})") from exc


def _parse_window(text: str, orientation: str) -> QuiverWindow:
    try:
        lo, hi = (int(x) for x in text.split(".."))
        return QuiverWindow(lo, hi, orientation)
    except ValueError as exc:
        raise InputError(f"bad window {text!r} / orientation {orientation!r}: {exc}") from exc


def cmd_barcode(args) -> int:
    v = _load_rep(args.rep, args.field)
    code = decompose(v)
    if args.json:
        print(_dump({"window": v.window.to_json(), **code.to_json()}))
    else:
        print(render_ascii(code, v.window) if code.bars else "(no bars)")
    return EXIT_OK


def cmd_tensor(args) -> int:
    a, b = _load_rep(args.a, args.field), _load_rep(args.b, args.field)
    if a.window != b.window or a.field != b.field:
        raise InputError("representations must share window and field")
    t = tensor(a, b)
    if args.json:
        print(_dump({"representation": t.to_json(), **decompose(t).to_json()}))
    else:
        code = decompose(t)
        print(render_ascii(code, t.window) if code.bars else "(no bars)")
    return EXIT_OK


def cmd_support(args) -> int:
    v = _load_rep(args.rep, args.field)
    s = support(v).to_json()
    print(_dump({"support": s}) if args.json else " ".join(map(str, s)))
    return EXIT_OK


def cmd_member(args) -> int:
    v = _load_rep(args.rep, args.field)
    try:
        m = PointTensorIdeal(v.window, args.point)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    inside = membership(v, m)
    if args.json:
        print(_dump({"point": args.point, "member": inside}))
    else:
        print("MEMBER" if inside else "NOT MEMBER")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    w = _parse_window(args.window, args.orientation)
    try:
        report = spectrum_report(w, get_field(args.field or "gf2"))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        print(_dump(report))
    else:
        print(f"window {w}: {w.size} points")
        for p in report["points"]:
            print(f"  M_{p['point']}: psi(phi) = id: {p['psi_phi_is_identity']}")
        print(f"closed sets: {len(report['closed_set_lattice'])}")
        print(f"Hausdorff: {report['hausdorff']}  homeomorphism: {report['homeomorphism']}")
    ok = report["hausdorff"] and report["homeomorphism"] and all(p["psi_phi_is_identity"] for p in report["points"])
    return EXIT_OK if ok else EXIT_FAILED


def cmd_witness(args) -> int:
    w = _parse_window(args.window, args.orientation)
    v = _load_rep(args.rep, args.field)
    if v.window != w:
        raise InputError(f"representation lives on {v.window}, not {w}")
    try:
        chain = full_witness(w, v)
    except WitnessError as exc:
        if "proper subset" in str(exc) or "single run" in str(exc):
            raise InputError(str(exc)) from exc
        print(f"witness failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.json:
        print(_dump(chain.to_json()))
    else:
        for i, st in enumerate(chain.steps):
            tag = type(st.why).__name__
            br = f"[{st.branch}] " if st.branch else ""
            print(f"{i:3d} {br}{tag:<12} {st.label}  supp={support(st.obj).to_json()}")
        print(f"verified: {len(chain.steps)} steps, every branch ends at K_window")
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        cert = DerivationCertificate.from_json(_load_json(args.cert))
        verdict = check_derivation(cert)
    except MalformedCertificate as exc:
        raise InputError(str(exc)) from exc
    if args.json:
        print(_dump(verdict.to_json()))
    elif verdict.accepted:
        print(f"ACCEPTED: {len(cert.steps)} steps, final object bounded")
    else:
        print(f"REJECTED at step {verdict.failing_step}: {verdict.reason}")
    return EXIT_OK if verdict.accepted else EXIT_FAILED


def cmd_verify_lemmas(args) -> int:
    names = args.suite or None
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise InputError(f"unknown suite(s): {', '.join(unknown)}")
    report = run_suites(args.seed, args.trials, names)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    if args.json or not args.out:
        sys.stdout.write(text)
    else:
        for name, r in report["suites"].items():
            print(f"{'PASS' if r['ok'] else 'FAIL'} {name}")
    return EXIT_OK if report["ok"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=["gf2", "gf5", "rational"], default=None, help="override the file's field")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="zigzag-ideals", description="Zigzag representations, tensor ideals and their spectrum.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("barcode", parents=[common], help="decompose a representation")
    s.add_argument("rep")
    s.set_defaults(func=cmd_barcode)

    s = sub.add_parser("tensor", parents=[common], help="pointwise tensor product")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("support", parents=[common], help="vertices with nonzero space")
    s.add_argument("rep")
    s.set_defaults(func=cmd_support)

    s = sub.add_parser("member", parents=[common], help="membership in the point ideal M_a")
    s.add_argument("rep")
    s.add_argument("--point", type=int, required=True)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("spectrum", parents=[common], help="points and closed sets of a window (size <= 8)")
    s.add_argument("--window", required=True, help="lo..hi")
    s.add_argument("--orientation", required=True, help="word in R/L, one letter per arrow")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("witness", parents=[common], help="chain deriving K_window from V and K_{supp(V)^c}")
    s.add_argument("--window", required=True)
    s.add_argument("--orientation", required=True)
    s.add_argument("--rep", required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("certify", parents=[common], help="check a derivation certificate")
    s.add_argument("cert")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("verify-lemmas", parents=[common], help="run the randomized property suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    s.add_argument("--out", help="also write the JSON report here")
    s.set_defaults(func=cmd_verify_lemmas)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED
    if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 0:
        print("error: --trials must be >= 0", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
