"""Command line entry point: ``nscartan <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import gl2


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        sys.stdout.write(text)


def _check_p(args, p: int) -> None:
    if p > args.pmax:
        raise SystemExit(f"p={p} exceeds --pmax {args.pmax}")


def cmd_invariants(args) -> int:
    from .invariants import curve_invariants, newpart_dim_check

    _check_p(args, args.p)
    inv = curve_invariants(args.p)
    ok, msg = newpart_dim_check(args.p)
    data = inv.to_dict() | {"newpart_check": ok}
    _emit(args, inv.to_text() + f"newpart_check {ok} ({msg})\n", data)
    return 0 if ok else 1


def cmd_count(args) -> int:
    from .counting import bundled_records, count_points_moduli, count_points_trace, load_newform_records

    _check_p(args, args.p)
    if args.method == "moduli":
        report = count_points_moduli(args.p, args.q, 2, args.variant)
        _emit(args, report.to_text(), report.to_dict())
        return 0
    if args.newforms:
        records = load_newform_records(args.newforms)
    else:
        # the bundled files cover exactly these two Jacobians
        bundled = {(11, "ns"): 121, (13, "ns+"): 169}
        key = (args.p, args.variant)
        if key not in bundled:
            raise ValueError(f"no bundled newform data for X_{args.variant}({args.p}); pass --newforms")
        records = bundled_records(bundled[key])
    total = count_points_trace(records, args.q, 2)
    data = {"p": args.p, "q": args.q, "r": 2, "variant": args.variant, "method": "trace",
            "records": len(records), "total": total}
    _emit(args, "".join(f"{k} {v}\n" for k, v in data.items()), data)
    return 0


def cmd_lattices(args) -> int:
    from .lattices import cartan_fixed_sublist, gamma_p_fixed_lattices, normalizer_verdict

    _check_p(args, args.p)
    fixed = gamma_p_fixed_lattices(args.p)
    sub = cartan_fixed_sublist(args.p)
    lines = [f"gamma_p_fixed {len(fixed)}"] + [f"  {L}" for L in fixed]
    lines += [f"cartan_fixed {len(sub)}"] + [f"  {L}" for L in sub]
    data = {"p": args.p, "gamma_p_fixed": [str(L) for L in fixed], "cartan_fixed": [str(L) for L in sub]}
    ok = True
    if args.p >= 11:
        v = normalizer_verdict(args.p)
        lines.append(v.to_text().rstrip())
        data["verdict"] = v.to_dict()
        ok = v.ok
    _emit(args, "\n".join(lines) + "\n", data)
    return 0 if ok else 1


def cmd_cuspdiv(args) -> int:
    from .cuspdiv import CuspDivisor, D_l, cusps, disjoint_support_choice, eichler_shimura_shape_check, hecke_Tl

    p, l = args.p, args.l
    _check_p(args, p)
    table = {t: str(hecke_Tl(l, CuspDivisor.cusp(p, t))) for t in cusps(p)}
    nonzero = [(u, C, C2) for u in ("identity", "w") for C in cusps(p) for C2 in cusps(p)
               if C != C2 and D_l(u, l, C, C2, p)]
    choices = {t: disjoint_support_choice(l, t, p) for t in cusps(p)} if p >= 11 else {}
    shape = eichler_shimura_shape_check(l, p)
    lines = [f"T_{l} on cusps of X_ns({p}):"] + [f"  T[{t}] = {d}" for t, d in table.items()]
    lines.append(f"D_l nonzero cases: {len(nonzero)}")
    lines.append(f"eichler_shimura_shape {shape}")
    lines += [f"  disjoint partner of {t}: {c}" for t, c in choices.items()]
    data = {"p": p, "l": l, "T_l": table, "D_l_nonzero": len(nonzero), "shape_check": shape,
            "disjoint_choice": choices}
    _emit(args, "\n".join(lines) + "\n", data)
    return 0 if shape and not nonzero else 1


def cmd_gates(args) -> int:
    from .gates import gates_for

    _check_p(args, args.p)
    report = gates_for(args.p)
    _emit(args, report.to_text(), report.to_dict())
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    from .gates import manifest_text, verify_paper

    checks = verify_paper(args.pmax)
    text = manifest_text(checks)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    _emit(args, text, [c.__dict__ for c in checks])
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nscartan", description=__doc__)
    parser.add_argument("--pmax", type=int, default=gl2.DEFAULT_P_BOUND, help="largest level to enumerate")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="genus, cusps, elliptic points, CM split")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("count", help="point count over F_{q^2}")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--variant", choices=("ns", "ns+"), default="ns")
    p.add_argument("--method", choices=("moduli", "trace"), default="moduli")
    p.add_argument("--newforms", help="newform record file (trace method)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("lattices", help="lattices fixed by Gamma(p) and by the Cartan group")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(func=cmd_lattices)

    p = sub.add_parser("cuspdiv", help="Hecke and Galois action on cuspidal divisors")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-l", type=int, required=True)
    p.set_defaults(func=cmd_cuspdiv)

    p = sub.add_parser("gates", help="all verdicts for one level")
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(func=cmd_gates)

    p = sub.add_parser("verify-paper", help="run every numerical check")
    p.add_argument("--report", help="also write the manifest to this file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
