"""Command-line front end: weylres <command> [flags].

Exit status is 0 on success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import grading, linkage, resolution
from .diagram import Format, diagram_from_format
from .errors import WeylresError
from .liealg import z1_graded_dims
from .weyl import WeylWord, enumerate_double_cosets, is_min_double_coset_rep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def dumps(data) -> str:
    """Canonical JSON text used for every file the tool writes."""
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def thread_count() -> int:
    """THREADS is validated but every computation runs serially."""
    raw = os.environ.get("THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"THREADS must be a positive integer, got {raw!r}")
    return n


def parse_labels(spec: str | None) -> dict[str, str] | None:
    """'bourbaki:z2,x1,z1,u,y1,y2' or 'bourbaki:1=z2,2=x1,...' -> {'1': 'z2', ...}."""
    if not spec:
        return None
    kind, _, body = spec.partition(":")
    if kind != "bourbaki" or not body:
        raise UsageError(f"--labels expects bourbaki:<map>, got {spec!r}")
    items = [t.strip() for t in body.split(",") if t.strip()]
    if all("=" in t for t in items):
        return dict(t.split("=", 1) for t in items)
    return {str(i + 1): v for i, v in enumerate(items)}


def parse_sigma(diagram, text: str, labels: dict | None) -> WeylWord:
    tokens = text.replace(",", " ").split()
    if labels:
        try:
            tokens = [labels[t] for t in tokens]
        except KeyError as exc:
            raise UsageError(f"label {exc.args[0]!r} missing from --labels map") from None
    try:
        return WeylWord(diagram, tuple(tokens))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _format(args) -> Format:
    if not args.format:
        raise UsageError("--format is required")
    return Format.parse(args.format)


def _format_sigma(args):
    fmt = _format(args)
    d = diagram_from_format(fmt)
    if args.sigma is None:
        raise UsageError("--sigma is required")
    return fmt, d, parse_sigma(d, args.sigma, parse_labels(args.labels))


def _load_complex(path: str) -> resolution.GradedComplex:
    try:
        with open(path) as fh:
            return resolution.GradedComplex.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot read complex from {path}: {exc}") from None


def _emit(args, data, text: str | None = None) -> None:
    out = dumps(data) if (args.json or text is None) else text.rstrip("\n") + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# commands ---------------------------------------------------------------------

def cmd_diagram(args) -> int:
    fmt = _format(args)
    d = diagram_from_format(fmt)
    kind = d.classify()
    data = {
        "format": list(fmt.f),
        "name": d.name(),
        "type": kind,
        "vertices": list(d.vertices),
        "cartan_det": d.cartan_det,
    }
    lines = [f"{d.name()}, {kind}", "vertices: " + " ".join(d.vertices)]
    if kind != "finite":
        bigger = Format(fmt.r1 + 1, fmt.r2, fmt.r3)
        hint = (
            f"not of finite type: resolutions are built on finite diagrams only; "
            f"enlarge the diagram by raising one r_i, e.g. format {bigger} gives "
            f"{diagram_from_format(bigger).name()} and adds a split exact summand"
        )
        data["suggestion"] = hint
        lines.append("suggestion: " + hint)
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_cosets(args) -> int:
    fmt = _format(args)
    d = diagram_from_format(fmt)
    reps = enumerate_double_cosets(d, args.max_length)
    data = {"format": list(fmt.f), "max_length": args.max_length,
            "representatives": [{"word": str(w), "length": len(w)} for w in reps]}
    text = "\n".join(f"{len(w):>3}  {w if len(w) else 'e'}" for w in reps)
    _emit(args, data, f"{len(reps)} representatives\n{text}")
    return EXIT_OK


def _betti_table(fmt, sigma, exchange):
    table = grading.betti_multidegrees(fmt, sigma)
    if exchange:
        table = grading.exchange_grading(table, sigma)
    return table


def cmd_betti(args) -> int:
    fmt, d, sigma = _format_sigma(args)
    if not is_min_double_coset_rep(sigma):
        raise UsageError(f"{sigma} is not a minimal double coset representative")
    table = _betti_table(fmt, sigma, args.exchange)
    labels = parse_labels(args.labels)
    data = table.to_json() | {"sigma": str(sigma), "exchange": args.exchange}
    if labels:
        order = [labels[k] for k in sorted(labels, key=int)]
        idx = [d.idx(v) for v in order]
        data["bourbaki_multidegrees"] = [[[g[i] for i in idx] for g in m] for m in table.modules]
    text = grading.render_coarse(table, "x1")
    if args.diagram_style:
        text += "\n" + grading.render_betti_diagram(table, "x1")
    _emit(args, data, text)
    return EXIT_OK


def cmd_resolve(args) -> int:
    fmt, d, sigma = _format_sigma(args)
    if args.exchange:
        c, report = resolution.exchange_dual(fmt, sigma)
        c.meta["exchange_report"] = report
    else:
        c = resolution.build_resolution(fmt, sigma)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(c.to_json()))
    elif args.json:
        sys.stdout.write(dumps(c.to_json()))
    else:
        sys.stdout.write(_render_complex(c))
    return EXIT_OK


def _render_complex(c) -> str:
    parts = [f"format {tuple(c.ranks)}, {c.ring.nvars} variables"]
    for k, m in enumerate(c.d, start=1):
        parts.append(f"d{k}:")
        parts.append(m.format() if m.nrows and m.ncols else "(empty)")
    return "\n".join(parts) + "\n"


def cmd_check(args) -> int:
    try:
        with open(args.complex) as fh:
            data = json.load(fh)
        c = resolution.GradedComplex.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot read complex from {args.complex}: {exc}") from None
    report = resolution.check_complex(c, seed=args.seed)
    report["round_trip"] = dumps(c.to_json()) == dumps(data)
    report["ok"] = bool(report["ok"] and report["round_trip"])
    text = (
        f"d1d2 = 0: {report['d1d2_zero']}\nd2d3 = 0: {report['d2d3_zero']}\n"
        f"homogeneous: {report['homogeneous']}\nranks ok: {report['ranks']['ok']}\n"
        f"round trip: {report['round_trip']}\n" + ("PASS" if report["ok"] else "FAIL")
    )
    _emit(args, report, text)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_pluecker(args) -> int:
    fmt, d, sigma = _format_sigma(args)
    polys, weights, ring = resolution.plucker_coordinates(fmt, sigma, with_weights=True)
    data = {
        "sigma": str(sigma),
        "ring": ring.to_json(),
        "coordinates": [{"weight": list(w), "poly": p.to_json()} for p, w in zip(polys, weights)],
    }
    ok = True
    if args.identities:
        rep = resolution.verify_minor_identities(fmt, sigma)
        data["minor_identities"] = rep
        ok = rep["ok"]
    text = "\n".join(f"{list(w)}  {p.format(ring.names)}" for p, w in zip(polys, weights) if p.terms)
    if args.identities:
        text += "\nminor identities: " + ("PASS" if ok else "FAIL")
    _emit(args, data, text)
    return EXIT_OK if ok else EXIT_FAIL


def _complex_from_args(args):
    if args.complex:
        return _load_complex(args.complex)
    fmt, d, sigma = _format_sigma(args)
    return resolution.build_resolution(fmt, sigma)


def cmd_bemult(args) -> int:
    c = _complex_from_args(args)
    be = resolution.be_multipliers(c)
    names = c.ring.names
    text = "\n".join([
        "a3: " + ", ".join(p.format(names) for p in be.a3),
        "a2: " + ", ".join(r[0].format(names) for r in be.a2),
        "a1: " + ", ".join(p.format(names) for p in be.a1),
        f"unique: {be.unique}",
    ])
    _emit(args, be.to_json(), text)
    return EXIT_OK if be.unique else EXIT_FAIL


def cmd_hsm(args) -> int:
    c = _complex_from_args(args)
    sm = linkage.structure_maps(c)
    rep = linkage.verify_structure_maps(c, sm)
    text = f"w31:\n{sm.w31.format()}\nw21:\n{sm.w21.format() if sm.w21.nrows else '(F3 = 0)'}\nreplay: {rep}"
    _emit(args, sm.to_json() | {"replay": rep}, text)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_link(args) -> int:
    c = _load_complex(args.complex)
    try:
        cols = [int(t) for t in args.cols.split(",")]
    except ValueError:
        raise UsageError(f"--cols expects three integers, got {args.cols!r}") from None
    res = linkage.link(c, cols, seed=args.seed)
    check = resolution.check_complex(res.complex, seed=args.seed)
    data = res.complex.to_json()
    data["meta"]["link_report"] = {"evidence": res.evidence, "ladder": res.ladder, "check_ok": check["ok"]}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(data))
        sys.stdout.write(f"linked format {res.complex.ranks}; check {'PASS' if check['ok'] else 'FAIL'}\n")
    elif args.json:
        sys.stdout.write(dumps(data))
    else:
        sys.stdout.write(_render_complex(res.complex))
    ok = check["d1d2_zero"] and check["d2d3_zero"] and all(res.ladder.values())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    c = _load_complex(args.complex)
    sm = linkage.structure_maps(c)
    inv = linkage.rank_invariants(c, sm)
    text = (
        f"rank w3 (x) k = {inv['rank_w3']}, rank w2 (x) k = {inv['rank_w2']}\n"
        f"deficits = {tuple(inv['deficits'])}\n{inv['note']}"
    )
    _emit(args, inv, text)
    return EXIT_OK


def cmd_dims(args) -> int:
    fmt = _format(args)
    d = diagram_from_format(fmt)
    data = {"format": list(fmt.f), "diagram": d.name(), "type": d.classify()}
    if d.is_finite:
        dims = z1_graded_dims(d)
        data["z1_graded_dims"] = [[k, v] for k, v in sorted(dims.items())]
        data["total"] = sum(dims.values())
        text = " ".join(f"g{k}:{v}" for k, v in sorted(dims.items())) + f"  total {data['total']}"
    else:
        text = f"{d.name()} is {d.classify()}; graded dimensions are unbounded"
    _emit(args, data, text)
    return EXIT_OK


COMMANDS = {
    "diagram": cmd_diagram, "cosets": cmd_cosets, "betti": cmd_betti,
    "resolve": cmd_resolve, "check": cmd_check, "pluecker": cmd_pluecker,
    "bemult": cmd_bemult, "hsm": cmd_hsm, "link": cmd_link,
    "invariants": cmd_invariants, "dims": cmd_dims,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylres", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True, sigma=False, out=False):
        mode = sp.add_mutually_exclusive_group()
        mode.add_argument("--json", action="store_true", help="machine-readable output")
        mode.add_argument("--text", action="store_true", help="human-readable output (default)")
        sp.add_argument("--seed", type=int, default=0)
        if fmt:
            sp.add_argument("--format", help="Betti format f0,f1,f2,f3, e.g. 1,5,6,2")
        if sigma:
            sp.add_argument("--sigma", help='word of vertex names, e.g. "z1 u x1"')
            sp.add_argument("--labels", help="bourbaki:<map> alias for numeric words")
        if out:
            sp.add_argument("--out", help="write the result to this file")

    common(sub.add_parser("diagram", help="classify the diagram of a format"))
    sp = sub.add_parser("cosets", help="minimal double coset representatives")
    common(sp)
    sp.add_argument("--max-length", type=int, default=12)
    sp = sub.add_parser("betti", help="graded Betti data of F^sigma")
    common(sp, sigma=True)
    sp.add_argument("--exchange", action="store_true", help="x/z exchanged grading")
    sp.add_argument("--diagram-style", action="store_true", help="also print a Betti diagram")
    sp = sub.add_parser("resolve", help="build the resolution F^sigma")
    common(sp, sigma=True, out=True)
    sp.add_argument("--exchange", action="store_true", help="build the exchanged dual instead")
    sp = sub.add_parser("check", help="verify a complex JSON file")
    common(sp, fmt=False)
    sp.add_argument("complex")
    sp = sub.add_parser("pluecker", help="Pluecker coordinates of the Schubert cell")
    common(sp, sigma=True)
    sp.add_argument("--identities", action="store_true", help="also verify the witness minors")
    for name, helptext in (("bemult", "Buchsbaum-Eisenbud multipliers"), ("hsm", "first structure maps w31, w21")):
        sp = sub.add_parser(name, help=helptext)
        common(sp, sigma=True)
        sp.add_argument("complex", nargs="?")
    sp = sub.add_parser("link", help="link by three entries of d1")
    common(sp, fmt=False, out=True)
    sp.add_argument("complex")
    sp.add_argument("--cols", default="0,1,2")
    sp = sub.add_parser("invariants", help="rank invariants of the structure maps")
    common(sp, fmt=False)
    sp.add_argument("complex")
    common(sub.add_parser("dims", help="z1-graded dimensions of the Lie algebra"))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        thread_count()
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, WeylresError) as exc:
        # FormatError and friends are ValueErrors raised on bad input
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        kind = type(exc).__name__
        return EXIT_FAIL if kind in ("IdentityFailure", "NoSolution", "RegularSequenceSuspect") else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
