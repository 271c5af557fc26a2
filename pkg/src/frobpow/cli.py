"""Command-line front end: single checks and manifest-driven sweeps.

Every subcommand prints machine output on stdout (JSON by default, CSV or a
short human rendering on request) and diagnostics on stderr.  Exit codes:
0 all checks pass, 1 a comparison failed, 2 invalid parameters, 3 an
enumeration cap was exceeded, 10 the point-count conjecture mismatched its
brute-force cross-check (a finding, not a bug).

The sweep subcommand replays a JSON manifest: a parameter grid, a list of
subcommand names, an output directory, and enumeration caps.  Identical
manifests produce byte-identical outputs; grid points violating the group
constraints are skipped and counted.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .ff import CapExceeded, factor_prime_power
from .group import GroupSpec
from .groebner import buchberger_check, resolution_2d
from .invariants import (
    DEFAULT_MONOMIAL_CAP, brute_force_hilbert, full_gl_fixed_basis,
    h_generators, verify_decomposition)
from .orbits import DEFAULT_POINT_CAP, count_orbits_enum
from .qseries import hilbert_for_spec, lrs_conjecture

SWEEP_COMMANDS = ("hilbert", "gbcheck", "decompose", "orbits")


def _spec_from_args(args):
    if args.q is not None:
        if args.p is not None or args.r != 1:
            raise ValueError("give either --q or --p/--r, not both")
        p, r = factor_prime_power(args.q)
    elif args.p is not None:
        p, r = args.p, args.r
    else:
        raise ValueError("a base field is required: --p (with --r) or --q")
    return _build_spec(p, r, args.n, args.ell, args.e, args.full_stabilizer)


def _build_spec(p, r, n, ell, e, full_stabilizer):
    """Missing ell/e default to the largest group: ell = n - 1, e = q - 1."""
    if full_stabilizer:
        return GroupSpec(p=p, r=r, n=n, full_stabilizer=True)
    q = p**r
    return GroupSpec(
        p=p, r=r, n=n,
        ell=n - 1 if ell is None else ell,
        e=q - 1 if e is None else e,
    )


def _dump_json(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _series_window(series, truncate):
    """Series JSON, re-windowed to the requested truncation degree."""
    if truncate is None:
        return series.to_json()
    out = {"coeffs": [series[d] for d in range(truncate + 1)],
           "truncation": truncate, "closed_form": series.closed_form}
    if series.conjectural:
        out["conjectural"] = True
    return out


def _emit(fmt, data, csv_rows, pretty_lines):
    if fmt == "json":
        sys.stdout.write(_dump_json(data))
    elif fmt == "csv":
        sys.stdout.write("\n".join(csv_rows) + "\n")
    else:
        sys.stdout.write("\n".join(pretty_lines) + "\n")


# -- hilbert ----------------------------------------------------------------

def cmd_hilbert(args):
    spec = _spec_from_args(args)
    formula = None
    if args.mode in ("formula", "both"):
        formula = hilbert_for_spec(spec, args.m)
        if formula is None:
            print(
                "no closed-form series for this group; use --mode brute",
                file=sys.stderr,
            )
            return 2
    base = {"spec": spec.to_json(), "m": args.m, "mode": args.mode}
    if args.mode == "formula":
        view = _series_window(formula, args.truncate)
        data = base | {"series": view, "total": formula.total}
        rows = ["degree,coeff"] + [
            f"{d},{c}" for d, c in enumerate(view["coeffs"])
        ]
        lines = [formula.closed_form, str(formula), f"total {formula.total}"]
        _emit(args.format, data, rows, lines)
        return 0
    brute = brute_force_hilbert(spec, args.m, args.max_monomials)
    if args.mode == "brute":
        data = base | {"dims": list(brute.dims), "total": brute.total}
        rows = ["degree,dim"] + [f"{d},{c}" for d, c in enumerate(brute.dims)]
        lines = [
            " ".join(str(c) for c in brute.dims), f"total {brute.total}",
        ]
        _emit(args.format, data, rows, lines)
        return 0
    top = args.truncate
    if top is None:
        top = max(len(brute.dims) - 1, formula.truncation)
    table = [
        [d, formula[d], brute[d], formula[d] == brute[d]]
        for d in range(top + 1)
    ]
    equal = all(row[3] for row in table)
    data = base | {
        "closed_form": formula.closed_form,
        "rows": table,
        "equal": equal,
        "formula_total": formula.total,
        "brute_total": brute.total,
    }
    rows = ["degree,formula,brute,equal"] + [
        f"{d},{f},{b},{eq}" for d, f, b, eq in table
    ]
    lines = [formula.closed_form] + [
        f"{d}: formula={f} brute={b}{'' if eq else '  <- mismatch'}"
        for d, f, b, eq in table
    ] + [f"totals {formula.total} vs {brute.total}", f"equal: {equal}"]
    _emit(args.format, data, rows, lines)
    return 0 if equal else 1


# -- gbcheck ----------------------------------------------------------------

def cmd_gbcheck(args):
    spec = _spec_from_args(args)
    report = buchberger_check(
        h_generators(spec, args.m), from_scratch=args.from_scratch)
    data = report.to_json()
    rows = ["pair,remainder"] + [
        f"\"{c['pair']}\",\"{c['remainder']}\"" for c in data["certificates"]
    ]
    lines = [f"generators: {' '.join(data['names'])}"] + [
        f"{c['pair']}: {c['remainder']}" for c in data["certificates"]
    ] + [f"ok: {report.ok}"]
    _emit(args.format, data, rows, lines)
    return 0 if report.ok else 1


# -- decompose --------------------------------------------------------------

def cmd_decompose(args):
    spec = _spec_from_args(args)
    report = verify_decomposition(spec, args.m, args.max_monomials)
    lines = [
        f"{d}: A={a} B={b} brute={br}" for d, a, b, _, br in report.rows
    ] + list(report.mismatches) + [f"ok: {report.ok}"]
    _emit(args.format, report.to_json(), report.to_csv().splitlines(), lines)
    return 0 if report.ok else 1


# -- orbits -----------------------------------------------------------------

def cmd_orbits(args):
    spec = _spec_from_args(args)
    report = count_orbits_enum(spec, args.m, args.max_points)
    data = report.to_json()
    rows = ["size,multiplicity"] + [f"{s},{c}" for s, c in report.histogram]
    hist = ", ".join(f"{c} of size {s}" for s, c in report.histogram)
    lines = [
        f"{report.orbit_count} orbits of {report.total_points} points",
        f"histogram: {hist}",
        f"formula {report.formula_value}: match={report.match}",
    ]
    _emit(args.format, data, rows, lines)
    return 0 if report.match else 1


# -- resolution2d -----------------------------------------------------------

def cmd_resolution2d(args):
    report = resolution_2d(args.p, args.m, args.e, args.ell)
    data = report.to_json()
    rows = ["key,value"] + [
        f"branch,{data['branch']}",
        f"f0_shifts,{' '.join(str(s) for s in data['f0_shifts'])}",
        f"f1_shifts,{' '.join(str(s) for s in data['f1_shifts'])}",
        f"syzygies,{' '.join(s['name'] for s in data['syzygies'])}",
        f"ok,{data['ok']}",
    ]
    lines = [
        f"branch: {data['branch']}",
        f"free module shifts: {data['f0_shifts']} then {data['f1_shifts']}",
        f"syzygies: {', '.join(s['name'] for s in data['syzygies'])}",
    ] + list(data["failures"]) + [f"ok: {report.ok}"]
    _emit(args.format, data, rows, lines)
    return 0 if report.ok else 1


# -- conjecture -------------------------------------------------------------

def cmd_conjecture(args):
    series = lrs_conjecture(args.q, args.n, args.m)
    checked = args.q <= 3 and args.n <= 2 and args.m <= 2
    dims = match = None
    if checked:
        basis = full_gl_fixed_basis(args.q, args.n, args.m, args.max_monomials)
        dims = [len(b) for b in basis]
        top = args.truncate
        if top is None:
            top = max(len(dims) - 1, series.truncation)
        match = all(
            series[d] == (dims[d] if d < len(dims) else 0)
            for d in range(top + 1)
        )
    data = {
        "q": args.q, "n": args.n, "m": args.m,
        "series": _series_window(series, args.truncate),
        "total": series.total,
        "checked": checked, "brute_dims": dims, "match": match,
    }
    if checked:
        rows = ["degree,conjecture,brute"] + [
            f"{d},{series[d]},{dims[d] if d < len(dims) else 0}"
            for d in range(max(len(dims), series.truncation + 1))
        ]
    else:
        rows = ["degree,coeff"] + [
            f"{d},{c}" for d, c in enumerate(series.coeffs)
        ]
    lines = [series.closed_form, str(series)] + (
        [f"brute dims: {dims}", f"match: {match}"] if checked
        else ["brute cross-check skipped (only run for q <= 3, n <= 2, m <= 2)"]
    )
    _emit(args.format, data, rows, lines)
    if checked and not match:
        return 10
    return 0


# -- sweep ------------------------------------------------------------------

def _expand_manifest(manifest):
    """Validated (jobs, skipped) from a manifest dict; jobs sorted by key."""
    unknown = set(manifest) - {"grid", "commands", "output_dir", "caps"}
    if unknown:
        raise ValueError(f"unknown manifest fields: {sorted(unknown)}")
    for key in ("grid", "commands", "output_dir"):
        if key not in manifest:
            raise ValueError(f"manifest requires '{key}'")
    grid = manifest["grid"]
    unknown = set(grid) - {"p", "r", "n", "m", "ell", "e", "full_stabilizer"}
    if unknown:
        raise ValueError(f"unknown grid axes: {sorted(unknown)}")
    commands = manifest["commands"]
    for cmd in commands:
        if cmd not in SWEEP_COMMANDS:
            raise ValueError(f"unknown sweep command: {cmd}")
    caps = {"max_monomials": DEFAULT_MONOMIAL_CAP, "max_points": DEFAULT_POINT_CAP}
    extra = set(manifest.get("caps", {})) - set(caps)
    if extra:
        raise ValueError(f"unknown caps: {sorted(extra)}")
    caps.update(manifest.get("caps", {}))
    axes = [
        grid.get("p", []), grid.get("r", [1]), grid.get("n", []),
        grid.get("m", [1]), grid.get("ell", [None]), grid.get("e", [None]),
        grid.get("full_stabilizer", [False]),
    ]
    if not axes[0] or not axes[2]:
        raise ValueError("grid requires nonempty 'p' and 'n' axes")
    seen = {}
    skipped = 0
    for p, r, n, m, ell, e, full in itertools.product(*axes):
        try:
            spec = _build_spec(p, r, n, ell, e, full)
        except ValueError:
            skipped += 1
            continue
        for cmd in commands:
            key = (cmd, _spec_tag(spec), m)
            seen[key] = {"command": cmd, "spec": spec.to_json(), "m": m,
                         "caps": caps}
    return [seen[key] for key in sorted(seen)], skipped


def _spec_tag(spec):
    field = f"p{spec.p}" + (f"r{spec.r}" if spec.r > 1 else "")
    group = "stab" if spec.full_stabilizer else f"l{spec.ell}e{spec.e}"
    return f"{field}n{spec.n}{group}"


def _sweep_job(job):
    """One grid point, one subcommand; returns (payload, status)."""
    spec = GroupSpec.from_json(job["spec"])
    m, caps = job["m"], job["caps"]
    base = {"spec": spec.to_json(), "m": m, "command": job["command"]}
    try:
        if job["command"] == "hilbert":
            formula = hilbert_for_spec(spec, m)
            brute = brute_force_hilbert(spec, m, caps["max_monomials"])
            if formula is None:
                return base | {"mode": "brute", "dims": list(brute.dims),
                               "total": brute.total}, "ok"
            top = max(len(brute.dims) - 1, formula.truncation)
            table = [
                [d, formula[d], brute[d], formula[d] == brute[d]]
                for d in range(top + 1)
            ]
            equal = all(row[3] for row in table)
            payload = base | {"mode": "both", "rows": table, "equal": equal,
                              "closed_form": formula.closed_form,
                              "formula_total": formula.total,
                              "brute_total": brute.total}
            return payload, "ok" if equal else "fail"
        if job["command"] == "gbcheck":
            try:
                hgens = h_generators(spec, m)
            except ValueError as exc:
                return base | {"skipped": str(exc)}, "skip"
            report = buchberger_check(hgens)
            return base | report.to_json(), "ok" if report.ok else "fail"
        if job["command"] == "decompose":
            report = verify_decomposition(spec, m, caps["max_monomials"])
            return base | report.to_json(), "ok" if report.ok else "fail"
        report = count_orbits_enum(spec, m, caps["max_points"])
        return base | report.to_json(), "ok" if report.match else "fail"
    except CapExceeded as exc:
        return base | {"error": str(exc)}, "cap"


def cmd_sweep(args):
    manifest = json.loads(Path(args.manifest).read_text())
    jobs, skipped = _expand_manifest(manifest)
    if not jobs:
        print("manifest produced no valid grid points", file=sys.stderr)
        return 2
    workers = args.jobs or int(os.environ.get("FROBPOW_JOBS", "1"))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_job, jobs))
    else:
        results = [_sweep_job(job) for job in jobs]
    outdir = Path(manifest["output_dir"])
    outdir.mkdir(parents=True, exist_ok=True)
    records = []
    counts = {"ok": 0, "fail": 0, "cap": 0, "skip": 0}
    for job, (payload, status) in zip(jobs, results):
        tag = _spec_tag(GroupSpec.from_json(job["spec"]))
        name = f"{job['command']}_{tag}_m{job['m']}.json"
        (outdir / name).write_text(_dump_json(payload | {"status": status}))
        counts[status] += 1
        records.append({"command": job["command"], "spec": tag,
                        "m": job["m"], "status": status, "file": name})
    summary = {"jobs": records, "counts": counts,
               "skipped_grid_points": skipped}
    rows = ["command,spec,m,status,file"] + [
        f"{r['command']},{r['spec']},{r['m']},{r['status']},{r['file']}"
        for r in records
    ]
    lines = [
        f"{r['command']} {r['spec']} m={r['m']}: {r['status']}"
        for r in records
    ] + [f"counts: {counts}"]
    _emit(args.format, summary, rows, lines)
    if counts["fail"]:
        return 1
    if counts["cap"]:
        return 3
    return 0


# -- parser -----------------------------------------------------------------

def _spec_arguments(sub):
    sub.add_argument("--p", type=int, help="base prime")
    sub.add_argument("--r", type=int, default=1, help="extension degree")
    sub.add_argument("--q", type=int, help="prime power, alternative to --p/--r")
    sub.add_argument("--n", type=int, required=True, help="number of variables")
    sub.add_argument("--ell", type=int, help="transvection root count, default n-1")
    sub.add_argument("--e", type=int, help="diagonal order, default q-1")
    sub.add_argument("--full-stabilizer", action="store_true",
                     dest="full_stabilizer",
                     help="take the whole pointwise hyperplane stabilizer")


def _common_arguments(sub, m=True, monomials=False, points=False, truncate=False):
    if m:
        sub.add_argument("--m", type=int, required=True,
                         help="Frobenius power exponent")
    if monomials:
        sub.add_argument("--max-monomials", type=int,
                         default=DEFAULT_MONOMIAL_CAP,
                         help="enumeration cap for quotient monomials")
    if points:
        sub.add_argument("--max-points", type=int, default=DEFAULT_POINT_CAP,
                         help="enumeration cap for orbit points")
    if truncate:
        sub.add_argument("--truncate", type=int,
                         help="series truncation degree override")
    sub.add_argument("--format", choices=("json", "csv", "pretty"),
                     default="json", help="stdout format")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="frobpow",
        description="invariants of hyperplane-fixing groups mod Frobenius powers",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("hilbert", help="closed-form vs brute-force Hilbert series")
    _spec_arguments(s)
    s.add_argument("--mode", choices=("formula", "brute", "both"),
                   default="both")
    _common_arguments(s, monomials=True, truncate=True)
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("gbcheck", help="S-pair certificates for the h-generators")
    _spec_arguments(s)
    s.add_argument("--from-scratch", action="store_true", dest="from_scratch",
                   help="rerun completion and confirm no new leading monomials")
    _common_arguments(s)
    s.set_defaults(func=cmd_gbcheck)

    s = sub.add_parser("decompose", help="A + B direct-sum check per degree")
    _spec_arguments(s)
    _common_arguments(s, monomials=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("orbits", help="orbit enumeration vs closed-form count")
    _spec_arguments(s)
    _common_arguments(s, points=True)
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("resolution2d", help="two-variable free resolution check")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--ell", type=int, choices=(0, 1), default=1,
                   help="1 for the reflection branch, 0 for semisimple only")
    _common_arguments(s)
    s.set_defaults(func=cmd_resolution2d)

    s = sub.add_parser("conjecture", help="point-count series vs tiny brute force")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    _common_arguments(s, monomials=True, truncate=True)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("sweep", help="replay a manifest over a parameter grid")
    s.add_argument("--manifest", required=True, help="path to a manifest JSON")
    s.add_argument("--jobs", type=int,
                   help="worker processes, default $FROBPOW_JOBS or 1")
    _common_arguments(s, m=False)
    s.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
