"""Command-line front end.

Exit codes: 0 success, 1 input or usage error, 2 classification anomaly or
failed verification, 3 degenerate joint numerical range.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

# BLAS reads its thread count when numpy loads, so this must run first
if os.environ.get("JNR_THREADS"):
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, os.environ["JNR_THREADS"])

import numpy as np  # noqa: E402

from . import corners, faces, fixtures, geometry, io, separable, verify  # noqa: E402
from .settings import DEFAULT, Settings
from .shapes import CLASS_TABLE, SignatureError

SCHEMA = "jnrange.report/1"
BASE_TOL = 1e-8

EXIT_OK, EXIT_INPUT, EXIT_ANOMALY, EXIT_DEGENERATE = 0, 1, 2, 3

CLASS_CLAIM = "every 4x4 triple falls into one of fifteen face-count classes"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _num(x: float) -> float:
    x = float(f"{float(x):.12g}")
    return 0.0 if x == 0 else x


def _vec(v) -> list[float]:
    return [_num(x) for x in np.asarray(v, dtype=float).ravel()]


def _settings(args) -> Settings:
    s = DEFAULT
    if getattr(args, "tol", None) is not None:
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        s = s.scaled(args.tol / BASE_TOL)
    if getattr(args, "seed", None) is not None:
        s = s.replace(seed=args.seed)
    if getattr(args, "restarts", None) is not None:
        s = s.replace(seesaw_restarts=args.restarts)
    return s


def _load(path: str, settings: Settings):
    try:
        return io.load_triple(path, settings)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read triple from {path}: {exc}") from exc


def _face_json(f: faces.FaceRecord) -> dict:
    out = {
        "rank": f.rank,
        "dim": f.dim,
        "shape": f.shape.value,
        "direction": _vec(f.direction),
        "support_value": _num(f.support_value),
        "segments": [[_vec(a), _vec(b)] for a, b in f.segments],
    }
    if f.ellipse is not None:
        out["ellipse"] = {
            "center": _vec(f.ellipse.center),
            "semi_axes": _vec(f.ellipse.semi_axes),
            "axes": [_vec(a) for a in f.ellipse.axes.T],
        }
    if f.verdict is not None and f.verdict.notes:
        out["notes"] = list(f.verdict.notes)
    return out


def _base_report(triple, settings: Settings, command: str) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "input_digest": io.digest(triple),
        "n": triple.n,
        "settings": {k: v for k, v in settings.as_dict().items()},
        "warnings": [],
    }


def _spectrum_json(triple, settings) -> tuple[list, list]:
    spectrum, corner_points = [], []
    for j in corners.joint_spectrum(triple, settings):
        entry = {"lambda": _vec(j.lam), "eigenspace_dim": j.eigenspace_dim}
        if triple.n > j.eigenspace_dim:
            try:
                verdict = corners.is_corner_point(triple, j.lam, settings=settings)
                entry["normal_cone_dim"] = verdict.normal_cone_dim
                if verdict.is_corner:
                    corner_points.append(_vec(j.lam))
            except ValueError:
                pass
        spectrum.append(entry)
    return spectrum, corner_points


def classify_report(triple, settings: Settings = DEFAULT) -> tuple[dict, int]:
    report = _base_report(triple, settings, "classify")
    if triple.n != 4:
        raise UsageError(f"classify needs 4x4 matrices, got n={triple.n}")
    dim = geometry.dimension(triple)
    report["dimension"] = dim
    if dim < 3:
        report["warnings"].append({"message": f"joint numerical range has dimension {dim} < 3"})
        return report, EXIT_DEGENERATE
    analysis = faces.analyze(triple, settings)
    report["rank1_tuples"] = [
        {"u0": _num(t.u0), "u": _vec(t.u), "minor_residual": _num(t.residual)} for t in analysis.tuples
    ]
    report["faces"] = [_face_json(f) for f in analysis.faces]
    report["counts"] = list(analysis.counts)
    code = EXIT_OK
    if analysis.signature is None:
        report["class_index"] = None
        report["warnings"].append({
            "claim": CLASS_CLAIM,
            "message": f"face counts {analysis.counts} match no column of the class table",
        })
        code = EXIT_ANOMALY
    else:
        report["class_index"] = analysis.signature.class_index
    spectrum, corner_points = _spectrum_json(triple, settings)
    report["joint_spectrum"] = spectrum
    report["corner_points"] = corner_points
    if analysis.signature is not None and analysis.signature.implies_corner and not corner_points:
        report["warnings"].append({
            "claim": "the face-count class implies a corner point",
            "message": "no corner point detected",
        })
    if len(analysis.tuples) > settings.continuum_warn:
        report["warnings"].append({"message": "continuum of rank-one tuples suspected"})
    for f in analysis.rank3:
        if f.dim == 2 and f.shape.flat_edges != len(f.segments):
            report["warnings"].append({
                "message": f"face at {_vec(f.direction)} is {f.shape.value} but has {len(f.segments)} flat edges",
            })
    return report, code


def separable_report(triple, settings: Settings, num_dirs: int) -> dict:
    if triple.n != 4:
        raise UsageError(f"separable ranges need 4x4 matrices, got n={triple.n}")
    report = _base_report(triple, settings, "separable")
    dirs = geometry.fibonacci_directions(num_dirs)
    w = geometry.support_values(triple, dirs)
    seeds = separable.direction_seeds(settings.seed, num_dirs)
    rows = []
    for k, u in enumerate(dirs):
        saw, state = separable.seesaw_support(triple, u, seed=seeds[k], settings=settings)
        try:
            ppt, _ = separable.ppt_support(triple, u, settings)
        except separable.PPTSolverError as exc:
            report["warnings"].append({"message": f"direction {k}: {exc}"})
            ppt = None
        rows.append({
            "direction": _vec(u),
            "w_support": _num(w[k]),
            "seesaw": _num(saw),
            "ppt": None if ppt is None else _num(ppt),
        })
    report["directions"] = rows
    diffs = [abs(r["seesaw"] - r["ppt"]) for r in rows if r["ppt"] is not None]
    report["max_seesaw_ppt_difference"] = _num(max(diffs, default=0.0))
    try:
        analysis = faces.analyze(triple, settings)
        tangency = separable.tangency_check(triple, analysis.faces, settings)
        report["tangency"] = [
            {"direction": _vec(t.direction), "rank": t.rank, "distance": _num(t.distance), "passed": bool(t.passed)}
            for t in tangency
        ]
        for t in tangency:
            if not t.passed:
                report["warnings"].append({"claim": t.claim, "message": "FALSIFICATION", "direction": _vec(t.direction)})
    except Exception as exc:  # tangency is auxiliary to the per-direction values
        report["warnings"].append({"message": f"tangency check skipped: {exc}"})
    return report


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    settings = _settings(args)
    triple = _load(args.input, settings)
    report, code = classify_report(triple, settings)
    if args.json or args.out:
        _emit(report, args.out)
    else:
        print(f"class {report.get('class_index')} counts {report.get('counts')} "
              f"corners {report.get('corner_points', [])}")
        for w in report["warnings"]:
            print("warning:", w["message"])
    return code


def cmd_boundary(args) -> int:
    settings = _settings(args)
    if args.dirs < 4:
        raise UsageError("--dirs must be at least 4")
    triple = _load(args.input, settings)
    if args.sep and triple.n != 4:
        raise UsageError("--sep needs 4x4 matrices")
    out = Path(args.out)
    mesh = geometry.sample_boundary(triple, args.dirs)
    io.write_obj(out, mesh.vertices, mesh.triangles)
    summary = {"w_mesh": str(out), "w_vertices": len(mesh.vertices), "degenerate": mesh.degenerate}
    if args.sep:
        sep = separable.sample_sep_boundary(triple, args.dirs, settings=settings)
        sep_path = out.with_name(out.stem + "_sep.obj")
        io.write_obj(sep_path, sep.vertices, sep.triangles)
        gap_path = out.with_name(out.stem + "_gap.csv")
        w = geometry.support_values(triple, sep.directions)
        with open(gap_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["ux", "uy", "uz", "w_support", "sep_support", "gap"])
            for u, a, b in zip(sep.directions, w, sep.support_values):
                writer.writerow([f"{x:.12g}" for x in (*u, a, b, b - a)])
        summary.update(sep_mesh=str(sep_path), sep_vertices=len(sep.vertices), gap_csv=str(gap_path))
    if args.json:
        _emit(summary, None)
    else:
        for k, v in summary.items():
            print(f"{k}: {v}")
    return EXIT_DEGENERATE if mesh.degenerate else EXIT_OK


def cmd_separable(args) -> int:
    settings = _settings(args)
    triple = _load(args.input, settings)
    _emit(separable_report(triple, settings, args.dirs), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    settings = _settings(args)
    triple = _load(args.input, settings)
    report = _base_report(triple, settings, "spectrum")
    report["joint_spectrum"], report["corner_points"] = _spectrum_json(triple, settings)
    _emit(report, args.out)
    return EXIT_OK


def _class_table(results) -> list[str]:
    rows = {r.ids[0]: r.data for r in results if r.criterion == 1 and r.data}
    if not rows:
        return []
    lines = ["example  expected (a0,a1,a2,a3)  computed      class"]
    for i in fixtures.CLASS_EXAMPLES:
        if i in rows:
            d = rows[i]
            mark = "ok" if tuple(d["computed"]) == tuple(d["expected"]) else "MISMATCH"
            lines.append(f"{i:<8} {str(d['expected']):<23} {str(d['computed']):<13} {d['class_index']}  {mark}")
    reproduced = {rows[i]["class_index"] for i in rows if tuple(rows[i]["computed"]) == tuple(rows[i]["expected"])}
    if len(rows) == len(fixtures.CLASS_EXAMPLES):
        lines.append(f"{len(reproduced)}/{len(CLASS_TABLE)} classes reproduced")
    return lines


def cmd_verify_paper(args) -> int:
    settings = _settings(args)
    try:
        results = verify.run(settings, args.only, progress=None if args.json else lambda r: print(r.line(), flush=True))
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    failed = [r for r in results if r.gated and not r.passed]
    if args.json:
        _emit({
            "schema": SCHEMA,
            "command": "verify-paper",
            "settings": settings.as_dict(),
            "results": [
                {"criterion": r.criterion, "name": r.name, "passed": bool(r.passed), "gated": r.gated,
                 "detail": r.detail, "ids": list(r.ids)}
                for r in results
            ],
        }, args.out)
    else:
        for line in _class_table(results):
            print(line)
        if failed:
            ids = sorted({i for r in failed for i in r.ids})
            print(f"{len(failed)} check(s) failed; examples: {', '.join(ids) or '-'}")
        else:
            print(f"all {sum(r.gated for r in results)} checks passed")
    return EXIT_ANOMALY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jnrange", description="Joint numerical ranges of hermitian triples.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q, out_help="write JSON output to this file"):
        q.add_argument("--seed", type=int, help="master random seed")
        q.add_argument("--tol", type=float, help=f"base tolerance (default {BASE_TOL:g}); all tolerances scale with it")
        q.add_argument("--out", help=out_help)
        q.add_argument("--json", action="store_true", help="print machine-readable JSON")

    q = sub.add_parser("classify", help="rank-one tuples, faces, class index and corners of a 4x4 triple")
    q.add_argument("input")
    common(q)
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("boundary", help="sample the boundary of W (and W^sep) into OBJ meshes")
    q.add_argument("input")
    q.add_argument("--dirs", type=int, default=500)
    q.add_argument("--sep", action="store_true", help="also sample the separable range (n = 4)")
    q.add_argument("--restarts", type=int)
    common(q, "OBJ file for the W mesh")
    q.set_defaults(func=cmd_boundary)

    q = sub.add_parser("separable", help="see-saw and PPT separable supports per direction")
    q.add_argument("input")
    q.add_argument("--dirs", type=int, default=100)
    q.add_argument("--restarts", type=int)
    common(q)
    q.set_defaults(func=cmd_separable)

    q = sub.add_parser("spectrum", help="joint spectrum and corner verdicts")
    q.add_argument("input")
    common(q)
    q.set_defaults(func=cmd_spectrum)

    q = sub.add_parser("verify-paper", help="run the golden checks on the stored examples")
    q.add_argument("--only", nargs="+", metavar="ID", help="restrict to these example ids")
    common(q)
    q.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "boundary" and args.out is None:
        print("jnrange boundary: error: --out is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jnrange {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SignatureError as exc:
        print(f"jnrange {args.command}: {exc}", file=sys.stderr)
        return EXIT_ANOMALY


if __name__ == "__main__":
    sys.exit(main())
