"""Command line interface: classify, inspect, centralize, batch.

Exit status is 0 on success, 2 for usage, parse or validation errors and 3
for internal errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .centralizer import CentralizerError, centralizer_index
from .classify import Verdict, classify, warnings
from .rootsys import CartanDatum, positive_roots
from .titsindex import (
    FieldContext,
    IndexSyntaxError,
    IndexValidationError,
    IsogenyTag,
    TitsIndex,
    anisotropic_kernel,
    division_degree,
    format_index,
    k_rank,
    m_of_G,
    parse_index,
    tits_name,
)

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3

ISOGENY_CHOICES = {"sc": "simply_connected", "simply_connected": "simply_connected",
                   "adjoint": "adjoint", "other": "other"}


def dimension_stats(index: TitsIndex) -> dict[str, int]:
    """dim G, dim Z_G(S) and the dimension of the affine factor G = Z_G(S) x A."""
    roots = len(positive_roots(index.datum))
    kernel_roots = sum(
        len(positive_roots(CartanDatum.of(c.base_type, c.rank))) for c in anisotropic_kernel(index)
    )
    group = index.rank + 2 * roots
    centralizer = index.rank + 2 * kernel_roots
    return {"group": group, "centralizer": centralizer, "affine": group - centralizer}


def build_report(index: TitsIndex, isogeny="other", field="general") -> dict:
    isogeny, field = IsogenyTag(isogeny), FieldContext(field)
    verdict: Verdict = classify(index, isogeny, field)
    return {
        "index": format_index(index),
        "isogeny": isogeny.value,
        "field": field.value,
        "rank": index.rank,
        "k_rank": k_rank(index),
        "m": m_of_G(index),
        "kernel": [
            {"type": c.base_type, "rank": c.rank, "vertices": sorted(c.vertices)}
            for c in anisotropic_kernel(index)
        ],
        "degree": division_degree(index),
        "name": tits_name(index),
        "dimensions": dimension_stats(index),
        "verdict": verdict.to_json(),
        "warnings": warnings(index, field),
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def render_text(report: dict) -> str:
    kernel = ", ".join(
        f"{k['type']}{k['rank']} on {{{','.join(map(str, k['vertices']))}}}" for k in report["kernel"]
    ) or "none"
    dims = report["dimensions"]
    v = report["verdict"]
    lines = [
        f"index:    {report['index']}" + (f"  ({report['name']})" if report["name"] else ""),
        f"isogeny:  {report['isogeny']}   field: {report['field']}",
        f"rank:     {report['rank']}   k-rank: {report['k_rank']}   m(G): {report['m']}"
        f"   degree: {report['degree'] if report['degree'] is not None else '-'}",
        f"kernel:   {kernel}",
        f"dims:     G {dims['group']}, Z_G(S) {dims['centralizer']}, affine {dims['affine']}",
        f"verdict:  {v['class']}",
    ]
    lines += [f"  {r['id']}: {r['cite']}" for r in v["rules"]]
    lines += [f"  note: {n}" for n in v["notes"]]
    lines += [f"warning: {w}" for w in report["warnings"]]
    return "\n".join(lines)


def centralize_report(index: TitsIndex, keep: Sequence[int]) -> dict:
    sub = centralizer_index(index, keep)
    return {
        "index": format_index(index),
        "keep": [sorted(o) for o in sub.kept],
        "split_torus_dim": sub.split_torus_dim,
        "original": sub.original_labels(),
        "result": str(sub),
        "components": [
            {
                "index": format_index(c.index),
                "name": tits_name(c.index),
                "labels": {str(old): new for old, new in sorted(c.relabeling().items())},
                "permuted": c.permuted,
            }
            for c in sub.components
        ],
    }


def _parse_keep(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--keep expects comma-separated vertices, got {text!r}")


def _batch_line(line: str) -> tuple[str, str, str]:
    cols = line.rstrip("\n").split("\t")
    idx = cols[0].strip()
    iso = cols[1].strip() if len(cols) > 1 and cols[1].strip() else "other"
    fld = cols[2].strip() if len(cols) > 2 and cols[2].strip() else "general"
    return idx, iso, fld


def run_batch(lines) -> list[dict]:
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        idx, iso, fld = _batch_line(line)
        try:
            iso_tag = IsogenyTag(ISOGENY_CHOICES[iso.lower()])
            out.append(build_report(parse_index(idx), iso_tag, FieldContext(fld.lower())))
        except (IndexSyntaxError, IndexValidationError, KeyError, ValueError) as exc:
            msg = str(exc) if not isinstance(exc, KeyError) else f"unknown isogeny {iso!r}"
            out.append({"line": lineno, "input": line.rstrip("\n"), "error": msg})
    return out


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="titsrat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_verdict=True):
        sp.add_argument("--index", required=True, help='index notation, e.g. "^1A8(3):[3,6]"')
        if with_verdict:
            sp.add_argument("--isogeny", choices=sorted(ISOGENY_CHOICES), default="other")
            sp.add_argument("--field", choices=[f.value for f in FieldContext], default="general")
        sp.add_argument("--json", action="store_true", help="emit JSON")

    common(sub.add_parser("classify", help="rationality verdict with cited rules"))
    common(sub.add_parser("inspect", help="index invariants, dimensions and verdict preview"))
    c = sub.add_parser("centralize", help="index of a split-torus centralizer")
    common(c, with_verdict=False)
    c.add_argument("--keep", type=_parse_keep, default=[],
                   help="distinguished orbits kept circled, named by any vertex, e.g. \"4\"")
    b = sub.add_parser("batch", help="one INDEX<TAB>ISOGENY<TAB>FIELD per line -> JSON array")
    b.add_argument("file", help="input file, '-' for stdin")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "batch":
            if args.file == "-":
                records = run_batch(sys.stdin)
            else:
                with open(args.file, encoding="utf-8") as fh:
                    records = run_batch(fh)
            print(json.dumps(records, sort_keys=True, indent=2, ensure_ascii=False))
            return EXIT_OK
        index = parse_index(args.index)
        if args.command == "centralize":
            rep = centralize_report(index, args.keep)
            if args.json:
                print(dumps(rep))
            else:
                print(f"{rep['original']}  ->  {rep['result']}")
                print(f"centralized split torus dimension: {rep['split_torus_dim']}")
                for comp in rep["components"]:
                    label_map = ", ".join(f"{o}->{n}" for o, n in comp["labels"].items())
                    extra = f" ({comp['name']})" if comp["name"] else ""
                    print(f"  {comp['index']}{extra}: {label_map}")
            return EXIT_OK
        rep = build_report(index, ISOGENY_CHOICES[args.isogeny], args.field)
        if args.command == "classify" and not args.json:
            cites = "; ".join(f"{r['id']} {r['cite']}" for r in rep["verdict"]["rules"])
            print(f"{rep['index']}: {rep['verdict']['class']}" + (f"  [{cites}]" if cites else ""))
            for n in rep["verdict"]["notes"]:
                print(f"  note: {n}")
            for w in rep["warnings"]:
                print(f"  warning: {w}")
        elif args.json:
            print(dumps(rep))
        else:
            print(render_text(rep))
        return EXIT_OK
    except IndexValidationError as exc:
        print("invalid index:", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_USAGE
    except (IndexSyntaxError, CentralizerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
