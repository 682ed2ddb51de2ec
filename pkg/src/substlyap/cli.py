"""Command-line front end.

Subcommands:
  analyze  classify one substitution, JSON (default) or text report
  mahler   log-Mahler measure of an integer polynomial, both methods
  scan     exhaustive closed-form scan over one image length
  trace    CSV convergence trace along a single orbit

Examples:
  substlyap analyze "a->ab;b->ba"
  substlyap analyze "a->ab;b->aa" --numeric --iters 2000 --samples 100 --seed 7
  substlyap mahler --coeffs -1,-1,1,-1
  substlyap scan --length 5 --format csv
  substlyap trace "a->abbab;b->baaba" --k random --iters 5000 --seed 1

Exit codes: 0 success (any verdict), 2 input error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version as _pkg_version

from .classify import ScanResult, SpectralReport, classify, classify_nary, scan
from .errors import ResampleExhausted, SubstLyapError
from .lyapunov import CocycleConfig, cocycle_trace
from .mahler import kronecker_certify, mahler_quadrature, mahler_roots
from .polynomial import IntPolynomial
from .substitution import Substitution, parse

SCHEMA_VERSION = "1"

try:
    TOOL_VERSION = _pkg_version("substlyap")
except PackageNotFoundError:  # running from a source tree
    TOOL_VERSION = "0.1.0"

#: report keys holding values in nats, rescaled by --bits
_NAT_KEYS = {
    "chi_min",
    "chi_max",
    "stderr",
    "value",
    "value_roots",
    "value_quadrature",
    "mahler_value",
    "min_chi_min",
}


@dataclass(frozen=True)
class ReportDocument:
    """Versioned envelope around one analysis payload."""

    command: str
    units: str
    input: dict
    report: dict
    schema_version: str = SCHEMA_VERSION
    tool_version: str = TOOL_VERSION
    timing_ms: dict = field(default_factory=dict)
    include_timing: bool = False

    def to_dict(self) -> dict:
        doc = {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "command": self.command,
            "units": self.units,
            "input": self.input,
            "report": self.report,
        }
        if self.include_timing:
            doc["timing_ms"] = self.timing_ms
        return doc

    def to_json(self) -> str:
        return json.dumps(_round_floats(self.to_dict()), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        doc = json.loads(text)
        return cls(
            command=doc["command"],
            units=doc["units"],
            input=doc["input"],
            report=doc["report"],
            schema_version=doc["schema_version"],
            tool_version=doc["tool_version"],
            timing_ms=doc.get("timing_ms", {}),
            include_timing="timing_ms" in doc,
        )


def _round_floats(obj, digits: int = 12):
    """Round every float to 12 significant digits, recursively."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    return obj


def _to_bits(obj):
    if isinstance(obj, dict):
        return {
            k: (v / math.log(2) if k in _NAT_KEYS and isinstance(v, float) else _to_bits(v))
            for k, v in obj.items()
        }
    if isinstance(obj, (list, tuple)):
        return [_to_bits(v) for v in obj]
    return obj


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _load_rules(args) -> Substitution:
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            return parse(fh.read())
    if not args.rules:
        raise SubstLyapError("give rules inline or via --file")
    return parse(args.rules)


def _parse_pairing(text: str) -> dict[str, str]:
    pairing: dict[str, str] = {}
    for clause in text.split(","):
        left, sep, right = clause.partition(":")
        if not sep or not left.strip() or not right.strip():
            raise SubstLyapError(f"bad pairing clause {clause!r}; expected x:y,...")
        pairing[left.strip()] = right.strip()
    return pairing


def _emit(doc: ReportDocument, args, text_lines: list[str]) -> None:
    if getattr(args, "text", False):
        print("\n".join(text_lines))
    else:
        print(doc.to_json())


def _report_text(report: dict, units: str) -> list[str]:
    lines = [f"rules      {';'.join(f'{a}->{w}' for a, w in report['substitution'].items())}"]
    lines.append(f"length     {report['length']}")
    if report.get("ida"):
        lines.append(f"ida        dimension {report['ida']['dimension']} ({report['ida']['type']})")
    if report.get("mahler") is not None:
        certified = " (zero, certified)" if report["mahler"]["is_zero_certified"] else ""
        lines.append(f"mahler     {_fmt(report['mahler']['value'])} {units}{certified}")
    for key, label in (("exponents_closed", "closed"), ("exponents_numeric", "numeric")):
        pair = report.get(key)
        if pair is not None:
            extra = "" if pair["method"] == "ClosedForm" else f" +- {_fmt(pair['stderr'])}"
            lines.append(
                f"{label:10s} chi_min {_fmt(pair['chi_min'])}  chi_max {_fmt(pair['chi_max'])}"
                f" {units}{extra}"
            )
    for block in report.get("blocks", ()):
        if block["exponents"] is None:
            lines.append(f"block      {block['name']}: skipped ({block['skipped_reason']})")
        else:
            p = block["exponents"]
            tag = " unitary/sqrt(L)" if block["unitary_scaled"] else ""
            lines.append(
                f"block      {block['name']}: chi_min {_fmt(p['chi_min'])} "
                f"chi_max {_fmt(p['chi_max'])} +- {_fmt(p['stderr'])}{tag}"
            )
    lines.append(f"verdict    {report['verdict']}")
    for a in report.get("annotations", ()):
        lines.append(f"annotation {a}")
    for c in report.get("caveats", ()):
        lines.append(f"caveat     {c}")
    return lines


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    s = _load_rules(args)
    cfg = None
    if args.numeric:
        cfg = CocycleConfig(iters=args.iters, samples=args.samples, seed=args.seed)
    if s.size == 2:
        report: SpectralReport = classify(s, cfg)
    else:
        pairing = _parse_pairing(args.pairing) if args.pairing else None
        report = classify_nary(s, pairing, cfg or CocycleConfig(seed=args.seed))
    payload = report.to_dict()
    units = "bits" if args.bits else "nats"
    if args.bits:
        payload = _to_bits(payload)
    doc = ReportDocument(
        command="analyze",
        units=units,
        input={"rules": str(s), "numeric": bool(args.numeric), "seed": args.seed},
        report=payload,
        timing_ms={"total": (time.perf_counter() - t0) * 1e3},
        include_timing=args.timings,
    )
    _emit(doc, args, _report_text(_round_floats(payload), units))
    return 0


def cmd_mahler(args) -> int:
    t0 = time.perf_counter()
    try:
        coeffs = [int(c) for c in args.coeffs.split(",")]
    except ValueError as exc:
        raise SubstLyapError(f"bad coefficient list {args.coeffs!r}") from exc
    f = IntPolynomial(coeffs)
    by_roots = mahler_roots(f)
    by_quad = mahler_quadrature(f, nodes=args.nodes)
    payload = {
        "coefficients": list(f.coeffs),
        "degree": f.degree,
        "value": by_roots.value if not by_roots.is_zero_certified else 0.0,
        "value_roots": by_roots.value,
        "value_quadrature": by_quad.value,
        "kronecker": by_roots.is_zero_certified,
        "roots": [[z.real, z.imag] for z in by_roots.roots],
        "nodes": args.nodes,
    }
    units = "bits" if args.bits else "nats"
    if args.bits:
        payload = _to_bits(payload)
    doc = ReportDocument(
        command="mahler",
        units=units,
        input={"coeffs": args.coeffs, "nodes": args.nodes},
        report=payload,
        timing_ms={"total": (time.perf_counter() - t0) * 1e3},
        include_timing=args.timings,
    )
    text = [
        f"polynomial coefficients {list(f.coeffs)} (constant term first)",
        f"mahler (roots)      {_fmt(payload['value_roots'])} {units}",
        f"mahler (quadrature) {_fmt(payload['value_quadrature'])} {units}",
        f"kronecker certified zero: {payload['kronecker']}",
    ]
    _emit(doc, args, text)
    return 0


def _scan_rows(result: ScanResult) -> list[dict]:
    rows = []
    for row in result.rows:
        rows.append(
            {
                "rules": ";".join(f"{a}->{w}" for a, w in row.rules.items()),
                "type": row.column_type,
                "n_coincident_a": row.partition_sizes[0],
                "n_coincident_b": row.partition_sizes[1],
                "n_bijective_id": row.partition_sizes[2],
                "n_bijective_swap": row.partition_sizes[3],
                "column_difference": " ".join(str(c) for c in row.column_difference),
                "mahler": row.mahler_value,
                "mahler_zero_certified": row.mahler_zero_certified,
                "chi_min": row.chi_min,
                "chi_max": row.chi_max,
                "verdict": row.verdict,
            }
        )
    return rows


def cmd_scan(args) -> int:
    result = scan(args.length)
    rows = _scan_rows(result)
    summary = {
        "length": result.length,
        "pairs_enumerated": result.total_enumerated,
        "rows": len(rows),
        "min_chi_min": result.min_chi_min,
        "all_chi_min_positive": result.all_chi_min_positive,
    }
    if args.format == "csv":
        out = io.StringIO()
        fields = list(rows[0].keys()) if rows else ["rules"]
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(_round_floats(row))
        out.write(
            f"# summary length={summary['length']} rows={summary['rows']} "
            f"min_chi_min={_fmt(summary['min_chi_min'])} "
            f"all_positive={summary['all_chi_min_positive']}\n"
        )
        sys.stdout.write(out.getvalue())
    else:
        for row in rows:
            print(json.dumps(_round_floats(row)))
        print(json.dumps(_round_floats({"summary": summary})))
    return 0


def cmd_trace(args) -> int:
    s = _load_rules(args)
    from .fourier import fourier_matrix
    from .mahler import column_difference

    if s.size == 2 and column_difference(s).is_zero:
        raise SubstLyapError("degenerate rule: det B == 0 identically, nothing to trace")
    B = fourier_matrix(s)
    k0 = None if args.k == "random" else float(args.k)
    data = cocycle_trace(B, s.length, k0, args.iters, seed=args.seed)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "det_average", "chi_min", "chi_max"])
    for i in range(args.iters):
        writer.writerow(
            [i + 1, _fmt(data["det_average"][i]), _fmt(data["chi_min"][i]), _fmt(data["chi_max"][i])]
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="substlyap",
        description="Lyapunov exponents and diffraction certificates for constant-length substitutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="classify one substitution rule")
    pa.add_argument("rules", nargs="?", help='rule text like "a->ab;b->ba"')
    pa.add_argument("--file", help="read rules (text or JSON form) from a file")
    pa.add_argument("--numeric", action="store_true", help="attach numeric cocycle exponents")
    pa.add_argument("--iters", type=int, default=2000)
    pa.add_argument("--samples", type=int, default=100)
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--pairing", help="letter pairing for d > 2, e.g. a:A,b:B")
    pa.add_argument("--json", dest="text", action="store_false", default=False)
    pa.add_argument("--text", dest="text", action="store_true")
    pa.add_argument("--bits", action="store_true", help="report in log base 2")
    pa.add_argument("--timings", action="store_true", help="include timing (breaks byte determinism)")
    pa.set_defaults(func=cmd_analyze)

    pm = sub.add_parser("mahler", help="log-Mahler measure of an integer polynomial")
    pm.add_argument("--coeffs", required=True, help="comma-separated, constant term first")
    pm.add_argument("--nodes", type=int, default=1 << 16)
    pm.add_argument("--json", dest="text", action="store_false", default=False)
    pm.add_argument("--text", dest="text", action="store_true")
    pm.add_argument("--bits", action="store_true")
    pm.add_argument("--timings", action="store_true")
    pm.set_defaults(func=cmd_mahler)

    ps = sub.add_parser("scan", help="exhaustive closed-form scan at one length")
    ps.add_argument("--length", type=int, required=True)
    ps.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    ps.set_defaults(func=cmd_scan)

    pt = sub.add_parser("trace", help="CSV convergence trace along one orbit")
    pt.add_argument("rules", nargs="?")
    pt.add_argument("--file")
    pt.add_argument("--k", default="random", help="starting frequency, a float or 'random'")
    pt.add_argument("--iters", type=int, default=2000)
    pt.add_argument("--seed", type=int, default=0)
    pt.set_defaults(func=cmd_trace)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ResampleExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SubstLyapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
