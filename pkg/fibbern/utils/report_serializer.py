"""
Utility functions for rendering verification reports, series verdicts,
ledger tables and value tables as JSON, CSV or text.
"""
import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .catalog import CATALOG
from .exact import DensePoly, QuadExt, format_poly, format_quad
from .models import (
    DiscrepancyEntry,
    IdentityVerdict,
    SeriesVerdict,
    VerificationReport,
)

CSV_COLUMNS = ["identity", "params", "status", "lhs", "rhs", "note"]
FORMATS = ("text", "json", "csv")


def _fraction_text(value: Any) -> str:
    # always p/q, even for integers
    return f"{value.numerator}/{value.denominator}"


def value_to_dict(value: Union[QuadExt, DensePoly, None]) -> Any:
    """JSON form: QuadExt as {"rat", "irr"}, DensePoly as {"coeffs": [...]}."""
    if value is None:
        return None
    if isinstance(value, DensePoly):
        return {"coeffs": [value_to_dict(c) for c in value.coeffs]}
    value = QuadExt.lift(value)
    return {"rat": _fraction_text(value.rat), "irr": _fraction_text(value.irr)}


def value_to_text(value: Union[QuadExt, DensePoly, None]) -> str:
    if value is None:
        return ""
    if isinstance(value, DensePoly):
        return format_poly(value)
    return format_quad(value)


def _used_params(record: IdentityVerdict) -> Dict[str, Any]:
    entry = CATALOG[record.id]
    params: Dict[str, Any] = {}
    for name in ("n", "j", "m", "q", "sign", "x", "z"):
        value = getattr(record.params, name)
        if value is None or name not in entry.axes + (entry.printed_axes or ()):
            continue
        params[name] = value_to_dict(value) if isinstance(value, QuadExt) else value
    return params


def report_to_dict(report: VerificationReport) -> Dict[str, Any]:
    """Convert a VerificationReport to the JSON-ready structure."""
    data: Dict[str, Any] = {
        "summary": {
            "identities": len(report.summaries),
            "equal": report.total_equal,
            "unequal": report.total_unequal,
            "not_applicable": report.total_not_applicable,
        },
        "identities": [
            {
                "identity": s.identity.value,
                "equal": s.equal,
                "unequal": s.unequal,
                "not_applicable": s.not_applicable,
            }
            for s in report.summaries
        ],
        "records": [
            {
                "identity": r.id.value,
                "params": _used_params(r),
                "status": r.status.value,
                "lhs": value_to_dict(r.lhs),
                "rhs": value_to_dict(r.rhs),
                "note": r.note,
            }
            for r in report.records
        ],
    }
    if report.oracle is not None:
        data["summary"]["oracle_disagreements"] = report.oracle_disagreements
        data["oracle"] = [o.model_dump(mode="json") for o in report.oracle]
    return data


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def report_to_csv(report: VerificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.records:
        writer.writerow([
            r.id.value,
            r.params.label(),
            r.status.value,
            value_to_text(r.lhs),
            value_to_text(r.rhs),
            r.note or "",
        ])
    return buffer.getvalue()


def report_to_text(report: VerificationReport) -> str:
    """Summary table per identity, then every Unequal record."""
    lines = [f"{'identity':<12} {'equal':>8} {'unequal':>8} {'n/a':>8}"]
    for s in report.summaries:
        lines.append(f"{s.identity.value:<12} {s.equal:>8} {s.unequal:>8} {s.not_applicable:>8}")
    lines.append(
        f"{'total':<12} {report.total_equal:>8} {report.total_unequal:>8} {report.total_not_applicable:>8}"
    )

    if report.oracle is not None:
        lines.append("")
        lines.append(f"{'oracle':<12} {'path':>6} {'agree':>8} {'disagree':>8}")
        for o in report.oracle:
            lines.append(f"{o.identity.value:<12} {o.path:>6} {o.agree:>8} {o.disagree:>8}")
            for label in o.disagreements:
                lines.append(f"  disagrees at {label}")

    unequal = report.unequal_records()
    if unequal:
        lines.append("")
        lines.append("Unequal:")
        for r in unequal:
            lines.append(f"  {r.id.value} [{r.params.label()}]")
            lines.append(f"    lhs = {value_to_text(r.lhs)}")
            lines.append(f"    rhs = {value_to_text(r.rhs)}")
    return "\n".join(lines) + "\n"


def render_report(report: VerificationReport, format: str = "text") -> str:
    """
    Render a verification report.

    Args:
        report: Report to render
        format: "text", "json" or "csv"

    Raises:
        ValueError: For an unknown format
    """
    if format == "json":
        return report_to_json(report)
    if format == "csv":
        return report_to_csv(report)
    if format == "text":
        return report_to_text(report)
    raise ValueError(f"Unsupported format: {format}. Use one of {', '.join(FORMATS)}.")


def render_series(verdicts: Sequence[SeriesVerdict], format: str = "text") -> str:
    """Render functional-equation verdicts."""
    if format == "json":
        return json.dumps([v.model_dump(mode="json") for v in verdicts], indent=2, ensure_ascii=False) + "\n"
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["equation", "j", "order", "x", "confirmed", "checked_through", "first_mismatch"])
        for v in verdicts:
            writer.writerow([
                v.equation.value, v.j, v.order, v.x or "", v.confirmed, v.checked_through,
                "" if v.first_mismatch is None else v.first_mismatch,
            ])
        return buffer.getvalue()
    if format != "text":
        raise ValueError(f"Unsupported format: {format}. Use one of {', '.join(FORMATS)}.")
    lines = []
    for v in verdicts:
        label = f"{v.equation.value} j={v.j}" + (f" x={v.x}" if v.x is not None else "")
        if v.confirmed:
            lines.append(f"{label}: confirmed to order {v.order}")
        else:
            lines.append(f"{label}: first mismatch at z^{v.first_mismatch} (checked through {v.checked_through})")
    return "\n".join(lines) + "\n"


def render_ledger(entries: Sequence[DiscrepancyEntry], format: str = "text") -> str:
    """Render the evidenced discrepancy ledger."""
    if format == "json":
        return json.dumps([e.model_dump(mode="json") for e in entries], indent=2, ensure_ascii=False) + "\n"
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([
            "identity", "kind", "printed_form", "corrected_form", "grid",
            "corrected_equal", "corrected_total", "printed_unequal", "printed_total", "oracle",
        ])
        for e in entries:
            ev = e.evidence
            writer.writerow([
                e.id.value, e.kind, e.printed_form, e.corrected_form,
                ev.grid if ev else "",
                ev.corrected_equal if ev else "", ev.corrected_total if ev else "",
                ev.printed_unequal if ev else "", ev.printed_total if ev else "",
                e.oracle_evidence,
            ])
        return buffer.getvalue()
    if format != "text":
        raise ValueError(f"Unsupported format: {format}. Use one of {', '.join(FORMATS)}.")
    lines = []
    for e in entries:
        lines.append(f"{e.id.value} ({e.kind})")
        lines.append(f"  printed:   {e.printed_form}")
        lines.append(f"  corrected: {e.corrected_form}")
        if e.evidence:
            ev = e.evidence
            lines.append(f"  grid:      {ev.grid}")
            lines.append(f"  corrected form Equal at {ev.corrected_equal}/{ev.corrected_total} points")
            if ev.printed_total:
                lines.append(
                    f"  printed form Unequal at {ev.printed_unequal}/{ev.printed_total} points"
                    f" (first at {ev.first_printed_failure})"
                )
            else:
                lines.append("  printed form has no evaluable equality")
        lines.append(f"  oracle:    {e.oracle_evidence}")
        lines.append("")
    return "\n".join(lines)


def render_table(
    rows: Sequence[Tuple[Any, Any]],
    format: str = "text",
    header: Optional[List[str]] = None,
) -> str:
    """Render (key, value) rows; text rows read "key: value"."""
    header = header or ["n", "value"]
    if format == "json":
        data = [{header[0]: i, header[1]: _table_value(v, as_json=True)} for i, v in rows]
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for i, v in rows:
            writer.writerow([i, _table_value(v)])
        return buffer.getvalue()
    if format != "text":
        raise ValueError(f"Unsupported format: {format}. Use one of {', '.join(FORMATS)}.")
    return "".join(f"{i}: {_table_value(v)}\n" for i, v in rows)


def _table_value(value: Any, as_json: bool = False) -> Any:
    if isinstance(value, QuadExt):
        return value_to_dict(value) if as_json else format_quad(value)
    if isinstance(value, int):
        return value
    return str(value)
