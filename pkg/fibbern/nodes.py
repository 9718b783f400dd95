"""
Node implementations for the identity verification system.
"""
import fnmatch
import logging
from typing import Dict, Any, List, Tuple

from pocketflow import Node, BatchNode

from fibbern.utils import (
    CATALOG,
    DiscrepancyEntry,
    FunctionalEquation,
    GridSpec,
    IdentityId,
    OracleSummary,
    ParameterError,
    SeriesVerdict,
    VerdictStatus,
    VerificationReport,
    check_functional_equation,
    collect_evidence,
    load_grid_spec,
    load_ledger,
    oracle_check,
    oracle_path,
    render_ledger,
    render_report,
    render_series,
    save_report,
    verify_grid,
)
from fibbern.utils.oracles import ORACLES


def resolve_ids(pattern: str) -> List[IdentityId]:
    """
    Expand a comma-separated list of tag globs into catalog ids.

    Args:
        pattern: e.g. "L1*,T12A"; empty or "all" selects the whole catalog

    Returns:
        Matching ids in catalog order

    Raises:
        ParameterError: If any glob matches no tag
    """
    tags = [tag.value for tag in IdentityId]
    if not pattern or pattern.strip().lower() == "all":
        return list(IdentityId)
    selected = set()
    for glob in (part.strip() for part in pattern.split(",")):
        if not glob:
            continue
        matches = fnmatch.filter(tags, glob.upper())
        if not matches:
            raise ParameterError(f"no identity matches '{glob}'")
        selected.update(matches)
    return [IdentityId(tag) for tag in tags if tag in selected]


def _store_output(shared: Dict[str, Any], content: str) -> None:
    """Keep rendered content in the shared store and write it to --out when given."""
    if "output" not in shared:
        shared["output"] = {}
    shared["output"]["content"] = content
    out = shared.get("input", {}).get("out")
    if out:
        shared["output"]["path"] = save_report(content, out)


class LoadCatalogNode(Node):
    """Node for resolving the identity filter and the verification grid."""

    def prep(self, shared: Dict[str, Any]) -> Dict[str, Any]:
        """Read the id filter and grid overrides from the input."""
        inputs = shared.get("input", {})
        return {
            "ids": inputs.get("ids", ""),
            "grid": inputs.get("grid"),
            "overrides": inputs.get("grid_overrides", {}),
        }

    def exec(self, inputs: Dict[str, Any]) -> Dict[str, Any]:
        """Validate tags before any computation and build the grid."""
        ids = resolve_ids(inputs["ids"])
        grid = inputs["grid"] if inputs["grid"] is not None else load_grid_spec(inputs["overrides"])
        return {"ids": ids, "grid": grid}

    def post(self, shared: Dict[str, Any], prep_res: Dict[str, Any], exec_res: Dict[str, Any]) -> str:
        """Store the selection in the shared store."""
        shared["catalog"] = exec_res
        grid: GridSpec = exec_res["grid"]
        logging.info(f"Selected {len(exec_res['ids'])} of {len(CATALOG)} catalog identities")
        logging.info(
            f"Grid: n {grid.n_min}..{grid.n_max}, j {grid.j_min}..{grid.j_max}, "
            f"m {grid.m_min}..{grid.m_max}, q {grid.q_min}..{grid.q_max}"
        )
        return "default"


class EvaluateGridNode(Node):
    """Node for evaluating every selected identity over the grid."""

    def prep(self, shared: Dict[str, Any]) -> Dict[str, Any]:
        catalog = shared.get("catalog", {})
        if not catalog.get("ids"):
            raise ValueError("No identities selected. Run LoadCatalogNode first.")
        return {
            "ids": catalog["ids"],
            "grid": catalog["grid"],
            "jobs": shared.get("input", {}).get("jobs", 1),
        }

    def exec(self, inputs: Dict[str, Any]) -> VerificationReport:
        return verify_grid(inputs["ids"], inputs["grid"], jobs=inputs["jobs"])

    def post(self, shared: Dict[str, Any], prep_res: Dict[str, Any], exec_res: VerificationReport) -> str:
        """Store the report; branch to the oracle cross-check when requested."""
        shared["results"] = exec_res
        logging.info(f"Evaluated {len(exec_res.records)} grid points")
        if shared.get("input", {}).get("oracle"):
            return "oracle"
        return "default"


class OracleCrossCheckNode(BatchNode):
    """Node for re-deriving every applicable grid point through its oracle path."""

    def prep(self, shared: Dict[str, Any]) -> List[Dict[str, Any]]:
        """One batch item per identity that has an oracle."""
        report: VerificationReport = shared["results"]
        items: Dict[IdentityId, Dict[str, Any]] = {}
        for record in report.records:
            if record.id not in ORACLES or record.status is VerdictStatus.NOT_APPLICABLE:
                continue
            item = items.setdefault(record.id, {"tag": record.id, "points": []})
            item["points"].append((record.params, record.status))
        return list(items.values())

    def exec(self, item: Dict[str, Any]) -> OracleSummary:
        tag: IdentityId = item["tag"]
        summary = OracleSummary(identity=tag, path=oracle_path(tag))
        for params, direct_status in item["points"]:
            if oracle_check(tag, params).status is direct_status:
                summary.agree += 1
            else:
                summary.disagree += 1
                summary.disagreements.append(params.label())
        return summary

    def post(self, shared: Dict[str, Any], prep_res: List[Dict[str, Any]], exec_res: List[OracleSummary]) -> str:
        report: VerificationReport = shared["results"]
        report.oracle = list(exec_res)
        shared["oracle"] = report.oracle
        disagree = sum(s.disagree for s in exec_res)
        logging.info(f"Oracle cross-check: {len(exec_res)} identities, {disagree} disagreements")
        for s in exec_res:
            if s.disagree:
                logging.warning(f"{s.identity.value}: {s.path} path disagrees at {s.disagree} points")
        return "default"


class AssembleReportNode(Node):
    """Node for rendering the verification report and saving it."""

    def prep(self, shared: Dict[str, Any]) -> Dict[str, Any]:
        report = shared.get("results")
        if report is None:
            raise ValueError("No results to assemble. Run EvaluateGridNode first.")
        return {"report": report, "format": shared.get("input", {}).get("format", "text")}

    def exec(self, inputs: Dict[str, Any]) -> str:
        return render_report(inputs["report"], inputs["format"])

    def post(self, shared: Dict[str, Any], prep_res: Dict[str, Any], exec_res: str) -> str:
        _store_output(shared, exec_res)
        logging.info(f"Rendered {prep_res['format']} report ({len(exec_res)} characters)")
        return "default"


class PrintSummaryNode(Node):
    """Node for logging a summary of the run."""

    def prep(self, shared: Dict[str, Any]) -> Dict[str, Any]:
        """Collect summary data."""
        return {
            "results": shared.get("results"),
            "series": shared.get("series"),
            "output": shared.get("output", {}),
        }

    def exec(self, summary_data: Dict[str, Any]) -> str:
        """Generate summary text."""
        lines = ["=" * 60, "FIBBERN - RUN SUMMARY", "=" * 60]
        report = summary_data.get("results")
        if report is not None:
            lines.append(f"Identities checked: {len(report.summaries)}")
            lines.append(
                f"Verdicts: {report.total_equal} Equal, {report.total_unequal} Unequal, "
                f"{report.total_not_applicable} NotApplicable"
            )
            if report.oracle is not None:
                lines.append(f"Oracle disagreements: {report.oracle_disagreements}")
        series = summary_data.get("series")
        if series is not None:
            confirmed = sum(1 for v in series if v.confirmed)
            lines.append(f"Functional equations confirmed: {confirmed}/{len(series)}")
        lines.append(f"Output saved to: {summary_data['output'].get('path', 'stdout')}")
        lines.append("=" * 60)
        return "\n".join(lines)

    def post(self, shared: Dict[str, Any], prep_res: Dict[str, Any], exec_res: str) -> str:
        """Log summary."""
        logging.info(exec_res)
        return "default"


class SeriesCheckNode(BatchNode):
    """Node for checking generating-function equations coefficient by coefficient."""

    def prep(self, shared: Dict[str, Any]) -> List[Dict[str, Any]]:
        """One batch item per (equation, j) pair."""
        inputs = shared.get("input", {})
        equations = inputs.get("equations") or list(FunctionalEquation)
        j_values = inputs.get("j_values") or [1]
        return [
            {"equation": FunctionalEquation(eq), "j": j, "order": inputs.get("order", 32), "x": inputs.get("x")}
            for eq in equations
            for j in j_values
        ]

    def exec(self, item: Dict[str, Any]) -> SeriesVerdict:
        return check_functional_equation(item["equation"], item["j"], item["order"], item["x"])

    def post(self, shared: Dict[str, Any], prep_res: List[Dict[str, Any]], exec_res: List[SeriesVerdict]) -> str:
        shared["series"] = list(exec_res)
        for verdict in exec_res:
            if not verdict.confirmed:
                logging.warning(
                    f"{verdict.equation.value} j={verdict.j}: first mismatch at z^{verdict.first_mismatch}"
                )
        _store_output(shared, render_series(exec_res, shared.get("input", {}).get("format", "text")))
        return "default"


class LoadLedgerNode(Node):
    """Node for loading the discrepancy ledger."""

    def prep(self, shared: Dict[str, Any]) -> Any:
        return shared.get("input", {}).get("ledger_file")

    def exec(self, ledger_file: Any) -> List[Tuple[DiscrepancyEntry, GridSpec]]:
        return load_ledger(ledger_file)

    def post(self, shared: Dict[str, Any], prep_res: Any, exec_res: List[Tuple[DiscrepancyEntry, GridSpec]]) -> str:
        shared["ledger"] = {"entries": exec_res}
        logging.info(f"Loaded {len(exec_res)} ledger entries")
        return "default"


class CollectEvidenceNode(BatchNode):
    """Node for backing each ledger entry with grid and oracle evidence."""

    def prep(self, shared: Dict[str, Any]) -> List[Tuple[DiscrepancyEntry, GridSpec]]:
        return shared["ledger"]["entries"]

    def exec(self, item: Tuple[DiscrepancyEntry, GridSpec]) -> DiscrepancyEntry:
        entry, grid = item
        return collect_evidence(entry, grid)

    def post(self, shared: Dict[str, Any], prep_res: Any, exec_res: List[DiscrepancyEntry]) -> str:
        shared["ledger"]["evidenced"] = list(exec_res)
        return "default"


class AssembleLedgerNode(Node):
    """Node for rendering the evidenced ledger."""

    def prep(self, shared: Dict[str, Any]) -> Dict[str, Any]:
        return {
            "entries": shared["ledger"]["evidenced"],
            "format": shared.get("input", {}).get("format", "text"),
        }

    def exec(self, inputs: Dict[str, Any]) -> str:
        return render_ledger(inputs["entries"], inputs["format"])

    def post(self, shared: Dict[str, Any], prep_res: Dict[str, Any], exec_res: str) -> str:
        _store_output(shared, exec_res)
        logging.info(f"Ledger: {len(prep_res['entries'])} entries confirmed")
        return "default"
