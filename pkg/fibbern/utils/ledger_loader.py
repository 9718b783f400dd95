"""
Utility functions for loading the discrepancy ledger from YAML and backing
each entry with machine evidence.
"""
import logging
from typing import Any, Dict, List, Optional, Tuple
from pathlib import Path
import yaml

from .catalog import CATALOG
from .grid import expand_entry
from .identities import evaluate_identity, oracle_check, oracle_path
from .models import DiscrepancyEntry, GridSpec, LedgerEvidence, VerdictStatus

logger = logging.getLogger(__name__)


def _get_ledger_path() -> Path:
    """Get the path to the ledger.yaml file."""
    current_dir = Path(__file__).parent.parent
    ledger_path = current_dir.parent / "config" / "ledger.yaml"

    if not ledger_path.exists():
        raise FileNotFoundError(
            f"Ledger file not found at {ledger_path}. "
            "Please ensure config/ledger.yaml exists in the project root."
        )

    return ledger_path


def load_ledger(path: Optional[Path] = None) -> List[Tuple[DiscrepancyEntry, GridSpec]]:
    """
    Load ledger entries and their evidence grids.

    Args:
        path: Ledger file; defaults to config/ledger.yaml

    Returns:
        List of (entry, evidence grid) pairs in file order

    Raises:
        FileNotFoundError: If the ledger file doesn't exist
        RuntimeError: If the file cannot be parsed or an entry is malformed
    """
    ledger_path = path or _get_ledger_path()

    try:
        with open(ledger_path, 'r', encoding='utf-8') as f:
            raw = yaml.safe_load(f) or {}
        pairs = []
        for item in raw.get("entries", []):
            item = dict(item)
            grid = GridSpec(**(item.pop("grid", None) or {}))
            pairs.append((DiscrepancyEntry(**item), grid))
        logger.debug(f"Loaded {len(pairs)} ledger entries from {ledger_path}")
        return pairs
    except Exception as e:
        raise RuntimeError(f"Failed to load ledger from {ledger_path}: {e}")


def describe_grid(grid: GridSpec, axes: Tuple[str, ...]) -> str:
    """Short text form of the ranges that matter for an identity."""
    parts = [f"n {grid.n_min}..{grid.n_max}"]
    if "j" in axes:
        parts.append(f"j {grid.j_min}..{grid.j_max}")
    if "m" in axes:
        parts.append(f"m {grid.m_min}..{grid.m_max}")
    if "q" in axes:
        parts.append(f"q {grid.q_min}..{grid.q_max}")
    if "x" in axes:
        parts.append(f"x in {{{', '.join(grid.x_samples)}}}")
    if "z" in axes:
        parts.append(f"z in {{{', '.join(grid.z_samples)}}}")
    return ", ".join(parts)


def collect_evidence(entry: DiscrepancyEntry, grid: GridSpec) -> DiscrepancyEntry:
    """
    Evaluate the corrected form, the printed form and the oracle on the
    entry's grid.

    Returns:
        Copy of ``entry`` with ``evidence`` and ``oracle_evidence`` filled in

    Raises:
        RuntimeError: If the corrected form fails anywhere, the oracle
                      disagrees, or no oracle run backs the entry
    """
    catalog_entry = CATALOG[entry.id]
    evidence = LedgerEvidence(grid=describe_grid(grid, catalog_entry.axes))

    for params in expand_entry(catalog_entry, grid):
        verdict = evaluate_identity(entry.id, params)
        if verdict.status is VerdictStatus.NOT_APPLICABLE:
            continue
        evidence.corrected_total += 1
        if verdict.status is VerdictStatus.EQUAL:
            evidence.corrected_equal += 1
        evidence.oracle_total += 1
        if oracle_check(entry.id, params).status is verdict.status:
            evidence.oracle_agree += 1

    if catalog_entry.has_printed_form:
        for params in expand_entry(catalog_entry, grid, printed=True):
            verdict = evaluate_identity(entry.id, params, printed=True)
            if verdict.status is VerdictStatus.NOT_APPLICABLE:
                continue
            evidence.printed_total += 1
            if verdict.status is VerdictStatus.UNEQUAL:
                evidence.printed_unequal += 1
                if evidence.first_printed_failure is None:
                    evidence.first_printed_failure = params.label()

    if evidence.oracle_total == 0:
        raise RuntimeError(f"Ledger entry {entry.id.value} has no oracle evidence on its grid")
    if not evidence.confirmed:
        raise RuntimeError(
            f"Ledger entry {entry.id.value} is not confirmed: corrected form "
            f"{evidence.corrected_equal}/{evidence.corrected_total} Equal, "
            f"oracle {evidence.oracle_agree}/{evidence.oracle_total} agree"
        )
    if evidence.printed_total and not evidence.printed_unequal:
        raise RuntimeError(f"Ledger entry {entry.id.value}: printed form never fails on {evidence.grid}")

    summary = (
        f"{oracle_path(entry.id)} path agrees at {evidence.oracle_agree}/{evidence.oracle_total} points"
    )
    logger.info(f"{entry.id.value}: {summary}")
    return entry.model_copy(update={"evidence": evidence, "oracle_evidence": summary})


def ledger_to_yaml(entries: List[DiscrepancyEntry]) -> str:
    """
    Convert evidenced ledger entries to a YAML string.

    Raises:
        RuntimeError: If the entries cannot be dumped
    """
    try:
        data: Dict[str, Any] = {"entries": [e.model_dump(mode="json") for e in entries]}
        return yaml.dump(data, default_flow_style=False, allow_unicode=True, sort_keys=False)
    except Exception as e:
        raise RuntimeError(f"Failed to convert ledger to YAML: {e}")


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)

    try:
        evidenced = [collect_evidence(entry, grid) for entry, grid in load_ledger()]
        print(ledger_to_yaml(evidenced))
    except Exception as e:
        print(f"\n✗ Error: {e}")
        exit(1)
