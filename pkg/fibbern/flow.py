"""
Flow orchestration for the identity verification system.
"""
from pocketflow import Flow
from fibbern.nodes import (
    LoadCatalogNode,
    EvaluateGridNode,
    OracleCrossCheckNode,
    AssembleReportNode,
    PrintSummaryNode,
    SeriesCheckNode,
    LoadLedgerNode,
    CollectEvidenceNode,
    AssembleLedgerNode,
)


def create_verification_flow() -> Flow:
    """
    Create and return the grid verification flow.

    EvaluateGridNode branches to the oracle cross-check on the "oracle"
    action; both branches end in report assembly and the summary.

    Returns:
        Flow object configured for grid verification
    """
    load_catalog_node = LoadCatalogNode()
    evaluate_grid_node = EvaluateGridNode()
    oracle_node = OracleCrossCheckNode()
    assemble_report_node = AssembleReportNode()
    print_summary_node = PrintSummaryNode()

    load_catalog_node >> evaluate_grid_node
    evaluate_grid_node >> assemble_report_node
    evaluate_grid_node - "oracle" >> oracle_node
    oracle_node >> assemble_report_node
    assemble_report_node >> print_summary_node

    return Flow(start=load_catalog_node)


def create_series_flow() -> Flow:
    """
    Create a flow that checks generating-function equations.

    Returns:
        Flow object for functional-equation checks
    """
    series_node = SeriesCheckNode()
    print_summary_node = PrintSummaryNode()

    series_node >> print_summary_node

    return Flow(start=series_node)


def create_ledger_flow() -> Flow:
    """
    Create a flow that rebuilds the discrepancy ledger with fresh evidence.

    Returns:
        Flow object for the ledger
    """
    load_ledger_node = LoadLedgerNode()
    collect_evidence_node = CollectEvidenceNode()
    assemble_ledger_node = AssembleLedgerNode()

    load_ledger_node >> collect_evidence_node
    collect_evidence_node >> assemble_ledger_node

    return Flow(start=load_ledger_node)


# Example usage
if __name__ == "__main__":
    flow = create_verification_flow()
    shared = {"input": {"ids": "L1*", "grid_overrides": {"n_max": 6, "j_max": 2}, "oracle": True}}
    flow.run(shared)
    print(shared["output"]["content"])
