#!/usr/bin/env python3
"""
Component tests for the identity verification system.
Runs under pytest or as a plain script.
"""
import os
import sys

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def test_utils_imports():
    """Test that the kernel modules import and expose their entry points."""
    print("Testing utility imports...")
    from fibbern.utils import (
        CATALOG, IdentityId, evaluate_identity, oracle_check,
        verify_grid, check_functional_equation, bernoulli_number, fib, lucas,
    )

    assert len(CATALOG) == len(IdentityId)
    assert bernoulli_number(1) == -bernoulli_number(0) / 2
    assert fib(10) == 55 and lucas(10) == 123
    print(f"✓ Catalog has {len(CATALOG)} identities")


def test_models():
    """Test Pydantic models."""
    print("\nTesting Pydantic models...")
    from fibbern.utils import GridSpec, IdentityParams, QuadExt, CliConfig

    grid = GridSpec()
    assert (grid.n_min, grid.n_max, grid.j_max, grid.q_max) == (0, 30, 8, 6)
    caps = grid.caps_for("polynomial")
    assert caps == {"n_max": 20, "j_max": 6, "m_min": -3, "m_max": 3}

    narrowed = GridSpec(n_max=5, m_min=-1, m_max=1)
    assert narrowed.caps_for("pointwise") == {"n_max": 5, "j_max": 4, "m_min": -1, "m_max": 1}

    params = IdentityParams(n=2, j=1, x=QuadExt(1, 0))
    assert params.label() == "n=2;j=1;x=1"

    config = CliConfig(command="verify")
    assert config.jobs == 1 and config.format == "text"
    print("✓ Models validate and render")


def test_node_creation():
    """Test that nodes can be created."""
    print("\nTesting node creation...")
    from fibbern.nodes import (
        LoadCatalogNode, EvaluateGridNode, OracleCrossCheckNode,
        AssembleReportNode, PrintSummaryNode, SeriesCheckNode,
        LoadLedgerNode, CollectEvidenceNode, AssembleLedgerNode,
    )

    nodes = [
        LoadCatalogNode(),
        EvaluateGridNode(),
        OracleCrossCheckNode(),
        AssembleReportNode(),
        PrintSummaryNode(),
        SeriesCheckNode(),
        LoadLedgerNode(),
        CollectEvidenceNode(),
        AssembleLedgerNode(),
    ]
    print(f"✓ Created {len(nodes)} node types")


def test_flow_creation():
    """Test flow creation."""
    print("\nTesting flow creation...")
    from fibbern.flow import create_verification_flow, create_series_flow, create_ledger_flow
    from fibbern.nodes import OracleCrossCheckNode, AssembleReportNode

    verification = create_verification_flow()
    series = create_series_flow()
    ledger = create_ledger_flow()

    assert verification.start_node is not None
    assert series.start_node is not None
    assert ledger.start_node is not None

    evaluate = verification.start_node.successors["default"]
    assert isinstance(evaluate.successors["oracle"], OracleCrossCheckNode)
    assert isinstance(evaluate.successors["default"], AssembleReportNode)
    print("✓ All flows have valid start nodes and branches")


def test_shared_store_structure():
    """Test a small verification run through the flow and the shared store it leaves."""
    print("\nTesting shared store structure...")
    from fibbern.flow import create_verification_flow
    from fibbern.utils import GridSpec

    shared = {
        "input": {
            "ids": "L1*",
            "grid": GridSpec(n_max=6, j_max=2),
            "jobs": 1,
            "oracle": True,
            "format": "json",
        }
    }
    create_verification_flow().run(shared)

    assert [tag.value for tag in shared["catalog"]["ids"]] == ["L1A", "L1B", "L1C"]
    report = shared["results"]
    assert report.total_unequal == 0
    assert report.total_equal == 3 * 7 * 2
    assert shared["oracle"] is report.oracle
    assert report.oracle_disagreements == 0
    assert shared["output"]["content"].startswith("{")
    print(f"✓ Flow produced {len(report.records)} records")


def test_main_module():
    """Test main module imports."""
    print("\nTesting main module...")
    from fibbern import main, run

    assert callable(main) and callable(run)
    print("✓ Main module imports successfully")


def main():
    """Run all tests."""
    print("=" * 60)
    print("fibbern - Component Tests")
    print("=" * 60)

    tests = [
        test_utils_imports,
        test_models,
        test_node_creation,
        test_flow_creation,
        test_shared_store_structure,
        test_main_module,
    ]

    results = []
    for test in tests:
        try:
            test()
            results.append(True)
        except Exception as e:
            print(f"✗ Test {test.__name__} failed: {e}")
            results.append(False)

    print("\n" + "=" * 60)
    print("Test Summary:")
    print("=" * 60)

    passed = sum(results)
    total = len(results)

    for i, (test, result) in enumerate(zip(tests, results), 1):
        status = "✓ PASS" if result else "✗ FAIL"
        print(f"{i:2d}. {test.__name__:30} {status}")

    print(f"\nTotal: {passed}/{total} tests passed")

    if passed == total:
        print("\n✅ All tests passed! System components are working correctly.")
        print("\nNext steps:")
        print("1. Run: python -m fibbern.main verify --n-max 10 --oracle")
        print("2. Run: python -m fibbern.main ledger")
    else:
        print("\n⚠️  Some tests failed. Check the errors above.")

    return passed == total


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
