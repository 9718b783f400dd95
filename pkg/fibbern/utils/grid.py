"""
Grid expansion and the verification runner.
"""
from __future__ import annotations

import logging
import re
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .catalog import CATALOG, CatalogEntry
from .exact import QuadExt, parse_quad
from .identities import evaluate_identity
from .models import (
    GridSpec,
    IdentityId,
    IdentityParams,
    IdentitySummary,
    IdentityVerdict,
    VerdictStatus,
    VerificationReport,
)
from .sequences import lucas

logger = logging.getLogger(__name__)

_LUCAS_TOKEN = re.compile(r"^\s*(-?\d+)\s*/\s*L\s*$")
_CHUNK_SIZE = 256

Task = Tuple[str, IdentityParams]


def resolve_sample(token: str, j: Optional[int] = None) -> QuadExt:
    """
    Resolve a grid sample token to an exact value.

    ``k/L`` means k / L_j for the current j; anything else is a Q(sqrt 5)
    literal (alpha, beta, sqrt5, p/q or a,b).

    Raises:
        ValueError: If the token is unknown, or ``k/L`` is used without j
    """
    match = _LUCAS_TOKEN.match(token)
    if match:
        if j is None:
            raise ValueError(f"Sample {token!r} needs a value of j")
        return QuadExt(Fraction(int(match.group(1)), lucas(j)))
    return parse_quad(token)


def expand_entry(entry: CatalogEntry, grid: GridSpec, printed: bool = False) -> Iterator[IdentityParams]:
    """Yield every parameter tuple of ``grid`` for one identity."""
    axes = entry.printed_axes if printed and entry.printed_axes else entry.axes
    caps = grid.caps_for(entry.family.value)

    n_values = range(grid.n_min, caps["n_max"] + 1)
    j_values: Sequence[Optional[int]] = [None]
    if "j" in axes:
        j_values = range(max(grid.j_min, entry.j_min), caps["j_max"] + 1)
    m_values: Sequence[Optional[int]] = range(caps["m_min"], caps["m_max"] + 1) if "m" in axes else [None]
    q_values: Sequence[Optional[int]] = (
        range(max(grid.q_min, entry.q_min), grid.q_max + 1) if "q" in axes else [None]
    )
    signs: Sequence[Optional[str]] = ("+", "-") if "sign" in axes else [None]
    x_values: List[Optional[QuadExt]] = [None]
    if "x" in axes:
        x_values = [resolve_sample(token) for token in grid.x_samples]

    for n, j, m, q, sign, x in product(n_values, j_values, m_values, q_values, signs, x_values):
        z_values: List[Optional[QuadExt]] = [None]
        if "z" in axes:
            z_values = [resolve_sample(token, j) for token in grid.z_samples]
        for z in z_values:
            yield IdentityParams(n=n, j=j, m=m, q=q, sign=sign, x=x, z=z)


def expand_grid(ids: Iterable[IdentityId], grid: GridSpec) -> List[Task]:
    """All (tag, params) tasks for the selected identities, in catalog order."""
    tasks: List[Task] = []
    for tag in sorted(set(ids), key=lambda t: t.position):
        tasks.extend((tag.value, params) for params in expand_entry(CATALOG[tag], grid))
    return tasks


def _evaluate_chunk(chunk: Sequence[Task]) -> List[IdentityVerdict]:
    return [evaluate_identity(tag, params) for tag, params in chunk]


def _chunks(tasks: Sequence[Task], size: int) -> List[Sequence[Task]]:
    return [tasks[i:i + size] for i in range(0, len(tasks), size)]


def summarize(ids: Iterable[IdentityId], records: Iterable[IdentityVerdict]) -> List[IdentitySummary]:
    """Per-identity Equal/Unequal/NotApplicable counts, in catalog order."""
    counts: Dict[IdentityId, IdentitySummary] = {
        tag: IdentitySummary(identity=tag) for tag in sorted(set(ids), key=lambda t: t.position)
    }
    for record in records:
        summary = counts.setdefault(record.id, IdentitySummary(identity=record.id))
        if record.status is VerdictStatus.EQUAL:
            summary.equal += 1
        elif record.status is VerdictStatus.UNEQUAL:
            summary.unequal += 1
        else:
            summary.not_applicable += 1
    return list(counts.values())


def verify_grid(ids: Iterable[IdentityId], grid: Optional[GridSpec] = None, jobs: int = 1) -> VerificationReport:
    """
    Evaluate every selected identity over the grid.

    Evaluation fans out over ``jobs`` worker processes when jobs > 1; the
    records are sorted by (catalog position, parameters) before the report
    is built, so the report does not depend on execution order.

    Args:
        ids: Identities to check
        grid: Parameter ranges (defaults to ``GridSpec()``)
        jobs: Number of worker processes

    Returns:
        VerificationReport with sorted records and per-identity summaries
    """
    ids = list(ids)
    grid = grid or GridSpec()
    tasks = expand_grid(ids, grid)
    logger.info(f"Evaluating {len(tasks)} grid points for {len(set(ids))} identities (jobs={jobs})")

    records: List[IdentityVerdict] = []
    if jobs > 1 and len(tasks) > _CHUNK_SIZE:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_evaluate_chunk, _chunks(tasks, _CHUNK_SIZE)):
                records.extend(part)
    else:
        records = _evaluate_chunk(tasks)

    records.sort(key=lambda r: r.sort_key())
    report = VerificationReport(records=records, summaries=summarize(ids, records))
    logger.info(
        f"Grid done: {report.total_equal} Equal, {report.total_unequal} Unequal, "
        f"{report.total_not_applicable} NotApplicable"
    )
    return report
