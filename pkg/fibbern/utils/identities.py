"""
Exact evaluation of catalog identities and their oracle cross-checks.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Tuple, Union

from .bernoulli import bernoulli_number, bernoulli_poly_at
from .catalog import (
    CATALOG,
    CatalogEntry,
    SequenceKind,
    bernoulli_shift_coeffs,
    evaluate_h,
    lucas_transform,
    lucas_transform_closed,
)
from .exact import DensePoly, QuadExt, binomial
from .models import IdentityId, IdentityParams, IdentityVerdict, VerdictStatus
from .oracles import ORACLES
from .sequences import alpha_power, fib, lucas

logger = logging.getLogger(__name__)

__all__ = [
    "ParameterError",
    "NoOracleError",
    "evaluate_identity",
    "oracle_check",
    "oracle_path",
    "oracle_agrees",
    "golden_value",
    "lucas_transform",
    "lucas_transform_closed",
    "evaluate_h",
    "bernoulli_shift_coeffs",
    "rationality_split",
    "SequenceKind",
]


class ParameterError(ValueError):
    """Parameters outside an identity's hard domain, or missing."""


class NoOracleError(LookupError):
    """The identity has no alternate derivation path."""


def _entry(tag: Union[IdentityId, str]) -> CatalogEntry:
    try:
        return CATALOG[IdentityId(tag)]
    except (ValueError, KeyError):
        raise ParameterError(f"Unknown identity tag: {tag}")


def _normalize(value: object) -> Union[QuadExt, DensePoly]:
    if isinstance(value, DensePoly):
        return value
    return QuadExt.lift(value)  # type: ignore[arg-type]


def _validate(entry: CatalogEntry, params: IdentityParams, printed: bool) -> None:
    axes = entry.printed_axes if printed and entry.printed_axes else entry.axes
    for axis in axes:
        if getattr(params, axis) is None:
            raise ParameterError(f"{entry.tag.value} needs parameter '{axis}'")
    if "j" in axes and params.j < entry.j_min:
        raise ParameterError(f"{entry.tag.value} requires j >= {entry.j_min}, got j={params.j}")
    if "q" in axes and params.q < entry.q_min:
        raise ParameterError(f"{entry.tag.value} requires q >= {entry.q_min}, got q={params.q}")


def _side_condition(entry: CatalogEntry, printed: bool) -> str:
    parts = []
    n_min = entry.printed_n_min if printed and entry.printed_n_min is not None else entry.n_min
    if n_min:
        parts.append(f"n >= {n_min}")
    if entry.parity is not None:
        parts.append(f"n {entry.parity.value}")
    return ", ".join(parts)


def evaluate_identity(
    tag: Union[IdentityId, str], params: IdentityParams, printed: bool = False
) -> IdentityVerdict:
    """
    Evaluate both sides of a catalog identity exactly.

    Args:
        tag: Catalog tag
        params: Parameter tuple; fields the identity does not use are ignored
        printed: Evaluate the literal printed variant instead of the verified one

    Returns:
        IdentityVerdict with status Equal, Unequal, or NotApplicable when a
        parity or range side condition on n fails

    Raises:
        ParameterError: Unknown tag, missing parameter, j or q below the
            identity's minimum, or a printed variant that does not exist
    """
    entry = _entry(tag)
    if printed and not entry.has_printed_form:
        raise ParameterError(f"{entry.tag.value} has no printed variant distinct from the verified form")
    _validate(entry, params, printed)

    if not entry.admits(params.n, printed=printed):
        return IdentityVerdict(
            id=entry.tag,
            params=params,
            status=VerdictStatus.NOT_APPLICABLE,
            note=f"requires {_side_condition(entry, printed)}",
        )

    rhs_fn = entry.printed_rhs if printed and entry.printed_rhs is not None else entry.rhs
    lhs = _normalize(entry.lhs(params))
    rhs = _normalize(rhs_fn(params))
    equal = type(lhs) is type(rhs) and lhs == rhs
    status = VerdictStatus.EQUAL if equal else VerdictStatus.UNEQUAL
    note = "printed form" if printed else None
    if not equal:
        if printed:
            logger.debug(f"{entry.tag.value} printed form fails at {params.label()}")
        else:
            logger.warning(f"{entry.tag.value} Unequal at {params.label()}: lhs={lhs} rhs={rhs}")
    return IdentityVerdict(id=entry.tag, params=params, lhs=lhs, rhs=rhs, status=status, note=note)


def oracle_path(tag: Union[IdentityId, str]) -> str:
    """
    Name of the alternate derivation path ("egf" or "binet").

    Raises:
        NoOracleError: If the identity has no oracle
    """
    tag = _entry(tag).tag
    if tag not in ORACLES:
        raise NoOracleError(f"No oracle path for {tag.value}")
    return ORACLES[tag][0]


def oracle_check(tag: Union[IdentityId, str], params: IdentityParams) -> IdentityVerdict:
    """
    Recompute an identity's left-hand side through its alternate derivation
    and compare it with the directly evaluated right-hand side.

    The returned verdict carries the oracle value as ``lhs`` and the direct
    right-hand side as ``rhs``; its note records whether the oracle status
    matches the direct status. NotApplicable points are returned unchanged.

    Raises:
        NoOracleError: If the identity has no oracle
        ParameterError: As for ``evaluate_identity``
    """
    path = oracle_path(tag)
    direct = evaluate_identity(tag, params)
    if direct.status is VerdictStatus.NOT_APPLICABLE:
        return direct

    _, oracle = ORACLES[direct.id]
    alternate = _normalize(oracle(params))
    equal = type(alternate) is type(direct.rhs) and alternate == direct.rhs
    status = VerdictStatus.EQUAL if equal else VerdictStatus.UNEQUAL
    agreement = "agrees" if status is direct.status else "disagrees"
    return IdentityVerdict(
        id=direct.id,
        params=params,
        lhs=alternate,
        rhs=direct.rhs,
        status=status,
        note=f"{path} path {agreement} with direct evaluation",
    )


def oracle_agrees(tag: Union[IdentityId, str], params: IdentityParams) -> bool:
    """True when the oracle verdict and the direct verdict have the same status."""
    return oracle_check(tag, params).status is evaluate_identity(tag, params).status


def rationality_split(n: int, j: int) -> Tuple[Fraction, Fraction]:
    """
    Split B_n(alpha**j / L_j) = X + alpha * Y into its two rational sums.

    X = sum_k C(n,k) B_k F_{j(n-k)-1} / L_j**(n-k)
    Y = sum_k C(n,k) B_k F_{j(n-k)} / L_j**(n-k)

    using alpha**s = alpha F_s + F_{s-1}. For even n the value is rational,
    so Y = 0 and X = B_n(alpha**j / L_j).

    Raises:
        ValueError: If n < 0 or j < 1
    """
    if n < 0 or j < 1:
        raise ValueError(f"rationality_split needs n >= 0 and j >= 1, got n={n}, j={j}")
    big_l = lucas(j)
    x_sum = Fraction(0)
    y_sum = Fraction(0)
    for k in range(n + 1):
        weight = binomial(n, k) * bernoulli_number(k) / Fraction(big_l) ** (n - k)
        x_sum += weight * fib(j * (n - k) - 1)
        y_sum += weight * fib(j * (n - k))
    return x_sum, y_sum


def golden_value(n: int, j: int) -> QuadExt:
    """B_n(alpha**j / L_j)."""
    return bernoulli_poly_at(n, alpha_power(j) / lucas(j))
