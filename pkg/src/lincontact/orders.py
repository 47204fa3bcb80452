"""Order sequences, adapted bases and coranks of a restricted linear system.

Given the m restrictions of the linear equations of L to a chart on X, the
order sequence d_1 >= ... >= d_m lists the largest vanishing orders at the
origin attainable by successive members chosen outside the span of their
predecessors.  Equivalently: with r_k the rank of the members' coefficient
matrix on monomials of total degree < k, exactly m - r_k of the d_i are
>= k.  Row-reducing against graded-lex ordered monomial columns therefore
produces both the sequence and an adapted basis in one pass, with pivot
choice fixed by the earliest monomial in the lowest degree block, so the
returned transform is canonical (it depends only on the span of the input).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import GraphChart, RestrictedSystem, restrict_system
from .errors import TruncationInsufficient
from .linalg import graded_rref
from .polynomials import Jet, SparsePoly, graded_key

DEFAULT_TRUNCATION = 16
MAX_TRUNCATION = 256


@dataclass(frozen=True)
class OrderData:
    """Order sequence at one point, with the change of basis realizing it.

    Row i of ``adapted_transform`` applied to the system members yields a
    jet of order exactly ``d[i]``.  ``filtration_jumps[j]`` is the dimension
    of the span of all members of order >= the j-th distinct order value;
    the last jump equals m.  ``corank`` counts the entries of d that are
    >= 2.
    """

    d: tuple[int, ...]
    adapted_transform: tuple[tuple[Fraction, ...], ...]
    filtration_jumps: tuple[int, ...]
    corank: int


def order_sequence(system: RestrictedSystem) -> OrderData:
    """Compute the order data of a restricted system.

    Raises TruncationInsufficient when some nonzero combination of members
    vanishes through the truncation degree: either the truncation is too
    small for the actual orders, or a combination vanishes identically on
    the chart (nondegeneracy failure).
    """
    members = system.members
    m = len(members)
    rows = [dict(jet.poly.terms) for jet in members]
    reduced, transform, pivots = graded_rref(rows)
    missing = sum(1 for p in pivots if p is None)
    if missing:
        raise TruncationInsufficient(system.truncation, missing)

    # Largest order first; ties broken by the graded-lex position of the
    # pivot monomial so the adapted transform is canonical.
    order_of_row = [sum(p) for p in pivots]
    permutation = sorted(
        range(m), key=lambda i: (-order_of_row[i], graded_key(pivots[i]))
    )
    d = tuple(order_of_row[i] for i in permutation)
    adapted = tuple(tuple(transform[i]) for i in permutation)

    jumps = []
    for j, value in enumerate(d):
        if j + 1 == m or d[j + 1] != value:
            if not jumps or jumps[-1] != j + 1:
                jumps.append(j + 1)
    return OrderData(
        d=d,
        adapted_transform=adapted,
        filtration_jumps=tuple(jumps),
        corank=sum(1 for v in d if v >= 2),
    )


def corank(data: OrderData) -> int:
    """Number of order-sequence entries that are >= 2."""
    return sum(1 for v in data.d if v >= 2)


def reduced_sequence(data: OrderData) -> tuple[int, ...]:
    """Distinct order values in decreasing order."""
    out = []
    for v in data.d:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def adapted_members(system: RestrictedSystem, data: OrderData) -> tuple[Jet, ...]:
    """Apply the adapted transform to the members; row i has order d[i]."""
    out = []
    for row in data.adapted_transform:
        acc = Jet(SparsePoly.zero(len(system.chart_vars)), system.truncation)
        for coeff, member in zip(row, system.members):
            if coeff:
                acc = acc + member * coeff
        out.append(acc)
    return tuple(out)


def combine_members(system: RestrictedSystem, matrix) -> RestrictedSystem:
    """Replace the members by matrix * members (a change of basis)."""
    new_members = []
    for row in matrix:
        acc = Jet(SparsePoly.zero(len(system.chart_vars)), system.truncation)
        for coeff, member in zip(row, system.members):
            c = Fraction(coeff)
            if c:
                acc = acc + member * c
        new_members.append(acc)
    return RestrictedSystem(system.chart_vars, tuple(new_members), system.truncation)


def chart_order_data(
    chart: GraphChart,
    truncation: int = DEFAULT_TRUNCATION,
    max_truncation: int = MAX_TRUNCATION,
) -> OrderData:
    """Order data for a chart, doubling the truncation on failure.

    Starts at ``truncation`` and doubles up to ``max_truncation`` whenever a
    combination of members vanishes through the working degree; the last
    TruncationInsufficient is re-raised if the cap is reached.
    """
    depth = truncation
    while True:
        try:
            return order_sequence(restrict_system(chart, depth))
        except TruncationInsufficient:
            if depth >= max_truncation:
                raise
            depth = min(2 * depth, max_truncation)
