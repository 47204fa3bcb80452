"""Contact invariants of a scene: the additive contact quantity, an
independent colength oracle, local intersection lengths, and the
inequality verdicts assembled into a ContactReport.

The contact quantity attached to order data is

    a = sum over points, over entries d_i >= 2, of C(dim L + d_i - 2, d_i - 2)

with dim L = n + c - m.  The same number arises as the total colength of a
chain of monomial quotients indexed by the order filtration; that chain is
evaluated here by literally counting monomials, giving an oracle that is
independent of the binomial formula.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .charts import Dimensions, GraphChart, Scene
from .errors import InputError, NotFiniteLength
from .linalg import sparse_rank
from .orders import (
    DEFAULT_TRUNCATION,
    MAX_TRUNCATION,
    OrderData,
    chart_order_data,
    reduced_sequence,
)
from .polynomials import SparsePoly

DEFAULT_LENGTH_DEGREE = 32


def a_term(dims: Dimensions, d: int) -> int:
    """Contribution of a single order-sequence entry to the contact quantity.

    Equals C(dim L + d - 2, d - 2); order-1 entries contribute 0.
    """
    if d < 1:
        raise InputError(f"order must be >= 1, got {d}")
    if d == 1:
        return 0
    return math.comb(dims.dim_l + d - 2, d - 2)


def a_of(order_data: Sequence[OrderData], dims: Dimensions) -> int:
    """Contact quantity of a scene: sum of a_term over all entries >= 2."""
    return sum(a_term(dims, v) for od in order_data for v in od.d if v >= 2)


def count_monomials_below(num_vars: int, degree_bound: int) -> int:
    """Number of monomials in num_vars variables of total degree < bound.

    Counted by direct enumeration over exponents (no closed form), so this
    can serve as an independent oracle against binomial formulas.
    """
    if degree_bound <= 0:
        return 0
    if num_vars == 0:
        return 1
    return sum(
        count_monomials_below(num_vars - 1, degree_bound - e)
        for e in range(degree_bound)
    )


def order_subsheaf_colength(dims: Dimensions, data: OrderData, full_order: bool = False) -> int:
    """Total colength of the order-filtration quotient chain at one point.

    Walks the reduced order values: the j-th step contributes (jump in
    filtration dimension) x (number of monomials on L of degree below the
    value minus one).  With ``full_order`` the bound is the value itself
    rather than value minus one (the tighter subsheaf variant); no
    quantitative statement consumes that variant, it is exposed for
    inspection only.
    """
    if dims.dim_l < 1:
        raise InputError("codim L must be < dim of the ambient space")
    shift = 0 if full_order else 1
    total = 0
    previous_jump = 0
    for value, jump in zip(reduced_sequence(data), data.filtration_jumps):
        count = count_monomials_below(dims.dim_l, value - shift)
        total += (jump - previous_jump) * count
        previous_jump = jump
    return total


def projection_inequality(report: "ContactReport") -> tuple[bool, int]:
    """Whether the contact quantity is at most m, and the margin m - a."""
    margin = report.dims.m - report.a_value
    return margin >= 0, margin


# ---------------------------------------------------------------------------
# local length of a zero-dimensional quotient at the origin
# ---------------------------------------------------------------------------


def local_length(generators: Sequence[SparsePoly], max_degree: int = DEFAULT_LENGTH_DEGREE) -> int:
    """Colength at the origin of the ideal spanned by the generators.

    Works degree by degree: Q_D is the dimension of polynomials of degree
    <= D modulo the degree-<=D truncations of all monomial multiples of the
    generators.  Once Q_D = Q_{D-1}, the D-th power of the maximal ideal
    lies in the ideal (Nakayama), so Q_{D-1} is the exact colength.

    Raises NotFiniteLength if no stabilization occurs by ``max_degree``; the
    error's diagnosis distinguishes growing quotient dimensions (the
    quotient looks positive-dimensional) from still-shrinking increments
    (the bound may simply be too small).
    """
    if not generators:
        raise InputError("need at least one generator")
    nv = generators[0].num_vars
    for g in generators:
        if g.num_vars != nv:
            raise InputError("generators disagree on their variable count")
        if g.constant_term() != 0:
            raise InputError("generators must vanish at the origin")
    gens = [g for g in generators if not g.is_zero()]

    history = [1]  # Q_0: constants only, no relations in degree 0
    for depth in range(1, max_degree + 1):
        rows = []
        for g in gens:
            max_mult = depth - g.order()
            if max_mult < 0:
                continue
            for exp in _monomials_up_to(nv, max_mult):
                shifted = {
                    tuple(a + b for a, b in zip(exp, e)): c
                    for e, c in g.terms.items()
                    if sum(e) + sum(exp) <= depth
                }
                if shifted:
                    rows.append(shifted)
        ambient_dim = count_monomials_below(nv, depth + 1)
        quotient = ambient_dim - sparse_rank(rows)
        if quotient == history[-1]:
            return quotient
        history.append(quotient)

    increments = [b - a for a, b in zip(history, history[1:])]
    tail = increments[-3:]
    if len(tail) >= 2 and all(x <= y for x, y in zip(tail, tail[1:])):
        diagnosis = (
            "quotient dimension increments are nondecreasing; the quotient "
            "is likely positive-dimensional"
        )
    else:
        diagnosis = (
            "quotient dimension is still shrinking; retry with a larger "
            "degree bound"
        )
    raise NotFiniteLength(max_degree, tuple(history), diagnosis)


def _monomials_up_to(num_vars: int, degree: int):
    """Yield all exponent tuples in num_vars variables of total degree <= degree."""
    if num_vars == 0:
        yield ()
        return
    for e in range(degree + 1):
        for rest in _monomials_up_to(num_vars - 1, degree - e):
            yield (e,) + rest


def corank_length_check(length: int, corank: int, data: OrderData) -> bool:
    """Check length <= 2^corank; only asserted when every order is <= 2."""
    if any(v >= 3 for v in data.d):
        raise InputError(
            f"bound applies only when all orders are <= 2, got {data.d}"
        )
    return length <= 2**corank


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointReport:
    label: str
    order_data: OrderData
    local_length: int | None  # None when length did not stabilize
    length_warning: str | None = None


@dataclass(frozen=True)
class ContactReport:
    """Everything computed for one scene."""

    dims: Dimensions
    points: tuple[PointReport, ...]
    a_value: int
    colength_oracle: int
    inequality_holds: bool
    quadratic_regime: bool  # 2m <= n + c
    quadratic_ok: bool  # every order <= 2 (meaningful in the quadratic regime)


def length_generators(chart: GraphChart) -> tuple[SparsePoly, ...]:
    """Generators on the chart of the ideal of X cap L at the point.

    These are all equations of X restricted to L: the graph functions, the
    extra y coordinates in the tall case, and any base functions.
    """
    return chart.restriction_polynomials() + chart.base_fns


def analyze_scene(
    scene: Scene,
    truncation: int = DEFAULT_TRUNCATION,
    max_truncation: int = MAX_TRUNCATION,
    length_max_degree: int = DEFAULT_LENGTH_DEGREE,
) -> ContactReport:
    """Compute order data, lengths and all contact invariants for a scene."""
    points = []
    for label, chart in scene.points:
        data = chart_order_data(chart, truncation, max_truncation)
        try:
            length = local_length(length_generators(chart), length_max_degree)
            warning = None
        except NotFiniteLength as exc:
            length = None
            warning = str(exc)
        points.append(PointReport(label, data, length, warning))

    dims = scene.dims
    all_data = [p.order_data for p in points]
    a_value = a_of(all_data, dims)
    oracle = sum(order_subsheaf_colength(dims, od) for od in all_data)
    return ContactReport(
        dims=dims,
        points=tuple(points),
        a_value=a_value,
        colength_oracle=oracle,
        inequality_holds=a_value <= dims.m,
        quadratic_regime=2 * dims.m <= dims.n + dims.c,
        quadratic_ok=all(v <= 2 for od in all_data for v in od.d),
    )


def report_to_dict(report: ContactReport) -> dict:
    holds, margin = projection_inequality(report)
    return {
        "dims": {"n": report.dims.n, "c": report.dims.c, "m": report.dims.m},
        "points": [
            {
                "label": p.label,
                "orders": list(p.order_data.d),
                "reduced_orders": list(reduced_sequence(p.order_data)),
                "filtration_jumps": list(p.order_data.filtration_jumps),
                "corank": p.order_data.corank,
                "adapted_transform": [
                    [str(c) for c in row] for row in p.order_data.adapted_transform
                ],
                "local_length": p.local_length,
                "length_warning": p.length_warning,
            }
            for p in report.points
        ],
        "a_value": report.a_value,
        "colength_oracle": report.colength_oracle,
        "inequality_holds": holds,
        "margin": margin,
        "quadratic_regime": report.quadratic_regime,
        "quadratic_ok": report.quadratic_ok,
    }


def report_from_dict(doc: dict) -> ContactReport:
    """Rebuild a ContactReport from its JSON document form."""
    try:
        dims = Dimensions(**doc["dims"])
        points = tuple(
            PointReport(
                label=entry["label"],
                order_data=OrderData(
                    d=tuple(entry["orders"]),
                    adapted_transform=tuple(
                        tuple(Fraction(c) for c in row)
                        for row in entry["adapted_transform"]
                    ),
                    filtration_jumps=tuple(entry["filtration_jumps"]),
                    corank=entry["corank"],
                ),
                local_length=entry["local_length"],
                length_warning=entry.get("length_warning"),
            )
            for entry in doc["points"]
        )
        return ContactReport(
            dims=dims,
            points=points,
            a_value=doc["a_value"],
            colength_oracle=doc["colength_oracle"],
            inequality_holds=doc["inequality_holds"],
            quadratic_regime=doc["quadratic_regime"],
            quadratic_ok=doc["quadratic_ok"],
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad report document: {exc!r}") from exc


def save_report(report: ContactReport, path) -> None:
    Path(path).write_text(json.dumps(report_to_dict(report), indent=2) + "\n")
