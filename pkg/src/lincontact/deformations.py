"""First-order motions of L and whether they preserve the order sequence.

A motion replaces each linear equation y_i of L by y_i + eps*g_i with
eps^2 = 0.  In the adapted frame (slot i of order exactly d_i):

* necessary: each transformed g_i must vanish to order d_i - 1;
* sufficient: some rational displacement a of the point solves the
  tangency equations and cancels the low-degree part of g_i against
  a . grad f_i, in every degree from 1 through d_i - 1;
* transport: recentering the restricted equations at the moved point over
  the dual numbers must leave each order exactly d_i.

Sign convention: the displaced point has chart coordinate eps*a and the
cancellation reads g_i + a . grad f_i = 0 (mod degrees < d_i).  This is the
convention under which the worked one-dimensional example (g = (6x^5, 3x^2)
over the graph (x^6, x^3)) yields the witness a = -1.  The opposite sign is
available behind ``alt_sign`` for comparison.  The degree-0 stratum is
governed by the tangency equations alone, which keep their stated signs
(a . grad f_i(0) = g_i(0)); the cancellation and transport checks start at
degree 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .charts import GraphChart
from .errors import InputError
from .linalg import solve_dense
from .orders import OrderData
from .polynomials import INFINITE, SparsePoly, parse_poly


@dataclass(frozen=True)
class Deformation:
    """First-order motion of L: y_i goes to y_i + eps * g[i]."""

    g: tuple[SparsePoly, ...]


@dataclass(frozen=True)
class TangentVector:
    """Motion of the point: chart component a, y-component b."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]


@dataclass(frozen=True)
class LinearSystem:
    """Exact linear equations rows . a = rhs on the chart displacement."""

    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def solve(self):
        return solve_dense(self.rows, self.rhs)


def _check_deformation(chart: GraphChart, deformation: Deformation):
    nv = len(chart.chart_vars)
    if len(deformation.g) != chart.dims.m:
        raise InputError(
            f"deformation has {len(deformation.g)} components, expected {chart.dims.m}"
        )
    for i, g in enumerate(deformation.g):
        if g.num_vars != nv:
            raise InputError(
                f"deformation component {i + 1} uses {g.num_vars} variables, "
                f"chart has {nv}"
            )


def _transformed(chart: GraphChart, data: OrderData, deformation: Deformation):
    """Members and motion components in the adapted frame, as exact polynomials."""
    members = chart.restriction_polynomials()
    nv = len(chart.chart_vars)

    def apply(row, polys):
        acc = SparsePoly.zero(nv)
        for coeff, p in zip(row, polys):
            if coeff:
                acc = acc + p * coeff
        return acc

    f_rows = tuple(apply(row, members) for row in data.adapted_transform)
    g_rows = tuple(apply(row, deformation.g) for row in data.adapted_transform)
    return f_rows, g_rows


def necessary_check(
    chart: GraphChart, data: OrderData, deformation: Deformation
) -> tuple[bool, tuple[tuple[int, object, bool], ...]]:
    """Order test in the adapted frame: each g_i must vanish to order d_i - 1.

    Returns the verdict and per-slot records (required order d_i - 1, actual
    order of the transformed component, pass flag).
    """
    _check_deformation(chart, deformation)
    _, g_rows = _transformed(chart, data, deformation)
    records = []
    ok = True
    for d, g in zip(data.d, g_rows):
        order = g.order()
        passes = order is INFINITE or order >= d - 1
        ok = ok and passes
        records.append((d - 1, order, passes))
    return ok, tuple(records)


def tangency_system(chart: GraphChart, deformation: Deformation) -> LinearSystem:
    """Equations forcing the point to move with L while staying on X.

    Unknown: the chart displacement a.  One row per restricted equation,
    a . grad f_i(0) = g_i(0), plus a . grad f(0) = 0 for every base
    function.  The y-component of the full tangent vector is determined as
    b_i = g_i(0).
    """
    _check_deformation(chart, deformation)
    rows = []
    rhs = []
    for member, g in zip(chart.restriction_polynomials(), deformation.g):
        rows.append(member.linear_part())
        rhs.append(g.constant_term())
    for base in chart.base_fns:
        rows.append(base.linear_part())
        rhs.append(Fraction(0))
    return LinearSystem(rows=tuple(rows), rhs=tuple(rhs))


def tangent_vector(chart: GraphChart, deformation: Deformation) -> TangentVector | None:
    """One exact solution of the tangency system, or None if inconsistent."""
    a = tangency_system(chart, deformation).solve()
    if a is None:
        return None
    b = tuple(g.constant_term() for g in deformation.g)
    return TangentVector(a=tuple(a), b=b)


def sufficiency_check(
    chart: GraphChart,
    data: OrderData,
    deformation: Deformation,
    alt_sign: bool = False,
) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Search for a displacement a certifying order preservation.

    Collects the tangency equations together with one linear condition per
    adapted slot i and per monomial of degree 1 through d_i - 1: the
    coefficient of g_i + sigma * a . grad f_i there must vanish (sigma = -1
    under ``alt_sign``).  Returns (True, witness) on an exact solution and
    (False, None) when the combined system is inconsistent.
    """
    _check_deformation(chart, deformation)
    sigma = -1 if alt_sign else 1
    f_rows, g_rows = _transformed(chart, data, deformation)
    nv = len(chart.chart_vars)

    base_system = tangency_system(chart, deformation)
    rows = [list(r) for r in base_system.rows]
    rhs = list(base_system.rhs)

    for d, f, g in zip(data.d, f_rows, g_rows):
        gradients = [f.partial(j) for j in range(nv)]
        exponents = {e for e in g.terms if 1 <= sum(e) < d}
        for grad in gradients:
            exponents.update(e for e in grad.terms if 1 <= sum(e) < d)
        for exp in sorted(exponents):
            rows.append(
                [sigma * grad.terms.get(exp, Fraction(0)) for grad in gradients]
            )
            rhs.append(-g.terms.get(exp, Fraction(0)))

    solution = solve_dense(rows, rhs)
    if solution is None:
        return False, None
    return True, tuple(solution)


def transport_verify(
    chart: GraphChart,
    data: OrderData,
    deformation: Deformation,
    witness: Sequence[Fraction],
    alt_sign: bool = False,
) -> tuple[bool, tuple[tuple[int, bool], ...]]:
    """Recenter at the moved point over the dual numbers and recheck orders.

    The restricted equation in slot i carries the eps-part g_i; shifting the
    chart by eps*a (first-order Taylor, eps^2 = 0) turns it into
    f_i + eps*(g_i + sigma * a . grad f_i).  The slot keeps order exactly
    d_i iff the real part has order d_i (automatic) and the eps-part has no
    terms in degrees 1 through d_i - 1; the pure-eps constant reflects the
    tangency normalization and is checked by tangency_system, not here.
    """
    _check_deformation(chart, deformation)
    sigma = -1 if alt_sign else 1
    witness = [Fraction(w) for w in witness]
    nv = len(chart.chart_vars)
    if len(witness) != nv:
        raise InputError(f"witness has length {len(witness)}, chart has {nv} variables")
    f_rows, g_rows = _transformed(chart, data, deformation)

    records = []
    ok = True
    for d, f, g in zip(data.d, f_rows, g_rows):
        # dual pair (f, g) shifted by eps * sigma * witness
        eps_part = g
        for j, w in enumerate(witness):
            if w:
                eps_part = eps_part + f.partial(j) * (sigma * w)
        real_ok = f.order() == d
        eps_ok = all(not 1 <= sum(e) < d for e in eps_part.terms)
        passes = real_ok and eps_ok
        ok = ok and passes
        records.append((d, passes))
    return ok, tuple(records)


# ---------------------------------------------------------------------------
# deformation files
# ---------------------------------------------------------------------------


def deformation_from_dict(doc: dict, chart: GraphChart) -> Deformation:
    try:
        texts = doc["g"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad deformation document: {exc!r}") from exc
    g = tuple(parse_poly(text, chart.chart_vars) for text in texts)
    deformation = Deformation(g=g)
    _check_deformation(chart, deformation)
    return deformation


def load_deformation(path, chart: GraphChart) -> Deformation:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read deformation file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"deformation file {path} is not valid JSON: {exc}") from exc
    return deformation_from_dict(doc, chart)
