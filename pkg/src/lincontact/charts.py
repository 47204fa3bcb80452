"""Local models of a subvariety X meeting a linear space L at a point.

A pointed local model presents X near p as a graph over coordinates living
on L.  With n = dim X, c = codim X and m = codim L in the ambient projective
space of dimension n + c:

* ``m <= c`` (L at least as big as X): the chart carries n+c-m coordinates
  ``x_vars`` on L; X is the graph ``y_i = f_i`` of the ``graph_fns`` over the
  submanifold of L cut out by the ``base_fns`` (c-m of them, transverse).
* ``c < m`` (L smaller than X): besides the x coordinates, m-c of the linear
  equations of L, the ``extra_y_vars``, serve as coordinates on X itself;
  there are no base functions.

Restricting the m linear equations of L to X yields m jets in the chart
variables; their vanishing orders at the origin are the subject of the
order-sequence machinery.  Charts are taken at face value: graph and base
functions are polynomials in the chart variables, and no reduction modulo
the base ideal is performed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ChartError, InputError
from .linalg import sparse_rank
from .polynomials import Jet, SparsePoly, parse_poly, poly_to_string


@dataclass(frozen=True)
class Dimensions:
    """Ambient data: dim X = n, codim X = c, codim L = m in P^(n+c)."""

    n: int
    c: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.c < 1:
            raise InputError(f"need n >= 1 and c >= 1, got n={self.n}, c={self.c}")
        if not 1 <= self.m <= self.n + self.c - 1:
            raise InputError(
                f"need 1 <= m <= n+c-1, got m={self.m} with n+c={self.n + self.c}"
            )

    @property
    def ambient(self) -> int:
        return self.n + self.c

    @property
    def dim_l(self) -> int:
        return self.n + self.c - self.m

    @property
    def num_x(self) -> int:
        return self.n + self.c - self.m

    @property
    def num_extra_y(self) -> int:
        return max(0, self.m - self.c)

    @property
    def num_graph(self) -> int:
        return min(self.m, self.c)

    @property
    def num_base(self) -> int:
        return max(0, self.c - self.m)


@dataclass(frozen=True)
class GraphChart:
    """A pointed graph presentation of (X, L, p), p at the origin."""

    dims: Dimensions
    x_vars: tuple[str, ...]
    extra_y_vars: tuple[str, ...]
    graph_fns: tuple[SparsePoly, ...]
    base_fns: tuple[SparsePoly, ...]

    @property
    def chart_vars(self) -> tuple[str, ...]:
        """Local coordinate names on X: x variables plus any extra y's."""
        return self.x_vars + self.extra_y_vars

    def restriction_polynomials(self) -> tuple[SparsePoly, ...]:
        """The m restrictions to X of the linear equations of L, exactly.

        For i <= min(m, c) this is the graph function f_i; in the c < m case
        the remaining equations restrict to the extra y coordinates
        themselves.
        """
        nv = len(self.chart_vars)
        extras = tuple(
            SparsePoly.variable(nv, len(self.x_vars) + j)
            for j in range(len(self.extra_y_vars))
        )
        return self.graph_fns + extras


@dataclass(frozen=True)
class RestrictedSystem:
    """The m linear equations of L restricted to X, truncated at a degree."""

    chart_vars: tuple[str, ...]
    members: tuple[Jet, ...]
    truncation: int


@dataclass(frozen=True)
class Scene:
    """One chart per point of the finite intersection L cap X."""

    dims: Dimensions
    points: tuple[tuple[str, GraphChart], ...]  # (label, chart)

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.points)


def validate_chart(chart: GraphChart) -> GraphChart:
    """Check the structural requirements of a graph chart.

    Raises ChartError with code NON-VANISHING if some graph or base function
    fails to vanish at the origin (the point would not lie on X cap L), and
    NON-TRANSVERSE-BASE if the base functions' linear parts are dependent
    (the base locus would not be smooth at p).
    """
    dims = chart.dims
    nv = len(chart.chart_vars)
    names = set(chart.chart_vars)
    if len(names) != nv:
        raise ChartError("DUPLICATE-VARIABLE", f"repeated names in {chart.chart_vars}")
    if len(chart.x_vars) != dims.num_x:
        raise ChartError(
            "BAD-SHAPE",
            f"expected {dims.num_x} x variables for {dims}, got {len(chart.x_vars)}",
        )
    if len(chart.extra_y_vars) != dims.num_extra_y:
        raise ChartError(
            "BAD-SHAPE",
            f"expected {dims.num_extra_y} extra y variables, got {len(chart.extra_y_vars)}",
        )
    if len(chart.graph_fns) != dims.num_graph:
        raise ChartError(
            "BAD-SHAPE",
            f"expected {dims.num_graph} graph functions, got {len(chart.graph_fns)}",
        )
    if len(chart.base_fns) != dims.num_base:
        raise ChartError(
            "BAD-SHAPE",
            f"expected {dims.num_base} base functions, got {len(chart.base_fns)}",
        )
    for kind, fns in (("graph", chart.graph_fns), ("base", chart.base_fns)):
        for i, f in enumerate(fns):
            if f.num_vars != nv:
                raise ChartError(
                    "BAD-SHAPE",
                    f"{kind} function {i + 1} uses {f.num_vars} variables, chart has {nv}",
                )
            if f.constant_term() != 0:
                raise ChartError(
                    "NON-VANISHING",
                    f"{kind} function {i + 1} ({poly_to_string(f, chart.chart_vars)}) "
                    f"does not vanish at the origin",
                )
    if chart.base_fns:
        linear_rows = []
        for f in chart.base_fns:
            grad = f.linear_part()
            linear_rows.append(
                {(i,): g for i, g in enumerate(grad) if g != 0}
            )
        if sparse_rank(linear_rows) != len(chart.base_fns):
            raise ChartError(
                "NON-TRANSVERSE-BASE",
                "base functions have linearly dependent degree-1 parts",
            )
    return chart


def restrict_system(chart: GraphChart, truncation: int) -> RestrictedSystem:
    """Truncate the restricted linear equations of L to jets on the chart.

    A graph function that is exactly the zero polynomial means a linear
    equation of L vanishes identically on the chart, which the order
    machinery refuses to model; this raises ChartError(DEGENERATE).
    """
    if truncation < 1:
        raise InputError(f"truncation must be >= 1, got {truncation}")
    members = []
    for i, f in enumerate(chart.restriction_polynomials()):
        if f.is_zero():
            raise ChartError(
                "DEGENERATE",
                f"restricted equation {i + 1} is identically zero on the chart",
            )
        members.append(Jet(f, truncation))
    return RestrictedSystem(chart.chart_vars, tuple(members), truncation)


# ---------------------------------------------------------------------------
# scene files
# ---------------------------------------------------------------------------


def scene_from_dict(doc: dict) -> Scene:
    """Build and validate a Scene from its JSON document form."""
    try:
        dims = Dimensions(n=int(doc["n"]), c=int(doc["c"]), m=int(doc["m"]))
        raw_points = doc["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad scene document: {exc!r}") from exc
    points = []
    for k, entry in enumerate(raw_points):
        try:
            label = str(entry.get("label", f"p{k + 1}"))
            x_vars = tuple(str(v) for v in entry["x_vars"])
            extra = tuple(str(v) for v in entry.get("extra_y_vars", ()))
            chart_vars = x_vars + extra
            graph_fns = tuple(
                parse_poly(s, chart_vars) for s in entry["graph_fns"]
            )
            base_fns = tuple(
                parse_poly(s, chart_vars) for s in entry.get("base_fns", ())
            )
        except KeyError as exc:
            raise InputError(f"scene point {k + 1} is missing field {exc}") from exc
        chart = GraphChart(
            dims=dims,
            x_vars=x_vars,
            extra_y_vars=extra,
            graph_fns=graph_fns,
            base_fns=base_fns,
        )
        points.append((label, validate_chart(chart)))
    return Scene(dims=dims, points=tuple(points))


def scene_to_dict(scene: Scene) -> dict:
    points = []
    for label, chart in scene.points:
        points.append(
            {
                "label": label,
                "x_vars": list(chart.x_vars),
                "extra_y_vars": list(chart.extra_y_vars),
                "graph_fns": [
                    poly_to_string(f, chart.chart_vars) for f in chart.graph_fns
                ],
                "base_fns": [
                    poly_to_string(f, chart.chart_vars) for f in chart.base_fns
                ],
            }
        )
    return {"n": scene.dims.n, "c": scene.dims.c, "m": scene.dims.m, "points": points}


def load_scene(path) -> Scene:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"cannot read scene file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"scene file {path} is not valid JSON: {exc}") from exc
    return scene_from_dict(doc)


def save_scene(scene: Scene, path) -> None:
    Path(path).write_text(json.dumps(scene_to_dict(scene), indent=2) + "\n")
