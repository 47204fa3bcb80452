"""Fibre-length bound suite: exact integer maximization of sum(2^x_i) on the
ball sum(x_i^2) <= n, the analytic upper bound 2*max(2^sqrt(n)+n-1,
1+2*sqrt(2)*(n-1)), the continuous critical-point analysis, and the
asymptotic lower bound sqrt(2/pi)*2^sqrt(n)/n^(1/4).

Integer maximization is exhaustive and exact (big integers).  Everything
analytic runs under mpmath at a configurable decimal precision (default 50
digits) so branch comparisons near the crossover are not float artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from .errors import InputError

DEFAULT_PRECISION = 50
ENUMERATION_BOUND = 200

#: Minimizer of 2^t / t; the critical-pair equation has solutions on both sides.
def _phi(t):
    return mpmath.power(2, t) / t


def _t_min():
    return 1 / mpmath.ln(2)


# ---------------------------------------------------------------------------
# exact integer maximization
# ---------------------------------------------------------------------------


def integer_max_g(n: int, enumeration_bound: int = ENUMERATION_BOUND) -> tuple[int, tuple[int, ...]]:
    """Exact maximum of sum(2^x_i) over nonnegative integer vectors of
    length n with sum(x_i^2) <= n, with a maximizing witness.

    The witness lists the positive entries in nonincreasing order; the
    remaining n - len(witness) coordinates are zero and contribute 1 each.
    Ties are broken toward the witness with the fewest positive entries,
    then lexicographically.
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    if n > enumeration_bound:
        raise InputError(
            f"n={n} exceeds the enumeration bound {enumeration_bound}"
        )
    best_value = n  # the all-zero vector
    best_witness: tuple[int, ...] = ()
    stack = [((), n, math.isqrt(n))]
    while stack:
        parts, budget, max_part = stack.pop()
        for x in range(min(max_part, math.isqrt(budget)), 0, -1):
            cand = parts + (x,)
            if len(cand) > n:
                continue
            value = sum(2**p for p in cand) + (n - len(cand))
            key = (value, -len(cand), cand)
            if key > (best_value, -len(best_witness), best_witness):
                best_value, best_witness = value, cand
            stack.append((cand, budget - x * x, x))
    return best_value, best_witness


def mather_check(coranks, n: int) -> bool:
    """Feasibility of a fibre's corank profile: sum of squares at most n
    and at most n points."""
    return sum(e * e for e in coranks) <= n and len(coranks) <= n


# ---------------------------------------------------------------------------
# analytic bounds
# ---------------------------------------------------------------------------


def analytic_bound(n: int, precision: int = DEFAULT_PRECISION) -> tuple[mpf, str]:
    """Value and attaining branch of 2*max(2^sqrt(n)+n-1, 1+2*sqrt(2)*(n-1))."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    with mpmath.workdps(precision):
        exponential = mpmath.power(2, mpmath.sqrt(n)) + n - 1
        linear = 1 + 2 * mpmath.sqrt(2) * (n - 1)
        if exponential >= linear:
            return 2 * exponential, "exponential"
        return 2 * linear, "linear"


def be_lower_bound(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """Asymptotic lower bound sqrt(2/pi) * 2^sqrt(n) / n^(1/4)."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    with mpmath.workdps(precision):
        return (
            mpmath.sqrt(2 / mpmath.pi)
            * mpmath.power(2, mpmath.sqrt(n))
            / mpmath.root(n, 4)
        )


def _bisect(f, lo, hi, tol):
    """Plain bisection for a sign change of f on [lo, hi]."""
    flo = f(lo)
    if flo == 0:
        return lo
    for _ in range(20000):
        mid = (lo + hi) / 2
        if hi - lo <= tol:
            return mid
        fmid = f(mid)
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return (lo + hi) / 2


def critical_pair(a, precision: int = DEFAULT_PRECISION, tol=1e-12) -> mpf:
    """The unique b above the minimizer of 2^t/t with 2^a/a = 2^b/b.

    Defined for 0 < a < 1/ln(2); found by bisection to ``tol``.
    """
    with mpmath.workdps(precision):
        a = mpf(a)
        tmin = _t_min()
        if not 0 < a < tmin:
            raise InputError(f"need 0 < a < 1/ln(2) ~= {float(tmin):.6f}, got {a}")
        target = _phi(a)
        lo, hi = tmin, mpf(4)
        while _phi(hi) < target:
            hi *= 2
        return _bisect(lambda t: _phi(t) - target, lo, hi, mpf(tol))


def critical_pair_inverse(b, precision: int = DEFAULT_PRECISION, tol=1e-12) -> mpf:
    """The unique a below the minimizer of 2^t/t with 2^a/a = 2^b/b."""
    with mpmath.workdps(precision):
        b = mpf(b)
        tmin = _t_min()
        if b <= tmin:
            raise InputError(f"need b > 1/ln(2) ~= {float(tmin):.6f}, got {b}")
        target = _phi(b)
        lo, hi = tmin / 2, tmin
        while _phi(lo) < target:
            lo /= 2
        # phi decreases on (0, tmin): flip the sign for the bisection
        return _bisect(lambda t: target - _phi(t), lo, hi, mpf(tol))


# ---------------------------------------------------------------------------
# continuous critical points on the sphere
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    """One critical-point profile of sum(2^x_i) on the sphere sum(x_i^2) = n.

    ``kind`` is "uniform" (all coordinates equal), "one-large" (n-1 small
    coordinates and one large) or "one-small" (one small, n-1 large); the
    non-uniform kinds satisfy the critical-pair equation 2^a/a = 2^b/b with
    a < 1 < b.  ``bound_value`` is the per-kind upper-bound expression and
    ``chain_value`` the final constant chain it is compared against
    (None where not applicable).
    """

    kind: str
    a: mpf
    b: mpf | None
    count_a: int
    count_b: int
    g_value: mpf
    bound_value: mpf
    chain_value: mpf | None
    bound_ok: bool
    chain_ok: bool | None


def _scan_roots(f, grid, tol):
    """Roots of f located by sign changes over a grid, refined by bisection."""
    roots = []
    prev_t, prev_v = None, None
    for t in grid:
        v = f(t)
        if v == 0:
            roots.append(t)
        elif prev_v is not None and (v > 0) != (prev_v > 0):
            roots.append(_bisect(f, prev_t, t, tol))
        prev_t, prev_v = t, v
    deduped = []
    for r in roots:
        if all(abs(r - s) > 10 * tol for s in deduped):
            deduped.append(r)
    return deduped


def continuous_max_candidates(
    n: int, precision: int = DEFAULT_PRECISION, tol=1e-9
) -> list[Candidate]:
    """All feasible critical-point profiles with their values and bounds.

    The uniform profile (every coordinate 1) is always present.  The mixed
    profiles solve the sphere constraint together with the critical-pair
    equation; parameter ranges where no solution exists simply contribute
    no candidate.
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    with mpmath.workdps(precision):
        tol = mpf(tol)
        candidates = [
            Candidate(
                kind="uniform",
                a=mpf(1),
                b=None,
                count_a=n,
                count_b=0,
                g_value=mpf(2 * n),
                bound_value=mpf(2 * n),
                chain_value=None,
                bound_ok=True,
                chain_ok=None,
            )
        ]
        if n >= 2:
            grid = sorted(
                {mpf(k) / 1000 for k in range(1, 1000)}
                | {mpf(10) ** (-e - mpf(j) / 8) for e in range(1, 13) for j in range(8)}
            )
            chain_large = 2 * (n - 1 + mpmath.power(2, mpmath.sqrt(n)))
            chain_small = (
                2 * (1 + (n - 1) * mpmath.power(2, mpf(3) / 2)) if n >= 3 else None
            )

            def b_of(a):
                return mpmath.sqrt(n - (n - 1) * a * a)

            for a in _scan_roots(lambda a: _phi(a) - _phi(b_of(a)), grid, tol):
                b = b_of(a)
                if b - 1 <= 1e-6 or 1 - a <= 1e-6:
                    continue  # degenerate merge with the uniform profile
                g = (n - 1) * mpmath.power(2, a) + mpmath.power(2, b)
                bound = (n - 1 + mpmath.power(2, b - a)) * mpmath.power(2, a)
                candidates.append(
                    Candidate(
                        kind="one-large",
                        a=a,
                        b=b,
                        count_a=n - 1,
                        count_b=1,
                        g_value=g,
                        bound_value=bound,
                        chain_value=chain_large,
                        bound_ok=g <= bound + tol,
                        chain_ok=g <= chain_large + tol,
                    )
                )

            def a_of(b):
                return mpmath.sqrt(n - (n - 1) * b * b)

            b_top = mpmath.sqrt(mpf(n) / (n - 1))
            b_grid = [1 + (b_top - 1) * t for t in grid]
            for b in _scan_roots(lambda b: _phi(a_of(b)) - _phi(b), b_grid, tol):
                a = a_of(b)
                if b - 1 <= 1e-6 or 1 - a <= 1e-6:
                    continue
                g = mpmath.power(2, a) + (n - 1) * mpmath.power(2, b)
                bound = (1 + (n - 1) * mpmath.power(2, b - a)) * mpmath.power(2, a)
                candidates.append(
                    Candidate(
                        kind="one-small",
                        a=a,
                        b=b,
                        count_a=1,
                        count_b=n - 1,
                        g_value=g,
                        bound_value=bound,
                        chain_value=chain_small,
                        bound_ok=g <= bound + tol,
                        chain_ok=None if chain_small is None else g <= chain_small + tol,
                    )
                )
        return candidates


def continuous_max(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """Largest value over the continuous critical-point candidates."""
    return max(c.g_value for c in continuous_max_candidates(n, precision))


# ---------------------------------------------------------------------------
# crossover of the two analytic branches
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossoverReport:
    """Which analytic branch dominates per n, and where the switch happens.

    ``crossover_n`` is the first n after which the exponential branch
    dominates for the rest of the scanned range (None if the linear branch
    still wins at the top of the range).  ``claimed_linear_max`` is an
    externally quoted largest n with linear domination; ``agrees`` records
    whether the computation matches that quote.
    """

    rows: tuple[tuple[int, str], ...]
    crossover_n: int | None
    claimed_linear_max: int
    agrees: bool
    note: str


def crossover_report(
    n_lo: int = 1,
    n_hi: int = 60,
    claimed_linear_max: int = 37,
    precision: int = DEFAULT_PRECISION,
) -> CrossoverReport:
    if n_lo < 1 or n_hi < n_lo:
        raise InputError(f"bad range [{n_lo}, {n_hi}]")
    rows = []
    last_linear = None
    for n in range(n_lo, n_hi + 1):
        _, branch = analytic_bound(n, precision)
        rows.append((n, branch))
        if branch == "linear":
            last_linear = n
    if last_linear is None:
        crossover = n_lo
    elif last_linear == n_hi:
        crossover = None
    else:
        crossover = last_linear + 1
    agrees = crossover == claimed_linear_max + 1
    if crossover is None:
        note = f"linear branch still dominates at n={n_hi}"
    else:
        note = (
            f"exponential branch takes over at n={crossover}; "
            f"{'matches' if agrees else 'differs from'} the quoted linear "
            f"domination through n={claimed_linear_max}"
        )
    return CrossoverReport(
        rows=tuple(rows),
        crossover_n=crossover,
        claimed_linear_max=claimed_linear_max,
        agrees=agrees,
        note=note,
    )


# ---------------------------------------------------------------------------
# per-n table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundRow:
    n: int
    integer_max: int
    witness: tuple[int, ...]
    analytic: mpf
    branch: str
    lower: mpf


def bound_rows(n_lo: int, n_hi: int, precision: int = DEFAULT_PRECISION) -> list[BoundRow]:
    """Bound-table rows for each n in [n_lo, n_hi]."""
    rows = []
    for n in range(n_lo, n_hi + 1):
        value, witness = integer_max_g(n)
        analytic, branch = analytic_bound(n, precision)
        rows.append(
            BoundRow(
                n=n,
                integer_max=value,
                witness=witness,
                analytic=analytic,
                branch=branch,
                lower=be_lower_bound(n, precision),
            )
        )
    return rows
