"""Closed-form and small-search arithmetic used around the lattice suites.

Everything here is exact integer arithmetic; comparisons against rational
bounds are cross-multiplied rather than floated.  The two threshold tables
return the branch that fired alongside the value, since the branch keying
(a genus remainder and two parities) is easy to get wrong silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RangeError, TooLarge


def p_arith(g: int, k: int) -> int:
    """Arithmetic genus k^2(g-1)+1 of a k-fold multiple of a genus-g class."""
    if g < 2 or k < 1:
        raise RangeError("need g >= 2 and k >= 1")
    return k * k * (g - 1) + 1


def stack_dim(g: int, k: int, n: int) -> int:
    """Dimension p_arith(g,k) - n + 19 of the stack of n-nodal curves in a
    k-fold multiple of the polarization, over the moduli of K3 pairs."""
    if n < 0:
        raise RangeError("need n >= 0")
    return p_arith(g, k) - n + 19


def brill_noether_rho(g: int, r: int, d: int) -> int:
    """Brill--Noether number g - (r+1)(g-d+r)."""
    return g - (r + 1) * (g - d + r)


@dataclass(frozen=True)
class Thresholds:
    """A threshold-genus table row: the smallest geometric genus the table
    certifies, with the branch that produced it."""

    g: int
    k: int
    p: int
    l_g: int
    case_tag: str


def l_threshold_prim(g: int) -> Thresholds:
    """Threshold table for primitive classes, keyed on r = (g-11) mod 6:
    12 for r = 0 (a 15 from the first construction, improved to 12 by the
    pencil ladder), 13 for 1 <= r < 5, and 15 for r = 5."""
    if g < 11:
        raise RangeError(f"genus {g} below 11")
    m, r = divmod(g - 11, 6)
    if r == 0:
        value, tag = 12, f"r=0, m={m}: 15 improved to 12"
    elif r < 5:
        value, tag = 13, f"r={r}, m={m}"
    else:
        value, tag = 15, f"r=5, m={m}"
    return Thresholds(g, 1, p_arith(g, 1), value, tag)


def l_threshold_nonprim(g: int, k: int) -> Thresholds:
    """Threshold table for k-fold multiples, k >= 2, keyed on
    r = (g-5) mod 6 and the parities of m = (g-5) div 6 and k:

    r in {3,4}: 15, or 16 when m is even and k odd;
    r = 5:      17, or 18 when m is even and k odd;
    r <= 2:     17, or 18 when m is odd and k odd.
    """
    if k < 2:
        raise RangeError("need k >= 2")
    if g < 8:
        raise RangeError(f"genus {g} below 8")
    m, r = divmod(g - 5, 6)
    m_even, k_even = m % 2 == 0, k % 2 == 0
    if r in (3, 4):
        value = 16 if m_even and not k_even else 15
    elif r == 5:
        value = 18 if m_even and not k_even else 17
    else:
        value = 18 if not m_even and not k_even else 17
    tag = f"r={r}, m {'even' if m_even else 'odd'}, k {'even' if k_even else 'odd'}"
    return Thresholds(g, k, p_arith(g, k), value, tag)


@dataclass(frozen=True)
class PlaneCurveSpec:
    """A plane curve of degree d with n nodes and m ordinary triple points."""

    d: int
    n: int
    m: int

    def __post_init__(self):
        if self.d < 1 or self.n < 0 or self.m < 0:
            raise RangeError("need d >= 1 and n, m >= 0")


def greuel_bound(spec: PlaneCurveSpec) -> bool:
    """Existence gate for an irreducible plane curve of degree d with n
    nodes and m ordinary triple points:
    3n + 6m < (d^2 + 6d - 1)/4 - floor(d/2), compared exactly."""
    lhs = 4 * (3 * spec.n + 6 * spec.m)
    rhs = spec.d * spec.d + 6 * spec.d - 1 - 4 * (spec.d // 2)
    return lhs < rhs


def hirschowitz_vanishing(d: int, mults) -> bool:
    """Vanishing gate for plane curves of degree d through generic fat
    points of the given multiplicities:
    sum m_i(m_i+1)/2 < floor((d+3)^2 / 4)."""
    if d < 0:
        raise RangeError("need d >= 0")
    demanded = sum(m * (m + 1) // 2 for m in mults)
    return demanded < (d + 3) * (d + 3) // 4


def blowup_very_ample(d: int, points: int) -> bool:
    """Very-ampleness gate for dH - E on the plane blown up at generic
    points: d >= 5 and points + 6 <= (d+1)(d+2)/2."""
    if points < 0:
        raise RangeError("need points >= 0")
    return d >= 5 and points + 6 <= (d + 1) * (d + 2) // 2


@dataclass(frozen=True)
class MarkedWahlConditions:
    cond1: bool
    cond2: bool
    overall: bool


def marked_wahl_conditions(spec: PlaneCurveSpec) -> MarkedWahlConditions:
    """Surjectivity gate for the marked Gaussian of the strict transform:
    d >= 24, m >= 10, 3n + 6m < floor((d-5)^2/4) and
    n + m + 6 <= (d-6)(d-3)/18 (compared exactly)."""
    cond1 = 3 * spec.n + 6 * spec.m < (spec.d - 5) * (spec.d - 5) // 4
    cond2 = 18 * (spec.n + spec.m + 6) <= (spec.d - 6) * (spec.d - 3)
    overall = spec.d >= 24 and spec.m >= 10 and cond1 and cond2
    return MarkedWahlConditions(cond1, cond2, overall)


def plane_genus(spec: PlaneCurveSpec) -> int:
    """Geometric genus of the strict transform: (d-1)(d-2)/2 - n - 3m.
    A node drops the genus by 1; an ordinary triple point has delta
    invariant 3 (blowing up separates three smooth branches, each pair of
    which met once)."""
    genus = (spec.d - 1) * (spec.d - 2) // 2 - spec.n - 3 * spec.m
    if genus < 0:
        raise RangeError(
            f"degree {spec.d} cannot carry {spec.n} nodes and {spec.m} "
            "triple points: the genus would be negative")
    return genus


@dataclass(frozen=True)
class MarkedWahlGenus:
    d_min: int
    h: int


def marked_wahl_genus(l: int) -> MarkedWahlGenus:
    """Smallest degree whose plane model with l nodes and ten triple points
    passes ``marked_wahl_conditions``, with the genus it realizes."""
    if l < 0:
        raise RangeError("need l >= 0")
    cap = 10 * (l + 12)
    for d in range(24, cap + 1):
        spec = PlaneCurveSpec(d, l, 10)
        if marked_wahl_conditions(spec).overall:
            return MarkedWahlGenus(d, plane_genus(spec))
    raise TooLarge(f"no qualifying degree up to {cap}")


def wahl_bound_check(g: int, k: int, n: int) -> bool:
    """Hypothesis gate for nonsurjectivity of the marked Wahl map on an
    n-nodal curve in a k-fold multiple of a genus-g polarization:
    5n <= p_arith(g,k) - 2, plus g - n >= 13 when k = 1 and g >= 8 when
    k > 1."""
    if n < 0:
        raise RangeError("need n >= 0")
    if 5 * n > p_arith(g, k) - 2:
        return False
    if k == 1:
        return g - n >= 13
    return g >= 8


@dataclass(frozen=True)
class EulerBudget:
    max_type_iii: int
    min_type_i2: int


def euler_fibre_budget(a1_fibres: int, total_euler: int) -> EulerBudget:
    """Split a1_fibres nodal-or-cuspidal-type fibres between type III
    (Euler number 3) and type I2 (Euler number 2) under a total Euler
    budget: the largest t with 3t + 2(a1_fibres - t) <= total_euler, and
    the complementary minimum of I2 fibres."""
    if a1_fibres < 0:
        raise RangeError("need a nonnegative fibre count")
    slack = total_euler - 2 * a1_fibres
    max_iii = max(0, min(a1_fibres, slack))
    return EulerBudget(max_iii, a1_fibres - max_iii)
