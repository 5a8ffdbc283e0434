"""Exhaustive enumeration of divisor classes by square and degree.

The ambient lattices have hyperbolic signature (1, rank-1).  For a reference
class H of positive square, any class v splits rationally as a multiple of H
plus a vector in the negative definite complement H-perp, so the set

    { v : v.v = s,  v.H = k }

is finite for every (s, k): it is the set of lattice points on an ellipsoid
in an affine translate of H-perp.  We enumerate it exactly with a
branch-and-bound walk over a square-completion (LDL) form of the complement,
using rational arithmetic throughout.  Each query also derives an explicit
coordinate box certified to contain all solutions, which independent
brute-force oracles can scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import intmath
from .errors import DegenerateLattice, NotPositiveClass, ShapeError, SignatureError
from .lattice import DivisorClass, GramLattice, lattice_profile


@dataclass(frozen=True)
class EnumQuery:
    square: int
    degree_min: int
    degree_max: int

    def __post_init__(self):
        if self.square % 2 != 0:
            raise ShapeError("square must be even on an even lattice")
        if self.degree_min > self.degree_max:
            raise ShapeError("degree_min must not exceed degree_max")


@dataclass(frozen=True)
class CompletenessBound:
    """Certified coordinate box for one enumeration call.

    Every solution v of the query satisfies |v[i]| <= box[i]; a brute-force
    scan over the box is therefore an exhaustive oracle for the same query.
    """

    square_min: int
    square_max: int
    degree_min: int
    degree_max: int
    box: tuple[int, ...]


@dataclass(frozen=True)
class EnumResult:
    classes: tuple[DivisorClass, ...]
    completeness_bound: CompletenessBound


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_div(a: int, b: int) -> int:
    return a // b


class _Fiber:
    """Cached decomposition of a lattice relative to a positive class.

    Solutions of v.ref == k are v = (k/lead) * t0 + sum t_i u_i with the u_i
    an integer basis of the kernel of the degree functional.  The square of
    v restricted to that affine slice is an inhomogeneous negative definite
    quadratic in t, prepared here for repeated branch-and-bound walks.
    """

    def __init__(self, lat: GramLattice, ref: tuple[int, ...]):
        gram = lat.gram_rows()
        self.lat = lat
        self.ref = list(ref)
        c = intmath.mat_vec(gram, self.ref)
        self.ref_square = intmath.vec_dot(self.ref, c)
        if self.ref_square <= 0:
            raise NotPositiveClass("reference class must have positive square")
        s, d, t = intmath.smith_normal_form([c])
        self.lead = d[0][0] * s[0][0]  # c . t0 == lead, |lead| == gcd(c)
        cols = intmath.transpose(t)
        self.t0 = list(cols[0])
        kernel = [list(col) for col in cols[1:]]
        if kernel:
            neg = [[-x for x in row] for row in gram]
            kernel = intmath.lll_reduce(kernel, neg)
        self.kernel = kernel
        m = len(self.kernel)
        self.m = m
        n = lat.rank
        # u_rows[j][i] is coordinate j of kernel vector i.
        self.u_rows = [[self.kernel[i][j] for i in range(m)] for j in range(n)]
        gu = [intmath.mat_vec(gram, b) for b in self.kernel]
        self.a = [[intmath.vec_dot(gu[i], self.kernel[j]) for j in range(m)] for i in range(m)]
        self.w1 = [intmath.vec_dot(gu[i], self.t0) for i in range(m)]
        self.q00 = intmath.vec_dot(intmath.mat_vec(gram, self.t0), self.t0)
        if m:
            p = [[Fraction(-x) for x in row] for row in self.a]
            try:
                self.ldl = intmath.ldl_decompose(p)
            except DegenerateLattice as exc:
                raise SignatureError(
                    "orthogonal complement of the reference class is not negative definite"
                ) from exc
            self.p_inv = intmath.frac_inverse(p)
        else:
            self.ldl = ([], [])
            self.p_inv = []

    def solve_degree(self, degree: int, square_min: int, square_max: int):
        """All integer v with v.ref == degree and square_min <= v.v <= square_max.

        Returns (list of coordinate tuples, per-coordinate box bound).
        """
        n = self.lat.rank
        if degree % self.lead != 0:
            return [], [0] * n
        q = degree // self.lead
        v0 = [q * x for x in self.t0]
        q0 = q * q * self.q00
        if self.m == 0:
            if square_min <= q0 <= square_max:
                return [tuple(v0)], [abs(x) for x in v0]
            return [], [0] * n
        w = [q * x for x in self.w1]
        center = [sum(self.p_inv[i][j] * w[j] for j in range(self.m)) for i in range(self.m)]
        shift = sum(w[i] * center[i] for i in range(self.m))
        radius = Fraction(q0) + shift - square_min
        if radius < 0:
            return [], [0] * n
        d, u = self.ldl
        span = square_max - square_min
        out: list[tuple[int, ...]] = []
        svals: list[Fraction] = [Fraction(0)] * self.m
        tvals = [0] * self.m

        def walk(level: int, remaining: Fraction):
            if level < 0:
                # v.v equals square_min + remaining at this point.
                if remaining <= span:
                    out.append(tuple(
                        a + sum(row[i] * tvals[i] for i in range(self.m))
                        for a, row in zip(v0, self.u_rows)))
                return
            alpha = -center[level]
            urow = u[level]
            for j in range(level + 1, self.m):
                if urow[j]:
                    alpha += urow[j] * svals[j]
            rho = remaining / d[level]
            den = alpha.denominator
            num = alpha.numerator
            bound = intmath.sqrt_floor(rho * den * den)
            lo = _ceil_div(-bound - num, den)
            hi = _floor_div(bound - num, den)
            for ti in range(lo, hi + 1):
                y = ti + alpha
                used = d[level] * y * y
                if used > remaining:
                    continue
                tvals[level] = ti
                svals[level] = Fraction(ti) - center[level]
                walk(level - 1, remaining - used)

        walk(self.m - 1, radius)
        # Certified box around the ambient ellipsoid center v0 + U*center:
        # |t_i - center_i| <= beta_i := sqrt(radius * (P^-1)_ii), hence
        # |v_j| <= |(v0 + U*center)_j| + sum_i |U_ji| * beta_i.
        beta = [intmath.sqrt_ceil(max(Fraction(0), radius * self.p_inv[i][i]))
                for i in range(self.m)]
        box = []
        for j in range(n):
            row = self.u_rows[j]
            mid = v0[j] + sum(row[i] * center[i] for i in range(self.m))
            b = -(-abs(mid.numerator) // mid.denominator)  # ceil(|mid|)
            for i in range(self.m):
                b += abs(row[i]) * beta[i]
            box.append(b)
        return out, box


@lru_cache(maxsize=256)
def _fiber(lat: GramLattice, ref: tuple[int, ...]) -> _Fiber:
    return _Fiber(lat, ref)


def _require_hyperbolic(lat: GramLattice):
    sig = lattice_profile(lat).signature
    if sig != (1, lat.rank - 1):
        raise SignatureError(f"expected signature (1, {lat.rank - 1}), found {sig}")


def classes_with_degree(lat: GramLattice, ref: DivisorClass, degree: int,
                        square_min: int, square_max: int) -> list[DivisorClass]:
    """All classes v with v.ref == degree and square in [square_min, square_max],
    sorted lexicographically by coordinates."""
    _require_hyperbolic(lat)
    fiber = _fiber(lat, ref.coords)
    found, _ = fiber.solve_degree(degree, square_min, square_max)
    return [lat.cls(v) for v in sorted(found)]


def enumerate_square_degree(lat: GramLattice, ref: DivisorClass, square: int,
                            degree_min: int, degree_max: int) -> EnumResult:
    """All classes with the exact square and degree in the closed window."""
    _require_hyperbolic(lat)
    fiber = _fiber(lat, ref.coords)
    all_found: list[tuple[int, ...]] = []
    box = [0] * lat.rank
    for k in range(degree_min, degree_max + 1):
        found, kbox = fiber.solve_degree(k, square, square)
        all_found.extend(found)
        box = [max(a, b) for a, b in zip(box, kbox)]
    classes = tuple(lat.cls(v) for v in sorted(set(all_found)))
    bound = CompletenessBound(square, square, degree_min, degree_max, tuple(box))
    return EnumResult(classes, bound)


def enumerate_by_square_and_degree(context, query: EnumQuery) -> EnumResult:
    """Query-driven entry point: enumerate against a polarized context."""
    return enumerate_square_degree(context.lattice, context.h, query.square,
                                   query.degree_min, query.degree_max)


def orthogonal_roots(lat: GramLattice, ref: DivisorClass) -> list[DivisorClass]:
    """All classes v with v.v == -2 and v.ref == 0; both v and -v appear.

    Requires ref.square() > 0 so that the fiber is negative definite.
    """
    _require_hyperbolic(lat)
    if ref.square() <= 0:
        raise NotPositiveClass("orthogonal root search needs a class of positive square")
    fiber = _fiber(lat, ref.coords)
    found, _ = fiber.solve_degree(0, -2, -2)
    return [lat.cls(v) for v in sorted(found)]


def roots_orthogonal_to(context, d: DivisorClass) -> list[DivisorClass]:
    """Alias taking a polarized context for signature validation."""
    return orthogonal_roots(context.lattice, d)
