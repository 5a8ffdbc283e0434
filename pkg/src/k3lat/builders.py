"""Builders for the recurring lattice families and the Kummer generator span.

Five parameterized families recur throughout the scenario suites:

* ``omega_lattice(g, d)`` -- rank 10: a polarization L with L.L = 2g-2, an
  elliptic pencil E of degree floor((g+1)/2), and eight pairwise-disjoint
  nodal classes G1..G8 of prescribed degrees, all disjoint from E.
* ``p_lattice(p, h)`` -- rank 3: a genus-h polarization M plus two disjoint
  nodal classes; embeds into omega_lattice(h, ...) via ``p_into_omega``.
* ``lambda_lattice(a)`` -- rank 3: a genus-a polarization D, a degree-6
  pencil F and a degree-1 nodal class; embeds into omega_lattice(11, ...).
* ``lambdabar_lattice(a)`` -- rank 3: the same lattice rebased on
  {D-2F-G, F, G}, used when the polarization is rebuilt from the far side
  of the pencil; embeds into k_lattice(d) via ``lambdabar_into_k``.
* ``k_lattice(d)`` -- rank 5: realized inside the Picard group of a Kummer
  surface by explicit sums of nodal classes (``verify_kummer_embedding``).

The Kummer span itself is a formal pairing table over twenty-five generator
classes.  Those classes are linearly dependent in the actual Picard group,
so the span is not a GramLattice; only squares and pairings of formal sums
are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intmath
from .errors import RangeError
from .lattice import (
    DivisorClass,
    EmbeddingReport,
    GramLattice,
    make_lattice,
    verify_embedding,
)

OMEGA_LABELS = ("L", "E", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8")


def pencil_degree(g: int) -> int:
    """Degree floor((g+1)/2) of the elliptic pencil against the genus-g
    polarization."""
    return (g + 1) // 2


@dataclass(frozen=True)
class OmegaParams:
    """Admissible parameters for ``omega_lattice``: genus g >= 5 and eight
    nodal-class degrees with 1 <= d_i < floor((g+1)/2)."""

    g: int
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.g < 5:
            raise RangeError(f"genus {self.g} below 5")
        if len(self.d) != 8:
            raise RangeError("exactly eight nodal-class degrees are required")
        w = pencil_degree(self.g)
        for di in self.d:
            if not 1 <= di < w:
                raise RangeError(f"nodal-class degree {di} outside [1, {w - 1}]")


def omega_lattice(g: int, d) -> GramLattice:
    """Rank-10 lattice on {L, E, G1..G8}.

    L.L = 2g-2, (L.E) = floor((g+1)/2), (L.Gi) = d[i-1], E.E = 0,
    (E.Gi) = 0 and Gi.Gj = -2 delta_ij.  The pencil E and each Gi are
    classes of integral curves; each E - Gi is a root, the residual
    component of the reducible pencil member through Gi.
    """
    params = OmegaParams(g, tuple(d))
    w = pencil_degree(params.g)
    gram = [[0] * 10 for _ in range(10)]
    gram[0][0] = 2 * params.g - 2
    gram[0][1] = gram[1][0] = w
    for i, di in enumerate(params.d):
        gram[0][2 + i] = gram[2 + i][0] = di
        gram[2 + i][2 + i] = -2
    return make_lattice(gram, OMEGA_LABELS)


def omega_jacobian_lattice(g: int, d) -> GramLattice:
    """Rank-10 lattice on {L, F, G1..G8} where the pencil has degree one.

    Passing to the Jacobian of the elliptic fibration divides the pencil by
    its degree: F = E / floor((g+1)/2), so (L.F) = 1 while every other
    pairing matches ``omega_lattice(g, d)``.
    """
    params = OmegaParams(g, tuple(d))
    gram = [[0] * 10 for _ in range(10)]
    gram[0][0] = 2 * params.g - 2
    gram[0][1] = gram[1][0] = 1
    for i, di in enumerate(params.d):
        gram[0][2 + i] = gram[2 + i][0] = di
        gram[2 + i][2 + i] = -2
    labels = ("L", "F") + OMEGA_LABELS[2:]
    return make_lattice(gram, labels)


def hyperbolic_plane() -> GramLattice:
    """The even unimodular rank-2 form [[0,1],[1,0]]."""
    return make_lattice([[0, 1], [1, 0]], ("u1", "u2"))


def section_frame() -> GramLattice:
    """Gram [[-2,1],[1,0]] of a zero section and fibre of an elliptic
    fibration; unimodular, and isometric to the hyperbolic plane via
    sigma -> sigma + f."""
    return make_lattice([[-2, 1], [1, 0]], ("sigma", "f"))


def minus_two_block(n: int) -> GramLattice:
    """Orthogonal sum of n copies of (-2)."""
    if n < 1:
        raise RangeError("need at least one summand")
    gram = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    return make_lattice(gram, tuple(f"r{i + 1}" for i in range(n)))


def direct_sum(first: GramLattice, second: GramLattice) -> GramLattice:
    """Orthogonal direct sum, keeping both label sets (which must not
    collide)."""
    n, m = first.rank, second.rank
    gram = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            gram[i][j] = first.gram[i][j]
    for i in range(m):
        for j in range(m):
            gram[n + i][n + j] = second.gram[i][j]
    return make_lattice(gram, first.labels + second.labels)


def jacobian_section_basis(g: int, d) -> list[list[int]]:
    """Column matrix of the basis {L - g F, F, Gi - d_i F} of
    ``omega_jacobian_lattice(g, d)``.

    Carrying the Gram across this basis yields exactly
    ``direct_sum(section_frame(), minus_two_block(8))``: the first vector is
    a section class of square -2, the second the fibre, and the rest are
    fibre components missing the section.
    """
    params = OmegaParams(g, tuple(d))
    cols = [[1] + [-params.g] + [0] * 8, [0, 1] + [0] * 8]
    for i, di in enumerate(params.d):
        col = [0, -di] + [0] * 8
        col[2 + i] = 1
        cols.append(col)
    return [[col[i] for col in cols] for i in range(10)]


def jacobian_hyperbolic_basis(g: int, d) -> list[list[int]]:
    """Column matrix of the basis {L - (g-1) F, F, Gi - d_i F}, obtained
    from ``jacobian_section_basis`` by sigma -> sigma + f; it carries the
    Gram to ``direct_sum(hyperbolic_plane(), minus_two_block(8))``."""
    matrix = jacobian_section_basis(g, d)
    matrix[1][0] += 1
    return matrix


@dataclass(frozen=True)
class LatticeEmbedding:
    """An integer embedding of one labelled lattice into another.

    ``matrix`` has one column per source basis vector, holding its image in
    destination coordinates; ``report`` carries the isometry/primitivity
    verdicts.  ``choices`` records discrete parameters picked while building
    the destination (free nodal degrees and the like).
    """

    src: GramLattice
    dst: GramLattice
    matrix: tuple[tuple[int, ...], ...]
    report: EmbeddingReport
    choices: dict = field(default_factory=dict)

    def image(self, label: str) -> DivisorClass:
        j = self.src.labels.index(label)
        return self.dst.cls([row[j] for row in self.matrix])


def _embedding(src: GramLattice, dst: GramLattice, images, choices) -> LatticeEmbedding:
    matrix = tuple(
        tuple(img.coords[i] for img in images) for i in range(dst.rank)
    )
    report = verify_embedding(src, dst, matrix)
    return LatticeEmbedding(src, dst, matrix, report, choices)


# ---------------------------------------------------------------------------
# the rank-3 family with two nodal classes


def p_split(p: int, h: int) -> tuple[int, int]:
    """Division p - h = w*l + m with w = pencil_degree(h) and 0 <= m < w."""
    if not p > h >= 8:
        raise RangeError("need p > h >= 8")
    return divmod(p - h, pencil_degree(h))


def p_polarization_pairing(p: int, h: int) -> int:
    """The pairing s1 = (M.R1): p-h-1 when the remainder m is 0 or w-1,
    and p-h+1 otherwise."""
    _, m = p_split(p, h)
    if m in (0, pencil_degree(h) - 1):
        return p - h - 1
    return p - h + 1


def p_lattice(p: int, h: int) -> GramLattice:
    """Rank-3 lattice on {M, R1, R2}: M.M = 2h-2, (M.R1) = s1, (M.R2) = 3,
    both Ri of square -2 and disjoint from each other."""
    s1 = p_polarization_pairing(p, h)
    gram = [[2 * h - 2, s1, 3], [s1, -2, 0], [3, 0, -2]]
    return make_lattice(gram, ("M", "R1", "R2"))


def p_into_omega(p: int, h: int, free_degrees=None) -> LatticeEmbedding:
    """Embed ``p_lattice(p, h)`` into ``omega_lattice(h, d)``.

    The receiving degrees are d1 = m+1 (generic remainder), w-1 (m = 0) or
    w-2 (m = w-1), and d2 = 3; the remaining six are free and default to 1.
    M goes to L, R1 to l*E + G1 (one fewer pencil when m = 0), R2 to G2.
    """
    src = p_lattice(p, h)
    w = pencil_degree(h)
    l, m = p_split(p, h)
    if m == 0:
        d1, pencils = w - 1, l - 1
    elif m == w - 1:
        d1, pencils = w - 2, l
    else:
        d1, pencils = m + 1, l
    rest = tuple(free_degrees) if free_degrees is not None else (1,) * 6
    if len(rest) != 6:
        raise RangeError("exactly six free nodal-class degrees are required")
    dst = omega_lattice(h, (d1, 3) + rest)
    images = [
        dst.basis_class("L"),
        dst.combination({"E": pencils, "G1": 1}),
        dst.basis_class("G2"),
    ]
    choices = {"d1": d1, "d2": 3, "pencils": pencils, "remainder": m}
    return _embedding(src, dst, images, choices)


# ---------------------------------------------------------------------------
# the rank-3 family with a degree-6 pencil


def lambda_lattice(a: int) -> GramLattice:
    """Rank-3 lattice on {D, F, G}: D.D = 2a-2, (D.F) = 6, (D.G) = 1,
    F.F = 0, (F.G) = 0, G.G = -2; defined for 14 <= a <= 19."""
    if not 14 <= a <= 19:
        raise RangeError(f"genus {a} outside [14, 19]")
    gram = [[2 * a - 2, 6, 1], [6, 0, 0], [1, 0, -2]]
    return make_lattice(gram, ("D", "F", "G"))


def lambda_omega_solutions(a: int) -> list[tuple[int, int, int]]:
    """All (eps, d1, d2) with 3 <= d1, d2 <= 5 making L + G1 + eps*G2 in a
    genus-11 lattice have square 2a-2, i.e. a = 10 + d1 + eps*(d2 - 1).

    Every a in [14, 19] admits at least one solution; all are reported
    rather than assuming a unique one.
    """
    if not 14 <= a <= 19:
        raise RangeError(f"genus {a} outside [14, 19]")
    found = []
    for eps in (0, 1):
        for d1 in range(3, 6):
            for d2 in range(3, 6):
                if 10 + d1 + eps * (d2 - 1) == a:
                    found.append((eps, d1, d2))
    return found


def lambda_into_omega(a: int, solution=None) -> LatticeEmbedding:
    """Embed ``lambda_lattice(a)`` into a genus-11 lattice with d8 = 1.

    D goes to H = L + G1 + eps*G2, F to the pencil E (degree 6 at genus 11),
    G to G8.  The default (eps, d1, d2) takes eps = 0 for a <= 15 and
    eps = 1 above, with the smallest matching degrees; any entry of
    ``lambda_omega_solutions(a)`` may be passed instead.
    """
    src = lambda_lattice(a)
    solutions = lambda_omega_solutions(a)
    if solution is None:
        preferred = 0 if a <= 15 else 1
        solution = next(s for s in solutions if s[0] == preferred)
    elif tuple(solution) not in solutions:
        raise RangeError(f"{solution} does not produce a square of {2 * a - 2}")
    eps, d1, d2 = solution
    dst = omega_lattice(11, (d1, d2, 1, 1, 1, 1, 1, 1))
    images = [
        dst.combination({"L": 1, "G1": 1, "G2": eps}),
        dst.basis_class("E"),
        dst.basis_class("G8"),
    ]
    return _embedding(src, dst, images, {"eps": eps, "d1": d1, "d2": d2})


# ---------------------------------------------------------------------------
# the rank-5 family and its Kummer realization


def k_lattice(d: int) -> GramLattice:
    """Rank-5 lattice on {A, B, G1, G2, G3} with pairings
    A.A = -2, (A.B) = 6, (A.G1) = 3, (A.G2) = 2, (A.G3) = d, B.B = 0,
    Gi.Gi = -2 and all other pairings 0; defined for 1 <= d <= 5."""
    if not 1 <= d <= 5:
        raise RangeError(f"parameter {d} outside [1, 5]")
    gram = [
        [-2, 6, 3, 2, d],
        [6, 0, 0, 0, 0],
        [3, 0, -2, 0, 0],
        [2, 0, 0, -2, 0],
        [d, 0, 0, 0, -2],
    ]
    return make_lattice(gram, ("A", "B", "G1", "G2", "G3"))


def lambdabar_lattice(a: int) -> GramLattice:
    """Rank-3 lattice on {X, Y, Z} = {D - 2F - G, F, G} rebased from
    ``lambda_lattice(a)``: X.X = 2(a-14)-2, (X.Y) = 6, (X.Z) = 3."""
    if not 14 <= a <= 19:
        raise RangeError(f"genus {a} outside [14, 19]")
    y = a - 14
    gram = [[2 * y - 2, 6, 3], [6, 0, 0], [3, 0, -2]]
    return make_lattice(gram, ("X", "Y", "Z"))


def lambdabar_basis_in_lambda() -> list[list[int]]:
    """Column matrix expressing {X, Y, Z} in {D, F, G} coordinates; it is
    unimodular, so the rebase is an isometry of the whole lattice."""
    return [[1, 0, 0], [-2, 1, 0], [-1, 0, 1]]


def lambdabar_into_k(a: int, d: int | None = None) -> LatticeEmbedding:
    """Embed ``lambdabar_lattice(a)`` into ``k_lattice(d)``.

    X goes to A + eps1*G3 + eps2*G2, Y to B, Z to G1, where the square of
    the image forces (d, eps1, eps2): a = 14 leaves d free (eps = 0),
    15 <= a <= 18 takes d = a-13 with eps1 = 1, and a = 19 takes d = 5 with
    both eps switched on.
    """
    src = lambdabar_lattice(a)
    if a == 14:
        eps1, eps2 = 0, 0
        d = 1 if d is None else d
    elif a < 19:
        eps1, eps2 = 1, 0
        required = a - 13
        if d not in (None, required):
            raise RangeError(f"genus {a} forces the parameter {required}")
        d = required
    else:
        eps1, eps2 = 1, 1
        if d not in (None, 5):
            raise RangeError("genus 19 forces the parameter 5")
        d = 5
    dst = k_lattice(d)
    images = [
        dst.combination({"A": 1, "G3": eps1, "G2": eps2}),
        dst.basis_class("B"),
        dst.basis_class("G1"),
    ]
    return _embedding(src, dst, images, {"d": d, "eps1": eps1, "eps2": eps2})


# ---------------------------------------------------------------------------
# the Kummer generator span

KUMMER_LABELS = (
    tuple(f"E{i}{j}" for i in range(1, 5) for j in range(1, 5))
    + ("T1", "T2", "T3", "T4")
    + ("S1", "S2", "S3", "S4")
    + ("F",)
)

# Test generators whose pairing rows against the five images certify
# primitivity: their 5x5 pairing matrix is unimodular.
KUMMER_TEST_GENERATORS = ("T1", "T3", "E41", "E24", "E23")


@dataclass(frozen=True)
class KummerSpan:
    """Formal pairing table of the twenty-five generator classes on the
    Kummer surface of a product of two elliptic curves.

    Generators: sixteen exceptional classes E_ij over the 2-torsion points,
    four horizontal strict transforms T_i, four vertical ones S_j, and one
    fibre class F.  Squares are -2 except F.F = 0; T_i meets E_ij once,
    S_j meets E_ij once, F meets each S_j once, and every other pair is
    disjoint.  The F.S value is not independent data: it is forced by
    requiring the composite classes below to reproduce ``k_lattice``, via
    (A.B) = 3*(F.S) + 3 = 6.  It is injectable so that corrupt tables can
    serve as negative controls.
    """

    fibre_section_pairing: int = 1

    def generator_pairing(self, u: str, v: str) -> int:
        if u not in KUMMER_LABELS or v not in KUMMER_LABELS:
            unknown = u if u not in KUMMER_LABELS else v
            raise RangeError(f"unknown generator {unknown!r}")
        if u == v:
            return 0 if u == "F" else -2
        a, b = sorted((u, v))
        if a.startswith("E"):
            if b.startswith("T") and b[1] == a[1]:
                return 1
            if b.startswith("S") and b[1] == a[2]:
                return 1
            return 0
        if a == "F" and b.startswith("S"):
            return self.fibre_section_pairing
        return 0

    def pairing(self, left: dict[str, int], right: dict[str, int]) -> int:
        total = 0
        for u, cu in left.items():
            if cu == 0:
                continue
            for v, cv in right.items():
                if cv:
                    total += cu * cv * self.generator_pairing(u, v)
        return total

    def square(self, expr: dict[str, int]) -> int:
        return self.pairing(expr, expr)


@dataclass(frozen=True)
class CombinationSummary:
    square: int
    pairings: tuple[tuple[str, int], ...]

    def pairing_with(self, label: str) -> int:
        for name, value in self.pairings:
            if name == label:
                return value
        raise RangeError(f"unknown generator {label!r}")


def kummer_combination(expr: dict[str, int], span: KummerSpan | None = None) -> CombinationSummary:
    """Square of a formal sum of generators, plus its pairing against every
    single generator (in ``KUMMER_LABELS`` order)."""
    if span is None:
        span = KummerSpan()
    square = span.square(dict(expr))
    pairings = tuple(
        (label, span.pairing(dict(expr), {label: 1})) for label in KUMMER_LABELS
    )
    return CombinationSummary(square, pairings)


def kummer_images(d: int) -> dict[str, dict[str, int]]:
    """Coefficient vectors of the five ``k_lattice`` basis classes as sums
    of Kummer generators.

    A and B are trees of seven generators each; G1 and G2 are stars around
    T3 and T2.  G3 branches on d: a star around T4 for d <= 3, and for
    d >= 4 the star continues through E44 and S4 into the whole B tree
    minus its fibre.
    """
    if not 1 <= d <= 5:
        raise RangeError(f"parameter {d} outside [1, 5]")

    def sum_of(*labels: str) -> dict[str, int]:
        return {label: 1 for label in labels}

    images = {
        "A": sum_of("S1", "E11", "T1", "E12", "S2", "E13", "S3"),
        "B": sum_of("F", "S4", "E24", "T2", "E21", "E22", "E23"),
        "G1": sum_of("T3", "E31", "E32", "E33"),
        "G2": sum_of("T2", "E21", "E22"),
    }
    if d <= 3:
        images["G3"] = sum_of("T4", *(f"E4{i}" for i in range(1, d + 1)))
    else:
        images["G3"] = sum_of(
            "T4",
            *(f"E4{i}" for i in range(1, d - 2)),
            "E44", "S4", "E24", "T2", "E21", "E22", "E23",
        )
    return images


def verify_kummer_embedding(d: int, span: KummerSpan | None = None) -> EmbeddingReport:
    """Check that the composite classes of ``kummer_images(d)`` carry the
    exact Gram of ``k_lattice(d)``, and certify primitivity of their span
    by the unimodularity of the test-generator pairing matrix."""
    if span is None:
        span = KummerSpan()
    target = k_lattice(d)
    images = kummer_images(d)
    ordered = [images[label] for label in target.labels]
    carried = [[span.pairing(u, v) for v in ordered] for u in ordered]
    isometric = carried == target.gram_rows()
    rows = [
        [span.pairing({gen: 1}, img) for img in ordered]
        for gen in KUMMER_TEST_GENERATORS
    ]
    factors = tuple(intmath.invariant_factors(rows))
    primitive = isometric and len(factors) == target.rank and all(f == 1 for f in factors)
    return EmbeddingReport(isometric, primitive, factors)
