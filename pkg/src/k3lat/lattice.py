"""Integer lattices presented by Gram matrices, and divisor classes on them.

A GramLattice is an even nondegenerate symmetric bilinear form on Z^rank
together with labels for the basis vectors.  DivisorClass is an integer
coordinate vector tied to its lattice.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmath
from .errors import (
    DegenerateLattice,
    LatticeMismatch,
    NotARoot,
    ShapeError,
)


@dataclass(frozen=True)
class GramLattice:
    """An even, nondegenerate integer lattice with a labelled basis."""

    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.gram)
        if len(self.labels) != n:
            raise ShapeError("label count must equal rank")
        if len(set(self.labels)) != n:
            raise ShapeError("basis labels must be distinct")
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise ShapeError("Gram matrix must be square")
            if row[i] % 2 != 0:
                raise ShapeError(f"diagonal entry for {self.labels[i]} is odd; lattice must be even")
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ShapeError("Gram matrix must be symmetric")
        if intmath.det([list(r) for r in self.gram]) == 0:
            raise DegenerateLattice("Gram matrix is singular")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def cls(self, coords) -> DivisorClass:
        return DivisorClass(self, tuple(int(c) for c in coords))

    def zero(self) -> DivisorClass:
        return self.cls([0] * self.rank)

    def basis_class(self, label: str) -> DivisorClass:
        i = self.labels.index(label)
        return self.cls([1 if j == i else 0 for j in range(self.rank)])

    def combination(self, coeffs: dict[str, int]) -> DivisorClass:
        v = [0] * self.rank
        for label, c in coeffs.items():
            v[self.labels.index(label)] += int(c)
        return self.cls(v)

    def gram_rows(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def __repr__(self):
        return f"GramLattice(rank={self.rank}, labels={','.join(self.labels)})"


def make_lattice(gram, labels=None) -> GramLattice:
    rows = tuple(tuple(int(x) for x in row) for row in gram)
    if labels is None:
        labels = tuple(f"e{i+1}" for i in range(len(rows)))
    return GramLattice(rows, tuple(labels))


@dataclass(frozen=True)
class DivisorClass:
    lattice: GramLattice
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise ShapeError("coordinate length must equal lattice rank")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        _same_lattice(self, other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        _same_lattice(self, other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.lattice, tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> DivisorClass:
        return DivisorClass(self.lattice, tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: DivisorClass) -> int:
        return pairing(self, other)

    def square(self) -> int:
        return pairing(self, self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_primitive(self) -> bool:
        return intmath.gcd_vector(self.coords) == 1

    def describe(self) -> str:
        """Human-readable combination of basis labels, e.g. 'L - 2*E'."""
        terms = []
        for c, label in zip(self.coords, self.lattice.labels):
            if c == 0:
                continue
            if c == 1:
                terms.append(("+", label))
            elif c == -1:
                terms.append(("-", label))
            else:
                terms.append(("+" if c > 0 else "-", f"{abs(c)}*{label}"))
        if not terms:
            return "0"
        sign, first = terms[0]
        out = (("-" if sign == "-" else "") + first)
        for sign, term in terms[1:]:
            out += f" {sign} {term}"
        return out

    def __repr__(self):
        return f"<{self.describe()}>"


def _same_lattice(u: DivisorClass, v: DivisorClass):
    if u.lattice != v.lattice:
        raise LatticeMismatch("classes live on different lattices")


def pairing(u: DivisorClass, v: DivisorClass) -> int:
    """Bilinear pairing u . v on the shared lattice."""
    _same_lattice(u, v)
    g = u.lattice.gram
    return sum(a * sum(g[i][j] * b for j, b in enumerate(v.coords))
               for i, a in enumerate(u.coords))


@dataclass(frozen=True)
class LatticeProfile:
    signature: tuple[int, int]
    even: bool
    discriminant: int


def lattice_profile(lat: GramLattice) -> LatticeProfile:
    """Signature, evenness and discriminant, via exact diagonalization."""
    gram = lat.gram_rows()
    d = intmath.det(gram)
    if d == 0:
        raise DegenerateLattice("Gram matrix is singular")
    sig = intmath.signature_of(gram)
    even = all(gram[i][i] % 2 == 0 for i in range(lat.rank))
    return LatticeProfile(signature=sig, even=even, discriminant=d)


@dataclass(frozen=True)
class EmbeddingReport:
    is_isometric_embedding: bool
    is_primitive: bool
    invariant_factors: tuple[int, ...]


def verify_embedding(src: GramLattice, dst: GramLattice, matrix) -> EmbeddingReport:
    """Check whether an integer matrix embeds src isometrically into dst.

    The matrix has one column per src basis vector, holding its image in dst
    coordinates.  Isometry means matrix^T * dst.gram * matrix == src.gram.
    Primitivity of the image sublattice is certified by the Smith normal
    form of the matrix: the embedding is primitive exactly when all
    invariant factors are 1.
    """
    m = [[int(x) for x in row] for row in matrix]
    intmath.check_rectangular(m, dst.rank, src.rank)
    mt = intmath.transpose(m)
    carried = intmath.mat_mul(intmath.mat_mul(mt, dst.gram_rows()), m)
    isometric = carried == src.gram_rows()
    factors = tuple(intmath.invariant_factors(m))
    primitive = isometric and len(factors) == src.rank and all(f == 1 for f in factors)
    return EmbeddingReport(isometric, primitive, factors)


def _to_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def change_basis_isometry(src: GramLattice, dst: GramLattice, matrix) -> bool:
    """True iff the (possibly rational) basis-change matrix carries src's
    Gram matrix exactly onto dst's.

    Columns give the new basis vectors in src coordinates; rational entries
    are allowed (overlattice bases), entered as ints, Fractions or 'p/q'
    strings.  All pairings of image vectors must come out integral, and the
    resulting Gram matrix must equal dst.gram entry for entry.
    """
    m = [[_to_fraction(x) for x in row] for row in matrix]
    intmath.check_rectangular(m, src.rank, dst.rank)
    gram = [[Fraction(x) for x in row] for row in src.gram_rows()]
    mt = [list(col) for col in zip(*m)]
    carried = [[sum(a * sum(gram[i][j] * b for j, b in enumerate(col2))
                    for i, a in enumerate(col1))
                for col2 in mt] for col1 in mt]
    for i in range(dst.rank):
        for j in range(dst.rank):
            if carried[i][j].denominator != 1:
                return False
            if carried[i][j] != dst.gram[i][j]:
                return False
    return True


def reflect(d: DivisorClass, root: DivisorClass) -> DivisorClass:
    """Picard-Lefschetz reflection of d in a class of square -2."""
    _same_lattice(d, root)
    if root.square() != -2:
        raise NotARoot(f"cannot reflect in {root.describe()}: square is {root.square()}, not -2")
    return d + pairing(d, root) * root
