"""Cone membership decisions with reproducible certificates.

All decisions are made against a polarized context: a hyperbolic lattice
together with a reference class H of positive square.  An ample reference
anchors the effective cone via Riemann-Roch on a K3 surface: a nonzero class
D with D.D >= -2 is effective exactly when (D.H) > 0, and every effective
class is a sum of such "atoms".  Each verdict carries a certificate that can
be re-verified independently:

* Witness        -- an explicit decomposition into atoms (effectivity), or
                    an explicit splitting (non-irreducibility)
* WitnessClass   -- a single obstructing class (non-nef, contracted curve,
                    low-degree pencil)
* Exhausted      -- the exact finite search window that came up empty
* ReflectionChain-- the root sequence used by Weyl-chamber reduction
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from . import intmath
from .enumeration import classes_with_degree, enumerate_square_degree, orthogonal_roots
from .errors import (
    InvalidContext,
    NeedsAmpleContext,
    NotEffective,
    NotPositiveClass,
    NotPrimitive,
    ParityError,
    RangeError,
)
from .lattice import DivisorClass, GramLattice, lattice_profile, pairing, reflect


class ContextStatus(Enum):
    AMPLE = "ample"
    BIG_NEF = "big-nef"


@dataclass(frozen=True)
class Witness:
    """Explicit decomposition; parts re-sum to the decided class."""

    parts: tuple[tuple[DivisorClass, int], ...]

    def total(self) -> DivisorClass | None:
        if not self.parts:
            return None
        out = self.parts[0][0].lattice.zero()
        for cls, mult in self.parts:
            out = out + mult * cls
        return out


@dataclass(frozen=True)
class WitnessClass:
    cls: DivisorClass
    reason: str = ""


@dataclass(frozen=True)
class Exhausted:
    """A finite search window that was scanned completely without a hit."""

    description: str
    windows: tuple[tuple[str, int, int], ...] = ()
    candidates_examined: int = 0


@dataclass(frozen=True)
class ReflectionChain:
    roots: tuple[DivisorClass, ...]
    sign_flipped: bool = False


Certificate = Witness | WitnessClass | Exhausted | ReflectionChain


@dataclass(frozen=True)
class Decision:
    verdict: bool
    certificate: Certificate

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class PolarizedContext:
    """A hyperbolic lattice with a distinguished reference class.

    status AMPLE is verified at construction: positive square and no root
    orthogonal to the reference.  status BIG_NEF only demands positive
    square; decisions that need the full effective-cone anchor refuse to
    run against it.
    """

    lattice: GramLattice
    h: DivisorClass
    status: ContextStatus = ContextStatus.AMPLE

    def __post_init__(self):
        if self.h.lattice != self.lattice:
            raise InvalidContext("reference class lives on a different lattice")
        sig = lattice_profile(self.lattice).signature
        if sig != (1, self.lattice.rank - 1):
            raise InvalidContext(f"context needs signature (1, {self.lattice.rank - 1}), found {sig}")
        if self.h.square() <= 0:
            raise NotPositiveClass("reference class must have positive square")
        if self.status is ContextStatus.AMPLE:
            walls = orthogonal_roots(self.lattice, self.h)
            if walls:
                raise InvalidContext(
                    f"reference class is on a wall: orthogonal root {walls[0].describe()}")

    def degree(self, d: DivisorClass) -> int:
        return pairing(self.h, d)


def ample_context(lat: GramLattice, h: DivisorClass) -> PolarizedContext:
    return PolarizedContext(lat, h, ContextStatus.AMPLE)


def big_nef_context(lat: GramLattice, h: DivisorClass) -> PolarizedContext:
    return PolarizedContext(lat, h, ContextStatus.BIG_NEF)


# ---------------------------------------------------------------------------
# effectivity


def is_effective(ctx: PolarizedContext, d: DivisorClass, max_degree: int | None = None) -> Decision:
    """Decide membership in the effective cone anchored by an ample reference.

    Base cases: the zero class is effective; a nonzero class with
    nonpositive degree is not (an ample class meets every curve positively);
    a class with square >= -2 and positive degree is effective by
    Riemann-Roch.  Otherwise D can only be effective by containing a curve
    it meets negatively, necessarily of square -2, so we peel candidate
    roots R with 1 <= (R.H) <= (D.H)-1 and (R.D) < 0 and recurse on D - R.
    The peeling search is exhaustive, so a False verdict is a proof.
    """
    if ctx.status is not ContextStatus.AMPLE:
        raise NeedsAmpleContext("effectivity decisions need an ample reference class")
    if d.lattice != ctx.lattice:
        pairing(ctx.h, d)  # raises LatticeMismatch
    return _effective_cached(ctx.lattice, ctx.h.coords, d.coords, max_degree)


@lru_cache(maxsize=200_000)
def _effective_cached(lat: GramLattice, h_coords: tuple[int, ...], d_coords: tuple[int, ...],
                      max_degree: int | None) -> Decision:
    h = lat.cls(h_coords)
    d = lat.cls(d_coords)
    if d.is_zero():
        return Decision(True, Witness(()))
    deg = pairing(h, d)
    if deg <= 0:
        return Decision(False, Exhausted(
            "nonzero class with nonpositive degree against an ample reference",
            (("degree", deg, deg),), 0))
    if d.square() >= -2:
        return Decision(True, Witness(((d, 1),)))
    top = deg - 1 if max_degree is None else min(deg - 1, max_degree)
    examined = 0
    for k in range(1, top + 1):
        for r in classes_with_degree(lat, h, k, -2, -2):
            if pairing(r, d) >= 0:
                continue
            examined += 1
            rest = _effective_cached(lat, h_coords, (d - r).coords, max_degree)
            if rest.verdict:
                parts: dict[tuple[int, ...], tuple[DivisorClass, int]] = {}
                for cls, mult in ((r, 1), *(rest.certificate.parts if isinstance(rest.certificate, Witness) else ())):
                    key = cls.coords
                    if key in parts:
                        parts[key] = (cls, parts[key][1] + mult)
                    else:
                        parts[key] = (cls, mult)
                return Decision(True, Witness(tuple(parts.values())))
    suffix = "" if max_degree is None else f" (window capped at max_degree={max_degree})"
    return Decision(False, Exhausted(
        "no negative-pairing root admits an effective remainder" + suffix,
        (("root-degree", 1, top),), examined))


def concat_witnesses(a: Witness, b: Witness) -> Witness:
    """Merge two effectivity witnesses into one for the sum class."""
    parts: dict[tuple[int, ...], tuple[DivisorClass, int]] = {}
    for cls, mult in (*a.parts, *b.parts):
        key = cls.coords
        if key in parts:
            parts[key] = (cls, parts[key][1] + mult)
        else:
            parts[key] = (cls, mult)
    return Witness(tuple(parts.values()))


def is_irreducible_class(ctx: PolarizedContext, d: DivisorClass,
                         max_degree: int | None = None) -> Decision:
    """Decide whether an effective class admits no splitting into two
    nonzero effective classes.

    If D splits, some summand is the class A of an irreducible curve, so
    A.A >= -2, A.A <= (A.H)^2 / H.H (Hodge index) and, under an ample
    reference, 1 <= (A.H) <= (D.H)-1.  Searching those A exhausts all
    splittings.
    """
    eff = is_effective(ctx, d, max_degree)
    if not eff.verdict:
        raise NotEffective("irreducibility is only defined for effective classes")
    if d.is_zero():
        raise NotEffective("the zero class has no irreducible decomposition question")
    lat, h = ctx.lattice, ctx.h
    hh = h.square()
    deg = ctx.degree(d)
    top = deg - 1 if max_degree is None else min(deg - 1, max_degree)
    examined = 0
    for a_deg in range(1, top + 1):
        smax = (a_deg * a_deg) // hh
        smax -= smax % 2
        for a in classes_with_degree(lat, h, a_deg, -2, smax):
            if a.is_zero():
                continue
            examined += 1
            if not is_effective(ctx, a, max_degree).verdict:
                continue
            rest = d - a
            if is_effective(ctx, rest, max_degree).verdict:
                return Decision(False, Witness(((a, 1), (rest, 1))))
    suffix = "" if max_degree is None else f" (window capped at max_degree={max_degree})"
    return Decision(True, Exhausted(
        "no splitting into two nonzero effective classes" + suffix,
        (("summand-degree", 1, top),), examined))


# ---------------------------------------------------------------------------
# nef cone


def _nef_root_cap(h_sq: int, e: int, d_sq: int) -> int:
    """Degree cap for roots that can pair negatively with D.

    For a root R with (R.H) = r >= 1 and (R.D) = -t, t >= 1, the Gram
    matrix of (H, D, R) spans a sublattice containing H, so in signature
    (1, n-1) its determinant is nonnegative:

        det = -2(h d - e^2) - h t^2 + 2 e r t - d r^2 >= 0     (d = D.D, ...)

    hence  d r^2 - 2 e r t + h t^2 <= 2 (e^2 - h d)  with every left-hand
    term nonnegative once t is replaced by -t.  For d > 0 this bounds
    r <= sqrt(2 (e^2 - h d) / d); for d = 0, e > 0 the t = 1 instance bounds
    r <= (2 e^2 - h) / (2 e).  For d = e = 0 the class is zero and no root
    qualifies.
    """
    if d_sq > 0:
        excess = 2 * (e * e - h_sq * d_sq)
        if excess < 0:
            return 0
        return intmath.sqrt_floor(Fraction(excess, d_sq))
    if e == 0:
        return 0
    num = 2 * e * e - h_sq
    if num < 0:
        return 0
    return num // (2 * e)


def is_nef(ctx: PolarizedContext, d: DivisorClass, max_degree: int | None = None) -> Decision:
    """Decide nef-ness relative to the chamber of the reference class.

    A nef class has nonnegative square and nonnegative degree; beyond that
    the only obstructions are effective roots, i.e. roots of positive
    degree, pairing negatively with D.  Candidate roots are enumerated up
    to the closed-form degree cap derived in _nef_root_cap, which makes the
    scan provably exhaustive.
    """
    sq = pairing(d, d)
    if sq < 0:
        return Decision(False, WitnessClass(d, "negative self-intersection"))
    e = ctx.degree(d)
    if e < 0:
        return Decision(False, WitnessClass(d, "negative degree against the reference"))
    cap = _nef_root_cap(ctx.h.square(), e, sq)
    capped = max_degree is not None and max_degree < cap
    if capped:
        cap = max_degree
    examined = 0
    for k in range(1, cap + 1):
        for r in classes_with_degree(ctx.lattice, ctx.h, k, -2, -2):
            examined += 1
            if pairing(r, d) < 0:
                return Decision(False, WitnessClass(r, "effective root pairing negatively"))
    suffix = " (window capped at max_degree)" if capped else ""
    return Decision(True, Exhausted(
        "no effective root pairs negatively" + suffix,
        (("root-degree", 1, cap),), examined))


def is_big_nef(ctx: PolarizedContext, d: DivisorClass, max_degree: int | None = None) -> Decision:
    if pairing(d, d) <= 0:
        return Decision(False, WitnessClass(d, "square is not positive"))
    return is_nef(ctx, d, max_degree)


def nef_reduce(lat: GramLattice, d: DivisorClass, seed: DivisorClass) -> tuple[DivisorClass, ReflectionChain]:
    """Move a positive-square class into the nef chamber marked byseed.

    Applies Picard-Lefschetz reflections in roots that separate d from the
    seed's chamber (positive seed-degree, negative pairing with d), after an
    initial sign change if d points into the opposite cone component.  Each
    reflection strictly decreases the positive integer (d . seed), which is
    bounded below by sqrt(d.d * seed.seed) > 0, so the loop terminates.
    """
    if pairing(d, d) <= 0:
        raise NotPositiveClass("nef_reduce needs a class of positive square")
    if pairing(seed, seed) <= 0:
        raise NotPositiveClass("seed must have positive square")
    flipped = False
    if pairing(d, seed) < 0:
        d = -d
        flipped = True
    chain: list[DivisorClass] = []
    while True:
        e = pairing(d, seed)
        cap = _nef_root_cap(seed.square(), e, d.square())
        hit = None
        for k in range(1, cap + 1):
            for r in classes_with_degree(lat, seed, k, -2, -2):
                if pairing(r, d) < 0:
                    hit = r
                    break
            if hit is not None:
                break
        if hit is None:
            return d, ReflectionChain(tuple(chain), flipped)
        chain.append(hit)
        d = reflect(d, hit)


def is_ample(lat: GramLattice, h: DivisorClass) -> Decision:
    """Lattice-level ampleness: positive square, nef in its own chamber,
    and no orthogonal root (nothing gets contracted)."""
    if h.square() <= 0:
        return Decision(False, WitnessClass(h, "square is not positive"))
    walls = orthogonal_roots(lat, h)
    if walls:
        return Decision(False, WitnessClass(walls[0], "orthogonal root is contracted"))
    # Nef-ness relative to its own chamber is automatic once no wall passes
    # through the class; run the exhaustive root scan anyway so the
    # certificate records it.
    ctx = PolarizedContext(lat, h, ContextStatus.AMPLE)
    nef = is_nef(ctx, h)
    if not nef.verdict:  # pragma: no cover - unreachable by the cap argument
        return nef
    return Decision(True, nef.certificate)


def find_ample_class(lat: GramLattice, seed: DivisorClass, tries: int = 64) -> DivisorClass | None:
    """Search for an ample class in the chamber reachable from seed.

    Reduces seed into a nef chamber, then nudges off walls by adding the
    reduction of progressively larger multiples.  Returns None if nothing
    ample is found within the given number of attempts.
    """
    if seed.square() <= 0:
        return None
    cand, _ = nef_reduce(lat, seed, seed)
    for k in range(1, tries + 1):
        walls = orthogonal_roots(lat, cand)
        if not walls:
            # Positive square and no wall through the class: ample.
            return cand
        # Step off the walls: a large multiple of cand dominates the
        # perturbation, so the bump keeps positive square, while the added
        # root moves the class strictly off its own wall.
        bump = cand * (k + 1) + walls[0]
        cand, _ = nef_reduce(lat, bump, bump)
    return None


# ---------------------------------------------------------------------------
# very-ampleness and pencil searches


def _effective_isotropic_with_degree(ctx: PolarizedContext, ref: DivisorClass,
                                     lo: int, hi: int) -> DivisorClass | None:
    """First effective nonzero class F with F.F = 0 and lo <= (F.ref) <= hi."""
    for t in range(lo, hi + 1):
        for f in classes_with_degree(ctx.lattice, ref, t, 0, 0):
            if f.is_zero():
                continue
            if ctx.degree(f) > 0:  # square 0 and positive degree: effective
                return f
    return None


def very_ample_knutsen(ctx: PolarizedContext, d: DivisorClass,
                       max_degree: int | None = None) -> Decision:
    """Very-ampleness test for a big and nef primitive class.

    Fails exactly when some contracted curve exists (a root orthogonal to
    d, effective with either sign) or some effective isotropic class meets
    d in one or two points.
    """
    if not d.is_primitive():
        raise NotPrimitive("very-ampleness test needs a primitive class")
    bignef = is_big_nef(ctx, d, max_degree)
    if not bignef.verdict:
        raise RangeError("very-ampleness test needs a big and nef class")
    walls = orthogonal_roots(ctx.lattice, d)
    for r in walls:
        if ctx.degree(r) > 0:
            return Decision(False, WitnessClass(r, "contracted rational curve class"))
    pencil = _effective_isotropic_with_degree(ctx, d, 1, 2)
    if pencil is not None:
        return Decision(False, WitnessClass(pencil, "elliptic pencil of degree at most 2"))
    return Decision(True, Exhausted(
        "no contracted root and no isotropic class of degree 1 or 2",
        (("isotropic-degree", 1, 2),), len(walls)))


def quadric_hull_hypotheses(ctx: PolarizedContext, big: DivisorClass, pencil: DivisorClass,
                            max_degree: int | None = None) -> Decision:
    """Battery of lattice conditions under which the section behaviour of
    big - pencil forces the projective model of `big` onto a quadric hull.

    The genus g = big.square()/2 + 1 must be odd so that the required
    pencil degree (g+1)/2 is an integer.

    The pencil condition asked for here is that the generic member of the
    linear system moves in an irreducible elliptic pencil.  For an
    isotropic class that is exactly: effective, primitive and nef.  The
    splitting test of is_irreducible_class would be too strong -- an
    elliptic pencil with a reducible fibre (two rational curves meeting in
    a cycle) splits as a cycle class while its generic member stays
    integral -- so it is not used for this check.
    """
    g2 = big.square() + 2
    g = g2 // 2
    if g % 2 == 0:
        raise ParityError(f"genus {g} is even; the pencil degree (g+1)/2 is not an integer")
    diff = big - pencil
    checks: list[tuple[str, bool]] = []
    fail_witness: Certificate | None = None

    def record(name: str, ok: bool, witness: Certificate | None = None):
        nonlocal fail_witness
        checks.append((name, ok))
        if not ok and fail_witness is None and witness is not None:
            fail_witness = witness

    record("pencil_isotropic", pencil.square() == 0, WitnessClass(pencil, "square is not 0"))
    record("pencil_degree", pairing(big, pencil) == (g + 1) // 2,
           WitnessClass(pencil, f"degree against the big class is not {(g + 1) // 2}"))
    record("difference_square_at_least_8", diff.square() >= 8,
           WitnessClass(diff, f"square {diff.square()} < 8"))
    bignef = is_big_nef(ctx, diff, max_degree)
    record("difference_big_nef", bignef.verdict,
           bignef.certificate if not bignef.verdict else None)
    if bignef.verdict and diff.is_primitive():
        va = very_ample_knutsen(ctx, diff, max_degree)
        record("difference_very_ample", va.verdict, va.certificate if not va.verdict else None)
    elif bignef.verdict:
        record("difference_very_ample", False, WitnessClass(diff, "difference is not primitive"))
    else:
        record("difference_very_ample", False, None)
    twice = is_effective(ctx, big - 2 * pencil, max_degree)
    record("double_pencil_ineffective", not twice.verdict,
           twice.certificate if twice.verdict else None)
    pencil_eff = is_effective(ctx, pencil, max_degree)
    record("pencil_effective", pencil_eff.verdict and not pencil.is_zero(),
           pencil_eff.certificate if not pencil_eff.verdict else None)
    record("pencil_primitive", pencil.is_primitive(),
           WitnessClass(pencil, "pencil class is divisible"))
    pencil_nef = is_nef(ctx, pencil)
    record("pencil_nef", pencil_nef.verdict,
           pencil_nef.certificate if not pencil_nef.verdict else None)
    trisecant = _effective_isotropic_with_degree(ctx, diff, 3, 3)
    record("no_trisecant_pencil", trisecant is None,
           WitnessClass(trisecant, "isotropic class of degree 3") if trisecant is not None else None)

    ok = all(flag for _, flag in checks)
    summary = ", ".join(f"{name}={'yes' if flag else 'no'}" for name, flag in checks)
    if ok:
        return Decision(True, Exhausted("all hypotheses hold: " + summary))
    return Decision(False, fail_witness if fail_witness is not None
                    else Exhausted("failed hypotheses: " + summary))


@dataclass(frozen=True)
class CliffordIndex:
    value: int
    witness: DivisorClass | None
    generic: int


def clifford_index(ctx: PolarizedContext, big: DivisorClass,
                   max_degree: int | None = None) -> CliffordIndex:
    """Clifford index of smooth curves in the linear system of `big`.

    The generic value floor((g-1)/2) competes against contributions
    (D.big) - D.D - 2 from effective classes D with 0 <= D.D,
    2 D.D < (D.big) and (D.big) <= g - 1.  The witness is the
    lexicographically first minimizer, or None at the generic value.
    """
    if big.square() <= 0:
        raise NotPositiveClass("clifford index needs a class of positive square")
    g = (big.square() + 2) // 2
    generic = (g - 1) // 2
    top = g - 1 if max_degree is None else min(g - 1, max_degree)
    best = generic
    minimizers: list[tuple[int, ...]] = []
    for deg in range(1, top + 1):
        smax = min((deg - 1) // 2, (deg * deg) // big.square())
        smax -= smax % 2
        if smax < 0:
            continue
        for cand in classes_with_degree(ctx.lattice, big, deg, 0, smax):
            if cand.is_zero():
                continue
            if not is_effective(ctx, cand, max_degree).verdict:
                continue
            value = deg - cand.square() - 2
            if value < best:
                best = value
                minimizers = [cand.coords]
            elif value == best and best < generic:
                minimizers.append(cand.coords)
    if best < generic:
        return CliffordIndex(best, ctx.lattice.cls(min(minimizers)), generic)
    return CliffordIndex(generic, None, generic)


def special_pencil_classes(ctx: PolarizedContext, big: DivisorClass,
                           max_degree: int | None = None) -> list[DivisorClass]:
    """All effective classes M with 0 <= M.M < (g+1)/2, 2 M.M < (M.big) and
    (M.big) - M.M == (g+1)/2, for odd genus g of the big class."""
    g = (big.square() + 2) // 2
    if g % 2 == 0:
        raise ParityError(f"genus {g} is even; the pencil degree (g+1)/2 is not an integer")
    target = (g + 1) // 2
    out = []
    for s in range(0, target, 2):
        for m in classes_with_degree(ctx.lattice, big, target + s, s, s):
            if m.is_zero():
                continue
            if is_effective(ctx, m, max_degree).verdict:
                out.append(m)
    return sorted(out, key=lambda c: c.coords)
