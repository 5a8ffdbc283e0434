"""Shared helpers for the test suite: deterministic random lattices and
independent brute-force oracles to check the search engines against."""

from __future__ import annotations

import itertools

from k3lat.cones import find_ample_class
from k3lat.enumeration import classes_with_degree
from k3lat.errors import K3LatError
from k3lat.lattice import DivisorClass, GramLattice, lattice_profile, make_lattice, pairing


def random_even_hyperbolic(rng, rank: int = 3, bound: int = 10) -> GramLattice:
    """Random even nondegenerate lattice of signature (1, rank - 1)."""
    while True:
        rows = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            rows[i][i] = 2 * rng.randint(-bound // 2, bound // 2)
            for j in range(i + 1, rank):
                rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
        try:
            lat = make_lattice(rows)
        except K3LatError:
            continue
        if lattice_profile(lat).signature == (1, rank - 1):
            return lat


def positive_square_seed(lat: GramLattice, reach: int = 4) -> DivisorClass | None:
    """Small-coordinate class of positive square, if any exists nearby."""
    best = None
    for coords in itertools.product(range(-reach, reach + 1), repeat=lat.rank):
        cand = lat.cls(coords)
        if cand.square() > 0:
            if best is None or sum(abs(c) for c in coords) < sum(abs(c) for c in best.coords):
                best = cand
    return best


def ample_class_or_none(lat: GramLattice) -> DivisorClass | None:
    seed = positive_square_seed(lat)
    if seed is None:
        return None
    return find_ample_class(lat, seed)


def scan_box(lat: GramLattice, ref: DivisorClass, box, square: int,
             degree_lo: int, degree_hi: int) -> list[tuple[int, ...]]:
    """Exhaustive scan of the certified coordinate box; independent of the
    branch-and-bound enumerator."""
    gram = lat.gram_rows()
    href = [sum(gram[i][j] * ref.coords[j] for j in range(lat.rank))
            for i in range(lat.rank)]
    hits = []
    for coords in itertools.product(*(range(-b, b + 1) for b in box)):
        degree = sum(h * c for h, c in zip(href, coords))
        if not degree_lo <= degree <= degree_hi:
            continue
        sq = sum(coords[i] * gram[i][j] * coords[j]
                 for i in range(lat.rank) for j in range(lat.rank))
        if sq == square:
            hits.append(coords)
    return sorted(hits)


def effective_generators(ctx, top_degree: int) -> list[DivisorClass]:
    """Every class of square >= -2 and degree between 1 and top_degree.
    By Riemann-Roch each one is effective, and every effective class is a
    nonnegative sum of such classes."""
    lat, h = ctx.lattice, ctx.h
    h2 = pairing(h, h)
    out = []
    for k in range(1, top_degree + 1):
        top_square = (k * k) // h2
        if top_square % 2:
            top_square -= 1
        for s in range(-2, top_square + 1, 2):
            out.extend(classes_with_degree(lat, h, k, s, s))
    return [cand for cand in out if not cand.is_zero()]


def effective_classes_up_to_degree(ctx, top_degree: int) -> dict[int, set]:
    """Bottom-up closure of the Riemann-Roch generators under addition,
    bucketed by degree.  Every effective class of degree k is a generator
    plus an effective class of smaller degree, so the closure is exact."""
    h = ctx.h
    gens: dict[int, set] = {k: set() for k in range(1, top_degree + 1)}
    for gen in effective_generators(ctx, top_degree):
        gens[pairing(gen, h)].add(gen.coords)
    effective: dict[int, set] = {k: set(gens[k]) for k in gens}
    lat = ctx.lattice
    for k in range(2, top_degree + 1):
        for i in range(1, k):
            for prior in effective[k - i]:
                for gen in gens[i]:
                    effective[k].add(tuple(a + b for a, b in zip(prior, gen)))
    return effective


def brute_effective(ctx, d: DivisorClass, table: dict[int, set] | None = None) -> bool:
    """Effectivity by exhaustive decomposition into Riemann-Roch generators;
    independent of the root-peeling oracle."""
    if d.is_zero():
        return True
    degree = pairing(d, ctx.h)
    if degree <= 0:
        return False
    if table is None:
        table = effective_classes_up_to_degree(ctx, degree)
    return d.coords in table[degree]
