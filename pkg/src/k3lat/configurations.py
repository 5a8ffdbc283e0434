"""Nodal-curve configurations as decorated dual graphs.

A configuration records the components of a connected nodal curve mapping to
a surface -- each with a label, an arithmetic genus and a divisor class --
together with the multiset of gluing edges between them.  Edges are explicit
data rather than being inferred from intersection numbers, because the
gluings happen at chosen subsets of the intersection points (a partial
normalization keeps only some of the nodes).

``build_threshold_config`` assembles the three families of such
configurations that realize curves of threshold genus in a multiple of a
polarization: a pencil-ladder over the rank-10 family, a two-nodal-class
shape over ``p_lattice``, and the fibre-chain shapes over
``lambda_lattice``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .builders import lambda_lattice, omega_lattice, p_lattice, p_polarization_pairing
from .cones import Decision, Exhausted, WitnessClass
from .errors import ClassMismatch, Disconnected, LatticeMismatch, RangeError, TooLarge
from .lattice import DivisorClass, GramLattice


@dataclass(frozen=True)
class Component:
    label: str
    genus: int
    cls: DivisorClass

    def __post_init__(self):
        if self.genus < 0:
            raise RangeError(f"component {self.label} has negative genus")


@dataclass(frozen=True)
class CurveConfiguration:
    """Components plus a normalized edge multiset.

    ``edges`` holds (label_a, label_b, multiplicity) with label_a < label_b
    and multiplicity >= 1.  ``transversal`` claims that distinct components
    meet transversally in the surface, which caps each edge multiplicity by
    the pairing of the two classes.
    """

    lattice: GramLattice
    components: tuple[Component, ...]
    edges: tuple[tuple[str, str, int], ...]
    transversal: bool = False

    def component(self, label: str) -> Component:
        for comp in self.components:
            if comp.label == label:
                return comp
        raise RangeError(f"no component labelled {label!r}")

    def adjacency(self) -> dict[str, set[str]]:
        nbrs: dict[str, set[str]] = {comp.label: set() for comp in self.components}
        for a, b, _ in self.edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return nbrs


def make_configuration(lattice: GramLattice, components, edges, transversal: bool | None = None) -> CurveConfiguration:
    """Normalize raw component and edge data into a CurveConfiguration.

    Components are (label, genus, cls) triples; edges are (a, b) pairs, each
    occurrence counting once, or (a, b, multiplicity) triples, accumulated
    into a multiset.  Self-edges are rejected.  When ``transversal`` is None
    the flag is set automatically: True exactly when every edge multiplicity
    fits under the pairing of its endpoint classes (zero classes exempt).
    """
    comps = []
    seen: set[str] = set()
    for item in components:
        comp = item if isinstance(item, Component) else Component(str(item[0]), int(item[1]), item[2])
        if comp.label in seen:
            raise RangeError(f"duplicate component label {comp.label!r}")
        seen.add(comp.label)
        if comp.cls.lattice != lattice:
            raise LatticeMismatch(f"component {comp.label} lives on a different lattice")
        comps.append(comp)

    multiset: dict[tuple[str, str], int] = {}
    for item in edges:
        if len(item) == 2:
            a, b, mult = item[0], item[1], 1
        else:
            a, b, mult = item
        if a == b:
            raise RangeError(f"self-edge at {a!r}")
        if a not in seen or b not in seen:
            missing = a if a not in seen else b
            raise RangeError(f"edge endpoint {missing!r} is not a component")
        if mult < 1:
            raise RangeError("edge multiplicity must be at least 1")
        key = (a, b) if a < b else (b, a)
        multiset[key] = multiset.get(key, 0) + int(mult)

    normalized = tuple(sorted((a, b, m) for (a, b), m in multiset.items()))
    config = CurveConfiguration(lattice, tuple(comps), normalized, False)

    fits = all(
        config.component(a).cls.is_zero()
        or config.component(b).cls.is_zero()
        or m <= config.component(a).cls.dot(config.component(b).cls)
        for a, b, m in normalized
    )
    if transversal is None:
        transversal = fits
    elif transversal and not fits:
        raise RangeError("an edge multiplicity exceeds the pairing of its endpoint classes")
    return CurveConfiguration(lattice, tuple(comps), normalized, transversal)


def connected_pieces(config: CurveConfiguration) -> list[tuple[str, ...]]:
    """Connected components of the dual graph, each a tuple of labels in
    configuration order, listed by first appearance."""
    nbrs = config.adjacency()
    order = [comp.label for comp in config.components]
    unvisited = set(order)
    pieces = []
    for start in order:
        if start not in unvisited:
            continue
        stack, piece = [start], set()
        unvisited.discard(start)
        while stack:
            cur = stack.pop()
            piece.add(cur)
            for nxt in nbrs[cur]:
                if nxt in unvisited:
                    unvisited.discard(nxt)
                    stack.append(nxt)
        pieces.append(tuple(label for label in order if label in piece))
    return pieces


def _piece_genus(config: CurveConfiguration, labels: tuple[str, ...]) -> int:
    inside = set(labels)
    genus = sum(comp.genus for comp in config.components if comp.label in inside)
    nodes = sum(m for a, b, m in config.edges if a in inside and b in inside)
    return genus + nodes - len(labels) + 1


def arithmetic_genus(config: CurveConfiguration, *, per_piece: bool = False):
    """Arithmetic genus: sum of component genera, plus one per gluing node,
    minus components, plus one.

    Raises Disconnected when the dual graph has several pieces, unless
    ``per_piece`` is set, in which case a tuple of genera (one per connected
    piece, in first-appearance order) is returned.
    """
    pieces = connected_pieces(config)
    if per_piece:
        return tuple(_piece_genus(config, piece) for piece in pieces)
    if len(pieces) != 1:
        raise Disconnected(f"configuration has {len(pieces)} connected pieces")
    return _piece_genus(config, pieces[0])


def total_class(config: CurveConfiguration) -> DivisorClass:
    out = config.lattice.zero()
    for comp in config.components:
        out = out + comp.cls
    return out


def _multiple_of(cls: DivisorClass, base: DivisorClass) -> int | None:
    """The integer m >= 1 with cls = m * base, if one exists."""
    scale = None
    for c, b in zip(cls.coords, base.coords):
        if b == 0:
            if c != 0:
                return None
            continue
        if c % b != 0:
            return None
        q = c // b
        if scale is None:
            scale = q
        elif q != scale:
            return None
    if scale is None or scale < 1:
        return None
    return scale


def decomposition_obstruction(config: CurveConfiguration, polarization: DivisorClass, k: int) -> Decision:
    """Decide that the configuration admits no splitting into two connected
    subcurves whose classes are positive multiples of the polarization.

    The total class must be k times the polarization.  Every proper subset
    of components is examined; a subset defeats the obstruction when it and
    its complement are both connected and both sum to m and k-m times the
    polarization with 1 <= m <= k-1.  Subcurves of a degenerating member of
    the linear system are connected, so disconnected subsets do not count.
    """
    if polarization.lattice != config.lattice:
        raise LatticeMismatch("polarization lives on a different lattice")
    if polarization.is_zero():
        raise ClassMismatch("polarization must be nonzero")
    total = total_class(config)
    if total != polarization * k:
        raise ClassMismatch(
            f"total class {total.coords} is not {k} times the polarization {polarization.coords}"
        )
    n = len(config.components)
    if n > 24:
        raise TooLarge(f"{n} components exceed the subset-scan bound of 24")

    labels = [comp.label for comp in config.components]
    coords = [comp.cls.coords for comp in config.components]
    nbrs = config.adjacency()

    def connected(indices: tuple[int, ...]) -> bool:
        inside = {labels[i] for i in indices}
        stack = [labels[indices[0]]]
        seen = {labels[indices[0]]}
        while stack:
            for nxt in nbrs[stack.pop()]:
                if nxt in inside and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(inside)

    examined = 0
    rank = config.lattice.rank
    # Component 0 is pinned to the subset: swapping a subset with its
    # complement gives the same 2-part decomposition.
    for mask in range(1, 1 << n, 2):
        if mask == (1 << n) - 1:
            continue
        examined += 1
        part = tuple(i for i in range(n) if mask >> i & 1)
        summed = tuple(sum(coords[i][j] for i in part) for j in range(rank))
        m = _multiple_of(config.lattice.cls(summed), polarization)
        if m is None or not 1 <= m <= k - 1:
            continue
        rest = tuple(i for i in range(n) if not mask >> i & 1)
        if not connected(part) or not connected(rest):
            continue
        chosen = [labels[i] for i in part]
        witness = WitnessClass(
            config.lattice.cls(summed),
            f"components {', '.join(chosen)} sum to {m} times the polarization",
        )
        return Decision(False, witness)
    return Decision(
        True,
        Exhausted(
            "no 2-part decomposition into connected multiples of the polarization",
            windows=(("subset-scan", 1, (1 << n) - 2),),
            candidates_examined=examined,
        ),
    )


# ---------------------------------------------------------------------------
# the threshold-genus configurations


@dataclass(frozen=True)
class ThresholdConfiguration:
    """A built configuration together with the polarization it multiplies
    and the discrete shape parameters chosen along the way."""

    kind: str
    configuration: CurveConfiguration
    polarization: DivisorClass
    cover_multiplicity: int
    shape: dict = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return arithmetic_genus(self.configuration)


def _prim_r0_edges(m: int) -> list[tuple[str, str, int]]:
    """Default gluing rule for the pencil ladder: the two copies in each
    rung meet, consecutive rungs meet where the copy indices differ, and the
    first vertical closes up with the last horizontal."""
    if m == 1:
        return [("C", "R1_1", 1), ("R1_1", "R1_2", 2)]
    edges = [("C", "R1_1", 1)]
    spots = [(i, j) for i in range(1, m + 1) for j in (1, 2)]
    for x, (i, j) in enumerate(spots):
        for (i2, j2) in spots[x + 1:]:
            meets = (
                (i == i2 and j2 == j + 1)
                or (i2 == i + 1 and j2 != j)
                or ((i, j) == (1, 1) and (i2, j2) == (m, 2))
            )
            if meets:
                edges.append((f"R{i}_{j}", f"R{i2}_{j2}", 1))
    return edges


def _nonprim_edges(k: int, l: int) -> list[tuple[str, str, int]]:
    """Default gluing rule for the fibre chains.

    The nodal-class chain is shared: Ba meets G1 once, G1 meets R1 twice,
    then the chain alternates R_i - G_{i+1} - R_{i+1} with single edges.
    With an even fibre count the fibre copies close into a ladder cycle
    hanging off Ba; with an odd count they form a path attached to Ba at
    three points.
    """
    edges: list[tuple[str, str, int]] = []
    if k >= 2:
        edges.append(("Ba", "G1", 1))
        edges.append(("G1", "R1", 2))
        for i in range(2, k):
            edges.append((f"R{i - 1}", f"G{i}", 1))
            edges.append((f"G{i}", f"R{i}", 1))
    if l == 0:
        return edges
    if l % 2 == 0:
        s = l // 2
        edges.append(("Ba", "F1_1", 1))
        if s == 1:
            edges.append(("F1_1", "F1_2", 2))
            return edges
        ring = [f"F{i}_{j}" for i in range(1, s + 1) for j in (1, 2)]
        for x, label in enumerate(ring):
            edges.append((label, ring[(x + 1) % len(ring)], 1))
        return edges
    edges.append(("Ba", "F1", 3))
    for i in range(1, l):
        edges.append((f"F{i}", f"F{i + 1}", 1))
    return edges


def build_threshold_config(kind: str, g: int, k: int = 1, edges=None) -> ThresholdConfiguration:
    """Assemble one of the three threshold-genus configurations.

    ``prim-r0``      -- over the rank-10 genus-11 lattice: a genus-11 curve C
                        of class L plus m = (g-11)/6 copies each of G1 and
                        E-G1 in a ladder; polarization L + mE.  Needs
                        g = 11 + 6m with m >= 1.
    ``prim-general`` -- over ``p_lattice(g, 11)``: a genus-11 curve of class
                        M glued to R1 at three points and, when the genus
                        remainder is 0 or 5, to R2 at three more;
                        polarization M + R1 (+ R2).  Needs g >= 12.
    ``nonprim``      -- over ``lambda_lattice(a)``: a fibre-chain
                        configuration of total class k(D + m'F).  Needs
                        k >= 2 and g >= 8.

    ``edges`` overrides the default gluing rule; it must reference the
    labels the builder assigns.
    """
    if kind == "prim-r0":
        if k != 1:
            raise RangeError("the primitive families use cover multiplicity 1")
        m, r = divmod(g - 11, 6)
        if r != 0 or m < 1:
            raise RangeError(f"genus {g} is not 11 + 6m with m >= 1")
        lat = omega_lattice(11, (3,) * 8)
        comps = [("C", 11, lat.basis_class("L"))]
        for i in range(1, m + 1):
            comps.append((f"R{i}_1", 0, lat.basis_class("G1")))
            comps.append((f"R{i}_2", 0, lat.combination({"E": 1, "G1": -1})))
        config = make_configuration(lat, comps, _prim_r0_edges(m) if edges is None else edges)
        pol = lat.combination({"L": 1, "E": m})
        return ThresholdConfiguration(kind, config, pol, 1, {"m": m})

    if kind == "prim-general":
        if k != 1:
            raise RangeError("the primitive families use cover multiplicity 1")
        if g < 12:
            raise RangeError(f"genus {g} below 12")
        r = (g - 11) % 6
        eps = 1 if r in (0, 5) else 0
        lat = p_lattice(g, 11)
        comps = [("D", 11, lat.basis_class("M")), ("R1", 0, lat.basis_class("R1"))]
        default = [("D", "R1", 3)]
        if eps:
            comps.append(("R2", 0, lat.basis_class("R2")))
            default.append(("D", "R2", 3))
        config = make_configuration(lat, comps, default if edges is None else edges)
        pol = lat.combination({"M": 1, "R1": 1, "R2": eps})
        shape = {"r": r, "eps": eps, "s1": p_polarization_pairing(g, 11)}
        return ThresholdConfiguration(kind, config, pol, 1, shape)

    if kind == "nonprim":
        if k < 2:
            raise RangeError("need cover multiplicity k >= 2")
        if g < 8:
            raise RangeError(f"genus {g} below 8")
        m, r = divmod(g - 5, 6)
        m_prime = m - 1 if r >= 3 else m - 2
        a = 11 + r if r >= 3 else 17 + r
        l = k * m_prime + 2 * (k - 1)
        if l < 0:
            raise RangeError("negative fibre count")
        lat = lambda_lattice(a)
        r_class = lat.combination({"D": 1, "F": -2, "G": -1})
        comps = [("Ba", 13 if a <= 15 else 15, lat.basis_class("D"))]
        for i in range(1, k):
            comps.append((f"R{i}", 0, r_class))
            comps.append((f"G{i}", 0, lat.basis_class("G")))
        if l % 2 == 0:
            for i in range(1, l // 2 + 1):
                comps.append((f"F{i}_1", 0, lat.basis_class("F")))
                comps.append((f"F{i}_2", 0, lat.basis_class("F")))
        else:
            for i in range(1, l + 1):
                comps.append((f"F{i}", 0, lat.basis_class("F")))
        config = make_configuration(lat, comps, _nonprim_edges(k, l) if edges is None else edges)
        pol = lat.combination({"D": 1, "F": m_prime})
        shape = {"m": m, "r": r, "m_prime": m_prime, "a": a, "l": l}
        return ThresholdConfiguration(kind, config, pol, k, shape)

    raise RangeError(f"unknown configuration kind {kind!r}")
