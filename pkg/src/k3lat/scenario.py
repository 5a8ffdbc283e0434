"""Line-oriented scenario files: declare lattices, classes, contexts and
curve configurations, then assert the outcome of named operations.

Grammar (one directive per line, ``#`` starts a comment)::

    lattice NAME = omega(g=11, d=[3,3,3,3,3,3,3,3])
    lattice NAME = gram([[0,1],[1,0]], labels=[u1,u2])
    class   NAME = LAT[1,0,0]          # coordinates in basis order
    class   NAME = LAT{L:1, E:-2}      # sparse, by basis label
    context NAME = ample(LAT, H)       # or big_nef(LAT, H)
    config  NAME on LAT
      component LABEL genus N class CLS
      edge LABEL LABEL [MULT]
    end
    assert  op(arg, ...) == literal
    flag    op(arg, ...) == literal    # mismatch is reported, not fatal

Literals on the right-hand side are ``true``/``false``/``none``, integers,
``[int,...]`` lists, quoted strings or the name of a declared class.  A
``flag`` line whose computed value differs from the literal is recorded
with status ``flagged`` (both values kept) instead of failing the run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import builders, configurations, numerology
from .cones import (
    Decision,
    PolarizedContext,
    ample_context,
    big_nef_context,
    clifford_index,
    is_ample,
    is_big_nef,
    is_effective,
    is_irreducible_class,
    is_nef,
    quadric_hull_hypotheses,
    special_pencil_classes,
    very_ample_knutsen,
)
from .enumeration import classes_with_degree, orthogonal_roots
from .errors import K3LatError, ScenarioError
from .intmath import det
from .lattice import (
    DivisorClass,
    GramLattice,
    change_basis_isometry,
    lattice_profile,
    make_lattice,
)
from .report import AssertionRecord, Report, describe_certificate


# --------------------------------------------------------------------------
# tokenising one line


_WORD_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_WORD_BODY = _WORD_START | set("0123456789")


@dataclass
class _Cursor:
    text: str
    line: int
    pos: int = 0

    def error(self, message: str) -> ScenarioError:
        return ScenarioError(message, self.line, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)

    def try_take(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            after = self.pos + len(token)
            if token[-1] in _WORD_BODY and after < len(self.text) and self.text[after] in _WORD_BODY:
                return False
            self.pos = after
            return True
        return False

    def take_word(self, what: str = "name") -> str:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] not in _WORD_START:
            raise self.error(f"expected {what}")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _WORD_BODY:
            self.pos += 1
        return self.text[start:self.pos]

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected integer")
        return int(self.text[start:self.pos])


# --------------------------------------------------------------------------
# value syntax trees: ("int", n) ("bool", b) ("none",) ("str", s)
# ("list", [...]) ("dict", {label: int}) ("name", word, column)


def _parse_value(cur: _Cursor):
    cur.skip_ws()
    col = cur.pos + 1
    ch = cur.peek()
    if ch == "":
        raise cur.error("expected a value")
    if ch == "[":
        cur.expect("[")
        items = []
        if not cur.try_take("]"):
            while True:
                items.append(_parse_value(cur))
                if cur.try_take("]"):
                    break
                cur.expect(",")
        return ("list", items)
    if ch == "{":
        cur.expect("{")
        entries: dict[str, int] = {}
        if not cur.try_take("}"):
            while True:
                label = cur.take_word("basis label")
                cur.expect(":")
                value = cur.take_int()
                if label in entries:
                    raise cur.error(f"duplicate label {label!r}")
                entries[label] = value
                if cur.try_take("}"):
                    break
                cur.expect(",")
        return ("dict", entries)
    if ch == '"':
        cur.expect('"')
        end = cur.text.find('"', cur.pos)
        if end < 0:
            raise cur.error("unterminated string")
        out = cur.text[cur.pos:end]
        cur.pos = end + 1
        return ("str", out)
    if ch.isdigit() or ch in "+-":
        return ("int", cur.take_int())
    word = cur.take_word("value")
    if word == "true":
        return ("bool", True)
    if word == "false":
        return ("bool", False)
    if word == "none":
        return ("none",)
    return ("name", word, col)


def _parse_call(cur: _Cursor):
    """``name(value, key=value, ...)`` -> (name, args, kwargs, column)."""
    cur.skip_ws()
    col = cur.pos + 1
    name = cur.take_word("operation name")
    cur.expect("(")
    args: list = []
    kwargs: dict[str, object] = {}
    if not cur.try_take(")"):
        while True:
            cur.skip_ws()
            mark = cur.pos
            key = None
            if cur.pos < len(cur.text) and cur.text[cur.pos] in _WORD_START:
                word = cur.take_word()
                if cur.try_take("="):
                    key = word
                else:
                    cur.pos = mark
            value = _parse_value(cur)
            if key is None:
                if kwargs:
                    raise cur.error("positional argument after keyword argument")
                args.append(value)
            else:
                if key in kwargs:
                    raise cur.error(f"duplicate keyword {key!r}")
                kwargs[key] = value
            if cur.try_take(")"):
                break
            cur.expect(",")
    return name, tuple(args), kwargs, col


# --------------------------------------------------------------------------
# directives


@dataclass(frozen=True)
class LatticeDecl:
    name: str
    call: tuple
    line: int


@dataclass(frozen=True)
class ClassDecl:
    name: str
    lattice: str
    value: tuple
    line: int


@dataclass(frozen=True)
class ContextDecl:
    name: str
    kind: str
    lattice: str
    reference: str
    line: int


@dataclass(frozen=True)
class ConfigDecl:
    name: str
    lattice: str
    components: tuple[tuple[str, int, str], ...]
    edges: tuple[tuple[str, str, int], ...]
    line: int


@dataclass(frozen=True)
class Assertion:
    mode: str  # "assert" | "flag"
    operation: str
    args: tuple
    expected: tuple
    line: int
    text: str


@dataclass(frozen=True)
class Scenario:
    source: str
    directives: tuple


def _strip_comment(raw: str) -> str:
    quoted = False
    for i, ch in enumerate(raw):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return raw[:i]
    return raw


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    directives: list = []
    declared: set[str] = set()
    open_config: dict | None = None

    def declare(name: str, cur: _Cursor) -> None:
        if name in declared:
            raise cur.error(f"name {name!r} is already defined")
        declared.add(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = _strip_comment(raw)
        if not stripped.strip():
            continue
        cur = _Cursor(stripped, lineno)
        head = cur.take_word("directive")

        if open_config is not None:
            if head == "component":
                label = cur.take_word("component label")
                cur.expect("genus")
                genus = cur.take_int()
                cur.expect("class")
                cls = cur.take_word("class name")
                open_config["components"].append((label, genus, cls))
            elif head == "edge":
                a = cur.take_word("component label")
                b = cur.take_word("component label")
                mult = cur.take_int() if not cur.at_end() else 1
                open_config["edges"].append((a, b, mult))
            elif head == "end":
                directives.append(ConfigDecl(
                    open_config["name"], open_config["lattice"],
                    tuple(open_config["components"]), tuple(open_config["edges"]),
                    open_config["line"]))
                open_config = None
            else:
                raise cur.error("expected component/edge/end inside config block")
            if not cur.at_end():
                raise cur.error("unexpected trailing text")
            continue

        if head == "lattice":
            name = cur.take_word("lattice name")
            declare(name, cur)
            cur.expect("=")
            call = _parse_call(cur)
            directives.append(LatticeDecl(name, call, lineno))
        elif head == "class":
            name = cur.take_word("class name")
            declare(name, cur)
            cur.expect("=")
            lat = cur.take_word("lattice name")
            value = _parse_value(cur)
            if value[0] not in ("list", "dict"):
                raise cur.error("expected [coords] or {label: coeff} after lattice name")
            directives.append(ClassDecl(name, lat, value, lineno))
        elif head == "context":
            name = cur.take_word("context name")
            declare(name, cur)
            cur.expect("=")
            kind = cur.take_word("context kind")
            if kind not in ("ample", "big_nef"):
                raise cur.error("context kind must be ample or big_nef")
            cur.expect("(")
            lat = cur.take_word("lattice name")
            cur.expect(",")
            ref = cur.take_word("class name")
            cur.expect(")")
            directives.append(ContextDecl(name, kind, lat, ref, lineno))
        elif head == "config":
            name = cur.take_word("config name")
            declare(name, cur)
            cur.expect("on")
            lat = cur.take_word("lattice name")
            open_config = {"name": name, "lattice": lat, "line": lineno,
                           "components": [], "edges": []}
        elif head in ("assert", "flag"):
            op, args, kwargs, col = _parse_call(cur)
            if kwargs:
                raise cur.error("assertions take positional arguments only")
            if op not in OPERATIONS:
                cur.pos = col - 1
                raise cur.error(f"unknown operation {op!r}")
            cur.expect("==")
            expected = _parse_value(cur)
            directives.append(Assertion(head, op, args, expected, lineno, stripped.strip()))
        else:
            cur.pos = 0
            raise cur.error(f"unknown directive {head!r}")
        if open_config is None and not cur.at_end():
            raise cur.error("unexpected trailing text")

    if open_config is not None:
        raise ScenarioError(f"config {open_config['name']!r} is missing its end line",
                            open_config["line"], 1)
    return Scenario(source, tuple(directives))


# --------------------------------------------------------------------------
# operations registry


@dataclass(frozen=True)
class OpSpec:
    params: tuple[str, ...]
    func: Callable
    takes_max_degree: bool = False
    summary: str = ""


def _decision(value: Decision):
    return bool(value.verdict), describe_certificate(value.certificate)


def _plain(value):
    return value, None


def _op_clifford(ctx, big, max_degree=None):
    found = clifford_index(ctx, big, max_degree)
    note = f"generic {found.generic}"
    if found.witness is not None:
        note += f", witness {list(found.witness.coords)}"
    return found.value, note


def _op_pencil_unique(ctx, big, max_degree=None):
    pencils = special_pencil_classes(ctx, big, max_degree)
    if len(pencils) != 1:
        return None, f"{len(pencils)} special pencil classes"
    return pencils[0], None


def _op_effective_isotropic_count(ctx, d, bound, max_degree=None):
    found = 0
    for degree in range(1, bound + 1):
        for cand in classes_with_degree(ctx.lattice, d, degree, 0, 0):
            if not cand.is_zero() and is_effective(ctx, cand, max_degree).verdict:
                found += 1
    return found, None


def _op_signature(lat):
    profile = lattice_profile(lat)
    return list(profile.signature), None


def _embedding_verdict(embedding):
    report = embedding.report
    ok = report.is_isometric_embedding and report.is_primitive
    return ok, f"invariant factors {list(report.invariant_factors)}"


def _op_p_embeds(p, h):
    return _embedding_verdict(builders.p_into_omega(p, h))


def _op_lambda_embeds(a):
    return _embedding_verdict(builders.lambda_into_omega(a))


def _op_lambdabar_embeds(a):
    return _embedding_verdict(builders.lambdabar_into_k(a))


def _op_lambdabar_rebase(a):
    src = builders.lambda_lattice(a)
    dst = builders.lambdabar_lattice(a)
    matrix = builders.lambdabar_basis_in_lambda()
    try:
        carries = change_basis_isometry(src, dst, matrix)
    except K3LatError:
        carries = False
    ok = carries and abs(det([list(row) for row in matrix])) == 1
    return ok, "basis change is unimodular" if ok else "basis change failed"


def _op_kummer_embeds(d):
    report = builders.verify_kummer_embedding(d)
    ok = report.is_isometric_embedding and report.is_primitive
    return ok, f"invariant factors {list(report.invariant_factors)}"


def _op_kummer_square(expr):
    return builders.kummer_combination(expr).square, None


def _op_kummer_pair(left, right):
    return builders.KummerSpan().pairing(dict(left), dict(right)), None


def _frame_check(lat, target, matrix):
    try:
        return bool(change_basis_isometry(lat, target, matrix)), None
    except K3LatError as err:
        return False, str(err)


def _op_jacobian_section_frame(g, d):
    lat = builders.omega_jacobian_lattice(g, tuple(d))
    target = builders.direct_sum(builders.section_frame(), builders.minus_two_block(8))
    return _frame_check(lat, target, builders.jacobian_section_basis(g, tuple(d)))


def _op_jacobian_hyperbolic_frame(g, d):
    lat = builders.omega_jacobian_lattice(g, tuple(d))
    target = builders.direct_sum(builders.hyperbolic_plane(), builders.minus_two_block(8))
    return _frame_check(lat, target, builders.jacobian_hyperbolic_basis(g, tuple(d)))


def _threshold(kind, g, k):
    return configurations.build_threshold_config(kind, g, k=k)


def _op_threshold_genus(kind, g, k):
    built = _threshold(kind, g, k)
    return built.genus, f"polarization covered {built.cover_multiplicity} times"


def _op_threshold_indecomposable(kind, g, k):
    built = _threshold(kind, g, k)
    verdict = configurations.decomposition_obstruction(
        built.configuration, built.polarization, built.cover_multiplicity)
    return _decision(verdict)


def _op_indecomposable(config, polarization, k):
    return _decision(configurations.decomposition_obstruction(config, polarization, k))


def _op_config_genus(config):
    return configurations.arithmetic_genus(config), None


def _op_piece_count(config):
    return len(configurations.connected_pieces(config)), None


def _op_config_class(config):
    return configurations.total_class(config), None


def _op_marked_wahl(d, n, m):
    spec = numerology.PlaneCurveSpec(d, n, m)
    found = numerology.marked_wahl_conditions(spec)
    return found.overall, f"cond1={found.cond1} cond2={found.cond2}"


def _op_plane_genus(d, n, m):
    return numerology.plane_genus(numerology.PlaneCurveSpec(d, n, m)), None


def _op_greuel(d, n, m):
    return numerology.greuel_bound(numerology.PlaneCurveSpec(d, n, m)), None


def _op_wahl_degree(l):
    return numerology.marked_wahl_genus(l).d_min, None


def _op_wahl_genus(l):
    return numerology.marked_wahl_genus(l).h, None


def _op_l_threshold(g):
    found = numerology.l_threshold_prim(g)
    return found.l_g, found.case_tag


def _op_l_threshold_cover(g, k):
    found = numerology.l_threshold_nonprim(g, k)
    return found.l_g, found.case_tag


def _op_euler_iii(a, total):
    return numerology.euler_fibre_budget(a, total).max_type_iii, None


def _op_euler_i2(a, total):
    return numerology.euler_fibre_budget(a, total).min_type_i2, None


OPERATIONS: dict[str, OpSpec] = {
    # effectivity and positional cones
    "effective": OpSpec(("context", "class"), lambda c, d, max_degree=None:
                        _decision(is_effective(c, d, max_degree)), True,
                        "membership in the effective cone"),
    "irreducible": OpSpec(("context", "class"), lambda c, d, max_degree=None:
                          _decision(is_irreducible_class(c, d, max_degree)), True,
                          "no splitting into two nonzero effective classes"),
    "nef": OpSpec(("context", "class"), lambda c, d, max_degree=None:
                  _decision(is_nef(c, d, max_degree)), True,
                  "nonnegative against every effective class"),
    "big_nef": OpSpec(("context", "class"), lambda c, d, max_degree=None:
                      _decision(is_big_nef(c, d, max_degree)), True,
                      "positive square and nef"),
    "very_ample": OpSpec(("context", "class"), lambda c, d, max_degree=None:
                         _decision(very_ample_knutsen(c, d, max_degree)), True,
                         "no contracted roots, no low-degree elliptic pencils"),
    "ample": OpSpec(("lattice", "class"), lambda lat, h: _decision(is_ample(lat, h)),
                    False, "positive square, positive on all roots"),
    "quadric_hull": OpSpec(("context", "class", "class"),
                           lambda c, big, pencil, max_degree=None:
                           _decision(quadric_hull_hypotheses(c, big, pencil, max_degree)),
                           True, "hypothesis battery for the quadric-hull argument"),
    "clifford": OpSpec(("context", "class"), _op_clifford, True,
                       "Clifford index of smooth members"),
    "special_pencil_count": OpSpec(("context", "class"),
                                   lambda c, b, max_degree=None:
                                   _plain(len(special_pencil_classes(c, b, max_degree))),
                                   True, "number of degree-(g+1)/2 pencil classes"),
    "special_pencil_unique": OpSpec(("context", "class"), _op_pencil_unique, True,
                                    "the unique special pencil class, if unique"),
    "effective_isotropic_count": OpSpec(("context", "class", "int"),
                                        _op_effective_isotropic_count, True,
                                        "effective square-zero classes of degree up to "
                                        "the bound against the given class"),
    # plain lattice arithmetic
    "square": OpSpec(("class",), lambda d: _plain(d.square()), False,
                     "self-intersection"),
    "pair": OpSpec(("class", "class"), lambda a, b: _plain(a.dot(b)), False,
                   "intersection number"),
    "primitive": OpSpec(("class",), lambda d: _plain(d.is_primitive()), False,
                        "coordinate gcd is one"),
    "rank": OpSpec(("lattice",), lambda lat: _plain(lat.rank), False, "lattice rank"),
    "discriminant": OpSpec(("lattice",), lambda lat:
                           _plain(lattice_profile(lat).discriminant), False,
                           "Gram determinant"),
    "even": OpSpec(("lattice",), lambda lat: _plain(lattice_profile(lat).even),
                   False, "all squares even"),
    "signature": OpSpec(("lattice",), _op_signature, False,
                        "(positive, negative) inertia"),
    "root_count": OpSpec(("lattice", "class"), lambda lat, ref:
                         _plain(len(orthogonal_roots(lat, ref))), False,
                         "square -2 classes orthogonal to the reference"),
    "class_count": OpSpec(("lattice", "class", "int", "int", "int"),
                          lambda lat, ref, deg, smin, smax:
                          _plain(len(classes_with_degree(lat, ref, deg, smin, smax))),
                          False, "classes with given degree and square range"),
    # curve configurations
    "genus": OpSpec(("config",), _op_config_genus, False,
                    "arithmetic genus of a connected configuration"),
    "piece_count": OpSpec(("config",), _op_piece_count, False,
                          "number of connected pieces"),
    "config_class": OpSpec(("config",), _op_config_class, False,
                           "sum of all component classes"),
    "indecomposable": OpSpec(("config", "class", "int"), _op_indecomposable, False,
                             "no 2-part split into connected curves covering the "
                             "polarization"),
    "threshold_genus": OpSpec(("str", "int", "int"), _op_threshold_genus, False,
                              "genus of the named threshold configuration"),
    "threshold_indecomposable": OpSpec(("str", "int", "int"),
                                       _op_threshold_indecomposable, False,
                                       "decomposition obstruction for the named "
                                       "threshold configuration"),
    # distinguished lattices and embeddings
    "p_embeds": OpSpec(("int", "int"), _op_p_embeds, False,
                       "rank-3 polarization lattice embeds primitively"),
    "lambda_solutions": OpSpec(("int",), lambda a:
                               _plain(len(builders.lambda_omega_solutions(a))), False,
                               "degree-vector solutions for the rank-3 fibration lattice"),
    "lambda_embeds": OpSpec(("int",), _op_lambda_embeds, False,
                            "rank-3 fibration lattice embeds primitively"),
    "lambdabar_embeds": OpSpec(("int",), _op_lambdabar_embeds, False,
                               "rebased fibration lattice embeds into the quintic-tower "
                               "lattice"),
    "lambdabar_rebase": OpSpec(("int",), _op_lambdabar_rebase, False,
                               "rebasing matrix is a unimodular isometry"),
    "kummer_embeds": OpSpec(("int",), _op_kummer_embeds, False,
                            "composite classes carry the Gram and span primitively"),
    "kummer_square": OpSpec(("dict",), _op_kummer_square, False,
                            "square of a formal sum of Kummer generators"),
    "kummer_pair": OpSpec(("dict", "dict"), _op_kummer_pair, False,
                          "pairing of two formal sums of Kummer generators"),
    "jacobian_section_frame": OpSpec(("int", "ints"), _op_jacobian_section_frame, False,
                                     "section-frame basis is an exact isometry"),
    "jacobian_hyperbolic_frame": OpSpec(("int", "ints"), _op_jacobian_hyperbolic_frame,
                                        False, "hyperbolic-frame basis is an exact "
                                        "isometry"),
    # numerology
    "p_arith": OpSpec(("int", "int"), lambda g, k: _plain(numerology.p_arith(g, k)),
                      False, "arithmetic genus of a k-fold cover class"),
    "stack_dim": OpSpec(("int", "int", "int"), lambda g, k, n:
                        _plain(numerology.stack_dim(g, k, n)), False,
                        "dimension count for the universal family"),
    "rho": OpSpec(("int", "int", "int"), lambda g, r, d:
                  _plain(numerology.brill_noether_rho(g, r, d)), False,
                  "Brill-Noether number"),
    "l_threshold": OpSpec(("int",), _op_l_threshold, False,
                          "primitive genus threshold"),
    "l_threshold_cover": OpSpec(("int", "int"), _op_l_threshold_cover, False,
                                "non-primitive genus threshold"),
    "greuel": OpSpec(("int", "int", "int"), _op_greuel, False,
                     "smoothing-dimension inequality for a nodal plane curve"),
    "hirschowitz": OpSpec(("int", "ints"), lambda d, mults:
                          _plain(numerology.hirschowitz_vanishing(d, tuple(mults))),
                          False, "interpolation bound for fat points"),
    "blowup_very_ample": OpSpec(("int", "int"), lambda d, pts:
                                _plain(numerology.blowup_very_ample(d, pts)), False,
                                "very-ampleness after blowing up general points"),
    "marked_wahl": OpSpec(("int", "int", "int"), _op_marked_wahl, False,
                          "degree/singularity window for marked models"),
    "plane_genus": OpSpec(("int", "int", "int"), _op_plane_genus, False,
                          "geometric genus of a nodal plane curve with triple points"),
    "marked_wahl_degree": OpSpec(("int",), _op_wahl_degree, False,
                                 "least degree meeting the marked window"),
    "marked_wahl_plane_genus": OpSpec(("int",), _op_wahl_genus, False,
                                      "genus attained at the least marked degree"),
    "wahl_bound": OpSpec(("int", "int", "int"), lambda g, k, n:
                         _plain(numerology.wahl_bound_check(g, k, n)), False,
                         "node-count bound against the cover genus"),
    "euler_type_iii": OpSpec(("int", "int"), _op_euler_iii, False,
                             "largest allowed count of Euler-number-3 fibres"),
    "euler_type_i2": OpSpec(("int", "int"), _op_euler_i2, False,
                            "least forced count of Euler-number-2 fibres"),
}


# --------------------------------------------------------------------------
# evaluation


def _resolve_arg(kind: str, ast, env: dict, line: int):
    def fail(message: str) -> ScenarioError:
        return ScenarioError(message, line, ast[2] if ast[0] == "name" else 1)

    if kind in ("lattice", "class", "context", "config"):
        if ast[0] != "name":
            raise fail(f"expected the name of a declared {kind}")
        name = ast[1]
        if name not in env:
            raise fail(f"unknown name {name!r}")
        value = env[name]
        expected_type = {
            "lattice": GramLattice,
            "class": DivisorClass,
            "context": PolarizedContext,
            "config": configurations.CurveConfiguration,
        }[kind]
        if not isinstance(value, expected_type):
            raise fail(f"{name!r} is not a {kind}")
        return value
    if kind == "int":
        if ast[0] != "int":
            raise fail("expected an integer")
        return ast[1]
    if kind == "str":
        if ast[0] != "str":
            raise fail("expected a quoted string")
        return ast[1]
    if kind == "ints":
        if ast[0] != "list" or any(item[0] != "int" for item in ast[1]):
            raise fail("expected a list of integers")
        return [item[1] for item in ast[1]]
    if kind == "dict":
        if ast[0] != "dict":
            raise fail("expected {label: coeff}")
        return dict(ast[1])
    raise fail(f"unhandled parameter kind {kind!r}")


def _resolve_expected(ast, env: dict, line: int):
    tag = ast[0]
    if tag in ("int", "bool", "str"):
        return ast[1]
    if tag == "none":
        return None
    if tag == "list":
        if any(item[0] != "int" for item in ast[1]):
            raise ScenarioError("expected literals only support integer lists", line, 1)
        return [item[1] for item in ast[1]]
    if tag == "name":
        name = ast[1]
        if name not in env:
            raise ScenarioError(f"unknown name {name!r}", line, ast[2])
        return env[name]
    raise ScenarioError("unsupported expected literal", line, 1)


def _jsonable(value):
    if isinstance(value, DivisorClass):
        return list(value.coords)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def _values_equal(actual, expected) -> bool:
    if isinstance(expected, DivisorClass) or isinstance(actual, DivisorClass):
        return isinstance(actual, DivisorClass) and isinstance(expected, DivisorClass) \
            and actual.lattice.gram == expected.lattice.gram \
            and actual.coords == expected.coords
    if isinstance(actual, bool) != isinstance(expected, bool):
        return False
    if isinstance(actual, list) or isinstance(expected, list):
        return list(actual or []) == list(expected or [])
    return actual == expected


def _build_named_lattice(decl: LatticeDecl, env: dict) -> GramLattice:
    name, args, kwargs, col = decl.call
    line = decl.line

    def need(key: str, kind: str):
        if key not in kwargs:
            raise ScenarioError(f"{name} needs {key}=...", line, col)
        return _resolve_arg(kind, kwargs[key], env, line)

    if name == "omega":
        return builders.omega_lattice(need("g", "int"), tuple(need("d", "ints")))
    if name == "omega_jacobian":
        return builders.omega_jacobian_lattice(need("g", "int"), tuple(need("d", "ints")))
    if name == "p":
        return builders.p_lattice(need("p", "int"), need("h", "int"))
    if name == "lambda":
        return builders.lambda_lattice(need("a", "int"))
    if name == "lambdabar":
        return builders.lambdabar_lattice(need("a", "int"))
    if name == "k":
        return builders.k_lattice(need("d", "int"))
    if name == "hyperbolic_plane":
        return builders.hyperbolic_plane()
    if name == "section_frame":
        return builders.section_frame()
    if name == "minus_two":
        return builders.minus_two_block(need("n", "int"))
    if name == "direct_sum":
        return builders.direct_sum(need("a", "lattice"), need("b", "lattice"))
    if name == "gram":
        if not args or args[0][0] != "list":
            raise ScenarioError("gram needs a matrix [[...],...]", line, col)
        rows = []
        for row in args[0][1]:
            if row[0] != "list" or any(item[0] != "int" for item in row[1]):
                raise ScenarioError("gram rows must be integer lists", line, col)
            rows.append([item[1] for item in row[1]])
        labels = None
        if "labels" in kwargs:
            label_ast = kwargs["labels"]
            if label_ast[0] != "list" or any(item[0] != "name" for item in label_ast[1]):
                raise ScenarioError("labels must be a list of names", line, col)
            labels = tuple(item[1] for item in label_ast[1])
        return make_lattice(rows, labels)
    raise ScenarioError(f"unknown lattice builder {name!r}", line, col)


def evaluate(scenario: Scenario, max_degree: int | None = None) -> Report:
    env: dict[str, object] = {}
    records: list[AssertionRecord] = []
    index = 0
    for directive in scenario.directives:
        if isinstance(directive, LatticeDecl):
            try:
                env[directive.name] = _build_named_lattice(directive, env)
            except ScenarioError:
                raise
            except K3LatError as err:
                raise ScenarioError(f"lattice {directive.name!r}: {err}",
                                    directive.line, 1)
        elif isinstance(directive, ClassDecl):
            if directive.lattice not in env or \
                    not isinstance(env[directive.lattice], GramLattice):
                raise ScenarioError(f"unknown lattice {directive.lattice!r}",
                                    directive.line, 1)
            lat: GramLattice = env[directive.lattice]
            try:
                if directive.value[0] == "list":
                    coords = [item[1] for item in directive.value[1]
                              if item[0] == "int"]
                    if len(coords) != len(directive.value[1]):
                        raise ScenarioError("coordinates must be integers",
                                            directive.line, 1)
                    env[directive.name] = lat.cls(tuple(coords))
                else:
                    env[directive.name] = lat.combination(dict(directive.value[1]))
            except K3LatError as err:
                raise ScenarioError(f"class {directive.name!r}: {err}",
                                    directive.line, 1)
        elif isinstance(directive, ContextDecl):
            for needed in (directive.lattice, directive.reference):
                if needed not in env:
                    raise ScenarioError(f"unknown name {needed!r}", directive.line, 1)
            try:
                build = ample_context if directive.kind == "ample" else big_nef_context
                env[directive.name] = build(env[directive.lattice],
                                            env[directive.reference])
            except K3LatError as err:
                raise ScenarioError(f"context {directive.name!r}: {err}",
                                    directive.line, 1)
        elif isinstance(directive, ConfigDecl):
            if directive.lattice not in env:
                raise ScenarioError(f"unknown lattice {directive.lattice!r}",
                                    directive.line, 1)
            comps = []
            for label, genus, cls_name in directive.components:
                if cls_name not in env or not isinstance(env[cls_name], DivisorClass):
                    raise ScenarioError(f"unknown class {cls_name!r}", directive.line, 1)
                comps.append((label, genus, env[cls_name]))
            try:
                env[directive.name] = configurations.make_configuration(
                    env[directive.lattice], comps, list(directive.edges))
            except K3LatError as err:
                raise ScenarioError(f"config {directive.name!r}: {err}",
                                    directive.line, 1)
        elif isinstance(directive, Assertion):
            spec = OPERATIONS[directive.operation]
            if len(directive.args) != len(spec.params):
                raise ScenarioError(
                    f"{directive.operation} takes {len(spec.params)} argument(s), "
                    f"got {len(directive.args)}", directive.line, 1)
            resolved = [_resolve_arg(kind, ast, env, directive.line)
                        for kind, ast in zip(spec.params, directive.args)]
            expected = _resolve_expected(directive.expected, env, directive.line)
            start = time.perf_counter()
            certificate = None
            try:
                if spec.takes_max_degree:
                    actual, certificate = spec.func(*resolved, max_degree=max_degree)
                else:
                    actual, certificate = spec.func(*resolved)
                failed_error = None
            except K3LatError as err:
                actual = None
                failed_error = f"{type(err).__name__}: {err}"
            wall_ms = (time.perf_counter() - start) * 1000.0
            if failed_error is not None:
                status = "fail"
                certificate = failed_error
            elif _values_equal(actual, expected):
                status = "pass"
            else:
                status = "flagged" if directive.mode == "flag" else "fail"
            records.append(AssertionRecord(
                index=index, line=directive.line, operation=directive.operation,
                mode=directive.mode, status=status,
                expected=_jsonable(expected), actual=_jsonable(actual),
                certificate=certificate, wall_ms=wall_ms, text=directive.text))
            index += 1
        else:  # pragma: no cover - parser only emits the cases above
            raise ScenarioError("unhandled directive", 0, 0)
    return Report.collect(scenario.source, max_degree, records)


def run_scenario(path: str, max_degree: int | None = None) -> Report:
    """Parse and evaluate the scenario file at ``path``."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    scenario = parse_scenario(text, source=path)
    return evaluate(scenario, max_degree=max_degree)
