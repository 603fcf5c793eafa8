"""Lattice code constructors: surfaces, solids, and their welded assemblies.

Qubits live on lattice edges.  A surface patch has rough top and bottom
boundaries and smooth sides; a solid is a cubic lattice with the
horizontal edges at the top and bottom faces removed, which leaves those
two faces rough.  The welded families place one piece per edge of a
WeldGraph and identify matching boundary qubits at shared vertices.

Each constructor returns an immutable CssCode that passes validate, with
its logical classes installed and, for lattice families, flat-region
metadata attached: a record of where each particle type moves freely,
which the energy module turns into parity lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import gf2
from .css import (
    CssCode,
    GeneratingSet,
    LogicalClass,
    fold_logical,
    permute_qubits,
    promote_to_logical,
    validate_or_raise,
)
from .errors import MetadataError, ValidationError
from .pauli import PauliOperator, permute_operator
from .welding import trace_successor, weld, welded_operator_trace

__all__ = [
    "SurfaceSpec",
    "SolidSpec",
    "WeldGraph",
    "QubitPatch",
    "FlatRegionGraph",
    "path",
    "star",
    "grid2d",
    "cubic",
    "parse_weld_graph",
    "flat_region_graph",
    "region_graph_from_weld_graph",
    "build_two_qubit",
    "build_repetition",
    "build_surface",
    "build_surface_by_welding",
    "surface_welding_chain",
    "build_solid",
    "build_solid_by_welding",
    "build_welded_surface",
    "build_welded_solid",
]


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class SurfaceSpec:
    """Surface patch size in plaquettes: width columns by height rows."""

    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValidationError("surface width and height must be at least 1")


@dataclass(frozen=True)
class SolidSpec:
    """Solid block size in cells; dz counts vertical cells top to bottom."""

    dx: int
    dy: int
    dz: int
    horizontal_plaquettes: bool = False

    def __post_init__(self):
        if min(self.dx, self.dy, self.dz) < 1:
            raise ValidationError("solid cell counts must be at least 1")


# ---------------------------------------------------------------------------
# weld graphs


@dataclass(frozen=True)
class WeldGraph:
    """Abstract layout of a welded assembly.

    Vertices label shared rough (or smooth) boundaries; each edge is one
    code piece whose two boundaries sit at the edge's endpoints.  Labels
    are opaque; the generators below use ints and coordinate tuples.
    """

    vertices: tuple
    edges: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise ValidationError("duplicate vertex labels in weld graph")
        undirected = set()
        for edge in self.edges:
            if len(edge) != 2:
                raise ValidationError(f"edge {edge!r} must have two endpoints")
            u, v = edge
            if u == v:
                raise ValidationError(f"self-loop at {u!r} is not weldable")
            if u not in seen or v not in seen:
                raise ValidationError(f"edge {edge!r} references unknown vertices")
            key = frozenset((u, v))
            if key in undirected:
                raise ValidationError(f"duplicate edge {edge!r}")
            undirected.add(key)

    def degree(self, vertex) -> int:
        return sum(1 for u, v in self.edges if vertex in (u, v))

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        todo = [self.vertices[0]]
        seen = {self.vertices[0]}
        while todo:
            here = todo.pop()
            for u, v in self.edges:
                if here == u and v not in seen:
                    seen.add(v)
                    todo.append(v)
                elif here == v and u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == len(self.vertices)


def path(n: int) -> WeldGraph:
    """Path with n vertices (n - 1 edges)."""
    if n < 1:
        raise ValidationError("path needs at least one vertex")
    return WeldGraph(
        tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)), f"path({n})"
    )


def star(leaves: int) -> WeldGraph:
    """Star with one center (label 0) and the given number of leaves."""
    if leaves < 1:
        raise ValidationError("star needs at least one leaf")
    return WeldGraph(
        tuple(range(leaves + 1)),
        tuple((0, i) for i in range(1, leaves + 1)),
        f"star({leaves})",
    )


def grid2d(a: int, b: int) -> WeldGraph:
    """a-by-b grid of vertices with nearest-neighbor edges."""
    if a < 1 or b < 1:
        raise ValidationError("grid sides must be at least 1")
    vertices = tuple((i, j) for j in range(b) for i in range(a))
    edges = []
    for j in range(b):
        for i in range(a):
            if i + 1 < a:
                edges.append(((i, j), (i + 1, j)))
            if j + 1 < b:
                edges.append(((i, j), (i, j + 1)))
    return WeldGraph(vertices, tuple(edges), f"grid2d({a},{b})")


def cubic(a: int, b: int, c: int) -> WeldGraph:
    """a-by-b-by-c cubic lattice of vertices with nearest-neighbor edges."""
    if min(a, b, c) < 1:
        raise ValidationError("cubic sides must be at least 1")
    vertices = tuple(
        (i, j, k) for k in range(c) for j in range(b) for i in range(a)
    )
    edges = []
    for k in range(c):
        for j in range(b):
            for i in range(a):
                if i + 1 < a:
                    edges.append(((i, j, k), (i + 1, j, k)))
                if j + 1 < b:
                    edges.append(((i, j, k), (i, j + 1, k)))
                if k + 1 < c:
                    edges.append(((i, j, k), (i, j, k + 1)))
    return WeldGraph(vertices, tuple(edges), f"cubic({a},{b},{c})")


def parse_weld_graph(text: str) -> WeldGraph:
    """Read a graph from "v <label>" and "e <label> <label>" lines."""
    vertices: list[str] = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "v" and len(fields) == 2:
            vertices.append(fields[1])
        elif fields[0] == "e" and len(fields) == 3:
            edges.append((fields[1], fields[2]))
        else:
            raise ValidationError(f"line {lineno}: expected 'v <label>' or 'e <a> <b>'")
    return WeldGraph(tuple(vertices), tuple(edges), "file")


def _ordered_edges(graph: WeldGraph) -> list[tuple]:
    """Edges reordered so each one touches a previously seen vertex.

    The first edge seeds the visited set.  A graph that cannot be ordered
    this way is disconnected and cannot be welded into a single code.
    """
    if not graph.edges:
        raise ValidationError("weld graph has no edges, nothing to build")
    remaining = list(graph.edges)
    ordered = [remaining.pop(0)]
    visited = set(ordered[0])
    while remaining:
        for pos, (u, v) in enumerate(remaining):
            if u in visited or v in visited:
                ordered.append(remaining.pop(pos))
                visited.update((u, v))
                break
        else:
            raise ValidationError("weld graph must be connected")
    return ordered


# ---------------------------------------------------------------------------
# flat region graphs


@dataclass(frozen=True)
class QubitPatch:
    label: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "qubits", tuple(sorted({int(q) for q in self.qubits}))
        )


@dataclass(frozen=True)
class FlatRegionGraph:
    """Where one particle type moves freely, and the boundaries between.

    particle_type names the quasi-particle that roams each region without
    making new ones; a single opposite-type error on a boundary qubit
    flips the particle parity of every incident region.  Boundaries are
    pairwise disjoint qubit sets; regions contain their boundaries.
    """

    particle_type: str
    n: int
    regions: tuple[QubitPatch, ...]
    boundaries: tuple[QubitPatch, ...]
    incidence: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.particle_type not in ("x", "z"):
            raise ValidationError("particle_type must be 'x' or 'z'")
        object.__setattr__(self, "regions", tuple(self.regions))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        object.__setattr__(
            self, "incidence", tuple(tuple(sorted(row)) for row in self.incidence)
        )
        if len(self.incidence) != len(self.regions):
            raise ValidationError("incidence must list boundaries per region")
        for patch in self.regions + self.boundaries:
            if patch.qubits and not 0 <= patch.qubits[-1] < self.n:
                raise ValidationError(f"{patch.label}: qubit index out of range")
        taken: set[int] = set()
        for patch in self.boundaries:
            overlap = taken.intersection(patch.qubits)
            if overlap:
                raise ValidationError(
                    f"boundary {patch.label} shares qubits with another boundary"
                )
            taken.update(patch.qubits)
        touched: set[int] = set()
        for r, (region, row) in enumerate(zip(self.regions, self.incidence)):
            rq = set(region.qubits)
            for b, boundary in enumerate(self.boundaries):
                listed = b in row
                meets = bool(rq.intersection(boundary.qubits))
                if listed != meets:
                    raise ValidationError(
                        f"incidence of region {region.label} and boundary "
                        f"{boundary.label} disagrees with their qubit sets"
                    )
            touched.update(row)
        if len(touched) != len(self.boundaries):
            raise ValidationError("every boundary must touch at least one region")


def flat_region_graph(code: CssCode, particle_type: str) -> FlatRegionGraph:
    """Look up the builder-attached region graph for one particle type."""
    kind = str(particle_type).lower()
    if kind not in ("x", "z"):
        raise ValidationError("particle_type must be 'x' or 'z'")
    meta = code.region_metadata
    if not meta or kind not in meta:
        raise MetadataError(
            f"no flat-{kind} region metadata on this code; only builder outputs "
            "carry region graphs"
        )
    return meta[kind]


def region_graph_from_weld_graph(
    graph: WeldGraph, particle_type: str = "x"
) -> FlatRegionGraph:
    """Abstract region graph: one spin-sized boundary per vertex.

    Each vertex becomes a single-qubit boundary and each edge a region
    holding exactly its two endpoint qubits.  Useful for studying the
    parity bound on a bare graph shape, detached from any lattice.
    """
    index = {v: i for i, v in enumerate(graph.vertices)}
    boundaries = tuple(QubitPatch(str(v), (index[v],)) for v in graph.vertices)
    regions = []
    incidence = []
    for u, v in graph.edges:
        regions.append(QubitPatch(f"{u}-{v}", (index[u], index[v])))
        incidence.append((index[u], index[v]))
    return FlatRegionGraph(
        particle_type, len(graph.vertices), tuple(regions), boundaries, tuple(incidence)
    )


# ---------------------------------------------------------------------------
# small builders


def _rows(n: int, supports) -> np.ndarray:
    mat = np.zeros((len(supports), n), dtype=np.uint8)
    for i, support in enumerate(supports):
        for q in support:
            mat[i, q] ^= 1
    return mat


def build_two_qubit() -> CssCode:
    """The smallest weldable piece: two qubits stabilized by XX and ZZ."""
    gens = GeneratingSet(2, [[1, 1]], [[1, 1]])
    return CssCode(gens)


def build_repetition(length: int) -> CssCode:
    """Length-n repetition code: XX on neighbors, logical Z across all."""
    if length < 2:
        raise ValidationError("repetition code needs at least 2 qubits")
    x_rows = _rows(length, [(i, i + 1) for i in range(length - 1)])
    gens = GeneratingSet(length, x_rows, np.zeros((0, length), np.uint8))
    code = CssCode(
        gens,
        (
            LogicalClass(
                x_rep=PauliOperator.from_support(length, x=(0,)),
                z_rep=PauliOperator.from_support(length, z=range(length)),
            ),
        ),
    )
    validate_or_raise(code)
    return code


# ---------------------------------------------------------------------------
# surface codes


class _SurfaceLayout:
    """Index bookkeeping for a surface patch.

    Vertical edge qubits sit under each vertex row; horizontal edge
    qubits interleave between vertical rows.  Row r of verticals starts
    at r * (2 * width + 1).
    """

    def __init__(self, spec: SurfaceSpec):
        self.width = spec.width
        self.height = spec.height
        self.stride = 2 * spec.width + 1
        self.n = spec.height * self.stride - spec.width

    def v(self, r: int, c: int) -> int:
        return r * self.stride + c

    def h(self, r: int, c: int) -> int:
        return r * self.stride - self.width + c

    def top_row(self) -> tuple[int, ...]:
        return tuple(self.v(0, c) for c in range(self.width + 1))

    def bottom_row(self) -> tuple[int, ...]:
        return tuple(self.v(self.height - 1, c) for c in range(self.width + 1))

    def left_col(self) -> tuple[int, ...]:
        return tuple(self.v(r, 0) for r in range(self.height))

    def right_col(self) -> tuple[int, ...]:
        return tuple(self.v(r, self.width) for r in range(self.height))

    def star_support(self, r: int, c: int) -> list[int]:
        support = [self.v(r - 1, c), self.v(r, c)]
        if c > 0:
            support.append(self.h(r, c - 1))
        if c < self.width:
            support.append(self.h(r, c))
        return support

    def face_support(self, r: int, c: int) -> list[int]:
        support = [self.v(r, c), self.v(r, c + 1)]
        if r >= 1:
            support.append(self.h(r, c))
        if r + 1 <= self.height - 1:
            support.append(self.h(r + 1, c))
        return support

    def star_supports(self) -> list[list[int]]:
        return [
            self.star_support(r, c)
            for r in range(1, self.height)
            for c in range(self.width + 1)
        ]

    def face_supports(self) -> list[list[int]]:
        return [
            self.face_support(r, c)
            for r in range(self.height)
            for c in range(self.width)
        ]


def _surface_region_metadata(spec: SurfaceSpec) -> dict:
    lay = _SurfaceLayout(spec)
    whole = QubitPatch("surface", tuple(range(lay.n)))
    meta = {
        "z": FlatRegionGraph(
            "z",
            lay.n,
            (whole,),
            (
                QubitPatch("smooth left", lay.left_col()),
                QubitPatch("smooth right", lay.right_col()),
            ),
            ((0, 1),),
        )
    }
    if spec.height >= 2:
        # A one-row patch has a single vertical layer, so the two rough
        # boundaries coincide and carry no X-particle bookkeeping.
        meta["x"] = FlatRegionGraph(
            "x",
            lay.n,
            (whole,),
            (
                QubitPatch("rough top", lay.top_row()),
                QubitPatch("rough bottom", lay.bottom_row()),
            ),
            ((0, 1),),
        )
    return meta


def build_surface(spec: SurfaceSpec, include_string_logicals: bool = True) -> CssCode:
    """Surface patch with rough top/bottom and smooth sides.

    With include_string_logicals the top-row X string and the left-column
    Z string are promoted as the single logical class (k=1).  Without it
    the Z string is folded into the generators instead (k=0), the form a
    rough weld consumes; fold the X string via fold_logical when an
    X-weldable piece is needed.
    """
    lay = _SurfaceLayout(spec)
    x_rows = _rows(lay.n, lay.star_supports())
    z_rows = _rows(lay.n, lay.face_supports())
    x_string = PauliOperator.from_support(lay.n, x=lay.top_row())
    z_string = PauliOperator.from_support(lay.n, z=lay.left_col())
    meta = _surface_region_metadata(spec)
    if include_string_logicals:
        code = CssCode(
            GeneratingSet(lay.n, x_rows, z_rows),
            (LogicalClass(x_rep=x_string, z_rep=z_string),),
            meta,
        )
    else:
        folded = np.vstack([z_rows, z_string.z_bits[None, :]])
        code = CssCode(GeneratingSet(lay.n, x_rows, folded), (), meta)
    validate_or_raise(code)
    return code


# ---------------------------------------------------------------------------
# the surface welding chain


_FIVE_PERM = (0, 2, 1, 3, 4)


def _rep3() -> CssCode:
    """Three-qubit piece from welding two two-qubit pieces at one qubit."""
    a = build_two_qubit()
    b = build_two_qubit()
    return weld(a, b, [(1, 0)], "z")


def _rep3_repicked() -> CssCode:
    """Regenerate the three-qubit piece as {XXI, XIX, ZZZ}.

    The replacement second generator keeps qubit 0 in both X rows, so a
    later X-weld at qubit 1 touches exactly one generator per side.
    """
    code = _rep3()
    x_rows = code.x_rows.copy()
    x_rows[1] ^= x_rows[0]
    return CssCode(GeneratingSet(code.n, x_rows, code.z_rows))


def _five_folded() -> tuple[CssCode, PauliOperator]:
    """Five-qubit patch, X string folded, from two three-qubit pieces."""
    raw = weld(_rep3_repicked(), _rep3_repicked(), [(1, 1)], "x")
    tracked = trace_successor(
        welded_operator_trace(raw), 1, PauliOperator.from_support(3, x=(0, 2))
    )
    code = permute_qubits(raw, _FIVE_PERM)
    tracked = permute_operator(tracked, _FIVE_PERM)
    if tracked != PauliOperator.from_support(5, x=(0, 1)):
        raise AssertionError("five-qubit chain lost its X string")
    return code, tracked


def _widen_perm(width: int) -> list[int]:
    """Relabeling that restores canonical order after one widening weld."""
    old_lay = _SurfaceLayout(SurfaceSpec(width, 2))
    new_lay = _SurfaceLayout(SurfaceSpec(width + 1, 2))
    perm = [0] * (old_lay.n + 3)
    for r in range(2):
        for c in range(width + 1):
            perm[old_lay.v(r, c)] = new_lay.v(r, c)
    for c in range(width):
        perm[old_lay.h(1, c)] = new_lay.h(1, c)
    # appended piece qubits: top vertical, rung, bottom vertical
    perm[old_lay.n + 0] = new_lay.v(0, width + 1)
    perm[old_lay.n + 1] = new_lay.h(1, width)
    perm[old_lay.n + 2] = new_lay.v(1, width + 1)
    return perm


def _row_index(rows: np.ndarray, bits: np.ndarray) -> int:
    hits = np.nonzero((rows == bits[None, :]).all(axis=1))[0]
    if len(hits) == 0:
        raise ValidationError("tracked operator is no longer a generator row")
    return int(hits[0])


def _repick_x_rows(code: CssCode, new_rows: np.ndarray) -> CssCode:
    """Swap in an equivalent X generating list, verified over GF(2)."""
    if not gf2.row_spaces_equal(code.x_rows, new_rows):
        raise AssertionError("re-picked X rows generate a different group")
    return CssCode(GeneratingSet(code.n, new_rows, code.z_rows))


def _five_weld_ready() -> CssCode:
    """The five-qubit patch re-picked so only its strings touch a side.

    Replacing the star with the product of all three X rows moves its
    support off the left column, which a widening weld needs: the two
    touching generators per side are then the top and bottom strings,
    independent on the weld.
    """
    code, _ = _five_folded()
    x = code.x_rows.copy()
    star = _row_index(x, PauliOperator.from_support(5, x=(0, 2, 3)).x_bits)
    top = _row_index(x, PauliOperator.from_support(5, x=(0, 1)).x_bits)
    bottom = _row_index(x, PauliOperator.from_support(5, x=(3, 4)).x_bits)
    x[star] = x[star] ^ x[top] ^ x[bottom]
    return _repick_x_rows(code, x)


def _widening_form(code: CssCode, width: int, tracked: PauliOperator) -> CssCode:
    """Re-pick a 2-row patch as left stars plus its two strings.

    The stars at columns 0..width-1 avoid the right column, so after
    this only the top and bottom strings touch a weld on that side.
    The omitted rightmost star stays in the group as the product of
    everything else.
    """
    lay = _SurfaceLayout(SurfaceSpec(width, 2))
    bottom = PauliOperator.from_support(code.n, x=lay.bottom_row())
    stars = _rows(code.n, [lay.star_support(1, c) for c in range(width)])
    x_new = np.vstack([stars, tracked.x_bits[None, :], bottom.x_bits[None, :]])
    return _repick_x_rows(code, x_new)


def _widen_once(acc: CssCode, tracked: PauliOperator, width: int):
    """X-weld a fresh five-qubit piece onto the right edge of a 2-row patch."""
    acc = _widening_form(acc, width, tracked)
    piece = _five_weld_ready()
    lay = _SurfaceLayout(SurfaceSpec(width, 2))
    ident = [(lay.v(0, width), 0), (lay.v(1, width), 3)]
    raw = weld(acc, piece, ident, "x")
    merged = trace_successor(welded_operator_trace(raw), 1, tracked)
    perm = _widen_perm(width)
    return permute_qubits(raw, perm), permute_operator(merged, perm)


def _widen_once_flat(acc: CssCode, tracked: PauliOperator, width: int):
    """Height-1 widening: X-weld a two-qubit piece onto the right end."""
    raw = weld(acc, build_two_qubit(), [(width, 0)], "x")
    return raw, trace_successor(welded_operator_trace(raw), 1, tracked)


def _build_row(width: int) -> tuple[CssCode, PauliOperator]:
    """2-row patch of the requested width with the X string folded."""
    acc, tracked = _five_folded()
    for w in range(1, width):
        acc, tracked = _widen_once(acc, tracked, w)
    return acc, tracked


def _promote_top_string(code: CssCode, width: int, tracked: PauliOperator) -> CssCode:
    """Re-pick a 2-row patch as stars plus the tracked string, then promote.

    After the re-pick the remaining generators are exactly the stars,
    which the left-column partner commutes with.
    """
    lay = _SurfaceLayout(SurfaceSpec(width, 2))
    stars = _rows(code.n, lay.star_supports())
    x_new = np.vstack([stars, tracked.x_bits[None, :]])
    code = _repick_x_rows(code, x_new)
    left = PauliOperator.from_support(code.n, z=lay.left_col())
    return promote_to_logical(code, "x", code.x_rows.shape[0] - 1, left)


def _rough_row_piece(width: int) -> CssCode:
    """Stackable 2-row patch: stars generated, Z string folded, k = 0."""
    acc, tracked = _build_row(width)
    promoted = _promote_top_string(acc, width, tracked)
    return fold_logical(promoted, 0, "z")


def _stack_once(acc: CssCode, tracked: PauliOperator, rows_done: int, width: int):
    """Z-weld a fresh 2-row patch under the accumulated patch."""
    piece = _rough_row_piece(width)
    lay = _SurfaceLayout(SurfaceSpec(width, rows_done))
    ident = [(lay.v(rows_done - 1, c), c) for c in range(width + 1)]
    raw = weld(acc, piece, ident, "z")
    merged = trace_successor(welded_operator_trace(raw), 1, tracked)
    return raw, merged


def build_surface_by_welding(spec: SurfaceSpec) -> CssCode:
    """Assemble build_surface(spec) from two-qubit pieces alone.

    Two-qubit pieces weld into three-qubit strips, pairs of strips into
    five-qubit patches, fives widen into a two-row patch, and rows stack
    by rough welds.  The result matches build_surface(spec) row for row
    on the canonical layout.
    """
    lay = _SurfaceLayout(spec)
    top = PauliOperator.from_support(lay.n, x=lay.top_row())
    left = PauliOperator.from_support(lay.n, z=lay.left_col())
    if spec.height == 1:
        if spec.width == 1:
            code = promote_to_logical(build_two_qubit(), "x", 0, left)
        else:
            acc = build_two_qubit()
            tracked = PauliOperator.from_support(2, x=(0, 1))
            for w in range(1, spec.width):
                acc, tracked = _widen_once_flat(acc, tracked, w)
            code = promote_to_logical(
                acc, "x", _row_index(acc.x_rows, tracked.x_bits), left
            )
    elif spec.height == 2:
        acc, tracked = _build_row(spec.width)
        code = _promote_top_string(acc, spec.width, tracked)
    else:
        acc = _rough_row_piece(spec.width)
        tracked = PauliOperator.from_support(
            acc.n, z=_SurfaceLayout(SurfaceSpec(spec.width, 2)).left_col()
        )
        for rows_done in range(2, spec.height):
            acc, tracked = _stack_once(acc, tracked, rows_done, spec.width)
        code = promote_to_logical(
            acc, "z", _row_index(acc.z_rows, tracked.z_bits), top
        )
    code = replace(code, region_metadata=_surface_region_metadata(spec))
    validate_or_raise(code)
    return code


def _five_for_overlap() -> tuple[CssCode, PauliOperator]:
    """The five-qubit patch re-picked for a shared-column overlap weld.

    Joining two fives along a whole column plus its rung touches every
    X generator, so the bottom string is replaced by the product of all
    three rows: the three restrictions to the shared qubits (one top
    vertical, one rung, the full column pattern) are then distinct and
    independent on both sides.
    """
    code, tracked = _five_folded()
    x = code.x_rows.copy()
    bottom = _row_index(x, PauliOperator.from_support(5, x=(3, 4)).x_bits)
    top = _row_index(x, PauliOperator.from_support(5, x=(0, 1)).x_bits)
    star = _row_index(x, PauliOperator.from_support(5, x=(0, 2, 3)).x_bits)
    x[bottom] = x[bottom] ^ x[top] ^ x[star]
    return _repick_x_rows(code, x), tracked


def _seven_by_welding() -> CssCode:
    """Two five-qubit patches overlapping on a column and its rung."""
    a, tracked = _five_for_overlap()
    b, _ = _five_for_overlap()
    raw = weld(a, b, [(1, 0), (2, 2), (4, 3)], "x")
    merged = trace_successor(welded_operator_trace(raw), 1, tracked)
    partner = PauliOperator.from_support(raw.n, z=(0, 3))
    return promote_to_logical(
        raw, "x", _row_index(raw.x_rows, merged.x_bits), partner
    )


def surface_welding_chain() -> tuple[tuple[str, CssCode], ...]:
    """The small-code ladder, every rung built by welding.

    Returns (label, code) pairs: the two-qubit piece, the three-qubit
    strip, and the 5-, 7-, 8-, and 13-qubit patches.
    """
    return (
        ("two-qubit", build_two_qubit()),
        ("three-qubit", _rep3()),
        ("five-qubit", build_surface_by_welding(SurfaceSpec(1, 2))),
        ("seven-qubit", _seven_by_welding()),
        ("eight-qubit", build_surface_by_welding(SurfaceSpec(2, 2))),
        ("thirteen-qubit", build_surface_by_welding(SurfaceSpec(2, 3))),
    )


# ---------------------------------------------------------------------------
# solid codes


class _SolidLayout:
    """Index bookkeeping for a solid block.

    Per vertical level z: the layer of vertical edges, then (below the
    top boundary) the two families of horizontal edges at level z + 1.
    Horizontal edges exist only at interior levels 1..dz-1.
    """

    def __init__(self, spec: SolidSpec):
        self.dx, self.dy, self.dz = spec.dx, spec.dy, spec.dz
        self.cols = (spec.dx + 1) * (spec.dy + 1)
        self.hx_count = spec.dx * (spec.dy + 1)
        self.hy_count = (spec.dx + 1) * spec.dy
        self.level_stride = self.cols + self.hx_count + self.hy_count
        self.n = spec.dz * self.cols + (spec.dz - 1) * (self.hx_count + self.hy_count)

    def vq(self, x: int, y: int, z: int) -> int:
        return z * self.level_stride + y * (self.dx + 1) + x

    def hx(self, x: int, y: int, z: int) -> int:
        return (z - 1) * self.level_stride + self.cols + y * self.dx + x

    def hy(self, x: int, y: int, z: int) -> int:
        return self.hx(0, 0, z) + self.hx_count + y * (self.dx + 1) + x

    def layer(self, z: int) -> tuple[int, ...]:
        return tuple(
            self.vq(x, y, z) for y in range(self.dy + 1) for x in range(self.dx + 1)
        )

    def column(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(self.vq(x, y, z) for z in range(self.dz))

    def star_support(self, x: int, y: int, z: int) -> list[int]:
        support = [self.vq(x, y, z - 1), self.vq(x, y, z)]
        if x > 0:
            support.append(self.hx(x - 1, y, z))
        if x < self.dx:
            support.append(self.hx(x, y, z))
        if y > 0:
            support.append(self.hy(x, y - 1, z))
        if y < self.dy:
            support.append(self.hy(x, y, z))
        return support

    def face_x_support(self, x: int, y: int, z: int) -> list[int]:
        support = [self.vq(x, y, z), self.vq(x + 1, y, z)]
        if z >= 1:
            support.append(self.hx(x, y, z))
        if z + 1 <= self.dz - 1:
            support.append(self.hx(x, y, z + 1))
        return support

    def face_y_support(self, x: int, y: int, z: int) -> list[int]:
        support = [self.vq(x, y, z), self.vq(x, y + 1, z)]
        if z >= 1:
            support.append(self.hy(x, y, z))
        if z + 1 <= self.dz - 1:
            support.append(self.hy(x, y, z + 1))
        return support

    def sheet_x(self, x: int, y: int) -> tuple[int, ...]:
        interior = [self.hx(x, y, z) for z in range(1, self.dz)]
        return tuple(self.column(x, y)) + tuple(self.column(x + 1, y)) + tuple(interior)

    def sheet_y(self, x: int, y: int) -> tuple[int, ...]:
        interior = [self.hy(x, y, z) for z in range(1, self.dz)]
        return tuple(self.column(x, y)) + tuple(self.column(x, y + 1)) + tuple(interior)

    def star_supports(self) -> list[list[int]]:
        return [
            self.star_support(x, y, z)
            for z in range(1, self.dz)
            for y in range(self.dy + 1)
            for x in range(self.dx + 1)
        ]

    def face_supports(self) -> list[list[int]]:
        faces = [
            self.face_x_support(x, y, z)
            for z in range(self.dz)
            for y in range(self.dy + 1)
            for x in range(self.dx)
        ]
        faces += [
            self.face_y_support(x, y, z)
            for z in range(self.dz)
            for y in range(self.dy)
            for x in range(self.dx + 1)
        ]
        return faces

    def face_x_row(self, x: int, y: int, z: int) -> int:
        return z * (self.dy + 1) * self.dx + y * self.dx + x

    def face_y_row(self, x: int, y: int, z: int) -> int:
        return (
            self.dz * (self.dy + 1) * self.dx
            + z * self.dy * (self.dx + 1)
            + y * (self.dx + 1)
            + x
        )

    def horizontal_plaquettes(self) -> list[list[int]]:
        return [
            [self.hx(x, y, z), self.hx(x, y + 1, z), self.hy(x, y, z), self.hy(x + 1, y, z)]
            for z in range(1, self.dz)
            for y in range(self.dy)
            for x in range(self.dx)
        ]


def _solid_region_metadata(spec: SolidSpec) -> dict:
    lay = _SolidLayout(spec)
    meta = {}
    if spec.dz >= 2:
        whole = QubitPatch("solid", tuple(range(lay.n)))
        meta["x"] = FlatRegionGraph(
            "x",
            lay.n,
            (whole,),
            (
                QubitPatch("rough top", lay.layer(0)),
                QubitPatch("rough bottom", lay.layer(spec.dz - 1)),
            ),
            ((0, 1),),
        )
    if not spec.horizontal_plaquettes:
        # With horizontal plaquettes generated, Z particles can no longer
        # cross a sheet silently, so the sheet decomposition only holds
        # for the half-plaquette generating set.
        columns = {
            (x, y): QubitPatch(f"column ({x},{y})", lay.column(x, y))
            for y in range(spec.dy + 1)
            for x in range(spec.dx + 1)
        }
        order = {pos: i for i, pos in enumerate(columns)}
        regions = []
        incidence = []
        for y in range(spec.dy + 1):
            for x in range(spec.dx):
                regions.append(QubitPatch(f"sheet x ({x},{y})", lay.sheet_x(x, y)))
                incidence.append((order[(x, y)], order[(x + 1, y)]))
        for y in range(spec.dy):
            for x in range(spec.dx + 1):
                regions.append(QubitPatch(f"sheet y ({x},{y})", lay.sheet_y(x, y)))
                incidence.append((order[(x, y)], order[(x, y + 1)]))
        meta["z"] = FlatRegionGraph(
            "z",
            lay.n,
            tuple(regions),
            tuple(columns.values()),
            tuple(incidence),
        )
    return meta


def build_solid(spec: SolidSpec) -> CssCode:
    """Cubic block with rough top/bottom faces and smooth sides.

    Logicals: the X membrane across the top vertical layer against the Z
    string down one corner column.  Horizontal plaquettes are generated
    only when flagged; they are in the group either way, as products of
    four half-plaquettes.
    """
    lay = _SolidLayout(spec)
    x_rows = _rows(lay.n, lay.star_supports())
    faces = lay.face_supports()
    if spec.horizontal_plaquettes:
        faces = faces + lay.horizontal_plaquettes()
    z_rows = _rows(lay.n, faces)
    code = CssCode(
        GeneratingSet(lay.n, x_rows, z_rows),
        (
            LogicalClass(
                x_rep=PauliOperator.from_support(lay.n, x=lay.layer(0)),
                z_rep=PauliOperator.from_support(lay.n, z=lay.column(0, 0)),
            ),
        ),
        _solid_region_metadata(spec),
    )
    validate_or_raise(code)
    return code


# ---------------------------------------------------------------------------
# welded assemblies


@dataclass
class _Assembly:
    """Accumulator for piece-by-piece welding along a graph."""

    code: CssCode
    merged: PauliOperator
    vertex_qubits: dict
    piece_embeddings: list


def _weld_along_graph(
    graph: WeldGraph,
    make_piece,
    piece_ends,
    tracked_value: PauliOperator,
    weld_type: str,
) -> _Assembly:
    """Weld one fresh piece per edge, joining boundaries at shared vertices.

    make_piece(edge) returns a k=0 piece whose folded string shows up at
    both of its boundaries; piece_ends gives the two ordered boundary
    qubit tuples (first vertex, second vertex).  The folded strings merge
    into a single tracked generator across every weld.
    """
    edges = _ordered_edges(graph)
    first = edges[0]
    code = make_piece(first)
    vertex_qubits = {first[0]: tuple(piece_ends[0]), first[1]: tuple(piece_ends[1])}
    embeddings = [(first, np.arange(code.n))]
    merged = tracked_value
    for edge in edges[1:]:
        piece = make_piece(edge)
        pairs = []
        for vertex, end in zip(edge, piece_ends):
            if vertex in vertex_qubits:
                pairs.extend(zip(vertex_qubits[vertex], end))
        raw = weld(code, piece, pairs, weld_type)
        trace = welded_operator_trace(raw)
        merged = trace_successor(trace, 1, merged)
        embed = trace.layout.embed2
        for vertex, end in zip(edge, piece_ends):
            if vertex not in vertex_qubits:
                vertex_qubits[vertex] = tuple(int(embed[q]) for q in end)
        embeddings.append((edge, embed))
        code = raw
    return _Assembly(code, merged, vertex_qubits, embeddings)


def build_welded_surface(
    graph: WeldGraph, boundary_type: str, spec: SurfaceSpec
) -> CssCode:
    """One surface patch per graph edge, welded at shared boundaries.

    Rough welding joins top/bottom rows with Z-type welds and promotes
    the merged Z string; smooth welding joins side columns with X-type
    welds and promotes the merged X string.  Flat-region metadata: a
    weld merges one generator type, so the opposite particle type
    splits there and gets one region per piece, while the welded type
    roams the whole assembly as a single region.
    """
    btype = str(boundary_type).lower()
    if btype not in ("rough", "smooth"):
        raise ValidationError("boundary_type must be 'rough' or 'smooth'")
    lay = _SurfaceLayout(spec)
    if btype == "rough":
        if spec.height < 2:
            raise ValidationError(
                "rough welding needs height >= 2 so the two rough rows differ"
            )

        def make_piece(edge) -> CssCode:
            piece = build_surface(spec, include_string_logicals=False)
            return replace(piece, region_metadata=None)

        ends = (lay.top_row(), lay.bottom_row())
        tracked = PauliOperator.from_support(lay.n, z=lay.left_col())
        weld_type = "z"
        free_sides = (lay.left_col(), lay.right_col())
        free_labels = ("smooth left side", "smooth right side")
    else:

        def make_piece(edge) -> CssCode:
            piece = fold_logical(build_surface(spec), 0, "x")
            return replace(piece, region_metadata=None)

        ends = (lay.left_col(), lay.right_col())
        tracked = PauliOperator.from_support(lay.n, x=lay.top_row())
        weld_type = "x"
        free_sides = (lay.top_row(), lay.bottom_row())
        free_labels = ("rough top side", "rough bottom side")

    asm = _weld_along_graph(graph, make_piece, ends, tracked, weld_type)
    code, merged = asm.code, asm.merged

    first_vertex = asm.piece_embeddings[0][0][0]
    if btype == "rough":
        partner = PauliOperator.from_support(code.n, x=asm.vertex_qubits[first_vertex])
        kind, rows, bits = "z", code.z_rows, merged.z_bits
    else:
        partner = PauliOperator.from_support(code.n, z=asm.vertex_qubits[first_vertex])
        kind, rows, bits = "x", code.x_rows, merged.x_bits
    code = promote_to_logical(code, kind, _row_index(rows, bits), partner)

    # Particles of the type opposite the weld split at the vertex
    # boundaries, one region per piece.  Welded-type particles cross
    # the welds freely: one region, bounded by the assembly's two free
    # sides, each the union of the per-piece sides (adjacent pieces
    # share their corners).
    boundaries = tuple(
        QubitPatch(f"boundary {v}", asm.vertex_qubits[v]) for v in graph.vertices
    )
    vindex = {v: i for i, v in enumerate(graph.vertices)}
    regions = []
    incidence = []
    side_unions = [set(), set()]
    for edge, embed in asm.piece_embeddings:
        u, v = edge
        regions.append(QubitPatch(f"piece {u}-{v}", tuple(int(q) for q in embed)))
        incidence.append((vindex[u], vindex[v]))
        for union, side in zip(side_unions, free_sides):
            union.update(int(embed[q]) for q in side)
    split_kind = "x" if weld_type == "z" else "z"
    meta = {
        split_kind: FlatRegionGraph(
            split_kind, code.n, tuple(regions), boundaries, tuple(incidence)
        )
    }
    if btype == "rough" or spec.height >= 2:
        # A smooth assembly of one-row pieces has a single rough side,
        # which leaves the welded particle type nothing to move between.
        meta[weld_type] = FlatRegionGraph(
            weld_type,
            code.n,
            (QubitPatch("assembly", tuple(range(code.n))),),
            tuple(
                QubitPatch(label, tuple(union))
                for label, union in zip(free_labels, side_unions)
            ),
            ((0, 1),),
        )
    code = replace(code, region_metadata=meta)
    validate_or_raise(code)
    return code


def _repick_solid_layer(code: CssCode, lay: _SolidLayout, z: int) -> CssCode:
    """Make the boundary-layer half-plaquettes independent on the weld.

    The half-plaquettes at one rough layer restrict to the edges of the
    (dx+1) x (dy+1) column grid, which has cycles, so products of them
    can vanish on the weld.  Keeping a spanning comb (all x edges plus
    the y edges at x=0) and multiplying each remaining y-edge plaquette
    by its comb cycle clears that plaquette off the layer entirely.
    """
    z_rows = code.z_rows.copy()
    for y in range(lay.dy):
        for x in range(1, lay.dx + 1):
            row = z_rows[lay.face_y_row(x, y, z)]
            row ^= z_rows[lay.face_y_row(0, y, z)]
            for xp in range(x):
                row ^= z_rows[lay.face_x_row(xp, y, z)]
                row ^= z_rows[lay.face_x_row(xp, y + 1, z)]
    gens = GeneratingSet(code.n, code.x_rows, z_rows)
    return CssCode(gens, code.logicals, code.region_metadata, code.weld_trace)


def _phantom_welded_faces(
    graph: WeldGraph, asm: _Assembly, lay: _SolidLayout, spec: SolidSpec
) -> list[np.ndarray]:
    """Reconstruct the welded non-comb plaquettes dropped by re-picking.

    A weld of deg pieces would have produced, for each y-edge of the
    column grid outside the comb, the product of all incident layer
    plaquettes times the weld restriction when the piece count is even.
    Those operators are still in the group; appending them restores the
    plain half-plaquette energy landscape at every weld.
    """
    incident: dict = {}
    for edge, embed in asm.piece_embeddings:
        u, v = edge
        incident.setdefault(u, []).append((embed, 0))
        incident.setdefault(v, []).append((embed, spec.dz - 1))
    rows = []
    for vertex in graph.vertices:
        pieces = incident.get(vertex, ())
        if len(pieces) < 2:
            continue
        layer = asm.vertex_qubits[vertex]
        for y in range(lay.dy):
            for x in range(1, lay.dx + 1):
                bits = np.zeros(asm.code.n, dtype=np.uint8)
                for embed, z in pieces:
                    for q in lay.face_y_support(x, y, z):
                        bits[int(embed[q])] ^= 1
                if len(pieces) % 2 == 0:
                    bits[layer[y * (lay.dx + 1) + x]] ^= 1
                    bits[layer[(y + 1) * (lay.dx + 1) + x]] ^= 1
                rows.append(bits)
    return rows


def build_welded_solid(graph: WeldGraph, spec: SolidSpec) -> CssCode:
    """One solid per graph edge, rough boundaries welded at shared vertices.

    The Z strings of all pieces merge into one welded string, promoted
    against the membrane of the first piece.  Flat-X regions are the
    solids with the boundary layers between them; flat-Z sheets continue
    straight through the welds, so their grid keeps the single-solid
    shape whatever the graph looks like.
    """
    if spec.horizontal_plaquettes:
        raise ValidationError(
            "welded solids use the half-plaquette generating set; build the "
            "pieces with horizontal_plaquettes=False"
        )
    if spec.dz < 2:
        raise ValidationError(
            "welding needs dz >= 2 so the two rough layers are distinct"
        )
    lay = _SolidLayout(spec)
    degree = {v: graph.degree(v) for v in graph.vertices}

    def make_piece(edge) -> CssCode:
        piece = build_solid(spec)
        if degree[edge[0]] >= 2:
            piece = _repick_solid_layer(piece, lay, 0)
        if degree[edge[1]] >= 2:
            piece = _repick_solid_layer(piece, lay, spec.dz - 1)
        piece = fold_logical(piece, 0, "z")
        return replace(piece, region_metadata=None)

    ends = (lay.layer(0), lay.layer(spec.dz - 1))
    tracked = PauliOperator.from_support(lay.n, z=lay.column(0, 0))
    asm = _weld_along_graph(graph, make_piece, ends, tracked, "z")

    code = asm.code
    phantoms = _phantom_welded_faces(graph, asm, lay, spec)
    if phantoms:
        for bits in phantoms:
            if not gf2.in_row_space(code.z_rows, bits):
                raise AssertionError("reconstructed plaquette left the group")
        gens = GeneratingSet(
            code.n, code.x_rows, np.vstack([code.z_rows] + [b[None, :] for b in phantoms])
        )
        code = CssCode(gens, code.logicals, code.region_metadata, code.weld_trace)

    first_embed = asm.piece_embeddings[0][1]
    membrane = PauliOperator.from_support(code.n, x=first_embed[list(lay.layer(0))])
    code = promote_to_logical(
        code, "z", _row_index(code.z_rows, asm.merged.z_bits), membrane
    )

    vindex = {v: i for i, v in enumerate(graph.vertices)}
    boundaries = tuple(
        QubitPatch(f"boundary {v}", asm.vertex_qubits[v]) for v in graph.vertices
    )
    regions = []
    incidence = []
    for edge, embed in asm.piece_embeddings:
        regions.append(
            QubitPatch(f"solid {edge[0]}-{edge[1]}", tuple(int(q) for q in embed))
        )
        incidence.append((vindex[edge[0]], vindex[edge[1]]))
    meta = {
        "x": FlatRegionGraph(
            "x", code.n, tuple(regions), boundaries, tuple(incidence)
        )
    }

    # Merged flat-Z structure: the (x, y) columns and sheets of every
    # piece fuse across the welds into one column and one sheet each.
    def merged_patch(label, supports) -> QubitPatch:
        qubits: set[int] = set()
        for (_, embed), support in zip(asm.piece_embeddings, supports):
            qubits.update(int(embed[q]) for q in support)
        return QubitPatch(label, tuple(qubits))

    columns = {}
    for y in range(spec.dy + 1):
        for x in range(spec.dx + 1):
            columns[(x, y)] = merged_patch(
                f"column ({x},{y})",
                [lay.column(x, y)] * len(asm.piece_embeddings),
            )
    order = {pos: i for i, pos in enumerate(columns)}
    z_regions = []
    z_incidence = []
    for y in range(spec.dy + 1):
        for x in range(spec.dx):
            z_regions.append(
                merged_patch(
                    f"sheet x ({x},{y})", [lay.sheet_x(x, y)] * len(asm.piece_embeddings)
                )
            )
            z_incidence.append((order[(x, y)], order[(x + 1, y)]))
    for y in range(spec.dy):
        for x in range(spec.dx + 1):
            z_regions.append(
                merged_patch(
                    f"sheet y ({x},{y})", [lay.sheet_y(x, y)] * len(asm.piece_embeddings)
                )
            )
            z_incidence.append((order[(x, y)], order[(x, y + 1)]))
    meta["z"] = FlatRegionGraph(
        "z",
        code.n,
        tuple(z_regions),
        tuple(columns.values()),
        tuple(z_incidence),
    )
    code = replace(code, region_metadata=meta)
    validate_or_raise(code)
    return code


def build_solid_by_welding(spec: SolidSpec) -> CssCode:
    """Assemble build_solid(spec) by X-welding tall thin strips.

    One height-dz, width-1 surface strip per sheet of the solid, welded
    along the column grid by smooth welds; the merged membrane is
    promoted at the end.  A cross-check route for build_solid with
    horizontal_plaquettes=False.
    """
    if spec.horizontal_plaquettes:
        raise ValidationError(
            "the strip construction generates half-plaquettes only; use "
            "horizontal_plaquettes=False"
        )
    strip_spec = SurfaceSpec(1, spec.dz)
    strip_lay = _SurfaceLayout(strip_spec)

    def make_piece(edge) -> CssCode:
        piece = fold_logical(build_surface(strip_spec), 0, "x")
        return replace(piece, region_metadata=None)

    ends = (strip_lay.left_col(), strip_lay.right_col())
    tracked = PauliOperator.from_support(strip_lay.n, x=strip_lay.top_row())
    graph = grid2d(spec.dx + 1, spec.dy + 1)
    asm = _weld_along_graph(graph, make_piece, ends, tracked, "x")

    # Relabel the strip register onto the canonical solid layout.
    lay = _SolidLayout(spec)
    perm = np.full(asm.code.n, -1, dtype=np.int64)
    for (posu, posv), embed in asm.piece_embeddings:
        axis = "x" if posv[0] == posu[0] + 1 else "y"
        for r in range(spec.dz):
            perm[embed[strip_lay.v(r, 0)]] = lay.vq(posu[0], posu[1], r)
            perm[embed[strip_lay.v(r, 1)]] = lay.vq(posv[0], posv[1], r)
        for r in range(1, spec.dz):
            if axis == "x":
                perm[embed[strip_lay.h(r, 0)]] = lay.hx(posu[0], posu[1], r)
            else:
                perm[embed[strip_lay.h(r, 0)]] = lay.hy(posu[0], posu[1], r)
    if sorted(perm.tolist()) != list(range(asm.code.n)):
        raise AssertionError("strip welding did not cover the solid exactly once")
    code = permute_qubits(asm.code, perm)
    membrane = permute_operator(asm.merged, perm)
    partner = PauliOperator.from_support(code.n, z=lay.column(0, 0))
    code = promote_to_logical(
        code, "x", _row_index(code.x_rows, membrane.x_bits), partner
    )
    code = replace(code, region_metadata=_solid_region_metadata(spec))
    validate_or_raise(code)
    return code
