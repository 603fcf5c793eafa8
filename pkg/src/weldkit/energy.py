"""Energy barriers over stabilizer groups.

An error configuration costs the number of stored generators it
violates.  A walk flips one qubit at a time, and its barrier is the
highest cost it ever pays.  The exact minimum over all walks comes
from a bottleneck search on syndrome cosets; flat-region metadata
yields a parity lower bound cheap enough to check against the exact
number on desk-sized instances.  tune_scaling picks welded-solid
dimensions that trade barrier height against qubit count.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from . import gf2
from .builders import (
    FlatRegionGraph,
    SolidSpec,
    WeldGraph,
    build_solid,
    build_welded_solid,
    flat_region_graph,
)
from .css import CssCode, syndrome
from .errors import FeasibilityError, MetadataError, ValidationError
from .pauli import PauliOperator

__all__ = [
    "DEFAULT_STATE_CAP",
    "PauliWalk",
    "BarrierResult",
    "BoundReport",
    "WeldInvarianceReport",
    "ScalingPlan",
    "walk_barrier",
    "exact_barrier",
    "operator_barrier",
    "parity_lower_bound",
    "verify_bound",
    "barrier_unchanged_by_rough_welds",
    "barrier_exponents",
    "tune_scaling",
]

# Bottleneck searches refuse to enumerate more states than this.
DEFAULT_STATE_CAP = 1 << 22


@dataclass(frozen=True)
class PauliWalk:
    """A sequence of single-qubit flips, each a (qubit, kind) pair."""

    steps: tuple[tuple[int, str], ...]

    def __post_init__(self):
        steps = tuple((int(q), str(kind)) for q, kind in self.steps)
        for q, kind in steps:
            if q < 0:
                raise ValidationError(f"negative qubit {q} in walk")
            if kind not in ("x", "z"):
                raise ValidationError(f"walk step kind must be 'x' or 'z', got {kind!r}")
        object.__setattr__(self, "steps", steps)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class BarrierResult:
    method: str  # "exact" or "parity_bound"
    barrier: int
    witness: PauliWalk
    states_explored: int


@dataclass(frozen=True)
class BoundReport:
    """A parity bound next to the exact barrier it underestimates."""

    bound: BarrierResult
    exact: BarrierResult
    ok: bool
    saturated: bool

    @property
    def witness(self) -> PauliWalk:
        return self.exact.witness


@dataclass(frozen=True)
class WeldInvarianceReport:
    welded: BarrierResult
    single: BarrierResult
    unchanged: bool


def _bits_to_int(bits) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b:
            out |= 1 << i
    return out


def _column_masks(rows, n: int) -> list[int]:
    # masks[q] toggles the violation bits of every stored row hitting q
    masks = [0] * n
    for i in range(rows.shape[0]):
        row = rows[i]
        for q in row.nonzero()[0]:
            masks[int(q)] |= 1 << i
    return masks


def walk_barrier(code: CssCode, walk: PauliWalk) -> int:
    """Peak violation count along a walk, measured after every step.

    Costs are counted against the stored generating set, so redundant
    rows are deliberately counted once each.
    """
    vx = _column_masks(code.x_rows, code.n)
    vz = _column_masks(code.z_rows, code.n)
    sx = sz = 0
    peak = 0
    for q, kind in walk.steps:
        if q >= code.n:
            raise ValidationError(f"walk step on qubit {q} of a {code.n}-qubit code")
        if kind == "z":
            sx ^= vx[q]
        else:
            sz ^= vz[q]
        cost = sx.bit_count() + sz.bit_count()
        if cost > peak:
            peak = cost
    return peak


def _check_rep(code: CssCode, rep: PauliOperator, kind: str):
    if kind not in ("x", "z"):
        raise ValidationError(f"kind must be 'x' or 'z', got {kind!r}")
    if rep.n != code.n:
        raise ValidationError(f"operator is on {rep.n} qubits, code has {code.n}")
    pure = rep.is_z_type if kind == "z" else rep.is_x_type
    if not pure:
        raise ValidationError(f"representative must be a pure {kind}-type operator")


def _bottleneck_search(n, masks, canon, target, kind, cap, method):
    """Lexicographic Dijkstra on (peak cost, steps) over canonical states.

    Neighbors flip one qubit in ascending order, so witnesses are
    deterministic.  Syndromes ride along as bitmasks and update
    incrementally; canonicalization never changes them.
    """
    if target == 0:
        return BarrierResult(method, 0, PauliWalk(()), 1)
    tick = count()
    best = {0: (0, 0)}
    parent: dict[int, tuple[int, int]] = {}
    heap = [(0, 0, next(tick), 0, 0)]
    explored = 0
    while heap:
        bott, steps, _, state, syn = heapq.heappop(heap)
        if (bott, steps) > best.get(state, (bott, steps)):
            continue
        explored += 1
        if state == target:
            trail = []
            while state:
                state, q = parent[state]
                trail.append((q, kind))
            return BarrierResult(method, bott, PauliWalk(tuple(reversed(trail))), explored)
        for q in range(n):
            nsyn = syn ^ masks[q]
            nstate = canon(state ^ (1 << q))
            key = (max(bott, nsyn.bit_count()), steps + 1)
            if nstate not in best or key < best[nstate]:
                best[nstate] = key
                parent[nstate] = (state, q)
                heapq.heappush(heap, (key[0], key[1], next(tick), nstate, nsyn))
    raise AssertionError("flip space is connected, target must be reachable")


def exact_barrier(
    code: CssCode, rep: PauliOperator, kind: str, cap: int = DEFAULT_STATE_CAP
) -> BarrierResult:
    """Least possible peak cost over walks from the identity to rep.

    Two errors differing by a stabilizer are the same state, so the
    search runs over cosets of the same-type rows; the witness ends on
    some representative of rep's class, not necessarily rep itself.
    Raises FeasibilityError when the coset space outgrows cap.
    """
    _check_rep(code, rep, kind)
    if syndrome(code, rep).count:
        raise ValidationError("representative violates the group")
    same = code.z_rows if kind == "z" else code.x_rows
    opp = code.x_rows if kind == "z" else code.z_rows
    bits = rep.z_bits if kind == "z" else rep.x_bits
    reduced, pivots = gf2.rref(same)
    pivot_rows = [(int(p), _bits_to_int(reduced[i])) for i, p in enumerate(pivots)]
    free = code.n - len(pivot_rows)
    if (1 << free) > cap:
        raise FeasibilityError(
            "coset space exceeds the state cap", required=1 << free, cap=cap
        )

    def canon(v: int) -> int:
        for p, row in pivot_rows:
            if (v >> p) & 1:
                v ^= row
        return v

    target = canon(_bits_to_int(bits))
    if target == 0:
        raise ValidationError("representative is a stabilizer, not a logical")
    masks = _column_masks(opp, code.n)
    return _bottleneck_search(code.n, masks, canon, target, kind, cap, "exact")


def operator_barrier(
    code: CssCode, op: PauliOperator, cap: int = DEFAULT_STATE_CAP
) -> BarrierResult:
    """Least peak cost over walks ending exactly on op.

    No quotient by stabilizers: the raw flip space has 2^n states, so
    this is for cross-checks on small codes.  op may violate the
    group; the endpoint's own cost then counts toward the peak.
    """
    if op.n != code.n:
        raise ValidationError(f"operator is on {op.n} qubits, code has {code.n}")
    if op.is_z_type:
        kind, bits, opp = "z", op.z_bits, code.x_rows
    elif op.is_x_type:
        kind, bits, opp = "x", op.x_bits, code.z_rows
    else:
        raise ValidationError("operator must be pure x-type or pure z-type")
    if (1 << code.n) > cap:
        raise FeasibilityError(
            "flip space exceeds the state cap", required=1 << code.n, cap=cap
        )
    masks = _column_masks(opp, code.n)
    return _bottleneck_search(
        code.n, masks, lambda v: v, _bits_to_int(bits), kind, cap, "exact"
    )


def parity_lower_bound(
    region_graph: FlatRegionGraph, rep: PauliOperator, cap: int = DEFAULT_STATE_CAP
) -> BarrierResult:
    """Barrier lower bound from boundary-crossing parities alone.

    Whenever the error's parities on a region's two boundaries
    disagree, a violated generator sits inside that region, so no walk
    beats the bottleneck over boundary-flip orderings.  The search
    state is one spin per boundary; any qubit flip toggles at most one
    spin because boundaries are disjoint.
    """
    kind = "z" if region_graph.particle_type == "x" else "x"
    if rep.n != region_graph.n:
        raise ValidationError(
            f"operator is on {rep.n} qubits, region graph covers {region_graph.n}"
        )
    pure = rep.is_z_type if kind == "z" else rep.is_x_type
    if not pure:
        raise ValidationError(
            f"a flat-{region_graph.particle_type} graph bounds {kind}-type logicals"
        )
    support = set(rep.z_support() if kind == "z" else rep.x_support())
    spins = len(region_graph.boundaries)
    if (1 << spins) > cap:
        raise FeasibilityError(
            "spin space exceeds the state cap", required=1 << spins, cap=cap
        )
    target = 0
    for j, boundary in enumerate(region_graph.boundaries):
        if len(support.intersection(boundary.qubits)) & 1:
            target |= 1 << j
    bonds = []
    for patch, incident in zip(region_graph.regions, region_graph.incidence):
        if len(incident) != 2:
            raise MetadataError(
                f"parity bound needs two boundaries per region, "
                f"{patch.label!r} touches {len(incident)}"
            )
        if incident[0] != incident[1]:
            bonds.append((incident[0], incident[1]))
    if target == 0:
        return BarrierResult("parity_bound", 0, PauliWalk(()), 1)

    adjacency = [[] for _ in range(spins)]
    for u, v in bonds:
        adjacency[u].append(v)
        adjacency[v].append(u)

    def frustration(s: int) -> int:
        return sum(1 for u, v in bonds if ((s >> u) ^ (s >> v)) & 1)

    tick = count()
    best = {0: (0, 0)}
    parent: dict[int, tuple[int, int]] = {}
    heap = [(0, 0, next(tick), 0, 0)]
    explored = 0
    while heap:
        bott, steps, _, state, cost = heapq.heappop(heap)
        if (bott, steps) > best.get(state, (bott, steps)):
            continue
        explored += 1
        if state == target:
            trail = []
            while state:
                state, j = parent[state]
                trail.append((min(region_graph.boundaries[j].qubits), kind))
            return BarrierResult(
                "parity_bound", bott, PauliWalk(tuple(reversed(trail))), explored
            )
        for j in range(spins):
            mine = (state >> j) & 1
            delta = sum(
                1 if ((state >> k) & 1) == mine else -1 for k in adjacency[j]
            )
            key = (max(bott, cost + delta), steps + 1)
            nstate = state ^ (1 << j)
            if nstate not in best or key < best[nstate]:
                best[nstate] = key
                parent[nstate] = (state, j)
                heapq.heappush(
                    heap, (key[0], key[1], next(tick), nstate, cost + delta)
                )
    raise AssertionError("spin space is connected, target must be reachable")


def verify_bound(
    code: CssCode, kind: str, class_index: int = 0, cap: int = DEFAULT_STATE_CAP
) -> BoundReport:
    """Check the parity bound against the exact barrier for one logical.

    A kind-z walk pays in violated x-type generators, so the bound
    comes from the flat graph of the opposite particle type.
    """
    if kind not in ("x", "z"):
        raise ValidationError(f"kind must be 'x' or 'z', got {kind!r}")
    if not code.logicals:
        raise ValidationError("code encodes nothing, there is no logical to bound")
    logical = code.logicals[class_index]
    rep = logical.z_rep if kind == "z" else logical.x_rep
    graph = flat_region_graph(code, "x" if kind == "z" else "z")
    bound = parity_lower_bound(graph, rep, cap)
    exact = exact_barrier(code, rep, kind, cap)
    return BoundReport(
        bound,
        exact,
        bound.barrier <= exact.barrier,
        bound.barrier == exact.barrier,
    )


def barrier_unchanged_by_rough_welds(
    graph: WeldGraph, spec: SolidSpec, cap: int = DEFAULT_STATE_CAP
) -> WeldInvarianceReport:
    """Compare the welded membrane barrier with the single-solid value.

    Rough welds raise the bar for the merged string only; the membrane
    of the assembly should climb exactly as high as it does in one
    piece.
    """
    welded = build_welded_solid(graph, spec)
    single = build_solid(spec)
    welded_result = exact_barrier(welded, welded.logicals[0].x_rep, "x", cap)
    single_result = exact_barrier(single, single.logicals[0].x_rep, "x", cap)
    return WeldInvarianceReport(
        welded_result, single_result, welded_result.barrier == single_result.barrier
    )


# ---------------------------------------------------------------------------
# scaling


@dataclass(frozen=True)
class ScalingPlan:
    """Welded-solid dimensions picked for the best barrier.

    piece_size is the side of one cubic piece, pieces_per_axis the
    count of pieces along each axis of the weld graph.  The barrier
    grows like the smaller of piece distance and squared piece count,
    which balances at pieces_per_axis ~ sqrt(piece_size); alpha
    records that design exponent.
    """

    alpha: Fraction
    piece_size: int
    pieces_per_axis: int
    qubits: int
    predicted_barrier: int
    predicted_distance: int
    barrier_qubit_exponent: Fraction
    barrier_length_exponent: Fraction
    distance_length_exponent: Fraction


def barrier_exponents(alpha) -> tuple[Fraction, Fraction]:
    """Barrier growth exponents against qubit count and linear size.

    With piece size d and d^(1/alpha) pieces per axis, total qubits
    grow like d^(3(1+1/alpha)) and linear size like d^(1+1/alpha), so
    a barrier of order d gives the exponents returned here.
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValidationError("alpha must be positive")
    return a / (3 * (1 + a)), a / (1 + a)


def _distance_length_exponent(alpha: Fraction) -> Fraction:
    # distance ~ min(d^2, d R^3) with R ~ d^(1/alpha)
    return min(2 * alpha, alpha + 3) / (1 + alpha)


def tune_scaling(side_length=None, qubit_budget=None) -> ScalingPlan:
    """Pick piece size and piece count under one resource limit.

    Give either side_length (piece size times pieces per axis) or
    qubit_budget (their cubes multiplied).  Maximizes the predicted
    barrier min(d, R^2); ties prefer fewer qubits, then fewer pieces.
    """
    if (side_length is None) == (qubit_budget is None):
        raise ValidationError("give exactly one of side_length or qubit_budget")
    candidates = []
    if qubit_budget is not None:
        budget = int(qubit_budget)
        if budget < 1:
            raise ValidationError("qubit_budget must be at least 1")
        pieces = 1
        while pieces**3 <= budget:
            room = budget // pieces**3
            size = max(1, round(room ** (1 / 3)))
            while size**3 > room:
                size -= 1
            while (size + 1) ** 3 <= room:
                size += 1
            if size >= 1:
                candidates.append((size, pieces))
            pieces += 1
    else:
        length = int(side_length)
        if length < 1:
            raise ValidationError("side_length must be at least 1")
        for pieces in range(1, length + 1):
            size = length // pieces
            if size < 1:
                break
            candidates.append((size, pieces))

    def rating(cand):
        size, pieces = cand
        return (min(size, pieces * pieces), -(size**3 * pieces**3), -pieces)

    size, pieces = max(candidates, key=rating)
    alpha = Fraction(2)
    qubit_exp, length_exp = barrier_exponents(alpha)
    return ScalingPlan(
        alpha=alpha,
        piece_size=size,
        pieces_per_axis=pieces,
        qubits=size**3 * pieces**3,
        predicted_barrier=min(size, pieces * pieces),
        predicted_distance=min(size * size, size * pieces**3),
        barrier_qubit_exponent=qubit_exp,
        barrier_length_exponent=length_exp,
        distance_length_exponent=_distance_length_exponent(alpha),
    )
