import numpy as np
import pytest

from weldkit.builders import (
    SolidSpec,
    SurfaceSpec,
    WeldGraph,
    build_repetition,
    build_solid,
    build_solid_by_welding,
    build_surface,
    build_surface_by_welding,
    build_two_qubit,
    build_welded_solid,
    build_welded_surface,
    cubic,
    flat_region_graph,
    grid2d,
    parse_weld_graph,
    path,
    region_graph_from_weld_graph,
    star,
    surface_welding_chain,
)
from weldkit.css import encoded_qubits, groups_equal, syndrome, validate
from weldkit.errors import MetadataError, ValidationError
from weldkit.pauli import PauliOperator


def test_welding_chain_sizes():
    chain = surface_welding_chain()
    assert tuple(code.n for _, code in chain) == (2, 3, 5, 7, 8, 13)
    for label, code in chain:
        assert validate(code) is None, label


@pytest.mark.parametrize("width,height", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_surfaces_by_welding_match_direct(width, height):
    spec = SurfaceSpec(width, height)
    direct = build_surface(spec)
    welded = build_surface_by_welding(spec)
    assert welded.n == direct.n
    assert groups_equal(welded, direct)
    assert encoded_qubits(welded) == 1


@pytest.mark.parametrize(
    "dx,dy,dz", [(1, 1, 1), (1, 1, 2), (2, 1, 2), (1, 1, 3), (2, 2, 1)]
)
def test_solids_by_welding_match_direct(dx, dy, dz):
    spec = SolidSpec(dx, dy, dz)
    direct = build_solid(spec)
    welded = build_solid_by_welding(spec)
    assert welded.n == direct.n
    assert groups_equal(welded, direct)
    assert encoded_qubits(welded) == 1


def test_repetition_is_the_parity_chain():
    code = build_repetition(3)
    assert code.n == 3
    assert validate(code) is None
    assert encoded_qubits(code) == 1
    assert code.x_rows.tolist() == [[1, 1, 0], [0, 1, 1]]
    assert code.z_rows.shape[0] == 0


def test_single_edge_graph_reproduces_one_piece():
    # path(2) has one edge, so the assembly is a lone patch
    lone = build_welded_surface(path(2), "rough", SurfaceSpec(2, 2))
    assert groups_equal(lone, build_surface(SurfaceSpec(2, 2)))
    block = build_welded_solid(path(2), SolidSpec(1, 1, 2))
    assert groups_equal(block, build_solid(SolidSpec(1, 1, 2)))


def test_welded_assembly_sizes():
    # pieces share their boundary faces, so totals shrink accordingly
    assert build_welded_surface(path(3), "rough", SurfaceSpec(2, 2)).n == 13
    assert build_welded_solid(path(3), SolidSpec(1, 1, 2)).n == 20
    assert build_welded_solid(star(3), SolidSpec(1, 1, 2)).n == 28
    assert build_welded_solid(grid2d(2, 2), SolidSpec(1, 1, 2)).n == 32


def test_welded_assemblies_encode_one_qubit():
    for graph in (path(3), star(3), grid2d(2, 2)):
        surface = build_welded_surface(graph, "rough", SurfaceSpec(2, 2))
        assert validate(surface) is None
        assert encoded_qubits(surface) == 1
        solid = build_welded_solid(graph, SolidSpec(1, 1, 2))
        assert validate(solid) is None
        assert encoded_qubits(solid) == 1


def test_smooth_welding_also_encodes_one_qubit():
    code = build_welded_surface(star(3), "smooth", SurfaceSpec(2, 2))
    assert validate(code) is None
    assert encoded_qubits(code) == 1


def test_region_metadata_structure():
    code = build_welded_surface(path(3), "rough", SurfaceSpec(2, 2))
    split = flat_region_graph(code, "x")
    roaming = flat_region_graph(code, "z")
    # one region per piece for the split type, one assembly-wide region
    assert len(split.regions) == 2
    assert len(roaming.regions) == 1
    assert roaming.regions[0].qubits == tuple(range(code.n))
    assert len(roaming.boundaries) == 2
    # boundary qubit sets never overlap
    for graph in (split, roaming):
        seen = set()
        for patch in graph.boundaries:
            assert not seen.intersection(patch.qubits)
            seen.update(patch.qubits)


def test_region_metadata_missing_raises():
    with pytest.raises(MetadataError):
        flat_region_graph(build_two_qubit(), "x")
    with pytest.raises(ValidationError):
        flat_region_graph(build_surface(SurfaceSpec(2, 2)), "y")


def test_split_type_errors_count_incident_regions():
    # a rough weld merges Z strings, so star violations split per piece:
    # one Z error on a three-way weld qubit upsets one star per piece,
    # while an interior qubit upsets the usual two
    code = build_welded_surface(star(3), "rough", SurfaceSpec(2, 2))
    split = flat_region_graph(code, "x")
    hub = next(b for b in split.boundaries if sum(1 for row in split.incidence if split.boundaries.index(b) in row) == 3)
    weld_qubit = hub.qubits[0]
    interior = next(
        q for q in range(code.n)
        if not any(q in b.qubits for b in split.boundaries)
    )
    on_weld = syndrome(code, PauliOperator.from_support(code.n, z=(weld_qubit,)))
    off_weld = syndrome(code, PauliOperator.from_support(code.n, z=(interior,)))
    assert len(on_weld.violated_x) == 3
    assert len(off_weld.violated_x) == 2


def test_graph_constructors():
    assert len(path(4).edges) == 3
    assert path(4).degree(path(4).vertices[1]) == 2
    hub_graph = star(5)
    hub = max(hub_graph.vertices, key=hub_graph.degree)
    assert hub_graph.degree(hub) == 5
    # a*b vertices; edges join lattice neighbours
    assert len(grid2d(2, 3).vertices) == 6
    assert len(grid2d(2, 3).edges) == 2 * 2 + 3 * 1
    assert len(cubic(2, 2, 2).edges) == 12
    assert grid2d(3, 3).is_connected()


def test_weld_graph_validation():
    with pytest.raises(ValidationError):
        WeldGraph(("a", "a"), ())
    with pytest.raises(ValidationError):
        WeldGraph(("a", "b"), (("a", "a"),))
    with pytest.raises(ValidationError):
        WeldGraph(("a", "b"), (("a", "c"),))
    with pytest.raises(ValidationError):
        WeldGraph(("a", "b"), (("a", "b"), ("b", "a")))
    disconnected = WeldGraph(("a", "b", "c", "d"), (("a", "b"), ("c", "d")))
    assert not disconnected.is_connected()
    with pytest.raises(ValidationError):
        build_welded_surface(disconnected, "rough", SurfaceSpec(1, 1))


def test_parse_weld_graph():
    graph = parse_weld_graph("v a\nv b\n# comment\ne a b\n")
    assert graph.vertices == ("a", "b")
    assert graph.edges == (("a", "b"),)
    with pytest.raises(ValidationError):
        parse_weld_graph("w a\n")
    with pytest.raises(ValidationError):
        parse_weld_graph("e a\n")


def test_region_graph_from_weld_graph_shape():
    graph = region_graph_from_weld_graph(star(3), "z")
    assert graph.particle_type == "z"
    assert graph.n == 4
    assert len(graph.regions) == 3
    assert len(graph.boundaries) == 4
    assert all(len(row) == 2 for row in graph.incidence)


def test_deep_solid_regression():
    # three stacked levels exercise the upper horizontal sheets
    spec = SolidSpec(2, 2, 3)
    code = build_solid(spec)
    assert validate(code) is None
    assert encoded_qubits(code) == 1
    meta = flat_region_graph(code, "z")
    assert meta.n == code.n


def test_spec_validation():
    with pytest.raises(ValidationError):
        build_surface(SurfaceSpec(0, 2))
    with pytest.raises(ValidationError):
        build_solid(SolidSpec(1, 0, 1))
    with pytest.raises(ValidationError):
        build_repetition(1)
