import numpy as np
import pytest

from weldkit import gf2
from weldkit.builders import SurfaceSpec, build_surface, build_two_qubit
from weldkit.css import (
    CssCode,
    GeneratingSet,
    encoded_qubits,
    groups_equal,
    permute_qubits,
)
from weldkit.errors import MetadataError, ValidationError, WeldError
from weldkit.pauli import PauliOperator, multiply, parse_operator
from weldkit.verify import random_weld_case
from weldkit.welding import (
    QubitIdentification,
    anticommuting_entries,
    contract,
    parse_identification,
    trace_successor,
    weld,
    weld_oracle,
    welded_operator_trace,
)


def golden_weld():
    return weld(build_two_qubit(), build_two_qubit(), [(1, 0)], "z")


def test_golden_weld_produces_three_qubit_group():
    merged = golden_weld()
    want = CssCode(GeneratingSet(3, [[1, 1, 0], [0, 1, 1]], [[1, 1, 1]]))
    assert merged.n == 3
    assert groups_equal(merged, want)
    assert encoded_qubits(merged) == 0


def test_golden_weld_trace_decomposition():
    trace = welded_operator_trace(golden_weld())
    assert sorted(e.kind for e in trace.entries) == ["adopted", "adopted", "welded"]
    for entry in trace.entries:
        product = multiply(multiply(entry.part1, entry.part2), entry.shared_part)
        assert entry.op == product

    merged_row = trace.welded()[0]
    assert merged_row.op == parse_operator("ZZZ")
    assert merged_row.part1 == parse_operator("ZZI")
    assert merged_row.part2 == parse_operator("IZZ")
    assert merged_row.shared_part == PauliOperator.from_support(3, z=(1,))


def test_trace_successor_finds_absorbing_generator():
    trace = welded_operator_trace(golden_weld())
    zz = parse_operator("ZZ")
    assert trace_successor(trace, 1, zz) == parse_operator("ZZZ")
    assert trace_successor(trace, 2, zz) == parse_operator("ZZZ")
    assert trace_successor(trace, 1, parse_operator("XX")) == parse_operator("XXI")
    with pytest.raises(ValidationError):
        trace_successor(trace, 1, parse_operator("ZI"))


def test_anticommuting_entries_single_out_the_weld():
    merged = golden_weld()
    probe = PauliOperator.from_support(3, x=(0,))
    hits = anticommuting_entries(merged, probe)
    trace = welded_operator_trace(merged)
    assert len(hits) == 1
    assert trace.entries[hits[0]].kind == "welded"


def test_trace_requires_a_welded_code():
    with pytest.raises(MetadataError):
        welded_operator_trace(build_two_qubit())


def test_weld_matches_kernel_oracle_on_random_cases():
    rng = np.random.default_rng(7)
    for _ in range(60):
        code1, code2, ident, weld_type = random_weld_case(rng)
        merged = weld(code1, code2, ident, weld_type)
        assert groups_equal(merged, weld_oracle(code1, code2, ident, weld_type))
        assert encoded_qubits(merged) == 0


def test_weld_is_symmetric_up_to_relabeling():
    rng = np.random.default_rng(11)
    for _ in range(6):
        code1, code2, ident, weld_type = random_weld_case(rng, max_side=8)
        pairing = QubitIdentification(tuple(tuple(p) for p in ident))
        forward = weld(code1, code2, pairing, weld_type)
        backward = weld(code2, code1, pairing.swapped(), weld_type)
        assert forward.n == backward.n

        lay_f = welded_operator_trace(forward).layout
        lay_b = welded_operator_trace(backward).layout
        perm = [0] * forward.n
        for i, q in enumerate(lay_b.embed2):
            perm[q] = lay_f.embed1[i]
        for j, q in enumerate(lay_b.embed1):
            perm[q] = lay_f.embed2[j]
        assert groups_equal(permute_qubits(backward, perm), forward)


def test_unmatched_generator_is_rejected_with_witness():
    touching = build_two_qubit()
    bare = CssCode(GeneratingSet(2, [[1, 0], [0, 1]], []))
    with pytest.raises(WeldError) as exc:
        weld(touching, bare, [(1, 0)], "z")
    assert exc.value.check == "well_matched"
    witness = exc.value.witness
    assert witness["side"] == 1 and witness["index"] == 0
    assert "Z" in witness["shared_restriction"]


def test_dependent_weld_restrictions_are_rejected():
    # independent in full, but rank two once restricted to the weld
    rows = np.array(
        [
            [0, 1, 1, 0, 0, 0],
            [1, 0, 0, 1, 0, 0],
            [1, 1, 0, 0, 1, 0],
        ],
        dtype=np.uint8,
    )
    kernel = gf2.null_space(rows)
    left = CssCode(GeneratingSet(6, rows, kernel))
    right = CssCode(GeneratingSet(6, rows.copy(), kernel.copy()))
    with pytest.raises(WeldError) as exc:
        weld(left, right, [(0, 0), (1, 1)], "x")
    assert exc.value.check == "weld_independence"
    assert exc.value.witness is not None
    assert "subset" in exc.value.witness and "product" in exc.value.witness


def test_welding_a_code_to_itself_is_rejected():
    twin = build_two_qubit()
    with pytest.raises(WeldError) as exc:
        weld(twin, twin, [(0, 0)], "z")
    assert exc.value.check == "self_weld"
    # two equal but distinct objects are fine
    merged = weld(build_two_qubit(), build_two_qubit(), [(0, 0)], "z")
    assert merged.n == 3


def test_inputs_must_encode_nothing():
    surface = build_surface(SurfaceSpec(2, 2))
    with pytest.raises(ValidationError) as exc:
        weld(surface, build_two_qubit(), [(0, 0)], "z")
    assert not isinstance(exc.value, WeldError)


def test_weld_type_is_checked():
    with pytest.raises(ValidationError):
        weld(build_two_qubit(), build_two_qubit(), [(0, 0)], "y")


def test_contract_layout_and_embeddings():
    layout, set1, set2 = contract(build_two_qubit(), build_two_qubit(), [(1, 0)])
    assert (layout.n, layout.embed1, layout.embed2) == (3, (0, 1), (1, 2))
    assert layout.shared == (1,)
    assert set1.z_rows.tolist() == [[1, 1, 0]]
    assert set2.z_rows.tolist() == [[0, 1, 1]]
    assert layout.shared_mask().tolist() == [0, 1, 0]
    op = layout.embed_operator(parse_operator("XZ"), 2)
    assert op == parse_operator("IXZ")


def test_contract_range_checks():
    with pytest.raises(ValidationError):
        contract(build_two_qubit(), build_two_qubit(), [(5, 0)])
    with pytest.raises(ValidationError):
        contract(build_two_qubit(), build_two_qubit(), [(0, 5)])


def test_parse_identification_accepts_comments_and_blanks():
    ident = parse_identification("0 3\n# full line comment\n2 1  # trailing\n\n")
    assert ident.pairs == ((0, 3), (2, 1))


def test_parse_identification_rejects_malformed():
    with pytest.raises(ValidationError):
        parse_identification("0 1 2\n")
    with pytest.raises(ValidationError):
        parse_identification("0 x\n")
    with pytest.raises(ValidationError):
        parse_identification("0 1\n0 2\n")
    with pytest.raises(ValidationError):
        parse_identification("0 1\n2 1\n")
