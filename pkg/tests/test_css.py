import numpy as np
import pytest

from weldkit.builders import SurfaceSpec, build_repetition, build_surface, build_two_qubit
from weldkit.css import (
    CssCode,
    GeneratingSet,
    LogicalClass,
    anticommuting_partner,
    distance,
    dumps,
    encoded_qubits,
    fold_logical,
    from_text,
    groups_equal,
    loads,
    permute_qubits,
    promote_to_logical,
    syndrome,
    to_json_dict,
    to_text,
    validate,
    validate_or_raise,
)
from weldkit.errors import ValidationError
from weldkit.pauli import PauliOperator, multiply, parse_operator


def steane_like_block():
    # the three-qubit phase-flip group as a plain generating set
    return GeneratingSet(3, [[1, 1, 0], [0, 1, 1]], [])


def test_validate_flags_anticommuting_rows():
    bad = GeneratingSet(2, [[1, 0]], [[1, 0]])
    violation = validate(bad)
    assert violation is not None
    assert violation.x_index == 0 and violation.z_index == 0
    with pytest.raises(ValidationError):
        validate_or_raise(bad)
    assert validate(GeneratingSet(2, [[1, 1]], [[1, 1]])) is None


def test_encoded_qubits_counts_rank_deficit():
    assert encoded_qubits(CssCode(steane_like_block())) == 1
    assert encoded_qubits(build_two_qubit()) == 0
    assert encoded_qubits(build_surface(SurfaceSpec(2, 2))) == 1


def test_syndrome_is_linear():
    code = build_surface(SurfaceSpec(2, 2))
    rng = np.random.default_rng(1)
    for _ in range(100):
        a = PauliOperator(
            code.n,
            rng.integers(0, 2, size=code.n, dtype=np.uint8),
            rng.integers(0, 2, size=code.n, dtype=np.uint8),
        )
        b = PauliOperator(
            code.n,
            rng.integers(0, 2, size=code.n, dtype=np.uint8),
            rng.integers(0, 2, size=code.n, dtype=np.uint8),
        )
        sa, sb = syndrome(code, a), syndrome(code, b)
        sab = syndrome(code, multiply(a, b))
        assert set(sab.violated_x) == set(sa.violated_x) ^ set(sb.violated_x)
        assert set(sab.violated_z) == set(sa.violated_z) ^ set(sb.violated_z)


def test_groups_equal_ignores_presentation():
    a = CssCode(GeneratingSet(3, [[1, 1, 0], [0, 1, 1]], [[1, 1, 1]]))
    b = CssCode(GeneratingSet(3, [[1, 1, 0], [1, 0, 1]], [[1, 1, 1]]))
    c = CssCode(GeneratingSet(3, [[1, 1, 0]], [[1, 1, 1]]))
    assert groups_equal(a, b)
    assert not groups_equal(a, c)


def test_promote_and_fold_round_trip():
    code = CssCode(
        GeneratingSet(3, [[1, 1, 0], [0, 1, 1], [1, 0, 1]], [[1, 1, 1]])
    )
    promoted = promote_to_logical(code, "z", 0)
    assert encoded_qubits(promoted) == 1
    assert len(promoted.logicals) == 1
    assert promoted.logicals[0].z_rep == parse_operator("ZZZ")
    folded = fold_logical(promoted, 0, "z")
    assert encoded_qubits(folded) == 0
    assert groups_equal(folded, code)


def test_promote_rejects_dependent_row_removal():
    # the x rows sum to zero, so dropping any one leaves the group intact
    code = CssCode(
        GeneratingSet(3, [[1, 1, 0], [0, 1, 1], [1, 0, 1]], [[1, 1, 1]])
    )
    with pytest.raises(ValidationError):
        promote_to_logical(code, "x", 0)
    with pytest.raises(ValidationError):
        promote_to_logical(code, "q", 0)


def test_promote_accepts_explicit_partner_only_if_valid():
    code = CssCode(
        GeneratingSet(3, [[1, 1, 0], [0, 1, 1], [1, 0, 1]], [[1, 1, 1]])
    )
    partner = PauliOperator.from_support(3, x=(0,))
    promoted = promote_to_logical(code, "z", 0, partner)
    assert promoted.logicals[0].x_rep == partner
    commuting = PauliOperator.from_support(3, x=(0, 1))
    with pytest.raises(ValidationError):
        promote_to_logical(code, "z", 0, commuting)


def test_anticommuting_partner_properties():
    code = build_surface(SurfaceSpec(2, 2))
    rep = code.logicals[0].z_rep
    partner = anticommuting_partner(code, rep)
    assert partner.is_x_type
    assert int(partner.x_bits @ rep.z_bits) % 2 == 1
    assert not ((code.z_rows @ partner.x_bits) % 2).any()


def test_distance_of_known_codes():
    rep = build_repetition(3)
    dx, dz = distance(rep)
    assert (dx, dz) == (1, 3)
    surf = build_surface(SurfaceSpec(2, 2))
    assert distance(surf) == (3, 2)
    square = build_surface(SurfaceSpec(2, 3))
    assert square.n == 13
    assert distance(square) == (3, 3)


def test_permute_qubits_preserves_structure():
    code = build_surface(SurfaceSpec(2, 2))
    rng = np.random.default_rng(9)
    perm = tuple(int(i) for i in rng.permutation(code.n))
    moved = permute_qubits(code, perm)
    assert validate(moved) is None
    assert encoded_qubits(moved) == 1
    back = tuple(perm.index(i) for i in range(code.n))
    assert groups_equal(permute_qubits(moved, back), code)


def test_text_round_trip():
    code = build_surface(SurfaceSpec(2, 2))
    text = to_text(code)
    assert text.splitlines()[0] == f"n={code.n} k=1"
    again = from_text(text)
    assert groups_equal(again, code)
    assert again.logicals[0].x_rep == code.logicals[0].x_rep
    assert again.logicals[0].z_rep == code.logicals[0].z_rep


def test_json_round_trip():
    code = build_repetition(4)
    data = to_json_dict(code)
    assert set(data) >= {"n", "x_gens", "z_gens", "logical_x", "logical_z"}
    again = loads(dumps(code, "json"))
    assert groups_equal(again, code)
    assert again.logicals == code.logicals


def test_loads_detects_format():
    code = build_two_qubit()
    assert groups_equal(loads(dumps(code, "text")), code)
    assert groups_equal(loads(dumps(code, "json")), code)


def test_from_text_rejects_malformed():
    with pytest.raises(ValidationError):
        from_text("n=two k=0\n")
    with pytest.raises(ValidationError):
        from_text("n=2 k=0\nX: XX\nQ: ZZ\n")
    with pytest.raises(ValidationError):
        from_text("n=2 k=0\nX: XXX\n")
