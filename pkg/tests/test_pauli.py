import numpy as np
import pytest

from weldkit.errors import ValidationError
from weldkit.pauli import (
    DENSE_LIMIT,
    PauliOperator,
    commutes,
    format_operator,
    multiply,
    parse_operator,
    permute_operator,
    restrict,
    symplectic,
    weight,
)


def random_op(rng, n):
    return PauliOperator(
        n,
        rng.integers(0, 2, size=n, dtype=np.uint8),
        rng.integers(0, 2, size=n, dtype=np.uint8),
    )


def test_from_support_and_accessors():
    p = PauliOperator.from_support(5, x=(0, 2), z=(2, 4))
    assert p.x_support() == (0, 2)
    assert p.z_support() == (2, 4)
    assert p.support() == (0, 2, 4)
    assert weight(p) == 3
    assert not p.is_identity
    assert PauliOperator.identity(5).is_identity


def test_multiply_is_an_involution():
    rng = np.random.default_rng(2)
    for _ in range(300):
        p = random_op(rng, 8)
        assert multiply(p, p).is_identity
        q = random_op(rng, 8)
        assert multiply(multiply(p, q), q) == p


def test_commutes_matches_symplectic_form():
    rng = np.random.default_rng(7)
    for _ in range(300):
        p, q = random_op(rng, 6), random_op(rng, 6)
        overlap = int(np.sum(p.x_bits & q.z_bits) + np.sum(p.z_bits & q.x_bits)) % 2
        assert symplectic(p, q) == overlap
        assert commutes(p, q) == (overlap == 0)


def test_restriction_is_multiplicative():
    rng = np.random.default_rng(13)
    for _ in range(300):
        p, q = random_op(rng, 10), random_op(rng, 10)
        support = tuple(int(i) for i in rng.permutation(10)[: rng.integers(1, 10)])
        left = restrict(multiply(p, q), support)
        right = multiply(restrict(p, support), restrict(q, support))
        assert left == right


def test_parse_format_round_trip_dense():
    for text in ("XXIZZ", "IIIII", "XZXZX", "YY"):
        p = parse_operator(text)
        assert format_operator(p) == text.replace("Y", "Y")
        assert parse_operator(format_operator(p)) == p


def test_parse_format_round_trip_sparse():
    p = parse_operator("n=5; X:0,1; Z:3,4")
    assert p == PauliOperator.from_support(5, x=(0, 1), z=(3, 4))
    big = PauliOperator.from_support(DENSE_LIMIT + 10, x=(0,), z=(DENSE_LIMIT,))
    text = format_operator(big)
    assert text.startswith("n=")
    assert parse_operator(text) == big


def test_format_style_override():
    p = PauliOperator.from_support(4, x=(1,))
    assert format_operator(p, style="dense") == "IXII"
    sparse = format_operator(p, style="sparse")
    assert parse_operator(sparse) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValidationError):
        parse_operator("XQX")
    with pytest.raises(ValidationError):
        parse_operator("n=3; X:7")
    with pytest.raises(ValidationError):
        parse_operator("n=x; X:0")


def test_permute_operator_moves_support():
    p = PauliOperator.from_support(4, x=(0,), z=(3,))
    perm = (2, 0, 1, 3)  # old index -> new index
    q = permute_operator(p, perm)
    assert q.x_support() == (2,)
    assert q.z_support() == (3,)


def test_permute_operator_respects_products():
    rng = np.random.default_rng(23)
    for _ in range(200):
        p, q = random_op(rng, 7), random_op(rng, 7)
        perm = tuple(int(i) for i in rng.permutation(7))
        assert permute_operator(multiply(p, q), perm) == multiply(
            permute_operator(p, perm), permute_operator(q, perm)
        )


def test_operator_equality_and_hash():
    a = PauliOperator.from_support(3, x=(1,))
    b = PauliOperator.from_support(3, x=(1,))
    c = PauliOperator.from_support(3, z=(1,))
    assert a == b and hash(a) == hash(b)
    assert a != c
    assert len({a, b, c}) == 2
