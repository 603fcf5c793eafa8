import pytest

from weldkit.ising import MAX_SPINS, spin_flip_barrier


def path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def star_edges(leaves):
    return [(0, i + 1) for i in range(leaves)]


def grid_edges(a, b):
    edges = []
    for x in range(a):
        for y in range(b):
            if x + 1 < a:
                edges.append((x * b + y, (x + 1) * b + y))
            if y + 1 < b:
                edges.append((x * b + y, x * b + y + 1))
    return edges


def all_spins(n):
    return (1 << n) - 1


def test_chains_cost_one_domain_wall():
    for n in range(2, 7):
        assert spin_flip_barrier(n, path_edges(n), all_spins(n)) == 1


def test_stars_cost_half_the_leaves():
    assert spin_flip_barrier(3, star_edges(2), all_spins(3)) == 1
    assert spin_flip_barrier(4, star_edges(3), all_spins(4)) == 2
    assert spin_flip_barrier(6, star_edges(5), all_spins(6)) == 3


def test_square_grids():
    assert spin_flip_barrier(4, grid_edges(2, 2), all_spins(4)) == 2
    assert spin_flip_barrier(6, grid_edges(2, 3), all_spins(6)) == 3
    assert spin_flip_barrier(9, grid_edges(3, 3), all_spins(9)) == 4


def test_endpoints_count_toward_the_peak():
    # flipping only the hub leaves every bond frustrated at the target
    assert spin_flip_barrier(4, star_edges(3), 0b0001) == 3


def test_same_start_and_target_is_free():
    assert spin_flip_barrier(5, path_edges(5), 0) == 0
    mask = 0b00110
    assert spin_flip_barrier(5, path_edges(5), mask, start_mask=mask) == 2


def test_input_validation():
    with pytest.raises(ValueError):
        spin_flip_barrier(0, [], 0)
    with pytest.raises(ValueError):
        spin_flip_barrier(MAX_SPINS + 1, [], 0)
    with pytest.raises(ValueError):
        spin_flip_barrier(3, [(0, 3)], 0)
    with pytest.raises(ValueError):
        spin_flip_barrier(3, [(1, 1)], 0)
    with pytest.raises(ValueError):
        spin_flip_barrier(3, [], 1 << 3)
