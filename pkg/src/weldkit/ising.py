"""Spin-flip barriers on small graphs by brute force.

One spin per vertex, ferromagnetic bonds on the edges: a configuration
costs its number of frustrated bonds.  spin_flip_barrier finds the
lowest peak cost over all single-flip paths between two configurations
by deepening a threshold search.  Kept free of the stabilizer
machinery on purpose, so it can serve as an independent cross-check.
"""

MAX_SPINS = 24


def spin_flip_barrier(n_spins, edges, target_mask, start_mask=0):
    """Minimal peak frustration over paths from start to target.

    Masks hold one spin per bit.  The peak is measured at every
    configuration the path visits, endpoints included.
    """
    n = int(n_spins)
    if not 0 < n <= MAX_SPINS:
        raise ValueError(f"n_spins must be in 1..{MAX_SPINS}, got {n_spins}")
    bonds = []
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"bond ({u},{v}) leaves the spin range")
        if u == v:
            raise ValueError(f"bond ({u},{v}) ties a spin to itself")
        bonds.append((u, v))
    start = int(start_mask)
    target = int(target_mask)
    if not (0 <= start < 1 << n and 0 <= target < 1 << n):
        raise ValueError("spin masks must fit in n_spins bits")

    def frustration(s):
        return sum(1 for u, v in bonds if ((s >> u) ^ (s >> v)) & 1)

    floor = max(frustration(start), frustration(target))
    for threshold in range(floor, len(bonds) + 1):
        seen = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            if s == target:
                return threshold
            for j in range(n):
                t = s ^ (1 << j)
                if t not in seen and frustration(t) <= threshold:
                    seen.add(t)
                    stack.append(t)
    raise AssertionError("flipping one frustrated bond at a time always connects")
