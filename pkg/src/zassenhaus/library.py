"""Constructors for small groups and the standard corpus.

Metacyclic groups use the presentation

    <a, b | a^n = 1, b^m = a^t, b a b^-1 = a^r>

with elements ``a^i b^j`` (``0 <= i < n``, ``0 <= j < m``) stored at index
``j*n + i``.  It requires ``r^m = 1 (mod n)`` and ``t*r = t (mod n)``.
"""
from __future__ import annotations

import itertools

import numpy as np

from .groups import GroupTable, from_permutations, from_table


def metacyclic(n: int, m: int, r: int, t: int = 0, name: str = "") -> GroupTable:
    r %= n if n > 1 else 1
    if n > 1 and (pow(r, m, n) != 1 % n or (t * r - t) % n):
        raise ValueError("inconsistent metacyclic parameters")
    rp = [pow(r, j, n) if n > 1 else 0 for j in range(m)]
    N = n * m
    table = np.empty((N, N), dtype=np.int64)
    for j, i, l, k in itertools.product(range(m), range(n), range(m), range(n)):
        # a^i b^j a^k b^l = a^(i + k r^j) b^(j + l)
        e = i + k * rp[j]
        jj = j + l
        if jj >= m:
            jj -= m
            e += t
        table[j * n + i, l * n + k] = jj * n + (e % n if n else 0)
    return from_table(table, name=name, check=True)


def cyclic(n: int) -> GroupTable:
    return metacyclic(n, 1, 1, 0, name=f"C{n}") if n > 1 else from_table([[0]], name="C1")


def dihedral(order: int) -> GroupTable:
    n = order // 2
    return metacyclic(n, 2, -1, 0, name=f"D{order}")


def dicyclic(order: int) -> GroupTable:
    """Generalised quaternion / dicyclic group of the given order (4k)."""
    n = order // 2
    name = "Q8" if order == 8 else ("Q16" if order == 16 else f"Dic{order}")
    return metacyclic(n, 2, -1, n // 2, name=name)


def direct_product(G: GroupTable, H: GroupTable, name: str = "") -> GroupTable:
    g, h = G.order, H.order
    # (a, b) at index a*h + b
    a = np.arange(g * h) // h
    b = np.arange(g * h) % h
    table = G.mul[a[:, None], a[None, :]] * h + H.mul[b[:, None], b[None, :]]
    return from_table(table, name=name or f"{G.name}x{H.name}", check=False)


def semidirect(H: GroupTable, images: dict[int, int], gens: list[int], m: int,
               name: str = "") -> GroupTable:
    """``H`` extended by ``C_m`` acting through the automorphism fixed by ``images``.

    ``images`` maps each generator in ``gens`` to its image; the automorphism
    must have order dividing ``m``.  Element ``(h, c^j)`` sits at ``j*|H| + h``.
    """
    n = H.order
    # extend the generator map to all of H by closure
    phi = {0: 0}
    for g in gens:
        phi[g] = images[g]
    frontier = list(phi)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(H.mul[x, g])
                img = int(H.mul[phi[x], phi[g]])
                if y not in phi:
                    phi[y] = img
                    nxt.append(y)
                elif phi[y] != img:
                    raise ValueError("images do not define a homomorphism")
        frontier = nxt
    if len(phi) != n or len(set(phi.values())) != n:
        raise ValueError("images do not define an automorphism")
    aut = np.array([phi[x] for x in range(n)], dtype=np.int64)
    powers = [np.arange(n)]
    for _ in range(1, m + 1):
        powers.append(aut[powers[-1]])
    if not np.array_equal(powers[m], powers[0]):
        raise ValueError("automorphism order does not divide m")
    N = n * m
    table = np.empty((N, N), dtype=np.int64)
    for j in range(m):
        pj = powers[j]
        for l in range(m):
            jj = (j + l) % m
            # (h1, c^j)(h2, c^l) = (h1 * c^j h2 c^-j, c^(j+l))
            table[j * n:(j + 1) * n, l * n:(l + 1) * n] = jj * n + H.mul[:, pj][:, :]
    return from_table(table, name=name, check=True)


def symmetric3() -> GroupTable:
    return from_permutations([[(1, 2, 3)], [(1, 2)]], 3, name="S3")


def alternating4() -> GroupTable:
    return from_permutations([[(1, 2, 3)], [(1, 2), (3, 4)]], 4, name="A4")


def small_groups() -> dict[str, GroupTable]:
    """All 42 groups of order at most 16, one representative each."""
    C = cyclic
    g: dict[str, GroupTable] = {}
    for n in range(1, 17):
        g[f"C{n}"] = C(n)
    g["C2xC2"] = direct_product(C(2), C(2), "C2xC2")
    g["S3"] = symmetric3()
    g["C4xC2"] = direct_product(C(4), C(2), "C4xC2")
    g["C2^3"] = direct_product(g["C2xC2"], C(2), "C2^3")
    g["D8"] = dihedral(8)
    g["Q8"] = dicyclic(8)
    g["C3xC3"] = direct_product(C(3), C(3), "C3xC3")
    g["D10"] = dihedral(10)
    g["C6xC2"] = direct_product(C(6), C(2), "C6xC2")
    g["D12"] = dihedral(12)
    g["Dic12"] = dicyclic(12)
    g["A4"] = alternating4()
    g["D14"] = dihedral(14)
    g["C4xC4"] = direct_product(C(4), C(4), "C4xC4")
    g["C8xC2"] = direct_product(C(8), C(2), "C8xC2")
    g["C4xC2^2"] = direct_product(g["C4xC2"], C(2), "C4xC2^2")
    g["C2^4"] = direct_product(g["C2^3"], C(2), "C2^4")
    g["D8xC2"] = direct_product(g["D8"], C(2), "D8xC2")
    g["Q8xC2"] = direct_product(g["Q8"], C(2), "Q8xC2")
    g["C4:C4"] = metacyclic(4, 4, -1, 0, name="C4:C4")
    g["M16"] = metacyclic(8, 2, 5, 0, name="M16")
    g["D16"] = dihedral(16)
    g["SD16"] = metacyclic(8, 2, 3, 0, name="SD16")
    g["Q16"] = dicyclic(16)
    H = g["C4xC2"]          # x = (1,0) at index 2, y = (0,1) at index 1
    x, y = 2, 1
    xy = int(H.mul[x, y])
    x2y = int(H.mul[H.mul[x, x], y])
    g["C2^2:C4"] = semidirect(H, {x: xy, y: y}, [x, y], 2, name="C2^2:C4")
    g["C4oD8"] = semidirect(H, {x: x, y: x2y}, [x, y], 2, name="C4oD8")
    return g


def extra_groups() -> dict[str, GroupTable]:
    """Named groups beyond order 16 used by the acceptance suite."""
    s3 = symmetric3()
    return {
        "C7:C3": metacyclic(7, 3, 2, 0, name="C7:C3"),
        "S3xC2xC2": direct_product(direct_product(s3, cyclic(2)), cyclic(2), "S3xC2xC2"),
    }


def corpus() -> dict[str, GroupTable]:
    out = small_groups()
    out.update(extra_groups())
    return out
