"""Slow reference computations used to cross-check the main pipeline.

Everything here takes a different route from the production code: induced
values by summing over all of ``G``, eigenvalue multiplicities by decomposing
monomial matrices into cycles, traces of the regular representation by
building the matrix of left multiplication.  Roots of unity are handled as
exact ``(n, k)`` pairs meaning ``z_n^k``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import groups
from .abelian import LinearCharacter
from .characters import k_induced_family
from .cyclotomic import ZERO, CycNumber, root_of_unity, totient
from .groups import GroupTable, Subgroup, conjugacy_data


def _reduce(n: int, k: int) -> tuple[int, int]:
    k %= n
    g = math.gcd(n, k)
    return n // g, k // g


def induced_value_direct(G: GroupTable, N: Subgroup, psi: LinearCharacter, g: int) -> CycNumber:
    """``(1/|N|) sum_{x in G, x g x^-1 in N} psi(x g x^-1)``."""
    total = ZERO
    for x in range(G.order):
        y = G.conj(g, x)
        if y in N:
            total = total + psi(y)
    return total.scale(Fraction(1, N.order))


@dataclass(frozen=True)
class MonomialMatrix:
    """Column ``j`` has its single nonzero entry ``z_n^k`` in row ``perm[j]``."""
    perm: tuple[int, ...]
    roots: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.perm)

    @property
    def entries(self) -> tuple[CycNumber, ...]:
        return tuple(root_of_unity(n, k) for n, k in self.roots)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        # (self @ other) e_j = self(r_j e_{other.perm[j]})
        perm, roots = [], []
        for j in range(other.dim):
            i = other.perm[j]
            n1, k1 = other.roots[j]
            n2, k2 = self.roots[i]
            n = math.lcm(n1, n2)
            perm.append(self.perm[i])
            roots.append(_reduce(n, k1 * (n // n1) + k2 * (n // n2)))
        return MonomialMatrix(tuple(perm), tuple(roots))

    def trace(self) -> CycNumber:
        total = ZERO
        for j, i in enumerate(self.perm):
            if i == j:
                total = total + root_of_unity(*self.roots[j])
        return total

    def cycles(self) -> list[tuple[int, tuple[int, int]]]:
        """``(length, product of entries)`` for every cycle of the permutation."""
        seen = [False] * self.dim
        out = []
        for s in range(self.dim):
            if seen[s]:
                continue
            n, k, length, j = 1, 0, 0, s
            while not seen[j]:
                seen[j] = True
                n2, k2 = self.roots[j]
                L = math.lcm(n, n2)
                n, k = _reduce(L, k * (L // n) + k2 * (L // n2))
                length += 1
                j = self.perm[j]
            out.append((length, (n, k)))
        return out


def coset_transversal(G: GroupTable, N: Subgroup) -> list[int]:
    """Least element of each left coset ``tN``, in increasing order."""
    seen, reps = set(), []
    for t in range(G.order):
        if t in seen:
            continue
        reps.append(t)
        seen.update(int(G.mul[t, n]) for n in N.members)
    return reps


def _coset_index(G: GroupTable, N: Subgroup, T: list[int]) -> dict[int, tuple[int, int]]:
    """Map each element to ``(i, n)`` with ``element = t_i n``."""
    out = {}
    for i, t in enumerate(T):
        for n in N.members:
            out[int(G.mul[t, n])] = (i, n)
    return out


def monomial_rep(G: GroupTable, N: Subgroup, psi: LinearCharacter) -> dict[int, MonomialMatrix]:
    """Induced representation on the least-index transversal: ``g t_j = t_i n``."""
    T = coset_transversal(G, N)
    where = _coset_index(G, N, T)
    E = psi.basis.exponent
    out = {}
    for g in range(G.order):
        perm, roots = [], []
        for t in T:
            i, n = where[int(G.mul[g, t])]
            perm.append(i)
            roots.append(_reduce(E, psi.value_exp(n)))
        out[g] = MonomialMatrix(tuple(perm), tuple(roots))
    return out


def eigen_mults_cycles(M: MonomialMatrix, alpha: tuple[int, int]) -> int:
    """Multiplicity of ``z_n^k`` as an eigenvalue of ``M``.

    A cycle of length ``l`` with entry product ``beta`` has as eigenvalues the
    ``l`` distinct ``l``-th roots of ``beta``.
    """
    n, k = alpha
    count = 0
    for length, (bn, bk) in M.cycles():
        # (z_n^k)^l == z_bn^bk
        L = math.lcm(n, bn)
        if (k * length * (L // n) - bk * (L // bn)) % L == 0:
            count += 1
    return count


def epsilon_traza_sides(G: GroupTable, N: Subgroup, r: Mapping[int, int], x: int) -> tuple[int, int]:
    """Both sides of ``eps_x^N(tr rho_N(r)) = [C_G(x):C_N(x)] eps_x^G(r)``."""
    if x not in N:
        raise ValueError("x must lie in N")
    T = coset_transversal(G, N)
    where = _coset_index(G, N, T)
    # trace of rho_N(r): diagonal entries, as a coefficient map on N
    trace: dict[int, int] = {}
    for g, c in r.items():
        for j, t in enumerate(T):
            i, n = where[int(G.mul[g, t])]
            if i == j:
                trace[n] = trace.get(n, 0) + c
    x_in_N = {G.conj(x, y) for y in N.members}
    lhs = sum(trace.get(n, 0) for n in x_in_N)
    x_in_G = {G.conj(x, y) for y in range(G.order)}
    cg = sum(1 for y in range(G.order) if G.conj(x, y) == x)
    cn = sum(1 for y in N.members if G.conj(x, y) == x)
    rhs = (cg // cn) * sum(c for g, c in r.items() if g in x_in_G)
    return lhs, rhs


def epsilon_traza_check(G: GroupTable, N: Subgroup, r: Mapping[int, int], x: int) -> bool:
    lhs, rhs = epsilon_traza_sides(G, N, r, x)
    return lhs == rhs


def random_sparse_element(G: GroupTable, rng: random.Random, support: int = 6,
                          lo: int = -3, hi: int = 3) -> dict[int, int]:
    size = rng.randint(1, min(support, G.order))
    elts = rng.sample(range(G.order), size)
    return {g: rng.choice([v for v in range(lo, hi + 1) if v]) for g in elts}


def subgroup_enum(N: Subgroup, limit: int = 64) -> list[Subgroup]:
    """Every subgroup of ``N``, built by joining cyclic subgroups until closed."""
    if N.order > limit:
        raise ValueError(f"subgroup enumeration limited to order {limit}")
    G = N.parent
    cyclic = {groups.closure(G, [x]).members for x in N.members}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for H in frontier:
            for C in cyclic:
                if set(C) <= set(H):
                    continue
                J = groups.closure(G, list(H) + list(C)).members
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    return sorted((Subgroup(G, m) for m in found), key=lambda H: (H.order, H.members))


# --------------------------------------------------------------------------
# replay of the multiplicity identities on group elements

@dataclass
class ReplayReport:
    group: str
    checked: int = 0
    skipped: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def identity_replay(G: GroupTable, A: Subgroup | None = None) -> ReplayReport:
    """Evaluate both multiplicity identities on every admissible ``(g, x, h)``.

    Subjects are group elements ``g`` outside ``D`` (so the image of ``g`` in
    ``G/D`` is nontrivial), paired with every ``x`` in ``D`` with ``x^|g| = 1``.
    """
    rep = ReplayReport(G.name)
    A = A or groups.cyclic_normal_witness(G)
    if A is None:
        return rep
    D = groups.compute_D(G, A)
    family = k_induced_family(G, D, A)
    if not family:
        return rep
    cd = conjugacy_data(G)
    Q, proj = groups.quotient(G, D)
    mats = [monomial_rep(G, D, k.psi) for k in family]
    E = family[0].psi.basis.exponent

    def psi_root(k, y):
        return _reduce(E, k.psi.value_exp(y))

    by_class: dict[int, list[int]] = {}
    for i, k in enumerate(family):
        by_class.setdefault(k.class_id, []).append(i)

    for g in range(G.order):
        if g in D:
            rep.skipped += 1
            continue
        m = int(G.elt_order[g])
        f = int(Q.elt_order[proj[g]])
        y = G.power(g, f)
        for x in D.members:
            if G.power(x, m) != 0:
                continue
            eps_x = 1 if cd.class_of[x] == cd.class_of[g] else 0
            cx = cd.centralizer_order[int(cd.class_of[x])]
            lhs = sum(totient(k.index) * eigen_mults_cycles(M[g], psi_root(k, x))
                      for k, M in zip(family, mats))
            for h in groups.divisors(f)[1:]:
                gh, xh = G.power(g, h), G.power(x, h)
                tail = sum(totient(k.index) * eigen_mults_cycles(M[gh], psi_root(k, xh))
                           for k, M in zip(family, mats))
                rhs = Fraction(totient(m) * cx * eps_x, m) + Fraction(tail, h)
                rep.checked += 1
                if lhs != rhs:
                    rep.mismatches.append({"identity": "trace-multiplicity", "g": g, "x": x,
                                           "h": h, "lhs": str(lhs), "rhs": str(rhs)})
            xf = G.power(x, f)
            cy = sum(1 for t in range(G.order) if G.conj(y, t) == y)
            y_class = {G.conj(y, t) for t in range(G.order)}
            for cid, members in sorted(by_class.items()):
                lhs3 = sum(eigen_mults_cycles(mats[i][y], psi_root(family[i], xf)) for i in members)
                KC = family[members[0]].class_rep
                norm = len(groups.normalizer(G, KC).members)
                u_c = 0
                for t in range(G.order):
                    Kt = {G.conj(kk, t) for kk in KC.members}
                    if any(int(G.mul[z, kk]) == xf for z in y_class for kk in Kt):
                        u_c += 1
                rhs3 = Fraction(cy // D.order * u_c, norm)
                rep.checked += 1
                if lhs3 != rhs3:
                    rep.mismatches.append({"identity": "class-multiplicity", "g": g, "x": x,
                                           "class": cid, "lhs": str(lhs3), "rhs": str(rhs3)})
    return rep
