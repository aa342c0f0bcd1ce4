"""Abelian subgroups: invariant-factor bases, linear characters, kernels.

Also builds the admissible kernel family: subgroups ``K`` of an abelian
normal ``N`` with ``N/K`` cyclic that contain no non-trivial normal subgroup
of ``G``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from . import groups
from .cyclotomic import CycNumber, root_of_unity
from .groups import GroupTable, Subgroup


@dataclass(frozen=True, eq=False)
class AbelianBasis:
    group: Subgroup
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    coords: dict

    @property
    def exponent(self) -> int:
        return self.orders[-1] if self.orders else 1

    def element(self, exps) -> int:
        G = self.group.parent
        x = 0
        for g, e in zip(self.generators, exps):
            x = int(G.mul[x, G.power(g, e)])
        return x


@dataclass(frozen=True, eq=False)
class LinearCharacter:
    basis: AbelianBasis
    exponents: tuple[int, ...]

    def value_exp(self, n: int) -> int:
        """``k`` with ``psi(n) = z_E^k``, where ``E`` is the exponent of the group."""
        E = self.basis.exponent
        a = self.basis.coords[n]
        return sum(e * x * (E // o) for e, x, o in zip(self.exponents, a, self.basis.orders)) % E

    def __call__(self, n: int) -> CycNumber:
        return root_of_unity(self.basis.exponent, self.value_exp(n))

    @cached_property
    def order(self) -> int:
        return math.lcm(1, *(o // math.gcd(o, e) for e, o in zip(self.exponents, self.basis.orders)))

    def __repr__(self):
        return f"LinearCharacter{self.exponents}"


def _as_subgroup(N) -> Subgroup:
    return groups.whole(N) if isinstance(N, GroupTable) else N


def abelian_basis(N) -> AbelianBasis:
    """Invariant-factor basis, picking maximal-order elements greedily (least index first)."""
    N = _as_subgroup(N)
    if not N.is_abelian():
        raise ValueError("abelian_basis needs an abelian group")
    G = N.parent
    S = groups.trivial(G)
    picked: list[tuple[int, int]] = []
    while S.order < N.order:
        best, best_e = None, 0
        for x in N.members:
            e, y = 1, x
            while y not in S:
                y = int(G.mul[y, x])
                e += 1
            if e > best_e:
                best, best_e = x, e
        y = next((int(G.mul[best, s]) for s in S.members
                  if int(G.elt_order[G.mul[best, s]]) == best_e), None)
        if y is None:  # pragma: no cover - excluded by the structure theorem
            raise AssertionError("greedy basis construction failed")
        picked.append((y, best_e))
        S = groups.closure(G, [g for g, _ in picked])
    picked.reverse()
    gens = tuple(g for g, _ in picked)
    orders = tuple(e for _, e in picked)
    coords = {}
    for exps in itertools.product(*(range(o) for o in orders)):
        x = 0
        for g, e in zip(gens, exps):
            x = int(G.mul[x, G.power(g, e)])
        coords[x] = exps
    if len(coords) != N.order:  # pragma: no cover
        raise AssertionError("basis does not express every element uniquely")
    return AbelianBasis(N, gens, orders, coords)


def linear_characters(N) -> list[LinearCharacter]:
    B = N if isinstance(N, AbelianBasis) else abelian_basis(N)
    return [LinearCharacter(B, e) for e in itertools.product(*(range(o) for o in B.orders))]


def kernel_of(psi: LinearCharacter) -> Subgroup:
    N = psi.basis.group
    return Subgroup(N.parent, tuple(n for n in N.members if psi.value_exp(n) == 0))


def cyclic_kernels(N) -> list[Subgroup]:
    """All ``K <= N`` with ``N/K`` cyclic, i.e. all kernels of linear characters."""
    seen = {kernel_of(psi) for psi in linear_characters(N)}
    return sorted(seen, key=lambda K: (K.order, K.members))


@dataclass(frozen=True, eq=False)
class AdmissibleKernel:
    kernel: Subgroup
    psi: LinearCharacter
    class_id: int
    class_rep: Subgroup

    @property
    def index(self) -> int:
        """``[N:K]``; the values of ``psi`` generate ``Q(z_[N:K])``."""
        return self.psi.basis.group.order // self.kernel.order


def _meets_trivially(A: Subgroup, K: Subgroup) -> bool:
    return not any(k != 0 and k in A for k in K.members)


def admissible_kernels(G: GroupTable, N: Subgroup, A: Subgroup | None = None,
                       direct: bool = False) -> list[AdmissibleKernel]:
    """The admissible kernel family of ``N``, each with its chosen character.

    With a cyclic normal ``A`` containing ``G'`` the test is ``A & K = Z(G) & K = 1``;
    otherwise (or with ``direct=True``) ``K`` is checked against every normal
    subgroup of ``G``.
    """
    if not (N.is_abelian() and groups.is_normal(G, N)):
        raise ValueError("N must be an abelian normal subgroup")
    chars = linear_characters(N)
    if A is not None and not direct:
        Z = groups.center(G)

        def ok(K):
            return _meets_trivially(A, K) and _meets_trivially(Z, K)
    else:
        nontrivial = [M for M in groups.normal_subgroups(G) if M.order > 1]

        def ok(K):
            return not any(M.issubset(K) for M in nontrivial)

    family = [K for K in cyclic_kernels(N) if ok(K)]
    reps: dict[tuple, int] = {}
    rep_of = []
    for K in family:
        orbit = {groups.conjugate_set(G, K.members, x) for x in range(G.order)}
        rep = min(orbit)
        rep_of.append(rep)
        reps.setdefault(rep, 0)
    order = sorted(reps)
    out = []
    for K, rep in zip(family, rep_of):
        psi = next(p for p in chars if kernel_of(p) == K)
        out.append(AdmissibleKernel(K, psi, order.index(rep), Subgroup(G, rep)))
    return out


def nucleos_check(G: GroupTable, N: Subgroup, A: Subgroup) -> tuple[int, bool]:
    """Check ``|K| = |N|/exp(N)`` for every admissible ``K`` and ``|family| <= |N|/exp(N)``."""
    if not (A.is_cyclic() and A.issubset(N) and N.is_abelian()
            and groups.derived_subgroup(G).issubset(A)):
        raise ValueError("need A cyclic with G' <= A <= N and N abelian")
    exp_n = math.lcm(*(int(G.elt_order[n]) for n in N.members))
    bound = N.order // exp_n
    fam = admissible_kernels(G, N, A)
    ok = all(k.kernel.order == bound for k in fam) and len(fam) <= bound
    return bound, ok
