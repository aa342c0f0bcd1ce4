"""Finite groups as multiplication tables.

Elements are the integers ``0..n-1`` with the identity at ``0``.  Subgroups are
sorted member tuples over a parent table.  All set-valued outputs are sorted so
that reports are reproducible byte for byte.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_MAX_ORDER = 512
EXHAUSTIVE_ASSOC_LIMIT = 256


class GroupInputError(ValueError):
    """Malformed or inconsistent group description."""


class GroupTooLarge(GroupInputError):
    pass


@dataclass(frozen=True, eq=False)
class GroupTable:
    mul: np.ndarray
    inv: np.ndarray
    elt_order: np.ndarray
    name: str = ""
    provenance: str = "table-input"

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @functools.cached_property
    def key(self) -> bytes:
        return self.mul.tobytes()

    @functools.cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(k) for k in self.elt_order))

    def power(self, g: int, k: int) -> int:
        k %= int(self.elt_order[g])
        x = 0
        base = g
        while k:
            if k & 1:
                x = int(self.mul[x, base])
            base = int(self.mul[base, base])
            k >>= 1
        return x

    def conj(self, g: int, x: int) -> int:
        """``x g x^-1``."""
        return int(self.mul[self.mul[x, g], self.inv[x]])

    def commutator(self, g: int, h: int) -> int:
        """``(g, h) = g^-1 h^-1 g h``."""
        m, i = self.mul, self.inv
        return int(m[m[i[g], i[h]], m[g, h]])

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: GroupTable = field(compare=False, repr=False)
    members: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.members)

    @functools.cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def __contains__(self, g) -> bool:
        return bool(self.mask[g])

    def issubset(self, other: "Subgroup") -> bool:
        return bool(np.all(other.mask[list(self.members)]))

    def is_cyclic(self) -> bool:
        return any(int(self.parent.elt_order[g]) == self.order for g in self.members)

    def is_abelian(self) -> bool:
        mem = np.asarray(self.members)
        sub = self.parent.mul[np.ix_(mem, mem)]
        return bool(np.array_equal(sub, sub.T))


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    group: GroupTable
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    centralizer_order: tuple[int, ...]

    @property
    def rep(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def rep_order(self) -> tuple[int, ...]:
        return tuple(int(self.group.elt_order[c[0]]) for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def power_map(self, C: int, k: int) -> int:
        return int(self.class_of[self.group.power(self.classes[C][0], k)])

    @functools.cached_property
    def labels(self) -> tuple[str, ...]:
        """GAP-style names: ``1a``, ``2a``, ``2b``, ``3a`` ..."""
        out, seen = [], {}
        for o in self.rep_order:
            k = seen.get(o, 0)
            seen[o] = k + 1
            out.append(f"{o}{_letters(k)}")
        return tuple(out)


def _letters(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = chr(97 + r) + s
    return s


# --------------------------------------------------------------------------
# construction

def from_table(table: Sequence[Sequence[int]], name: str = "", provenance: str = "table-input",
               check: bool = True) -> GroupTable:
    try:
        mul = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
    except (TypeError, ValueError) as exc:
        raise GroupInputError(f"multiplication table is not an integer matrix: {exc}")
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise GroupInputError("multiplication table must be a non-empty square")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise GroupInputError("table entries out of range")
    if check:
        idx = np.arange(n)
        if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
            raise GroupInputError("element 0 must be the identity")
        for axis in (0, 1):
            if not np.all(np.sort(mul, axis=axis) == (idx[:, None] if axis == 0 else idx[None, :])):
                raise GroupInputError("table is not a Latin square")
        _check_associative(mul)
    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    orders = kernels.element_orders(mul)
    if check and (len(orders) != n or np.any(n % orders != 0)):
        raise GroupInputError("element orders inconsistent with a group")
    for a in (mul, inv, orders):
        a.setflags(write=False)
    return GroupTable(mul, inv, orders, name, provenance)


def _check_associative(mul: np.ndarray, seed: int = 0) -> None:
    n = mul.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        a, b, c = kernels.first_nonassociative(mul)
        if a >= 0:
            raise GroupInputError(f"table is not associative at ({a}, {b}, {c})")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, 10 * n * n))
    if np.any(mul[mul[a, b], c] != mul[a, mul[b, c]]):
        raise GroupInputError("table is not associative (sampled)")


def from_permutations(generators: Iterable[Sequence[Sequence[int]]], degree: int, name: str = "",
                      max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Close a set of permutations given in 1-based cycle notation."""
    gens = []
    for cycles in generators:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            pts = [int(p) - 1 for p in cyc]
            if any(p < 0 or p >= degree for p in pts):
                raise GroupInputError(f"cycle {cyc} outside 1..{degree}")
            if seen.intersection(pts) or len(set(pts)) != len(pts):
                raise GroupInputError("cycles of a generator must be disjoint")
            seen.update(pts)
            for i, p in enumerate(pts):
                img[p] = pts[(i + 1) % len(pts)]
        gens.append(tuple(img))
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elems):
        a = elems[head]
        head += 1
        for s in gens:
            b = tuple(a[s[x]] for x in range(degree))
            if b not in index:
                if len(elems) >= max_order:
                    raise GroupTooLarge(f"closure exceeds max order {max_order}")
                index[b] = len(elems)
                elems.append(b)
    P = np.asarray(elems, dtype=np.int64).reshape(len(elems), degree)
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int64)
    for g in range(n):
        prod = P[g][P]  # row h holds g∘h
        for h in range(n):
            mul[g, h] = index[tuple(prod[h])]
    return from_table(mul, name=name, provenance="permutation-input", check=False)


def load_group(document: dict, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Build a group from its JSON description (``kind`` ``perm`` or ``table``)."""
    if not isinstance(document, dict):
        raise GroupInputError("group description must be a JSON object")
    kind = document.get("kind")
    name = str(document.get("name", ""))
    if kind == "perm":
        try:
            degree = int(document["degree"])
            gens = document["generators"]
        except (KeyError, TypeError, ValueError) as exc:
            raise GroupInputError(f"perm description needs degree and generators: {exc}")
        if degree < 1 or not isinstance(gens, list):
            raise GroupInputError("bad degree or generator list")
        return from_permutations(gens, degree, name=name, max_order=max_order)
    if kind == "table":
        table = document.get("table")
        if not isinstance(table, list) or not table:
            raise GroupInputError("table description needs a non-empty 'table'")
        if len(table) > max_order:
            raise GroupTooLarge(f"order {len(table)} exceeds max order {max_order}")
        return from_table(table, name=name)
    raise GroupInputError(f"unknown group kind {kind!r}")


# --------------------------------------------------------------------------
# conjugacy

@functools.lru_cache(maxsize=None)
def conjugacy_data(G: GroupTable) -> ConjugacyData:
    label = kernels.conjugacy_labels(G.mul, G.inv)
    reps = np.unique(label)
    reps = sorted((int(G.elt_order[r]), int(r)) for r in reps)
    classes = []
    class_of = np.empty(G.order, dtype=np.int64)
    for ci, (_, r) in enumerate(reps):
        members = tuple(int(x) for x in np.flatnonzero(label == r))
        classes.append(members)
        class_of[list(members)] = ci
    class_of.setflags(write=False)
    cent = tuple(G.order // len(c) for c in classes)
    return ConjugacyData(G, tuple(classes), class_of, cent)


# --------------------------------------------------------------------------
# subgroups

def closure(G: GroupTable, elements: Iterable[int]) -> Subgroup:
    gens = tuple(sorted(set(int(e) for e in elements)))
    mask = kernels.closure_mask(G.mul, np.asarray(gens, dtype=np.int64))
    return Subgroup(G, tuple(int(x) for x in np.flatnonzero(mask)), gens)


def whole(G: GroupTable) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial(G: GroupTable) -> Subgroup:
    return Subgroup(G, (0,))


def derived_subgroup(G: GroupTable) -> Subgroup:
    comms = {G.commutator(g, h) for g in range(G.order) for h in range(G.order)}
    return closure(G, comms)


def centralizer(G: GroupTable, S: Iterable[int]) -> Subgroup:
    S = np.asarray(sorted(set(int(s) for s in S)), dtype=np.int64)
    if S.size == 0:
        return whole(G)
    ok = np.all(G.mul[:, S] == G.mul[S, :].T, axis=1)
    return Subgroup(G, tuple(int(x) for x in np.flatnonzero(ok)))


def center(G: GroupTable) -> Subgroup:
    return centralizer(G, range(G.order))


def conjugate_set(G: GroupTable, members: Iterable[int], x: int) -> tuple[int, ...]:
    return tuple(sorted({G.conj(m, x) for m in members}))


def normalizer(G: GroupTable, H: Subgroup) -> Subgroup:
    mem = np.asarray(H.members)
    keep = [x for x in range(G.order) if np.all(H.mask[G.mul[G.mul[x, mem], G.inv[x]]])]
    return Subgroup(G, tuple(keep))


def is_normal(G: GroupTable, H: Subgroup) -> bool:
    mem = np.asarray(H.members)
    conj = G.mul[G.mul[:, mem], G.inv[:, None]]
    return bool(np.all(H.mask[conj]))


@functools.lru_cache(maxsize=None)
def normal_subgroups(G: GroupTable) -> tuple[Subgroup, ...]:
    """All normal subgroups, as joins of normal closures of single classes.

    Costs one closure per class plus one per pair of found subgroups per
    round; fine for the desk-scale groups this package targets.
    """
    cd = conjugacy_data(G)
    found: dict[bytes, Subgroup] = {}
    for cls in cd.classes:
        N = closure(G, cls)
        found.setdefault(N.mask.tobytes(), N)
    frontier = list(found.values())
    while frontier:
        new = []
        current = list(found.values())
        for A in frontier:
            for B in current:
                J = closure(G, A.members + B.members)
                k = J.mask.tobytes()
                if k not in found:
                    found[k] = J
                    new.append(J)
        frontier = new
    return tuple(sorted(found.values(), key=lambda N: (N.order, N.members)))


def subgroup_as_group(S: Subgroup, name: str = "") -> GroupTable:
    mem = np.asarray(S.members)
    pos = np.full(S.parent.order, -1, dtype=np.int64)
    pos[mem] = np.arange(len(mem))
    table = pos[S.parent.mul[np.ix_(mem, mem)]]
    return from_table(table, name=name or f"sub{S.order}({S.parent.name})",
                      provenance="subgroup", check=False)


def as_group(H) -> GroupTable:
    return H if isinstance(H, GroupTable) else subgroup_as_group(H)


def quotient(G: GroupTable, N: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """``G/N`` as a table, with the projection ``G -> G/N`` as an index array."""
    if not is_normal(G, N):
        raise ValueError("quotient by a non-normal subgroup")
    mem = np.asarray(N.members)
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if label[g] < 0:
            label[G.mul[g, mem]] = len(reps)
            reps.append(g)
    reps = np.asarray(reps)
    table = label[G.mul[np.ix_(reps, reps)]]
    prov = f"quotient-of({G.name or '?'}, N{N.members})"
    Q = from_table(table, name=f"{G.name or '?'}/N{N.order}", provenance=prov, check=False)
    label.setflags(write=False)
    return Q, label


def exponent(G: GroupTable) -> int:
    return G.exponent


def is_abelian(G: GroupTable) -> bool:
    return bool(np.array_equal(G.mul, G.mul.T))


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_split(n: int, p: int) -> tuple[int, int]:
    """``n = p^v * rest`` with ``p`` not dividing ``rest``; returns ``(p^v, rest)``."""
    pv = 1
    while n % p == 0:
        n //= p
        pv *= p
    return pv, n


def p_part(G: GroupTable, g: int, p: int) -> int:
    """The ``p``-part of ``g``: the power ``g^a`` with ``a = 1 mod p^v``, ``a = 0 mod m'``."""
    pv, rest = p_split(int(G.elt_order[g]), p)
    if pv == 1:
        return 0
    a = rest * pow(rest, -1, pv)
    return G.power(g, a)


def all_cyclic_normal_witnesses(G: GroupTable) -> list[Subgroup]:
    """Cyclic normal subgroups containing ``G'``, best first."""
    Gp = derived_subgroup(G)
    cands = [N for N in normal_subgroups(G) if N.is_cyclic() and Gp.issubset(N)]
    return sorted(cands, key=lambda N: (-N.order, N.members))


def cyclic_normal_witness(G: GroupTable) -> Subgroup | None:
    ws = all_cyclic_normal_witnesses(G)
    return ws[0] if ws else None


def compute_D(G: GroupTable, A: Subgroup) -> Subgroup:
    """``Z(C_G(A))`` as a subgroup of ``G``."""
    if not (A.is_cyclic() and is_normal(G, A) and derived_subgroup(G).issubset(A)):
        raise ValueError("A must be cyclic, normal and contain G'")
    C = centralizer(G, A.members)
    D = [c for c in C.members if all(G.mul[c, d] == G.mul[d, c] for d in C.members)]
    return Subgroup(G, tuple(D))


def has_normal_p_complement(H, p: int) -> bool:
    H = as_group(H)
    _, rest = p_split(H.order, p)
    return any(N.order == rest for N in normal_subgroups(H))


def p_subgroups_of_cyclic(A: Subgroup, p: int) -> list[Subgroup]:
    """The non-trivial ``p``-subgroups of a cyclic subgroup (one per order)."""
    G = A.parent
    pv, _ = p_split(A.order, p)
    gen = next(g for g in A.members if int(G.elt_order[g]) == A.order)
    out, q = [], p
    while q <= pv:
        out.append(closure(G, [G.power(gen, A.order // q)]))
        q *= p
    return out


def subgroups_of_cyclic(A: Subgroup) -> list[Subgroup]:
    G = A.parent
    gen = next(g for g in A.members if int(G.elt_order[g]) == A.order)
    return [closure(G, [G.power(gen, A.order // d)]) for d in divisors(A.order)]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
