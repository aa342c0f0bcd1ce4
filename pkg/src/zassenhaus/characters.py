"""Class functions on a finite group.

Characters come from three places: linear characters of ``G/G'`` pulled back
to ``G``, characters induced from linear characters of abelian normal
subgroups, and externally supplied irreducible tables.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import groups
from .abelian import AdmissibleKernel, LinearCharacter, admissible_kernels, linear_characters
from .cyclotomic import ZERO, CycNumber, parse_cyc
from .groups import GroupTable, Subgroup, conjugacy_data


class CharacterTableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: GroupTable
    values: tuple[CycNumber, ...]
    source: str = "trivial"

    @property
    def degree(self) -> CycNumber:
        return self.values[0]

    def __getitem__(self, C: int) -> CycNumber:
        return self.values[C]

    def __len__(self):
        return len(self.values)

    def dense(self, M: int) -> np.ndarray:
        """Integer matrix whose row ``C`` expands ``chi(C)`` over ``z_M^0..z_M^(M-1)``."""
        cache = self.__dict__.setdefault("_dense", {})
        if M not in cache:
            rows = []
            for v in self.values:
                row = v.lift(M)
                if any(Fraction(c).denominator != 1 for c in row):
                    raise CharacterTableError(f"character value {v!r} is not an algebraic integer")
                rows.append([int(c) for c in row])
            arr = np.asarray(rows, dtype=np.int64).reshape(len(self.values), M)
            arr.setflags(write=False)
            cache[M] = arr
        return cache[M]

    @cached_property
    def key(self) -> tuple:
        return tuple(self.values)


def induce_linear(G: GroupTable, N: Subgroup, psi: LinearCharacter) -> ClassFunction:
    """``psi^G`` via class sums: ``psi^G(g) = [C_G(g):N] * sum_{h in g^G} psi(h)`` for ``g`` in ``N``."""
    if not (N.is_abelian() and groups.is_normal(G, N)):
        raise ValueError("N must be an abelian normal subgroup")
    cd = conjugacy_data(G)
    E = psi.basis.exponent
    vals = []
    for C, cls in enumerate(cd.classes):
        if cls[0] not in N:
            vals.append(ZERO)
            continue
        counts = [0] * E
        for h in cls:
            counts[psi.value_exp(h)] += 1
        vals.append(CycNumber.from_dense(E, counts).scale(Fraction(cd.centralizer_order[C], N.order)))
    return ClassFunction(G, tuple(vals), source=f"induced-from(N{N.order}, {psi.exponents})")


def unit_value(chi: ClassFunction, eps: Sequence[int]) -> CycNumber:
    """Value of ``chi`` on a unit with partial augmentations ``eps``."""
    if len(eps) != len(chi.values):
        raise ValueError("partial augmentation vector does not match the class count")
    total = ZERO
    for e, v in zip(eps, chi.values):
        if e:
            total = total + v.scale(e)
    return total


def formula_caracteres_check(G: GroupTable, N: Subgroup, psi: LinearCharacter,
                             eps: Sequence[int]) -> bool:
    """Compare ``psi^G(u)`` with ``sum_{n in N} psi(n) [C_G(n):N] eps_n(u)``."""
    cd = conjugacy_data(G)
    lhs = unit_value(induce_linear(G, N, psi), eps)
    rhs = ZERO
    for n in N.members:
        C = int(cd.class_of[n])
        if eps[C]:
            rhs = rhs + psi(n).scale(Fraction(cd.centralizer_order[C], N.order) * eps[C])
    return lhs == rhs


def recover_pa(G: GroupTable, N: Subgroup, values: Sequence[CycNumber], x: int) -> Fraction:
    """Partial augmentation at ``x`` from the values of all ``psi_i^G`` on a unit.

    ``values`` follows the order of ``linear_characters(N)``.
    """
    chars = linear_characters(N)
    if len(values) != len(chars):
        raise ValueError("need one induced value per linear character of N")
    cd = conjugacy_data(G)
    total = ZERO
    for psi, v in zip(chars, values):
        total = total + psi(x).conjugate() * v
    total = total.scale(Fraction(1, cd.centralizer_order[int(cd.class_of[x])]))
    if not total.is_rational():
        raise ValueError("inconsistent induced values: recovered augmentation is irrational")
    return total.to_fraction()


def lifted_linear_characters(G: GroupTable) -> list[ClassFunction]:
    """Linear characters of ``G`` (pulled back from ``G/G'``)."""
    cd = conjugacy_data(G)
    Q, proj = groups.quotient(G, groups.derived_subgroup(G))
    out = []
    for psi in linear_characters(Q):
        vals = tuple(psi(int(proj[r])) for r in cd.rep)
        out.append(ClassFunction(G, vals, source=f"linear{psi.exponents}"))
    return out


def ingest_character_table(G: GroupTable, document: dict) -> list[ClassFunction]:
    """Validate an irreducible character table given as JSON against ``G``."""
    cd = conjugacy_data(G)
    try:
        classes = document["classes"]
        rows = document["irreducibles"]
    except (KeyError, TypeError):
        raise CharacterTableError("table needs 'classes' and 'irreducibles'")
    if len(classes) != len(cd):
        raise CharacterTableError(f"expected {len(cd)} classes, got {len(classes)}")
    for i, c in enumerate(classes):
        if (int(c.get("rep_order", -1)), int(c.get("size", -1))) != (cd.rep_order[i], cd.sizes[i]):
            raise CharacterTableError(f"class {i} does not match (order {cd.rep_order[i]}, size {cd.sizes[i]})")
    if not rows or len(rows) > len(cd):
        raise CharacterTableError("bad number of irreducible rows")
    chars = []
    for r in rows:
        if len(r) != len(cd):
            raise CharacterTableError("row length does not match class count")
        try:
            chars.append(ClassFunction(G, tuple(parse_cyc(v) for v in r), source="ingested"))
        except ValueError as exc:
            raise CharacterTableError(str(exc))
    if any(v != 1 for v in chars[0].values):
        raise CharacterTableError("first row must be the trivial character")
    for chi in chars:
        d = chi.degree
        if not d.is_rational() or d.to_fraction().denominator != 1 or d.to_fraction() <= 0:
            raise CharacterTableError("degree must be a positive integer")
    for i, a in enumerate(chars):
        for j, b in enumerate(chars[i:], start=i):
            s = ZERO
            for C, size in enumerate(cd.sizes):
                s = s + (a[C] * b[C].conjugate()).scale(size)
            if s != (G.order if i == j else 0):
                raise CharacterTableError(f"rows {i} and {j} violate orthogonality")
    return chars


@dataclass(frozen=True, eq=False)
class KInduced:
    kernel: Subgroup
    psi: LinearCharacter
    chi: ClassFunction
    class_id: int
    class_rep: Subgroup

    @property
    def index(self) -> int:
        return self.psi.basis.group.order // self.kernel.order


def k_induced_family(G: GroupTable, D: Subgroup, A: Subgroup) -> list[KInduced]:
    """One induced character per admissible kernel of ``D``."""
    fam: list[AdmissibleKernel] = admissible_kernels(G, D, A)
    return [KInduced(k.kernel, k.psi, induce_linear(G, D, k.psi), k.class_id, k.class_rep)
            for k in fam]


def help_characters(G: GroupTable, extra: Sequence[ClassFunction] = ()) -> list[ClassFunction]:
    """Characters fed to the multiplicity constraints, deduplicated by values."""
    chars = lifted_linear_characters(G)
    if not groups.is_abelian(G):
        for N in groups.normal_subgroups(G):
            if N.order > 1 and N.is_abelian():
                chars.extend(induce_linear(G, N, psi) for psi in linear_characters(N))
    chars.extend(extra)
    seen, out = set(), []
    for chi in chars:
        if chi.key not in seen:
            seen.add(chi.key)
            out.append(chi)
    return out
