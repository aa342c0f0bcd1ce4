"""Exhaustive integer enumeration for a :class:`ConstraintSystem`.

Rational constraints are scaled to integer rows.  Interval propagation gives a
box; variables it cannot bound are clamped to ``[-B, B]`` and the result is
then marked non-exhaustive.  Two engines walk the box: a depth-first branch
and bound with propagation at every node, and a plain lattice scan.  Every
reported point is re-checked in exact rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constraints import EQ, GE, INT, ConstraintSystem

ROOT_ROUNDS = 200
NODE_ROUNDS = 30
_SAFE = 1 << 62


class SearchBudgetExceeded(RuntimeError):
    pass


class EngineMismatch(AssertionError):
    pass


@dataclass
class BoundsBox:
    lo: list[int]
    hi: list[int]
    exhaustive: bool = True
    empty: bool = False
    clamped: list[int] = field(default_factory=list)

    @property
    def volume(self) -> int:
        if self.empty:
            return 0
        return math.prod(h - l + 1 for l, h in zip(self.lo, self.hi))


@dataclass
class SolutionSet:
    variables: tuple[int, ...]
    solutions: list[tuple[int, ...]]
    exhaustive: bool
    engine: str
    work: int
    box: BoundsBox

    def __len__(self):
        return len(self.solutions)


@dataclass(frozen=True)
class IntegerRows:
    A: np.ndarray
    c: np.ndarray
    kind: np.ndarray
    mod: np.ndarray


_KIND = {EQ: kernels.EQ, GE: kernels.GE, INT: kernels.INT}


def compile_system(system: ConstraintSystem) -> IntegerRows:
    """Scale every constraint by the lcm of its denominators."""
    pos = {C: i for i, C in enumerate(system.variables)}
    nv = len(pos)
    rows, consts, kinds, mods = [], [], [], []
    for con in system.constraints:
        L = math.lcm(con.constant.denominator, *(c.denominator for _, c in con.coeffs))
        if con.relation == INT and L == 1:
            continue
        row = [0] * nv
        for C, v in con.coeffs:
            row[pos[C]] = int(v * L)
        rows.append(row)
        consts.append(int(con.constant * L))
        kinds.append(_KIND[con.relation])
        mods.append(L if con.relation == INT else 1)
    biggest = max([abs(x) for r in rows for x in r] + [abs(x) for x in consts] + [1])
    if biggest >= 1 << 40:
        raise OverflowError("constraint coefficients too large for int64 search")
    return IntegerRows(np.asarray(rows, np.int64).reshape(len(rows), nv),
                       np.asarray(consts, np.int64), np.asarray(kinds, np.int64),
                       np.asarray(mods, np.int64))


def _check_range(rows: IntegerRows, box: BoundsBox) -> None:
    if box.empty or not box.lo:
        return
    amax = int(np.abs(rows.A).max()) if rows.A.size else 0
    span = max(max(abs(v) for v in box.lo), max(abs(v) for v in box.hi))
    if (amax * span + 1) * len(box.lo) + int(np.abs(rows.c).max(initial=0)) >= _SAFE:
        raise OverflowError("search box too large for int64 arithmetic")


def propagate_bounds(system: ConstraintSystem, box_bound: int = 10,
                     rows: IntegerRows | None = None) -> BoundsBox:
    rows = rows or compile_system(system)
    nv = len(system.variables)
    lo = np.full(nv, -kernels.INF, np.int64)
    hi = np.full(nv, kernels.INF, np.int64)
    ok = kernels.propagate(rows.A, rows.c, rows.kind, lo, hi, ROOT_ROUNDS)
    if not ok:
        return BoundsBox([0] * nv, [-1] * nv, True, True)
    clamped = []
    for i in range(nv):
        if lo[i] <= -kernels.INF or hi[i] >= kernels.INF:
            clamped.append(i)
        lo[i] = max(lo[i], -box_bound) if lo[i] <= -kernels.INF else lo[i]
        hi[i] = min(hi[i], box_bound) if hi[i] >= kernels.INF else hi[i]
    box = BoundsBox([int(v) for v in lo], [int(v) for v in hi], not clamped, False, clamped)
    if clamped:
        # tighten the clamped box once more; the result stays non-exhaustive
        lo2, hi2 = lo.copy(), hi.copy()
        if not kernels.propagate(rows.A, rows.c, rows.kind, lo2, hi2, ROOT_ROUNDS):
            box.empty = True
        else:
            box.lo, box.hi = [int(v) for v in lo2], [int(v) for v in hi2]
    if any(l > h for l, h in zip(box.lo, box.hi)):
        box.empty = True
    return box


def _finish(system, pts, exhaustive, engine, work, box) -> SolutionSet:
    sols = sorted(set(tuple(int(v) for v in p) for p in pts))
    for x in sols:
        if not system.check(x):
            raise AssertionError(f"{engine} returned a point violating the system: {x}")
    return SolutionSet(system.variables, sols, exhaustive, engine, work, box)


def enumerate_bnb(system: ConstraintSystem, box_bound: int = 10,
                  node_budget: int = 10 ** 7) -> SolutionSet:
    rows = compile_system(system)
    box = propagate_bounds(system, box_bound, rows)
    if box.empty:
        return SolutionSet(system.variables, [], box.exhaustive, "bnb", 0, box)
    _check_range(rows, box)
    lo = np.asarray(box.lo, np.int64)
    hi = np.asarray(box.hi, np.int64)
    cap = 256
    while True:
        out = np.empty((cap, len(lo)), np.int64)
        count, nodes, status = kernels.enumerate_bnb(rows.A, rows.c, rows.kind, rows.mod,
                                                     lo, hi, node_budget, NODE_ROUNDS, out)
        if status == 1:
            raise SearchBudgetExceeded(f"branch and bound exceeded {node_budget} nodes")
        if count <= cap:
            break
        cap = count
    return _finish(system, out[:count], box.exhaustive, "bnb", int(nodes), box)


def enumerate_naive(system: ConstraintSystem, box_bound: int = 10,
                    budget: int = 10 ** 8) -> SolutionSet:
    rows = compile_system(system)
    box = propagate_bounds(system, box_bound, rows)
    if box.empty:
        return SolutionSet(system.variables, [], box.exhaustive, "naive", 0, box)
    if box.volume > budget:
        raise SearchBudgetExceeded(f"lattice scan of {box.volume} points exceeds {budget}")
    _check_range(rows, box)
    lo = np.asarray(box.lo, np.int64)
    hi = np.asarray(box.hi, np.int64)
    cap = 256
    while True:
        out = np.empty((cap, len(lo)), np.int64)
        count, points = kernels.enumerate_naive(rows.A, rows.c, rows.kind, rows.mod, lo, hi, out)
        if count <= cap:
            break
        cap = count
    return _finish(system, out[:count], box.exhaustive, "naive", int(points), box)


def solve(system: ConstraintSystem, engine: str = "bnb", box_bound: int = 10,
          node_budget: int = 10 ** 7, naive_budget: int = 10 ** 8) -> SolutionSet:
    if engine == "bnb":
        return enumerate_bnb(system, box_bound, node_budget)
    if engine == "naive":
        return enumerate_naive(system, box_bound, naive_budget)
    if engine == "both":
        a = enumerate_bnb(system, box_bound, node_budget)
        b = enumerate_naive(system, box_bound, naive_budget)
        if a.solutions != b.solutions:
            raise EngineMismatch(f"engines disagree: {a.solutions} vs {b.solutions}")
        return a
    raise ValueError(f"unknown engine {engine!r}")


def brute_force(system: ConstraintSystem, bound: int) -> list[tuple[int, ...]]:
    """Reference enumeration of ``[-bound, bound]^n`` in exact arithmetic (tests only)."""
    import itertools
    nv = len(system.variables)
    return [x for x in itertools.product(range(-bound, bound + 1), repeat=nv) if system.check(x)]


__all__ = ["BoundsBox", "SolutionSet", "SearchBudgetExceeded", "EngineMismatch",
           "compile_system", "propagate_bounds", "enumerate_bnb", "enumerate_naive", "solve",
           "brute_force"]
