"""Recursive verification of ZC1 at the level of partial augmentations.

For each candidate order ``m`` every consistent assignment of lower-order
survivors to the proper powers of ``u`` (a *chain*) yields one or two
constraint systems, whose integer solutions are the *survivors* of order
``m``.  The group is verified when every survivor is a class indicator at a
class of order ``m`` and every search was exhaustive.

When a cyclic normal ``A >= G'`` exists, ``D = Z(C_G(A))`` splits each chain
into the branch ``omega_D(u) = 1`` (kernel-coset inequalities, prime-divisor
pruning) and the branch ``omega_D(u) != 1`` (admissible-kernel trace
equalities).  Survivor sets of the two branches are unioned.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from . import constraints as cs
from . import groups
from .characters import ClassFunction, KInduced, help_characters, k_induced_family
from .groups import GroupTable, GroupTooLarge, Subgroup, conjugacy_data
from .solver import solve

log = logging.getLogger(__name__)

VERDICTS = ("verified", "open", "bounded-search-only")


@dataclass(frozen=True)
class Config:
    gates: frozenset = cs.ALL_GATES
    aggressive_ppart: bool = False
    engine: str = "bnb"
    box_bound: int = 10
    max_order: int = 512
    all_witnesses: bool = False
    node_budget: int = 10 ** 7
    naive_budget: int = 10 ** 8
    jobs: int = 1
    order_filter: bool = True

    def __post_init__(self):
        unknown = set(self.gates) - cs.ALL_GATES
        if unknown:
            raise ValueError(f"unknown gates: {sorted(unknown)}")
        object.__setattr__(self, "gates", frozenset(self.gates))

    @property
    def key(self) -> tuple:
        # jobs does not change results
        return (tuple(sorted(self.gates)), self.aggressive_ppart, self.engine, self.box_bound,
                self.all_witnesses, self.node_budget, self.naive_budget, self.order_filter)


@dataclass(frozen=True)
class Survivor:
    tuple: tuple[int, ...]
    powers: tuple[tuple[int, tuple[int, ...]], ...]

    def power(self, d: int) -> tuple[int, ...]:
        for k, t in self.powers:
            if k == d:
                return t
        raise KeyError(d)


@dataclass
class OrderRecord:
    m: int
    gates: list[str]
    chains: int
    survivors: list[Survivor]
    classes: list[str]
    exhaustive: bool
    branches: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    excluded: list[Survivor] = field(default_factory=list)

    def tuples(self) -> list[tuple[int, ...]]:
        return sorted({s.tuple for s in self.survivors})


@dataclass
class VerificationReport:
    group: dict
    witness: dict | None
    orders: list[OrderRecord]
    quotients: list[dict]
    verdict: str
    annotations: list[str]
    heuristic: bool = False

    def order(self, m: int) -> OrderRecord:
        return next(r for r in self.orders if r.m == m)


# --------------------------------------------------------------------------
# helpers

def group_hash(G: GroupTable) -> str:
    return hashlib.sha256(G.key).hexdigest()[:16]


def classify(solution: Sequence[int], m: int, cd) -> str:
    C = cs.indicator_class(solution)
    if C is None:
        return "nontrivial"
    if cd.rep_order[C] == m:
        return f"trivial({cd.labels[C]})"
    return f"order-defect({cd.labels[C]})"


def _identity_survivor(k: int) -> Survivor:
    return Survivor(cs.indicator(k, 0), ())


def assemble_chains(m: int, survivors: dict[int, list[Survivor]], k: int) -> list[cs.PAChain]:
    """All consistent assignments of lower-order survivors to ``u^p``, ``p | m``."""
    primes = groups.prime_factors(m)
    pools = []
    for p in primes:
        q = m // p
        pools.append([_identity_survivor(k)] if q == 1 else survivors.get(q, []))
    divs = groups.divisors(m)[1:]
    out = []
    for pick in itertools.product(*pools):
        table: dict[int, tuple[int, ...]] = {m: cs.indicator(k, 0)}
        ok = True
        for p, s in zip(primes, pick):
            for d in divs:
                if d % p:
                    continue
                e = d // p
                t = s.tuple if e == 1 else (cs.indicator(k, 0) if e == m // p else s.power(e))
                if table.setdefault(d, t) != t:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(cs.PAChain(m, tuple(sorted(table.items()))))
    return out


@dataclass
class GroupContext:
    G: GroupTable
    cd: object
    characters: list[ClassFunction]
    config: Config
    A: Subgroup | None = None
    D: Subgroup | None = None
    family: list[KInduced] = field(default_factory=list)
    quotient_verified: dict = field(default_factory=dict)
    all_quotients_verified: bool = False

    @property
    def gd_verified(self) -> bool:
        return self.D is not None and (self.D.order == self.G.order
                                       or self.quotient_verified.get(self.D.members, False))


def _pushes_to_identity(ctx: GroupContext, t) -> bool:
    p = cs.pushforward_tuple(ctx.G, ctx.D, t)
    return p[0] == 1 and not any(p[1:])


def build_systems(ctx: GroupContext, chain: cs.PAChain) -> list[cs.ConstraintSystem]:
    """Constraint systems for one chain: one per branch on ``omega_D(u)``."""
    G, cd, cfg = ctx.G, ctx.cd, ctx.config
    gates = cfg.gates
    m = chain.m
    variables = cs.var_layout(cd, m, bh="bh" in gates)
    base = [cs.augmentation_one(variables)]
    if "help" in gates:
        for chi in ctx.characters:
            base.extend(cs.multiplicity_constraints(chi, chain, variables))
        base.extend(cs.character_norm_bounds(ctx.characters, variables))
    k = len(cd)

    def system(cons, branch, notes=()):
        return cs.ConstraintSystem(variables, list(cons), gates, k, branch, list(notes))

    if ctx.A is None:
        return [system(base, "generic")]

    if "outD" in gates:
        base.extend(cs.outside_D_nonneg(G, ctx.A, ctx.D, ctx.quotient_verified, variables))
    heuristic = []
    if "ppart" in gates:
        for p in groups.prime_factors(m):
            _, r = groups.p_split(m, p)
            if r == 1:
                continue
            sound = ctx.gd_verified and _pushes_to_identity(ctx, chain[r])
            zeros = cs.p_part_zeros(G, chain, p, sound or cfg.aggressive_ppart, variables)
            base.extend(zeros)
            if zeros and not sound:
                heuristic.append(f"p-part zeros for p={p} applied without a conjugacy premise")

    D = ctx.D
    certified_nontrivial = any(not _pushes_to_identity(ctx, t) for _, t in chain.tuples)
    out = []
    if not certified_nontrivial and all(D.order % p == 0 for p in groups.prime_factors(m)):
        cons = list(base)
        cert = cs.omega_trivial_certificate(G, chain, D, ctx.gd_verified, variables)
        if cert is not None:
            cons.extend(cert.equalities)
            if "leo" in gates:
                cons.extend(cs.leo_constraints(G, D, cert, variables))
        else:
            Q_eqs = cs.omega_trivial_certificate(G, chain, D, True, variables)
            cons.extend(Q_eqs.equalities)
        out.append(system(cons, "omega_D-trivial", heuristic))
    if D.order != G.order:
        cons = list(base)
        if "ktrace" in gates:
            cons.extend(cs.k_trace_equalities(G, D, ctx.family, ctx.all_quotients_verified,
                                              variables))
        out.append(system(cons, "omega_D-nontrivial", heuristic))
    return out


def _solve_chain(ctx: GroupContext, chain: cs.PAChain):
    cfg = ctx.config
    found: dict[tuple, set] = {}
    exhaustive = True
    branches: dict[str, int] = {}
    notes: list[str] = []
    for S in build_systems(ctx, chain):
        res = solve(S, cfg.engine, cfg.box_bound, cfg.node_budget, cfg.naive_budget)
        exhaustive &= res.exhaustive
        branches[S.branch] = branches.get(S.branch, 0) + len(res.solutions)
        notes.extend(S.notes)
        for x in res.solutions:
            found.setdefault(S.full(x), set()).add(S.branch)
    survivors = [Survivor(t, chain.tuples) for t in found]
    return survivors, found, exhaustive, branches, notes


def _order_defect_excluded(s: Survivor, m: int, cd) -> bool:
    """A non-negative survivor with non-negative powers would be rationally
    conjugate to a group element, whose order must then be ``m``."""
    if not classify(s.tuple, m, cd).startswith("order-defect"):
        return False
    return all(v >= 0 for _, t in s.powers for v in t)


# --------------------------------------------------------------------------
# main entry

def _context(G: GroupTable, config: Config, A: Subgroup | None, extra, qv: dict,
             all_ok: bool) -> GroupContext:
    ctx = GroupContext(G, conjugacy_data(G), help_characters(G, extra), config,
                       quotient_verified=qv, all_quotients_verified=all_ok)
    if A is not None:
        ctx.A = A
        ctx.D = groups.compute_D(G, A)
        if "ktrace" in config.gates:
            ctx.family = k_induced_family(G, ctx.D, A)
    return ctx


def verify(G: GroupTable, config: Config | None = None,
           character_table: Sequence[ClassFunction] = (),
           _memo: dict | None = None) -> VerificationReport:
    """Verify every candidate order of ``G`` and, recursively, every proper quotient."""
    config = config or Config()
    if G.order > config.max_order:
        raise GroupTooLarge(f"group of order {G.order} exceeds the limit {config.max_order}")
    memo = {} if _memo is None else _memo
    key = (G.key, config.key, tuple(c.key for c in character_table))
    if key in memo:
        return memo[key]
    cd = conjugacy_data(G)
    k = len(cd)

    quotients, qv = [], {}
    for N in groups.normal_subgroups(G):
        if N.order == 1:
            continue
        Q, _ = groups.quotient(G, N)
        sub = verify(Q, config, (), memo)
        qv[N.members] = sub.verdict == "verified"
        quotients.append({"normal_subgroup": list(N.members), "order": Q.order,
                          "hash": group_hash(Q), "verdict": sub.verdict})
    all_ok = all(qv.values())

    witnesses = groups.all_cyclic_normal_witnesses(G)
    if witnesses and not config.all_witnesses:
        witnesses = witnesses[:1]
    contexts = [_context(G, config, A, character_table, qv, all_ok) for A in witnesses] or \
        [_context(G, config, None, character_table, qv, all_ok)]

    records: list[OrderRecord] = []
    survivors: dict[int, list[Survivor]] = {}
    heuristic = False
    pool = ThreadPoolExecutor(config.jobs) if config.jobs > 1 else None
    try:
        for m in cs.order_candidates(G):
            chains = assemble_chains(m, survivors, k)
            per_ctx = []
            exhaustive = True
            branches: dict[str, int] = {}
            notes: list[str] = []
            for ctx in contexts:
                run = (lambda ch, ctx=ctx: _solve_chain(ctx, ch))
                results = list(pool.map(run, chains)) if pool else [run(ch) for ch in chains]
                found = set()
                for surv, _, ex, br, nt in results:
                    found.update(surv)
                    exhaustive &= ex
                    for b, n in br.items():
                        branches[b] = branches.get(b, 0) + n
                    notes.extend(nt)
                per_ctx.append(found)
            kept = set.intersection(*per_ctx) if per_ctx else set()
            # indicator at an earlier class first
            ordered = sorted(kept, key=lambda s: (tuple(-v for v in s.tuple), s.powers))
            excluded = []
            if config.order_filter:
                excluded = [s for s in ordered if _order_defect_excluded(s, m, cd)]
                ordered = [s for s in ordered if s not in excluded]
            survivors[m] = ordered
            heuristic |= bool(notes)
            records.append(OrderRecord(
                m=m, gates=sorted(config.gates), chains=len(chains), survivors=ordered,
                classes=[classify(s.tuple, m, cd) for s in ordered], exhaustive=exhaustive,
                branches=dict(sorted(branches.items())), notes=sorted(set(notes)),
                excluded=excluded))
    finally:
        if pool:
            pool.shutdown()

    bad = any(c == "nontrivial" or c.startswith("order-defect")
              for r in records for c in r.classes)
    if bad:
        verdict = "open"
    elif not all(r.exhaustive for r in records):
        verdict = "bounded-search-only"
    else:
        verdict = "verified"
    main = contexts[0]
    witness = None
    if main.A is not None:
        witness = {"A": list(main.A.members), "D": list(main.D.members),
                   "A_order": main.A.order, "D_order": main.D.order,
                   "admissible_kernels": len(main.family) if "ktrace" in config.gates else None,
                   "witnesses_used": len(contexts)}
    report = VerificationReport(
        group={"name": G.name, "order": G.order, "hash": group_hash(G),
               "classes": list(cd.labels), "class_sizes": list(cd.sizes),
               "class_orders": list(cd.rep_order)},
        witness=witness, orders=records, quotients=quotients, verdict=verdict,
        annotations=[], heuristic=heuristic)
    annotate(G, report, main)
    memo[key] = report
    return report


def annotate(G: GroupTable, report: VerificationReport, ctx: GroupContext | None = None) -> VerificationReport:
    """Attach explanatory notes; never changes the verdict."""
    notes = ["candidate orders are the divisors of exp(G) > 1 (Cohn-Livingstone)"]
    if "bh" in (ctx.config.gates if ctx else cs.ALL_GATES):
        notes.append("identity class excluded for u != 1 (Berman-Higman)")
    if report.witness is not None:
        notes.append("cyclic-by-abelian: ZC1 is a theorem for this group "
                     f"(|A| = {report.witness['A_order']}, |D| = {report.witness['D_order']})")
        for r in report.orders:
            if r.branches.get("omega_D-trivial"):
                notes.append(f"order {r.m}: survivors of the omega_D(u) = 1 branch are "
                             "conjugate in QG to elements of D")
    for N in groups.normal_subgroups(G):
        if N.order == 1 or not N.is_cyclic():
            continue
        ps = groups.prime_factors(N.order)
        if len(ps) != 1:
            continue
        p = ps[0]
        for r in report.orders:
            if groups.prime_factors(r.m) == [p]:
                notes.append(f"order {r.m}: units with omega_P(u) = 1 for the cyclic normal "
                             f"{p}-subgroup of order {N.order} are conjugate in QG into it")
    if report.heuristic:
        notes.append("heuristic constraints used")
    for r in report.orders:
        if r.excluded:
            notes.append(f"order {r.m}: {len(r.excluded)} order-defect indicator(s) with "
                         "non-negative powers dropped (a rationally conjugate group element "
                         "would have order m)")
    if any(c.startswith("order-defect") for r in report.orders for c in r.classes):
        notes.append("order-defect indicators reported: excluding them needs results beyond "
                     "the constraint families used here")
    report.annotations = notes
    return report


# --------------------------------------------------------------------------
# serialization

def _tuple_doc(t, labels) -> dict:
    return {labels[C]: v for C, v in enumerate(t) if v}


def to_document(report: VerificationReport) -> dict:
    labels = report.group["classes"]
    orders = []
    for r in report.orders:
        orders.append({
            "m": r.m,
            "gates": r.gates,
            "chains": r.chains,
            "branches": r.branches,
            "survivors": [{"tuple": _tuple_doc(s.tuple, labels), "class_of_tuple": c,
                           "powers": {str(d): _tuple_doc(t, labels) for d, t in s.powers}}
                          for s, c in zip(r.survivors, r.classes)],
            "exhaustive": r.exhaustive,
            "excluded_order_defects": [_tuple_doc(x.tuple, labels) for x in r.excluded],
            "notes": r.notes,
        })
    return {"group": report.group, "witness": report.witness, "orders": orders,
            "quotients": report.quotients, "verdict": report.verdict,
            "annotations": report.annotations}


def emit(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_document(report), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    g = report.group
    lines = [f"group {g['name'] or '?'} (order {g['order']}, hash {g['hash']})",
             f"classes: {' '.join(g['classes'])}"]
    if report.witness:
        w = report.witness
        lines.append(f"witness: |A| = {w['A_order']}, |D| = {w['D_order']}")
    else:
        lines.append("witness: none (generic constraints only)")
    for r in report.orders:
        flag = "" if r.exhaustive else "  [bounded box]"
        kinds = ", ".join(r.classes) if r.classes else "no survivors"
        lines.append(f"  m={r.m:<3} chains={r.chains:<3} {kinds}{flag}")
    bad_q = [q for q in report.quotients if q["verdict"] != "verified"]
    lines.append(f"quotients: {len(report.quotients)} checked, {len(bad_q)} not verified")
    for a in report.annotations:
        lines.append(f"  note: {a}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def with_gates(config: Config, gates) -> Config:
    return replace(config, gates=frozenset(gates))
