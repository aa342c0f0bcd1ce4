"""Linear constraints on the partial augmentations of a hypothetical unit.

The unknowns are the partial augmentations ``eps_C(u)`` of a normalized torsion
unit ``u`` of order ``m``, one per conjugacy class ``C``.  The partial
augmentations of the proper powers ``u^d`` are fixed by a :class:`PAChain`.

Constraint families (gate names in brackets):

* ``help``  eigenvalue multiplicities of every available character are
  non-negative integers;
* ``leo``   kernel-coset inequalities for an abelian normal ``N`` with
  ``omega_N(u) = 1``;
* ``ppart`` classes whose ``p``-part is not conjugate to the ``p``-part of
  ``u`` vanish (only where ``u_p`` is known to be ``p``-adically conjugate to a
  group element);
* ``ktrace`` partial augmentations on ``D`` are traces of admissible induced
  characters (when ``omega_D(u) != 1``);
* ``outD``  partial augmentations outside ``D = Z(C_G(A))`` are non-negative;
* ``bh``    ``eps_1(u) = 0`` for ``u != 1`` (Berman-Higman; not derived here).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import groups
from .abelian import cyclic_kernels
from .characters import ClassFunction, KInduced
from .cyclotomic import ramanujan_sum, totient, trace_in
from .groups import ConjugacyData, GroupTable, Subgroup, conjugacy_data

ALL_GATES = frozenset({"help", "leo", "ppart", "ktrace", "outD", "bh"})
EQ, GE, INT = "eq", "ge", "int"


@dataclass(frozen=True)
class PAChain:
    """Fixed partial augmentations of ``u^d`` for every divisor ``d > 1`` of ``m``."""
    m: int
    tuples: tuple[tuple[int, tuple[int, ...]], ...]

    def __getitem__(self, d: int) -> tuple[int, ...]:
        for k, t in self.tuples:
            if k == d:
                return t
        raise KeyError(f"chain for order {self.m} has no tuple for u^{d}")

    def as_dict(self) -> dict[int, tuple[int, ...]]:
        return dict(self.tuples)


def trivial_chain(G: GroupTable, g: int) -> PAChain:
    """The chain of the group element ``g`` itself."""
    cd = conjugacy_data(G)
    m = int(G.elt_order[g])
    tups = []
    for d in groups.divisors(m)[1:]:
        t = [0] * len(cd)
        t[int(cd.class_of[G.power(g, d)])] = 1
        tups.append((d, tuple(t)))
    return PAChain(m, tuple(tups))


def indicator(k: int, C: int) -> tuple[int, ...]:
    t = [0] * k
    t[C] = 1
    return tuple(t)


def indicator_class(t: Sequence[int]) -> int | None:
    nz = [i for i, v in enumerate(t) if v]
    if len(nz) == 1 and t[nz[0]] == 1:
        return nz[0]
    return None


@dataclass(frozen=True)
class LinearConstraint:
    """``sum coeffs[C] * eps_C + constant`` related to zero by ``relation``.

    ``int`` means the expression is an integer.
    """
    coeffs: tuple[tuple[int, Fraction], ...]
    constant: Fraction
    relation: str
    label: str = field(compare=False)

    def value(self, eps: Sequence[int]) -> Fraction:
        return sum((c * eps[C] for C, c in self.coeffs), self.constant)

    def holds(self, eps: Sequence[int]) -> bool:
        v = self.value(eps)
        if self.relation == EQ:
            return v == 0
        if self.relation == GE:
            return v >= 0
        return v.denominator == 1

    def trivially_true(self) -> bool:
        return not self.coeffs and self.holds(())

    @property
    def form(self) -> tuple:
        return self.coeffs, self.constant, self.relation

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        name = (lambda C: labels[C]) if labels else str
        return {
            "label": self.label,
            "relation": self.relation,
            "coeffs": {name(C): [c.numerator, c.denominator] for C, c in self.coeffs},
            "constant": [self.constant.numerator, self.constant.denominator],
        }


def make_constraint(coeffs: Iterable[tuple[int, Fraction]] | dict, constant, relation: str,
                    label: str, variables: Iterable[int] | None = None) -> LinearConstraint:
    """Normalise coefficients, dropping classes that are structurally zero."""
    items = coeffs.items() if isinstance(coeffs, dict) else coeffs
    acc: dict[int, Fraction] = {}
    for C, c in items:
        acc[C] = acc.get(C, Fraction(0)) + Fraction(c)
    keep = None if variables is None else set(variables)
    co = tuple(sorted((C, c) for C, c in acc.items() if c != 0 and (keep is None or C in keep)))
    return LinearConstraint(co, Fraction(constant), relation, label)


@dataclass
class ConstraintSystem:
    variables: tuple[int, ...]
    constraints: list[LinearConstraint]
    gates: frozenset = ALL_GATES
    nclasses: int = 0
    branch: str = "generic"
    notes: list[str] = field(default_factory=list)

    def full(self, x: Sequence[int]) -> tuple[int, ...]:
        eps = [0] * self.nclasses
        for C, v in zip(self.variables, x):
            eps[C] = int(v)
        return tuple(eps)

    def check(self, x: Sequence[int]) -> bool:
        eps = self.full(x)
        return all(c.holds(eps) for c in self.constraints)

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        name = (lambda C: labels[C]) if labels else str
        return {
            "branch": self.branch,
            "gates": sorted(self.gates),
            "variables": [name(C) for C in self.variables],
            "constraints": [c.to_json(labels) for c in self.constraints],
        }


# --------------------------------------------------------------------------
# layout and the basic families

def var_layout(cd: ConjugacyData, m: int, bh: bool = True) -> tuple[int, ...]:
    """Classes whose representative order divides ``m`` (identity dropped under ``bh``)."""
    return tuple(C for C, o in enumerate(cd.rep_order)
                 if m % o == 0 and not (bh and m > 1 and C == 0))


def augmentation_one(variables: Sequence[int]) -> LinearConstraint:
    return make_constraint({C: 1 for C in variables}, -1, EQ, "augmentation one")


@functools.lru_cache(maxsize=None)
def _ramanujan_matrix(M: int) -> np.ndarray:
    """``R[k, s] = Tr_{Q(z_M)/Q}(z_M^(k - s))``."""
    row = np.array([ramanujan_sum(M, k) for k in range(M)], dtype=np.int64)
    idx = (np.arange(M)[:, None] - np.arange(M)[None, :]) % M
    return row[idx]


def _chi_traces(chi: ClassFunction, M: int) -> np.ndarray:
    """``T[C, s] = Tr_{Q(z_M)/Q}(chi(C) * z_M^-s)``."""
    cache = chi.__dict__.setdefault("_traces", {})
    if M not in cache:
        cache[M] = chi.dense(M) @ _ramanujan_matrix(M)
    return cache[M]


def multiplicity_forms(chi: ClassFunction, chain: PAChain) -> list[tuple[list[Fraction], Fraction]]:
    """For each ``j`` the multiplicity of ``z_m^j`` as an eigenvalue of ``rho(u)``.

    Returned as ``(coefficients per class, constant)``: the ``d = 1`` term is
    linear in the unknowns, the ``d > 1`` terms use the chain.  The relative
    trace over ``Q(z_m^d)`` is the absolute trace over ``Q(z_M)`` divided by
    ``[Q(z_M) : Q(z_{m/d})] = phi(M)/phi(m/d)``.
    """
    m = chain.m
    G = chi.group
    M = math.lcm(G.exponent, m)
    T = _chi_traces(chi, M)
    phiM = totient(M)
    R = _ramanujan_matrix(M)
    V = chi.dense(M)
    step = M // m
    k = len(chi.values)
    powers = []
    for d in groups.divisors(m)[1:]:
        t = np.asarray(chain[d], dtype=np.int64)
        w = t @ V                      # chi(u^d) expanded over z_M
        powers.append((d, w @ R))      # traces against z_M^-s
    out = []
    for j in range(m):
        s1 = (j * step) % M
        coef = [Fraction(int(T[C, s1]) * totient(m), m * phiM) for C in range(k)]
        const = Fraction(0)
        for d, tw in powers:
            const += Fraction(int(tw[(j * d * step) % M]) * totient(m // d), phiM)
        out.append((coef, const / m))
    return out


def multiplicity_constraints(chi: ClassFunction, chain: PAChain,
                             variables: Sequence[int] | None = None) -> list[LinearConstraint]:
    """Non-negativity and integrality of every eigenvalue multiplicity, plus their sum."""
    forms = multiplicity_forms(chi, chain)
    m = chain.m
    groups_of_j: dict[tuple, list[int]] = {}
    built: dict[tuple, tuple] = {}
    for j, (coef, const) in enumerate(forms):
        c = make_constraint(enumerate(coef), const, GE, "", variables)
        groups_of_j.setdefault(c.form, []).append(j)
        built.setdefault(c.form, (coef, const))
    out = []
    for form, js in groups_of_j.items():
        coef, const = built[form]
        tag = f"help[{chi.source}; m={m}; alpha=z{m}^{js}]"
        out.append(make_constraint(enumerate(coef), const, GE, "mu>=0 " + tag, variables))
        out.append(make_constraint(enumerate(coef), const, INT, "mu integral " + tag, variables))
    total = [sum((f[0][C] for f in forms), Fraction(0)) for C in range(len(chi.values))]
    const = sum((f[1] for f in forms), Fraction(0)) - chi.degree.to_fraction()
    out.append(make_constraint(enumerate(total), const, EQ,
                               f"sum of multiplicities = degree [{chi.source}; m={m}]", variables))
    return [c for c in out if not c.trivially_true()]


def character_norm_bounds(chars: Sequence[ClassFunction],
                          variables: Sequence[int]) -> list[LinearConstraint]:
    """``|eps_C| <= sum_chi |L[C, chi]| chi(1)`` for any left inverse ``L``.

    For a torsion unit every character satisfies ``|chi(u)| <= chi(1)``, and
    ``chi(u) = sum_C eps_C chi(C)``; a variable determined by the character
    values is therefore bounded.  The pseudo-inverse is computed in floating
    point; only rows that reproduce the identity to 1e-9 are used and the bound
    is widened by 1e-6 before flooring.
    """
    if not chars or not variables:
        return []
    P = np.array([[complex(chi[C]) for C in variables] for chi in chars])
    deg = np.array([abs(complex(chi.degree)) for chi in chars])
    L = np.linalg.pinv(P)
    R = L @ P
    out = []
    for i, C in enumerate(variables):
        e = np.zeros(len(variables))
        e[i] = 1
        if np.abs(R[i] - e).max() > 1e-9:
            continue
        b = math.floor(float(np.abs(L[i]) @ deg) + 1e-6)
        out.append(make_constraint({C: -1}, b, GE, f"character norm bound [class {C} <= {b}]"))
        out.append(make_constraint({C: 1}, b, GE, f"character norm bound [class {C} >= -{b}]"))
    return out


def multiplicities(chi: ClassFunction, chain: PAChain, eps: Sequence[int]) -> list[Fraction]:
    """Evaluate every multiplicity for a concrete partial augmentation vector."""
    return [sum((c * e for c, e in zip(coef, eps)), const)
            for coef, const in multiplicity_forms(chi, chain)]


# --------------------------------------------------------------------------
# omega_N-trivial branch

@dataclass(frozen=True)
class OmegaCertificate:
    """Evidence that ``omega_N(u) = 1`` may be assumed for a branch."""
    N: Subgroup
    equalities: tuple[LinearConstraint, ...]


def pushforward(G: GroupTable, N: Subgroup):
    """Map classes of ``G`` onto classes of ``G/N``."""
    Q, proj = groups.quotient(G, N)
    qcd = conjugacy_data(Q)
    cd = conjugacy_data(G)
    return [int(qcd.class_of[proj[r]]) for r in cd.rep], len(qcd)


def pushforward_tuple(G: GroupTable, N: Subgroup, t: Sequence[int]) -> tuple[int, ...]:
    cmap, k = _cached_pushforward(G, N.members)
    out = [0] * k
    for C, v in enumerate(t):
        out[cmap[C]] += v
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _cached_pushforward(G: GroupTable, members: tuple[int, ...]):
    return pushforward(G, Subgroup(G, members))


def omega_trivial_in_chain(G: GroupTable, N: Subgroup, chain: PAChain) -> bool:
    """Do all proper powers of the chain push forward to the identity of ``G/N``?"""
    for d, t in chain.tuples:
        p = pushforward_tuple(G, N, t)
        if p[0] != 1 or any(p[1:]):
            return False
    return True


def omega_trivial_certificate(G: GroupTable, chain: PAChain, N: Subgroup,
                              quotient_verified: bool,
                              variables: Sequence[int] | None = None) -> OmegaCertificate | None:
    """Certificate for the branch ``omega_N(u) = 1``.

    Present when ``G/N`` is verified (or ``N = G``) and every proper power of
    the chain maps to the identity of ``G/N``.  The certificate carries the
    equalities forcing the same for ``u`` itself: the partial augmentations of
    ``omega_N(u)`` vanish off the identity class of ``G/N``.
    """
    if N.order != G.order and not quotient_verified:
        return None
    if not omega_trivial_in_chain(G, N, chain):
        return None
    cmap, k = _cached_pushforward(G, N.members)
    eqs = []
    for qc in range(1, k):
        coeffs = {C: 1 for C, q in enumerate(cmap) if q == qc}
        c = make_constraint(coeffs, 0, EQ, f"omega_N(u)=1 [N{N.order}; class {qc} of G/N]", variables)
        if not c.trivially_true():
            eqs.append(c)
    return OmegaCertificate(N, tuple(eqs))


def leo_constraints(G: GroupTable, N: Subgroup, certificate: OmegaCertificate | None,
                    variables: Sequence[int] | None = None) -> list[LinearConstraint]:
    """``sum_{h in ker eta} [C_G(hn):N] eps_{hn}(u) >= 0`` for all ``eta`` and ``n``."""
    if certificate is None or certificate.N != N:
        raise ValueError("kernel-coset inequalities need an omega_N certificate")
    cd = conjugacy_data(G)
    seen, out = set(), []
    for K in cyclic_kernels(N):
        done = set()
        for n in N.members:
            if n in done:
                continue
            coset = [int(G.mul[h, n]) for h in K.members]
            done.update(coset)
            coeffs: dict[int, Fraction] = {}
            for x in coset:
                C = int(cd.class_of[x])
                coeffs[C] = coeffs.get(C, Fraction(0)) + Fraction(cd.centralizer_order[C], N.order)
            c = make_constraint(coeffs, 0, GE, f"leo[N{N.order}; ker{K.order}; coset of {n}]", variables)
            if c.form not in seen and not c.trivially_true():
                seen.add(c.form)
                out.append(c)
    return out


# --------------------------------------------------------------------------
# structural families

def outside_D_nonneg(G: GroupTable, A: Subgroup, D: Subgroup, quotient_verified: dict,
                     variables: Sequence[int]) -> list[LinearConstraint]:
    """``eps_C >= 0`` off ``D``, when ``G/N`` is verified for every ``1 != N <= A``."""
    for N in groups.subgroups_of_cyclic(A):
        if N.order > 1 and not quotient_verified.get(N.members, False):
            return []
    cd = conjugacy_data(G)
    return [make_constraint({C: 1}, 0, GE, f"outside D nonneg [{cd.labels[C]}]", variables)
            for C in variables if cd.rep[C] not in D]


def p_part_zeros(G: GroupTable, chain: PAChain, p: int, gate_open: bool,
                 variables: Sequence[int]) -> list[LinearConstraint]:
    """Zero the classes whose ``p``-part is not conjugate to that of ``u``.

    With ``m = p^v * r`` the ``p``-part of ``u`` is a power of ``v = u^r`` coprime
    to ``p``, so the premise needs ``u^r`` to be an indicator at some class
    ``X``; then ``g_p`` is conjugate to ``u_p`` iff ``g^r`` lies in ``X``.
    """
    m = chain.m
    if not gate_open or m % p:
        return []
    _, r = groups.p_split(m, p)
    if r == 1:
        return []
    X = indicator_class(chain[r])
    if X is None:
        return []
    cd = conjugacy_data(G)
    return [make_constraint({C: 1}, 0, EQ, f"p-part zero [p={p}; {cd.labels[C]}]", variables)
            for C in variables if cd.power_map(C, r) != X]


def k_trace_equalities(G: GroupTable, D: Subgroup, family: Sequence[KInduced],
                       hypothesis: bool, variables: Sequence[int]) -> list[LinearConstraint]:
    """``|C_G(x)| eps_x(u) = sum_K Tr_{Q_K/Q}(conj(psi_K(x)) psi_K^G(u))`` for ``x`` in ``D``."""
    if not hypothesis:
        return []
    cd = conjugacy_data(G)
    out = []
    for X, forms in _k_trace_forms(G, D.members, tuple(id(f) for f in family), tuple(family)):
        coeffs = {X: Fraction(cd.centralizer_order[X])}
        for C, v in forms.items():
            coeffs[C] = coeffs.get(C, Fraction(0)) - v
        c = make_constraint(coeffs, 0, EQ, f"k-trace [x in {cd.labels[X]}; |K-family|={len(family)}]",
                            variables)
        if not c.trivially_true():
            out.append(c)
    return out


@functools.lru_cache(maxsize=None)
def _k_trace_forms(G: GroupTable, D_members: tuple, _ids: tuple, family: tuple):
    cd = conjugacy_data(G)
    Dset = set(D_members)
    out = []
    for X, cls in enumerate(cd.classes):
        if cls[0] not in Dset:
            continue
        x = cls[0]
        forms: dict[int, Fraction] = {}
        for k in family:
            cx = k.psi(x).conjugate()
            for C, v in enumerate(k.chi.values):
                if v != 0:
                    forms[C] = forms.get(C, Fraction(0)) + trace_in(cx * v, k.index)
        out.append((X, forms))
    return tuple(out)


def order_candidates(G: GroupTable, N: Subgroup | None = None) -> list[int]:
    """Divisors ``> 1`` of ``exp(G)``; inside an ``omega_N``-trivial context only
    orders whose primes all divide ``|N|``."""
    out = groups.divisors(G.exponent)[1:]
    if N is not None:
        out = [m for m in out if all(N.order % p == 0 for p in groups.prime_factors(m))]
    return out
