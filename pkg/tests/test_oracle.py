from __future__ import annotations

import random

import pytest

from zassenhaus import groups, library, oracle
from zassenhaus.abelian import cyclic_kernels, linear_characters
from zassenhaus.characters import induce_linear
from zassenhaus.cyclotomic import root_of_unity
from zassenhaus.oracle import MonomialMatrix


def s3():
    G = library.symmetric3()
    cd = groups.conjugacy_data(G)
    N = groups.cyclic_normal_witness(G)
    return G, cd, N, linear_characters(N)[1]


def test_induced_value_examples():
    G, cd, N, psi = s3()
    c3 = cd.classes[cd.rep_order.index(3)][0]
    t = cd.classes[cd.rep_order.index(2)][0]
    assert oracle.induced_value_direct(G, N, psi, c3) == -1
    assert oracle.induced_value_direct(G, N, psi, t) == 0
    assert oracle.induced_value_direct(G, N, psi, 0) == 2


def test_s3_monomial_matrices():
    G, cd, N, psi = s3()
    rho = oracle.monomial_rep(G, N, psi)
    t = cd.classes[cd.rep_order.index(2)][0]
    assert rho[t].perm == (1, 0)
    assert rho[0].perm == (0, 1) and all(r == (1, 0) for r in rho[0].roots)
    for n in N.members:
        assert rho[n].perm == (0, 1)


def test_monomial_rep_is_a_homomorphism_affording_the_induced_character(corpus):
    for name in ("D8", "Q8", "C7:C3", "D12", "SD16", "C4:C4"):
        G = corpus[name]
        cd = groups.conjugacy_data(G)
        for N in groups.normal_subgroups(G):
            if not N.is_abelian() or N.order == 1:
                continue
            for psi in linear_characters(N):
                rho = oracle.monomial_rep(G, N, psi)
                chi = induce_linear(G, N, psi)
                for g in range(G.order):
                    assert rho[g].trace() == chi[int(cd.class_of[g])]
                    assert rho[g].trace() == oracle.induced_value_direct(G, N, psi, g)
                for g in range(0, G.order, 3):
                    for h in range(G.order):
                        assert rho[g] @ rho[h] == rho[int(G.mul[g, h])]


def test_eigen_multiplicity_examples():
    ident = MonomialMatrix((0, 1, 2), ((1, 0),) * 3)
    assert oracle.eigen_mults_cycles(ident, (1, 0)) == 3
    one = MonomialMatrix((0,), ((3, 1),))
    assert oracle.eigen_mults_cycles(one, (3, 1)) == 1
    assert oracle.eigen_mults_cycles(one, (3, 2)) == 0
    swap = MonomialMatrix((1, 0), ((1, 0), (1, 0)))
    assert oracle.eigen_mults_cycles(swap, (2, 1)) == 1
    assert oracle.eigen_mults_cycles(swap, (1, 0)) == 1
    assert oracle.eigen_mults_cycles(swap, (5, 1)) == 0


def test_eigen_multiplicities_sum_to_dimension(corpus):
    for name in ("D16", "Q16", "C7:C3", "Dic12"):
        G = corpus[name]
        N = groups.cyclic_normal_witness(G)
        for psi in linear_characters(N):
            rho = oracle.monomial_rep(G, N, psi)
            for g in range(G.order):
                m = int(G.elt_order[g])
                M = rho[g]
                assert sum(oracle.eigen_mults_cycles(M, (m, k)) for k in range(m)) == M.dim
                # the sum of eigenvalues with multiplicity is the trace
                total = sum((root_of_unity(m, k).scale(oracle.eigen_mults_cycles(M, (m, k)))
                             for k in range(m)), root_of_unity(1, 0).scale(0))
                assert total == M.trace()


def test_epsilon_trace_examples():
    G, cd, N, psi = s3()
    x = cd.classes[cd.rep_order.index(3)][0]
    lhs, rhs = oracle.epsilon_traza_sides(G, N, {x: 1}, x)
    # C_G(x) = C_N(x) = N for a 3-cycle
    assert lhs == rhs == 1
    t = cd.classes[cd.rep_order.index(2)][0]
    assert oracle.epsilon_traza_sides(G, N, {t: 3, 0: -2}, x) == (0, 0)
    rng = random.Random(7)
    for _ in range(100):
        r = oracle.random_sparse_element(G, rng)
        assert len(r) <= 6 and all(-3 <= v <= 3 and v for v in r.values())
        assert oracle.epsilon_traza_check(G, N, r, x)
    with pytest.raises(ValueError):
        oracle.epsilon_traza_sides(G, N, {x: 1}, t)


@pytest.mark.parametrize("H,count", [
    (library.cyclic(4), 3),
    (library.direct_product(library.cyclic(2), library.cyclic(2)), 5),
    (library.direct_product(library.cyclic(2), library.cyclic(4)), 8),
    (library.cyclic(12), 6),
])
def test_subgroup_counts(H, count):
    subs = oracle.subgroup_enum(groups.whole(H))
    assert len(subs) == count
    assert len({S.members for S in subs}) == count


def test_subgroup_enum_validates_cyclic_kernels(corpus):
    for name in ("C4xC2", "C2^3", "C4xC4", "C3xC3"):
        N = groups.whole(corpus[name])
        expected = [S for S in oracle.subgroup_enum(N)
                    if groups.quotient(N.parent, S)[0].order in
                    {int(o) for o in groups.quotient(N.parent, S)[0].elt_order}]
        assert {S.members for S in expected} == {K.members for K in cyclic_kernels(N)}


def test_subgroup_enum_budget(corpus):
    with pytest.raises(ValueError):
        oracle.subgroup_enum(groups.whole(library.cyclic(70)))


def test_identity_replay():
    G = library.symmetric3()
    rep = oracle.identity_replay(G)
    assert rep.ok and rep.checked > 0 and rep.skipped == 3
    # C4:C4 has an empty kernel family: nothing to replay
    empty = oracle.identity_replay(library.small_groups()["C4:C4"])
    assert empty.ok and empty.checked == 0
    assert oracle.identity_replay(library.alternating4()).checked == 0
