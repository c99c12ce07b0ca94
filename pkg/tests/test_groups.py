import math

import pytest

from fusionsys.corpus import direct_product, group, small_groups
from fusionsys.groups import (
    CapExceeded, Group, GroupError, Hom, brute_force_homs, enumerate_homs, make_group,
    p_part, set_caps,
)


def test_make_group_table_and_perms():
    Z2 = make_group({"kind": "table", "table": [[0, 1], [1, 0]]})
    assert Z2.order == 2
    S3 = make_group({"kind": "perm", "degree": 3, "generators": [[[1, 2, 3]], [[1, 2]]]})
    assert S3.order == 6
    assert S3.perms == tuple(sorted(S3.perms))


def test_make_group_rejects_bad_input():
    # a(bc) != (ab)c: a Latin square that is not a group
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError):
        make_group({"kind": "table", "table": bad})
    with pytest.raises(GroupError):
        make_group({"kind": "perm", "degree": 3, "generators": [[[1, 1, 2]]]})
    with pytest.raises(GroupError):
        make_group({"kind": "perm", "degree": 3, "generators": [[[1, 4]]]})
    with pytest.raises(GroupError):
        make_group({"kind": "word"})


def test_caps_are_configurable():
    try:
        set_caps(p_group=4, ambient=4)
        with pytest.raises(CapExceeded):
            Group.from_perms(4, [[[1, 2, 3, 4]], [[1, 3]]])
    finally:
        set_caps(p_group=64, ambient=1024)
    assert Group.from_perms(4, [[[1, 2, 3, 4]], [[1, 3]]]).order == 8


def test_subgroup_counts():
    assert len(Group.cyclic(2).subgroups()) == 2
    assert len(group("V4").subgroups()) == 5
    assert len(group("D8").subgroups()) == 10
    assert len(group("Q8").subgroups()) == 6
    assert len(group("S4").subgroups()) == 30


def test_subgroup_order_is_canonical():
    subs = group("D8").subgroups()
    keys = [(-P.order, P.elements) for P in subs]
    assert keys == sorted(keys)
    assert subs[0].order == 8 and subs[-1].order == 1


@pytest.mark.parametrize("G", small_groups() + (group("A4"), group("S4")), ids=lambda G: G.name)
def test_subgroups_closed_under_conjugation(G):
    subs = set(G.subgroups())
    assert all(G.is_subgroup(P.elements) for P in subs)
    for P in subs:
        for g in G.elements:
            assert G.conjugate_subgroup(g, P) in subs


def test_transporter_examples():
    S3 = group("S3")
    C3 = S3.sylow(3)
    assert S3.transporter(C3, C3) == list(S3.elements)
    V4 = group("V4")
    a, b = [P for P in V4.subgroups() if P.order == 2][:2]
    assert V4.transporter(a, b) == []
    D8 = group("D8")
    for K in D8.subgroups():
        assert D8.transporter(D8.trivial(), K) == list(D8.elements)


def test_hom_classes_examples():
    S3 = group("S3")
    C3 = S3.sylow(3)
    homs = S3.hom_classes(C3, C3)
    assert len(homs) == 2
    assert any(h.images == C3.elements for h in homs)
    V4 = group("V4")
    a, b = [P for P in V4.subgroups() if P.order == 2][:2]
    assert V4.hom_classes(a, b) == []


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "S4"])
def test_hom_count_times_centralizer_is_transporter(name):
    G = group(name)
    subs = G.subgroups()
    for H in subs:
        C = G.centralizer(H).order
        for K in subs:
            N = G.transporter(H, K)
            if N:
                assert len(G.hom_classes(H, K)) * C == len(N)


def test_sylow_examples():
    assert group("S3").sylow(3).order == 3
    A4 = group("A4")
    V = A4.sylow(2)
    assert sorted(A4.cycle_notation(x) for x in V.elements) == ["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
    P = group("S4").sylow(2)
    assert P.order == 8
    assert group("S3").sylow(5).order == 1


@pytest.mark.parametrize("name", ["S3", "A4", "S4", "D8"])
def test_sylow_index_coprime(name):
    G = group(name)
    for p in (2, 3, 5):
        P = G.sylow(p)
        assert P.order == p_part(G.order, p)
        assert math.gcd(G.order // P.order, p) == 1
        assert P == G.sylow(p)


def test_enumerate_homs_examples():
    Z2, Z3, Z4 = Group.cyclic(2), Group.cyclic(3), Group.cyclic(4)
    assert len(enumerate_homs(Z2.whole(), Z3)) == 1
    assert len(enumerate_homs(Z2.whole(), Z4)) == 2
    V4, D8 = group("V4"), group("D8")
    inj = enumerate_homs(V4.whole(), D8, injective_only=True)
    assert len(inj) == sum(1 for h in brute_force_homs(V4.whole(), D8) if h.is_injective())
    assert len(inj) == 12


def test_enumerate_homs_matches_brute_force():
    groups = [G for G in small_groups() if G.order <= 8]
    for A in groups:
        for B in groups:
            if A.order * B.order > 64:
                continue
            fast = set(enumerate_homs(A.whole(), B))
            slow = set(brute_force_homs(A.whole(), B))
            assert fast == slow, (A.name, B.name)


def test_hom_operations():
    D8 = group("D8")
    V = [P for P in D8.subgroups() if P.order == 4][0]
    h = enumerate_homs(V, D8, injective_only=True)[-1]
    assert h.is_homomorphism() and h.is_injective()
    inv = h.inverse()
    assert inv.compose(h).images == V.elements
    sub = [P for P in D8.subgroups() if P.order == 2 and P <= V][0]
    assert h.restrict(sub).images == tuple(h(x) for x in sub.elements)
    assert h.kernel().order == 1
    triv = Hom(V, D8, [D8.identity] * 4)
    assert triv.is_trivial() and triv.kernel() == V


def test_as_group_embedding():
    D8 = group("D8")
    for P in D8.subgroups():
        Pg, emb = P.as_group()
        assert Pg.order == P.order
        assert emb.is_homomorphism() and emb.image() == P


def test_direct_product_is_a_group():
    G = direct_product(Group.cyclic(2), Group.cyclic(4))
    Group(G.table)  # re-validates associativity
    assert G.order == 8 and len(G.subgroups()) == 8
