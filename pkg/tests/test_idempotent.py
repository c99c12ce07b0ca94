from fractions import Fraction

import pytest
from helpers import random_element, rng

from fusionsys.burnside import (
    BurnsideElement, group_as_biset, identity, in_fusion_span, is_f_stable, module,
)
from fusionsys.corpus import group, group_fusion, inner, saturated_corpus, v4_swap
from fusionsys.fusion import is_saturated
from fusionsys.idempotent import (
    IterationError, char_idempotent_iterate, char_idempotent_solve, characteristic_idempotent,
    expected_top, find_M, is_idempotent_mod, solve_system, verify_lw,
)
from fusionsys.linalg import determinant, rank
from fusionsys.spectra import pair_classes


def s3_pieces():
    F = group_fusion("S3", 3)
    S = F.S
    m = module(S, S)
    return F, identity(S), m.element(S.whole(), [0, 2, 1])


@pytest.mark.parametrize("name", ["Z2", "Z4", "V4", "D8", "Q8"])
def test_inner_solve_is_identity(name):
    rep = char_idempotent_solve(inner(name))
    assert rep.omega == identity(inner(name).S)
    assert rep.characteristic and rep.top_form.ok


def test_s3_solve():
    F, one, inv = s3_pieces()
    rep = char_idempotent_solve(F)
    assert rep.omega == Fraction(1, 2) * (one + inv)
    assert rep.characteristic


def test_a4_solve_top_part():
    F = group_fusion("A4", 2)
    rep = char_idempotent_solve(F)
    assert rep.characteristic
    assert rep.omega_top == expected_top(F)
    assert rep.omega_top + rep.omega_strict == rep.omega


def test_system_is_square_and_nonsingular():
    for name, F in saturated_corpus() + [("swap", v4_swap())]:
        unknowns, rows, rhs = solve_system(F)
        assert len(rows) == len(unknowns) == len(rhs)
        assert determinant(rows) != 0


def test_system_is_block_triangular():
    F = group_fusion("S4", 2)
    unknowns, rows, rhs = solve_system(F)
    sizes = [b.P.order for b in unknowns]
    # the equations of block i only see classes [P_k, phi] with P_i subconjugate to P_k
    for i, row in enumerate(rows):
        assert all(sizes[j] >= sizes[i] for j, v in enumerate(row) if v)


def test_verify_examples():
    F, one, inv = s3_pieces()
    assert verify_lw(identity(inner("D8").S), inner("D8")).characteristic
    assert verify_lw(Fraction(1, 2) * (one + inv), F).characteristic
    rep = verify_lw(one, F)
    assert not rep.property_b1.ok
    assert rep.property_b1.counterexample["images"] == [0, 2, 1]


def test_find_M_examples():
    assert find_M(identity(group("D8")), 2) == 1
    F, one, inv = s3_pieces()
    assert find_M(one + inv, 3) == 2
    A4 = group("A4")
    x = group_as_biset(A4, A4.sylow(2))
    M = find_M(x, 2)
    assert is_idempotent_mod(x.power(M), 2)


def test_iterate_examples():
    D8 = inner("D8")
    assert char_idempotent_iterate(identity(D8.S), D8, 8) == identity(D8.S)
    F, one, inv = s3_pieces()
    x = char_idempotent_iterate(one + inv, F, 5)
    assert x == 122 * (one + inv)
    A4 = group("A4")
    Fa = group_fusion("A4", 2)
    x = char_idempotent_iterate(group_as_biset(A4, A4.sylow(2)), Fa, 16)
    assert x == characteristic_idempotent(Fa).mod(2 ** 16)


def test_iterate_rejects_bad_input():
    F, one, inv = s3_pieces()
    with pytest.raises(IterationError, match="stability"):
        char_idempotent_iterate(one, F, 4)
    with pytest.raises(IterationError, match="integer"):
        char_idempotent_iterate(Fraction(1, 2) * (one + inv), F, 4)
    with pytest.raises(IterationError, match="augmentation"):
        char_idempotent_iterate(3 * (one + inv), F, 4)
    with pytest.raises(ValueError):
        char_idempotent_iterate(one + inv, F, 0)


@pytest.mark.parametrize("name,F", saturated_corpus())
def test_solve_is_unique_among_perturbations(name, F):
    r = rng(7)
    w = characteristic_idempotent(F)
    B = w.module.basis()
    for _ in range(20):
        b = r.choice(B)
        d = Fraction(r.choice([-1, 1]) * r.randint(1, 9), r.randint(1, 5))
        x = w + BurnsideElement(w.module, {b: d})
        rep = verify_lw(x, F)
        assert not (rep.idempotent.ok and rep.property_a.ok and rep.property_b1.ok and rep.property_c.ok)


@pytest.mark.parametrize("name,F", saturated_corpus() + [("swap", v4_swap())])
def test_stability_sides_imply_each_other(name, F):
    rep = char_idempotent_solve(F)
    assert rep.property_b1.ok == rep.property_b2.ok


@pytest.mark.parametrize("name,F", saturated_corpus())
def test_omega_basis_is_independent(name, F):
    w = characteristic_idempotent(F)
    m = w.module
    reps = [c[0] for c in pair_classes(F, F)]
    vecs = [(w @ BurnsideElement(m, {b: 1}) @ w).vector() for b in reps]
    assert rank(vecs) == len(reps)


def test_powers_mod_p_lift():
    r = rng(8)
    for S, p in ((group("D8"), 2), (group("Z3"), 3), (group("Q8"), 2), (group("V4"), 2)):
        m = module(S, S)
        for _ in range(5):
            x = random_element(m, r, terms=3, lo=0, hi=5)
            if not x:
                continue
            y = x.power(find_M(x, p), p)
            assert is_idempotent_mod(y, p)
            z = y.power(p)
            assert is_idempotent_mod(z, p ** 2)


@pytest.mark.parametrize("name,F", saturated_corpus())
def test_products_of_characteristic_elements(name, F):
    w = characteristic_idempotent(F)
    x = 2 * w
    y = x @ x
    assert in_fusion_span(y, F) == []
    assert is_f_stable(y, F, "right")[0] and is_f_stable(y, F, "left")[0]
    assert y.augmentation() == x.augmentation() ** 2


def test_group_biset_products_stay_characteristic():
    for name, p in (("S3", 3), ("A4", 2), ("S4", 2)):
        G = group(name)
        F = group_fusion(name, p)
        x = group_as_biset(G, G.sylow(p))
        y = x @ x
        assert in_fusion_span(y, F) == []
        assert is_f_stable(y, F, "right")[0] and is_f_stable(y, F, "left")[0]
        assert y.augmentation() == x.augmentation() ** 2


@pytest.mark.parametrize("k", [1, 3, 8])
def test_iterate_agrees_with_solve(k):
    for name, p in (("S3", 3), ("A4", 2), ("S4", 2)):
        G = group(name)
        F = group_fusion(name, p)
        x = char_idempotent_iterate(group_as_biset(G, G.sylow(p)), F, k)
        assert x == characteristic_idempotent(F).mod(p ** k)


def test_swap_report_is_consistent():
    F = v4_swap()
    assert not is_saturated(F).saturated
    rep = char_idempotent_solve(F)
    failed = [k for k, v in rep.verdicts().items() if not v.ok]
    assert rep.characteristic == (not any(k != "top_form" for k in failed))
    if not rep.characteristic:
        with pytest.raises(ValueError):
            characteristic_idempotent(F)
