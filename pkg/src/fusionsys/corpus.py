"""Small groups and fusion systems used by the tests, the acceptance suite and the CLI."""
from functools import lru_cache

from .fusion import fusion_of_group, generate_fusion, inner_fusion
from .groups import Group, Hom

PERM_GROUPS = {
    "Z2": (2, [[[1, 2]]]),
    "Z3": (3, [[[1, 2, 3]]]),
    "Z4": (4, [[[1, 2, 3, 4]]]),
    "V4": (4, [[[1, 2], [3, 4]], [[1, 3], [2, 4]]]),
    "D8": (4, [[[1, 2, 3, 4]], [[1, 3]]]),
    "Q8": (8, [[[1, 2, 3, 4], [5, 6, 7, 8]], [[1, 5, 3, 7], [2, 8, 4, 6]]]),
    "S3": (3, [[[1, 2, 3]], [[1, 2]]]),
    "A4": (4, [[[1, 2, 3]], [[1, 2], [3, 4]]]),
    "S4": (4, [[[1, 2, 3, 4]], [[1, 2]]]),
}


@lru_cache(maxsize=None)
def group(name):
    degree, gens = PERM_GROUPS[name]
    return Group.from_perms(degree, gens, name=name)


@lru_cache(maxsize=None)
def inner(name):
    G = group(name)
    return inner_fusion(G, name=f"F_{name}")


@lru_cache(maxsize=None)
def group_fusion(name, p):
    G = group(name)
    return fusion_of_group(G, G.sylow(p), p, name=f"F({name},{p})")


@lru_cache(maxsize=None)
def z2_in_a4():
    """Z/2 = <(1 2)(3 4)> as a standalone group with its (inner) fusion."""
    A4 = group("A4")
    Z = A4.subgroup([A4.label_of_cycles([[1, 2], [3, 4]])])
    return inner_fusion(Z.as_group()[0], 2, name="F_Z2")


@lru_cache(maxsize=None)
def v4_swap():
    """Fusion on V4 generated by one isomorphism between two distinct order-2 subgroups."""
    V4 = group("V4")
    a = V4.label_of_cycles([[1, 2], [3, 4]])
    b = V4.label_of_cycles([[1, 3], [2, 4]])
    A = V4.subgroup([a])
    swap = Hom.from_map(A, V4, {V4.identity: V4.identity, a: b})
    return generate_fusion(V4, 2, [swap], name="V4-swap")


def perm_map(S1, S2):
    """The inclusion S1 -> S2 of permutation groups that share points."""
    return Hom(S1.whole(), S2, [S2.perms.index(S1.perms[x]) for x in S1.elements])


def saturated_corpus():
    """(name, fusion system) pairs: inner systems and group-induced systems."""
    out = [(f"F_{n}", inner(n)) for n in ("Z2", "Z4", "V4", "D8", "Q8")]
    out.append(("F(S3,3)", group_fusion("S3", 3)))
    out.append(("F(A4,2)", group_fusion("A4", 2)))
    out.append(("F(S4,2)", group_fusion("S4", 2)))
    return out


def direct_product(A, B, name=None):
    """A x B with (a, b) labelled a * |B| + b."""
    m = B.order
    table = [[A.table[a1][a2] * m + B.table[b1][b2] for a2 in A.elements for b2 in B.elements]
             for a1 in A.elements for b1 in B.elements]
    return Group(table, name=name, check=False)


@lru_cache(maxsize=None)
def small_groups():
    """One group of each isomorphism type of order at most 8."""
    C = Group.cyclic
    return (
        Group([[0]], name="1"), C(2), C(3), C(4), direct_product(C(2), C(2), "Z2xZ2"), C(5), C(6),
        group("S3"), C(7), C(8), direct_product(C(4), C(2), "Z4xZ2"),
        direct_product(direct_product(C(2), C(2)), C(2), "Z2^3"), group("D8"), group("Q8"),
    )


def oracle_catalogue():
    """The groups used for the exhaustive composition check."""
    names = {"1", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "D8", "Q8"}
    return tuple(G for G in small_groups() if G.name in names)


def clear_caches():
    for f in (group, inner, group_fusion, z2_in_a4, v4_swap, small_groups):
        f.cache_clear()
