import random
from fractions import Fraction

from fusionsys.burnside import BurnsideElement


def random_element(mod, rng, terms=4, lo=-3, hi=3, rational=False, classes=None):
    pool = classes if classes is not None else mod.basis()
    out = {}
    for b in rng.sample(pool, min(terms, len(pool))):
        c = rng.randint(lo, hi)
        if rational:
            c = Fraction(c, rng.randint(1, 4))
        out[b] = c
    return BurnsideElement(mod, out)


def rng(seed=0):
    return random.Random(seed)


def oracle_sweep(groups):
    """Compare symbolic composition with the explicit biset product on every
    basis pair over every triple of groups.  Returns (pairs checked, mismatches).

    For speed each left basis biset is multiplied by the disjoint union of all
    right basis bisets at once; every orbit of the product is traced back to
    the component it came from, which gives the per-pair decompositions."""
    from collections import Counter

    import numpy as np

    from fusionsys import burnside
    from fusionsys.burnside import Biset, compose_classes, module, orbit_classes

    checked, bad = 0, []
    for S1 in groups:
        for S2 in groups:
            m12 = module(S1, S2)
            B12 = m12.basis()
            parts = [Biset.from_class(m12, h) for h in B12]
            U = Biset.disjoint_union(parts)
            comp = np.repeat(np.arange(len(parts)), [X.size for X in parts])
            for S3 in groups:
                m23 = module(S2, S3)
                for k in m23.basis():
                    Z = Biset.from_class(m23, k).product(U)
                    reps, classes = orbit_classes(Z)
                    m = len(Z.right_reps)
                    origin = comp[Z.right_reps[reps % m]]
                    found = [Counter() for _ in B12]
                    for i, pc in zip(origin.tolist(), classes):
                        found[i][pc] += 1
                    for h, got in zip(B12, found):
                        checked += 1
                        if compose_classes(m23, k, m12, h) != dict(got):
                            bad.append((S1.name, S2.name, S3.name, k, h))
                burnside._COMPOSE_CACHE.clear()
    return checked, bad
