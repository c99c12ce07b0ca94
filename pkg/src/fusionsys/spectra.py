"""Maps between classifying spectra, modelled as Burnside elements absorbed
by the characteristic idempotents on both sides.

Equality of maps is equality after dropping the trivial classes [P, 1].
"""
from __future__ import annotations

from dataclasses import dataclass

from .burnside import (
    BurnsideElement, module, pair_subconjugate, restriction_element, transfer_element,
)
from .fusion import FusionSystem, is_fusion_preserving
from .groups import Hom, enumerate_homs
from .idempotent import characteristic_idempotent
from .linalg import rank


class SpectrumError(ValueError):
    pass


@dataclass(eq=False)
class SpectrumMap:
    source_fusion: FusionSystem
    target_fusion: FusionSystem
    element: BurnsideElement

    @property
    def reduced(self):
        return self.element.reduced()

    def __eq__(self, other):
        return (isinstance(other, SpectrumMap) and self.source_fusion == other.source_fusion
                and self.target_fusion == other.target_fusion and self.reduced == other.reduced)

    def __matmul__(self, other):
        """self o other, for other: F1 -> F2 and self: F2 -> F3."""
        if other.target_fusion != self.source_fusion:
            raise SpectrumError("maps are not composable")
        return SpectrumMap(other.source_fusion, self.target_fusion, self.element @ other.element)


def make_map(x, F1, F2):
    if x.source != F1.S or x.target != F2.S:
        raise SpectrumError("element does not run from the group of F1 to the group of F2")
    w1 = characteristic_idempotent(F1)
    w2 = characteristic_idempotent(F2)
    return SpectrumMap(F1, F2, w2 @ x @ w1)


def pair_classes(F1, F2, include_trivial=False):
    """(F1, F2)-conjugacy classes of basis classes of A(S1, S2), each a sorted list."""
    S1, S2 = F1.S, F2.S
    mod = module(S1, S2)
    basis = [b for b in mod.basis() if include_trivial or not b.is_trivial]
    parent = {b: b for b in basis}

    def find(b):
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        return b

    for b in basis:
        P, psi = b.P, b.hom(S2)
        for phi1 in F1.homs[P]:
            back = phi1.inverse()
            img = phi1.image()
            moved = psi.compose(back)
            src = moved.image()
            for phi2 in F2.homs[src]:
                c = mod.canonical(img, [phi2(y) for y in moved.images])
                ra, rb = find(b), find(c)
                if ra != rb:
                    parent[max(ra, rb, key=mod.index)] = min(ra, rb, key=mod.index)
    groups = {}
    for b in basis:
        groups.setdefault(find(b), []).append(b)
    return sorted(groups.values(), key=lambda g: mod.index(g[0]))


def map_basis(F1, F2):
    """(maps, representatives, rank) for the nontrivial (F1, F2)-pair classes."""
    w1 = characteristic_idempotent(F1)
    w2 = characteristic_idempotent(F2)
    mod = module(F1.S, F2.S)
    reps = [cls[0] for cls in pair_classes(F1, F2)]
    maps = [SpectrumMap(F1, F2, w2 @ BurnsideElement(mod, {r: 1}) @ w1) for r in reps]
    r = rank([m.reduced.vector() for m in maps]) if maps else 0
    if r != len(maps):
        raise SpectrumError(f"basis maps are linearly dependent: rank {r} < {len(maps)}")
    return maps, reps, r


def _all_homs(S):
    for P in S.subgroups():
        Pg, emb = P.as_group()
        for h in enumerate_homs(Pg.whole(), S):
            yield P, Hom(P, S, [h(i) for i in range(P.order)])


def reconstruct_fusion(omega, p, name=None):
    """The fusion system whose morphisms phi: P -> S satisfy omega o [P, phi] = omega o [P, incl]."""
    S = omega.source
    homs = {}
    for P, phi in _all_homs(S):
        if P.is_trivial():
            homs.setdefault(P, set()).add(phi)
            continue
        incl = Hom(P, S, P.elements)
        base = (omega @ restriction_element(incl)).reduced()
        if (omega @ restriction_element(phi)).reduced() == base:
            if not phi.is_injective():
                raise SpectrumError(f"non-injective map {phi} passed the reconstruction test")
            homs.setdefault(P, set()).add(phi)
    return FusionSystem(S, p, homs, name=name)


def reconstruct_fusion_transfer(omega, p, name=None):
    """Same as reconstruct_fusion, using transfers on the left of omega."""
    S = omega.source
    homs = {}
    for P, phi in _all_homs(S):
        if not phi.is_injective():
            continue
        if P.is_trivial():
            homs.setdefault(P, set()).add(phi)
            continue
        incl = Hom(P, S, P.elements)
        base = (transfer_element(incl) @ omega).reduced()
        if (transfer_element(phi) @ omega).reduced() == base:
            homs.setdefault(P, set()).add(phi)
    return FusionSystem(S, p, homs, name=name)


def _require_preserving(gamma, F1, F2):
    ok, info = is_fusion_preserving(gamma, F1, F2)
    if not ok:
        raise SpectrumError(f"map is not fusion preserving; counterexample {info}")


def induced_map(gamma, F1, F2):
    _require_preserving(gamma, F1, F2)
    return make_map(module(F1.S, F2.S).element(F1.S.whole(), gamma.images), F1, F2)


def transfer_map(gamma, F1, F2):
    """The wrong-way map F2 -> F1 for an injective fusion-preserving gamma: S1 -> S2."""
    if not gamma.is_injective():
        raise SpectrumError("transfer needs an injective map")
    _require_preserving(gamma, F1, F2)
    x = transfer_element(gamma)
    return make_map(x, F2, F1)


def same_class(b, c, F1, F2):
    return pair_subconjugate(b.hom(F2.S), c.hom(F2.S), F1, F2) == "conjugate"
