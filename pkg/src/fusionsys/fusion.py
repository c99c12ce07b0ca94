"""Fusion systems over finite p-groups, stored extensionally.

A fusion system keeps, for every subgroup P of S, the set of morphisms
P -> S it contains.  Hom_F(P, Q) is the subset with image inside Q.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .groups import GroupError, Hom, Subgroup, prime_power_base


class FusionError(ValueError):
    pass


class FusionSystem:
    def __init__(self, S, p, homs, name=None):
        if not S.is_p_group(p):
            raise FusionError(f"group of order {S.order} is not a {p}-group")
        self.S = S
        self.p = p
        self.name = name
        self.homs = {P: frozenset(h.with_target(S) for h in homs.get(P, ())) for P in S.subgroups()}
        self._cache = {}

    def __eq__(self, other):
        return (isinstance(other, FusionSystem) and self.S == other.S
                and self.p == other.p and self.homs == other.homs)

    def __hash__(self):
        return hash((self.S, self.p, frozenset(self.homs.items())))

    def __repr__(self):
        return f"FusionSystem({self.name or self.S!r}, p={self.p})"

    @property
    def subgroups(self):
        return self.S.subgroups()

    def hom(self, P, Q=None):
        """Hom_F(P, Q) as a sorted list (Q defaults to S)."""
        hs = self.homs[P]
        if Q is not None:
            hs = [h for h in hs if set(h.images) <= Q.members]
        return sorted(hs, key=Hom.sort_key)

    def contains(self, phi):
        return phi.with_target(self.S) in self.homs.get(phi.domain, ())

    def aut(self, P):
        return [h for h in self.hom(P) if set(h.images) == P.members]

    def morphism_count(self):
        return sum(len(v) for v in self.homs.values())

    def conjugates(self, P):
        """The F-conjugacy class of P, in canonical order."""
        return sorted({h.image() for h in self.homs[P]}, key=Subgroup.sort_key)

    def validate(self):
        """Check the closure axioms; returns a list of problems (empty if valid)."""
        S, problems = self.S, []
        for P in self.subgroups:
            have = self.homs[P]
            for h in S.hom_classes(P, S.whole()):
                if h not in have:
                    problems.append(f"missing conjugation {h}")
            for h in have:
                if not h.is_injective() or not h.is_homomorphism():
                    problems.append(f"not an injective homomorphism: {h}")
                    continue
                inv = h.inverse()
                if inv not in self.homs[inv.domain]:
                    problems.append(f"inverse missing for {h}")
                for Q in self.subgroups:
                    if Q <= P and h.restrict(Q) not in self.homs[Q]:
                        problems.append(f"restriction of {h} to {Q} missing")
                img = h.image()
                for k in self.homs[img]:
                    if k.compose(h) not in have:
                        problems.append(f"composite {k} o {h} missing")
        return problems


def _conjugation_homs(G, S_sub, emb_inv, S_standalone):
    """Hom_G(P, S) for subgroups P of the standalone copy of S."""
    homs = {}
    for P in S_standalone.subgroups():
        P_in_G = Subgroup(G, (S_sub.elements[x] for x in P.elements))
        maps = set()
        for g in G.transporter(P_in_G, S_sub):
            maps.add(Hom(P, S_standalone, [emb_inv[G.conj(g, S_sub.elements[x])] for x in P.elements]))
        homs[P] = maps
    return homs


def fusion_of_group(G, S, p, name=None):
    """F_S(G) on a standalone copy of the Sylow subgroup S <= G.

    Label i of the copy is the i-th smallest member of S (see Subgroup.as_group).
    """
    if S.group != G:
        raise FusionError("S must be a subgroup of G")
    if S.order != _p_part(G.order, p) or not _is_p(S.order, p):
        raise FusionError(f"subgroup of order {S.order} is not a Sylow {p}-subgroup of a group of order {G.order}")
    Sg, _ = S.as_group()
    emb_inv = {x: i for i, x in enumerate(S.elements)}
    F = FusionSystem(Sg, p, _conjugation_homs(G, S, emb_inv, Sg), name=name)
    F._cache["ambient"] = (G, S)
    return F


def _p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _is_p(n, p):
    return n == 1 or prime_power_base(n) == p


def inner_fusion(S, p=None, name=None):
    p = p or prime_power_base(S.order)
    if p is None or not S.is_p_group(p):
        raise FusionError(f"group of order {S.order} is not a p-group")
    homs = {P: set(S.hom_classes(P, S.whole())) for P in S.subgroups()}
    return FusionSystem(S, p, homs, name=name)


def generate_fusion(S, p, generators, name=None):
    """Smallest fusion system on S containing all S-conjugations and ``generators``."""
    if not S.is_p_group(p):
        raise FusionError(f"group of order {S.order} is not a {p}-group")
    subs = S.subgroups()
    sub_set = set(subs)
    known = {P: set() for P in subs}
    by_image = {P: set() for P in subs}
    queue = deque()

    def add(h):
        h = h.with_target(S)
        if h not in known[h.domain]:
            known[h.domain].add(h)
            by_image[h.image()].add(h)
            queue.append(h)

    for g in generators:
        if g.domain not in sub_set or g.domain.group != S:
            raise FusionError("generator domain is not a subgroup of S")
        if not g.is_homomorphism():
            raise FusionError(f"generator {g} is not a homomorphism")
        if not g.is_injective():
            raise FusionError(f"generator {g} is not injective")
    for P in subs:
        for h in S.hom_classes(P, S.whole()):
            add(h)
    for g in generators:
        add(g)
    while queue:
        h = queue.popleft()
        add(h.inverse())
        for Q in subs:
            if Q < h.domain:
                add(h.restrict(Q))
        for k in list(known[h.image()]):
            add(k.compose(h))
        for k in list(by_image[h.domain]):
            add(h.compose(k))
    return FusionSystem(S, p, known, name=name)


# -- saturation -------------------------------------------------------------


@dataclass
class Witness:
    axiom: str
    subgroup: list
    detail: str
    morphism: list = None
    n_phi: list = None

    def as_dict(self):
        d = {"axiom": self.axiom, "subgroup": self.subgroup, "detail": self.detail}
        if self.morphism is not None:
            d["morphism"] = self.morphism
        if self.n_phi is not None:
            d["N_phi"] = self.n_phi
        return d


@dataclass
class SaturationReport:
    saturated: bool
    witnesses: list = field(default_factory=list)

    def as_dict(self):
        return {"saturated": self.saturated, "witnesses": [w.as_dict() for w in self.witnesses]}


def automizer(S, P):
    """Aut_S(P) as a set of Homs P -> S."""
    return set(S.hom_classes(P, P))


def extender_subgroup(F, phi):
    """N_phi: elements of N_S(P) whose conjugation, moved along phi, is an S-conjugation."""
    S, P = F.S, phi.domain
    target = phi.image()
    aut_s = {tuple(h.images) for h in automizer(S, target)}
    inv = phi.inverse()
    members = []
    for g in S.normalizer(P).elements:
        moved = tuple(phi(S.conj(g, inv(y))) for y in target.elements)
        if moved in aut_s:
            members.append(g)
    return Subgroup(S, members)


def is_saturated(F):
    S, p, out = F.S, F.p, []
    norm = {P: S.normalizer(P).order for P in F.subgroups}
    cent = {P: S.centralizer(P).order for P in F.subgroups}
    for P in F.subgroups:
        cls = F.conjugates(P)
        fully_norm = norm[P] == max(norm[Q] for Q in cls)
        fully_cent = cent[P] == max(cent[Q] for Q in cls)
        if fully_norm:
            if not fully_cent:
                out.append(Witness("I", list(P.elements), "fully normalized but not fully centralized"))
            index = len(F.aut(P)) // len(automizer(S, P))
            if index % p == 0:
                out.append(Witness("I", list(P.elements),
                                   f"[Aut_F(P):Aut_S(P)] = {index} is divisible by {p}"))
    for P in F.subgroups:
        for phi in F.hom(P):
            img = phi.image()
            if cent[img] != max(cent[Q] for Q in F.conjugates(img)):
                continue
            N = extender_subgroup(F, phi)
            if not any(e.restrict(P) == phi for e in F.homs[N]):
                out.append(Witness("II", list(P.elements), "morphism does not extend over N_phi",
                                   morphism=list(phi.images), n_phi=list(N.elements)))
    return SaturationReport(not out, out)


# -- conjugacy ----------------------------------------------------------------


def f_conjugacy(F):
    """(classes, order): classes are lists of subgroups, canonical order, and
    ``order`` is the set of index pairs (i, j) with class i F-subconjugate to class j."""
    seen, classes = set(), []
    for P in F.subgroups:
        if P not in seen:
            cls = F.conjugates(P)
            seen.update(cls)
            classes.append(cls)
    order = set()
    for i, ci in enumerate(classes):
        imgs = {h.image() for h in F.homs[ci[0]]}
        for j, cj in enumerate(classes):
            if any(Q <= P for Q in imgs for P in cj):
                order.add((i, j))
    return classes, order


def out_f_s(F):
    """(order of Out_F(S), coset representatives of Aut_S(S) in Aut_F(S))."""
    S = F.S
    W = S.whole()
    inner = list(automizer(S, W))
    reps, covered = [], set()
    for a in F.aut(W):
        if a in covered:
            continue
        reps.append(a)
        covered.update(a.compose(c) for c in inner)
    return len(reps), reps


# -- fusion-preserving maps ----------------------------------------------------


def is_fusion_preserving(gamma, F1, F2):
    """Return (True, {phi: gamma_hat(phi)}) or (False, counterexample phi)."""
    S1, S2 = F1.S, F2.S
    if gamma.domain != S1.whole() or gamma.target != S2:
        raise FusionError("gamma must be a map S1 -> S2")
    if not gamma.is_homomorphism():
        raise GroupError("gamma is not a homomorphism")
    hat = {}
    for P in F1.subgroups:
        gP = Subgroup(S2, (gamma(x) for x in P.elements))
        allowed = F2.homs[gP]
        for phi in F1.hom(P):
            m = {}
            ok = True
            for x in P.elements:
                y = gamma(phi(x))
                if m.setdefault(gamma(x), y) != y:
                    ok = False
                    break
            h = Hom.from_map(gP, S2, m) if ok else None
            if h is None or h not in allowed:
                return False, phi
            hat[phi] = h
    return True, hat


def is_strongly_closed(F, sub):
    return all(set(phi(x) for x in sub.members & P.members) <= sub.members
               for P in F.subgroups for phi in F.homs[P])

