"""JSON encodings for groups, fusion systems, Burnside elements and reports."""
from __future__ import annotations

import json
import os
from collections import deque
from fractions import Fraction

from .burnside import BurnsideElement, module
from .fusion import FusionError, fusion_of_group, generate_fusion
from .groups import GroupError, Hom, Subgroup, group_spec, make_group


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_ref(ref, base_dir):
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        with open(path) as fh:
            return json.load(fh), os.path.dirname(path)
    return ref, base_dir


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


# -- groups ---------------------------------------------------------------------


def group_from_json(ref, base_dir="."):
    data, _ = _load_ref(ref, base_dir)
    return make_group(data)


def group_to_json(G):
    return group_spec(G)


def element_label(G, x):
    """An element given as an int label, or as cycles for permutation groups."""
    if isinstance(x, int):
        if not 0 <= x < G.order:
            raise GroupError(f"label {x} out of range")
        return x
    return G.label_of_cycles(x)


def hom_from_pairs(source, target, domain, images):
    """The homomorphism on <domain> sending domain[i] to images[i]."""
    if len(domain) != len(images):
        raise GroupError("domain and images differ in length")
    m = {source.identity: target.identity}
    for x, y in zip(domain, images):
        if m.setdefault(x, y) != y:
            raise GroupError("images are inconsistent")
    gens = list(zip(domain, images))
    queue = deque(m)
    while queue:
        x = queue.popleft()
        for g, tg in gens:
            y = source.table[x][g]
            ty = target.table[m[x]][tg]
            if y in m:
                if m[y] != ty:
                    raise GroupError("images do not define a homomorphism")
            else:
                m[y] = ty
                queue.append(y)
    return Hom.from_map(Subgroup(source, m), target, m)


# -- fusion systems --------------------------------------------------------------


def fusion_from_json(ref, base_dir="."):
    data, base_dir = _load_ref(ref, base_dir)
    p = int(data["p"])
    mode = data.get("mode", "generators")
    name = data.get("name")
    if mode == "ambient":
        G = group_from_json(data["ambient"], base_dir)
        if "group" in data:
            S0 = group_from_json(data["group"], base_dir)
            if S0.perms is None or G.perms is None:
                raise FusionError("an explicit Sylow subgroup needs permutation groups")
            try:
                S = Subgroup(G, [G.perms.index(q) for q in S0.perms])
            except ValueError:
                raise FusionError("group is not contained in the ambient group") from None
        else:
            S = G.sylow(p)
        return fusion_of_group(G, S, p, name=name)
    if mode == "generators":
        S = group_from_json(data["group"], base_dir)
        gens = []
        for g in data.get("generators", []):
            dom = [element_label(S, x) for x in g["domain"]]
            img = [element_label(S, x) for x in g["images"]]
            h = hom_from_pairs(S, S, dom, img)
            if h.domain not in set(S.subgroups()):
                raise FusionError("generator domain is not a subgroup")
            gens.append(h)
        return generate_fusion(S, p, gens, name=name)
    raise FusionError(f"unknown fusion mode {mode!r}")


def fusion_to_json(F):
    morphisms = []
    for P in F.subgroups:
        for h in F.hom(P):
            morphisms.append({"domain": list(P.elements), "images": list(h.images)})
    out = {"group": group_spec(F.S), "p": F.p, "mode": "generators", "generators": morphisms}
    if F.name:
        out["name"] = F.name
    return out


# -- Burnside elements --------------------------------------------------------------


def _frac(s):
    return str(Fraction(s))


def element_to_json(x):
    terms = []
    for k, v in x.terms():
        psi = dict(zip(k.P.elements, k.images))
        terms.append({"P": list(k.P.elements),
                      "psi": {str(g): psi[g] for g in k.P.generators},
                      "coeff": f"{v.numerator}/{v.denominator}"})
    return {"source": group_spec(x.source), "target": group_spec(x.target), "terms": terms}


def element_from_json(ref, base_dir="."):
    data, base_dir = _load_ref(ref, base_dir)
    S1 = group_from_json(data["source"], base_dir)
    S2 = group_from_json(data["target"], base_dir)
    mod = module(S1, S2)
    out = {}
    for t in data["terms"]:
        P = Subgroup(S1, t["P"])
        if not S1.is_subgroup(P.elements):
            raise GroupError(f"{t['P']} is not a subgroup")
        psi = t["psi"]
        dom = [int(g) for g in psi]
        h = hom_from_pairs(S1, S2, dom, [psi[g] for g in psi])
        if h.domain != P:
            raise GroupError("psi generators do not generate P")
        pc = mod.canonical(P, h.images)
        out[pc] = out.get(pc, 0) + Fraction(t["coeff"])
    return BurnsideElement(mod, out)


# -- reports --------------------------------------------------------------------------


def report_to_json(rep):
    return {
        "characteristic": rep.characteristic,
        "verdicts": {k: v.as_dict() for k, v in rep.verdicts().items()},
        "omega": element_to_json(rep.omega),
        "omega_top": element_to_json(rep.omega_top),
        "omega_strict": element_to_json(rep.omega_strict),
        "augmentation": _frac(rep.omega.augmentation()),
    }


def spectrum_map_to_json(m):
    return {
        "source_fusion": m.source_fusion.name or "F1",
        "target_fusion": m.target_fusion.name or "F2",
        "reduced": element_to_json(m.reduced),
    }
