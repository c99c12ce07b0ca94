"""Command-line front end.

Exit status: 0 on success, 1 when a computation finishes with a negative
verdict, 2 on bad input or refused (over-cap) input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import serialize as ser
from .burnside import group_as_biset
from .fusion import FusionError, f_conjugacy, is_saturated
from .groups import GroupError, Hom, is_prime, set_caps
from .idempotent import IterationError, char_idempotent_iterate, char_idempotent_solve
from .spectra import SpectrumError, induced_map, map_basis, reconstruct_fusion, transfer_map

class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    group: str = None
    sylow: int = None
    fusion: str = None
    source: str = None
    target: str = None
    element: str = None
    reference: str = None
    chain: list = field(default_factory=list)
    precision: int = 16
    cap: int = None
    format: str = "text"
    output: str = None


def build_parser():
    ap = argparse.ArgumentParser(prog="fusionsys", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--cap", type=int, help="override the group-order caps")

    def fusion_input(sp):
        sp.add_argument("--fusion", help="fusion system file")
        sp.add_argument("--group", help="ambient group file (use with --sylow)")
        sp.add_argument("--sylow", type=int, metavar="P", help="prime for the Sylow subgroup")

    sp = sub.add_parser("group-info", help="order, subgroups and Sylow subgroup of a group")
    sp.add_argument("--group", required=True)
    sp.add_argument("--sylow", type=int, metavar="P")
    common(sp)
    for name, text in (("fusion", "Hom-set sizes and conjugacy classes"),
                       ("saturation", "check the saturation axioms"),
                       ("idempotent", "solve for the characteristic idempotent")):
        sp = sub.add_parser(name, help=text)
        fusion_input(sp)
        common(sp)
    sp = sub.add_parser("iterate", help="characteristic idempotent mod p^k by iterated powers")
    fusion_input(sp)
    sp.add_argument("--element", help="start from this Burnside element instead of the group biset")
    sp.add_argument("--precision", type=int, default=16)
    common(sp)
    sp = sub.add_parser("maps", help="basis of maps between two classifying spectra")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    common(sp)
    sp = sub.add_parser("reconstruct", help="recover a fusion system from its idempotent")
    fusion_input(sp)
    sp.add_argument("--reference", help="fusion file to compare against (default: the input)")
    common(sp)
    sp = sub.add_parser("functor-check", help="functoriality of induced maps and transfers along a chain")
    sp.add_argument("--chain", nargs="+", required=True,
                    help="fusion files over permutation groups, each group inside the next")
    common(sp)
    return ap


def _fusion(cfg):
    if cfg.fusion:
        return ser.fusion_from_json(cfg.fusion)
    if cfg.group and cfg.sylow:
        if not is_prime(cfg.sylow):
            raise InputError(f"{cfg.sylow} is not prime")
        return ser.fusion_from_json({"ambient": cfg.group, "p": cfg.sylow, "mode": "ambient"})
    raise InputError("give --fusion, or --group with --sylow")


def cmd_group_info(cfg):
    G = ser.group_from_json(cfg.group)
    out = {"order": G.order, "subgroups": len(G.subgroups()),
           "subgroup_classes": len(G.conjugacy_classes_of_subgroups())}
    if cfg.sylow:
        if not is_prime(cfg.sylow):
            raise InputError(f"{cfg.sylow} is not prime")
        P = G.sylow(cfg.sylow)
        out["sylow"] = {"p": cfg.sylow, "order": P.order, "elements": list(P.elements)}
        if G.perms is not None:
            out["sylow"]["cycles"] = [G.cycle_notation(x) for x in P.elements]
    lines = [f"order: {G.order}", f"subgroups: {out['subgroups']} in {out['subgroup_classes']} classes"]
    if cfg.sylow:
        lines.append(f"Sylow {cfg.sylow}-subgroup: order {P.order}, elements {list(P.elements)}")
    return 0, out, lines


def cmd_fusion(cfg):
    F = _fusion(cfg)
    classes, order = f_conjugacy(F)
    sizes = []
    for P in F.subgroups:
        for Q in F.subgroups:
            n = len(F.hom(P, Q))
            if n:
                sizes.append({"P": list(P.elements), "Q": list(Q.elements), "size": n})
    out = {"fusion": ser.fusion_to_json(F), "hom_sizes": sizes,
           "classes": [[list(P.elements) for P in c] for c in classes],
           "subconjugacy": sorted([list(e) for e in order])}
    lines = [f"fusion system over a group of order {F.S.order}, p = {F.p}",
             f"morphisms: {F.morphism_count()}", "Hom-set sizes:"]
    lines += [f"  Hom({s['P']}, {s['Q']}) = {s['size']}" for s in sizes]
    lines.append("conjugacy classes of subgroups:")
    lines += [f"  {i}: " + " ".join(str(list(P.elements)) for P in c) for i, c in enumerate(classes)]
    return 0, out, lines


def cmd_saturation(cfg):
    rep = is_saturated(_fusion(cfg))
    out = rep.as_dict()
    lines = [f"saturated: {str(rep.saturated).lower()}"]
    for w in rep.witnesses:
        extra = f" morphism {w.morphism} N_phi {w.n_phi}" if w.morphism is not None else ""
        lines.append(f"  axiom {w.axiom} at {w.subgroup}: {w.detail}{extra}")
    return (0 if rep.saturated else 1), out, lines


def _report_lines(rep):
    lines = [f"omega = {rep.omega}", f"augmentation: {rep.omega.augmentation()}"]
    for k, v in rep.verdicts().items():
        lines.append(f"  {k}: {'pass' if v.ok else 'FAIL'}"
                     + ("" if v.counterexample is None else f" ({v.counterexample})"))
    lines.append(f"characteristic: {str(rep.characteristic).lower()}")
    return lines


def cmd_idempotent(cfg):
    rep = char_idempotent_solve(_fusion(cfg))
    return (0 if rep.characteristic else 1), ser.report_to_json(rep), _report_lines(rep)


def cmd_iterate(cfg):
    if cfg.precision < 1:
        raise InputError("precision must be at least 1")
    F = _fusion(cfg)
    if cfg.element:
        start = ser.element_from_json(cfg.element)
    else:
        if "ambient" not in F._cache:
            raise InputError("iterate needs --element, or a fusion system given by an ambient group")
        amb, S = F._cache["ambient"]
        start = group_as_biset(amb, S)
    try:
        x = char_idempotent_iterate(start, F, cfg.precision)
    except IterationError as e:
        return 1, {"error": str(e)}, [str(e)]
    modulus = F.p ** cfg.precision
    rep = char_idempotent_solve(F)
    agrees = rep.characteristic and rep.omega.mod(modulus) == x
    out = {"modulus": modulus, "element": ser.element_to_json(x), "agrees_with_solve": agrees}
    lines = [f"omega mod {modulus} = {x}", f"agrees with solve: {str(agrees).lower()}"]
    return (0 if agrees else 1), out, lines


def cmd_maps(cfg):
    F1 = ser.fusion_from_json(cfg.source)
    F2 = ser.fusion_from_json(cfg.target)
    maps, reps, rank = map_basis(F1, F2)
    out = {"rank": rank,
           "representatives": [{"P": list(r.P.elements), "images": list(r.images)} for r in reps],
           "maps": [ser.element_to_json(m.reduced) for m in maps]}
    lines = [f"rank: {rank}"] + [f"  [{list(r.P.elements)}, {list(r.images)}]" for r in reps]
    return 0, out, lines


def cmd_reconstruct(cfg):
    F = _fusion(cfg)
    ref = ser.fusion_from_json(cfg.reference) if cfg.reference else F
    rep = char_idempotent_solve(F)
    if not rep.characteristic:
        return 1, {"error": "no characteristic idempotent"}, ["no characteristic idempotent"]
    R = reconstruct_fusion(rep.omega, F.p)
    equal = R == ref
    out = {"fusion": ser.fusion_to_json(R), "equal_to_reference": equal}
    lines = [f"recovered {R.morphism_count()} morphisms", f"equal to reference: {str(equal).lower()}"]
    return (0 if equal else 1), out, lines


def cmd_functor_check(cfg):
    Fs = [ser.fusion_from_json(f) for f in cfg.chain]
    if len(Fs) < 2:
        raise InputError("a chain needs at least two fusion systems")
    gammas = []
    for A, B in zip(Fs, Fs[1:]):
        if A.S.perms is None or B.S.perms is None:
            raise InputError("chains must consist of permutation groups")
        try:
            gammas.append(Hom(A.S.whole(), B.S, [B.S.perms.index(A.S.perms[x]) for x in A.S.elements]))
        except ValueError:
            raise InputError("each group must lie inside the next") from None
    checks = []
    for i in range(len(Fs)):
        for j in range(i + 1, len(Fs)):
            for k in range(j + 1, len(Fs)):
                g_ij = _chain_map(gammas, i, j)
                g_jk = _chain_map(gammas, j, k)
                g_ik = _chain_map(gammas, i, k)
                ind = (induced_map(g_jk, Fs[j], Fs[k]) @ induced_map(g_ij, Fs[i], Fs[j])).element \
                    == induced_map(g_ik, Fs[i], Fs[k]).element
                tr = (transfer_map(g_ij, Fs[i], Fs[j]) @ transfer_map(g_jk, Fs[j], Fs[k])).element \
                    == transfer_map(g_ik, Fs[i], Fs[k]).element
                checks.append({"chain": [i, j, k], "induced": ind, "transfer": tr})
    for i, g in enumerate(gammas):
        a = induced_map(g, Fs[i], Fs[i + 1])
        t = transfer_map(g, Fs[i], Fs[i + 1])
        eps = (a @ t).element.augmentation()
        want = Fraction(Fs[i + 1].S.order, Fs[i].S.order)
        checks.append({"step": i, "augmentation": str(eps), "expected": str(want), "ok": eps == want})
    ok = all(c.get("induced", True) and c.get("transfer", True) and c.get("ok", True) for c in checks)
    lines = [json.dumps(c, sort_keys=True) for c in checks] + [f"all laws hold: {str(ok).lower()}"]
    return (0 if ok else 1), {"checks": checks, "ok": ok}, lines


def _chain_map(gammas, i, j):
    g = gammas[i]
    for h in gammas[i + 1:j]:
        g = h.compose(g)
    return g


HANDLERS = {
    "group-info": cmd_group_info, "fusion": cmd_fusion, "saturation": cmd_saturation,
    "idempotent": cmd_idempotent, "iterate": cmd_iterate, "maps": cmd_maps,
    "reconstruct": cmd_reconstruct, "functor-check": cmd_functor_check,
}


def run(cfg):
    """Returns (exit status, report dict, text lines)."""
    if cfg.cap is not None:
        set_caps(cfg.cap, cfg.cap)
    try:
        return HANDLERS[cfg.command](cfg)
    except (GroupError, FusionError, SpectrumError, InputError, OSError, KeyError,
            json.JSONDecodeError, ValueError) as e:
        return 2, {"error": str(e)}, [f"error: {e}"]


def main(argv=None):
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    status, report, lines = run(cfg)
    text = ser.dumps(report) if cfg.format == "json" else "\n".join(lines)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if status == 2 and cfg.format == "json":
        print(report["error"], file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
