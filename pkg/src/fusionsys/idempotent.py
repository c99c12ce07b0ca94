"""Characteristic idempotents: an exact linear solve, p-adic iteration of
biset powers, and a verifier for the defining properties."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .burnside import (
    BurnsideElement, in_fusion_span, is_f_stable, module,
)
from .fusion import out_f_s
from .linalg import solve


class IterationError(ValueError):
    pass


@dataclass
class Verdict:
    ok: bool
    counterexample: object = None

    def as_dict(self):
        d = {"ok": self.ok}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


VERDICTS = ("property_a", "property_b1", "property_b2", "property_c", "idempotent", "p_integral")


@dataclass
class IdempotentReport:
    omega: BurnsideElement
    property_a: Verdict
    property_b1: Verdict
    property_b2: Verdict
    property_c: Verdict
    idempotent: Verdict
    p_integral: Verdict
    omega_top: BurnsideElement
    omega_strict: BurnsideElement
    top_form: Verdict = field(default_factory=lambda: Verdict(False))

    @property
    def characteristic(self):
        return all(getattr(self, v).ok for v in VERDICTS)

    def verdicts(self):
        return {v: getattr(self, v) for v in VERDICTS + ("top_form",)}


def _hom_label(phi):
    return {"domain": list(phi.domain.elements), "images": list(phi.images)}


def split_top(omega, F):
    """(part on classes [S, phi] with phi in Aut_F(S), the rest)."""
    S = F.S
    auts = {tuple(a.images) for a in F.aut(S.whole())}
    top, rest = {}, {}
    for k, v in omega.coeffs.items():
        if k.P.order == S.order and k.images in auts:
            top[k] = v
        else:
            rest[k] = v
    return BurnsideElement(omega.module, top), BurnsideElement(omega.module, rest)


def expected_top(F):
    S = F.S
    n, reps = out_f_s(F)
    mod = module(S, S)
    out = mod.zero()
    for a in reps:
        out = out + mod.element(S.whole(), a.images, Fraction(1, n))
    return out


def verify_lw(omega, F):
    S = F.S
    if omega.source != S or omega.target != S:
        raise ValueError("omega must lie in A(S, S) for the group of F")
    outside = in_fusion_span(omega, F)
    a = Verdict(not outside, [_pc_label(k) for k in outside] or None)
    ok1, phi1 = is_f_stable(omega, F, "right")
    ok2, phi2 = is_f_stable(omega, F, "left")
    b1 = Verdict(ok1, _hom_label(phi1) if phi1 is not None else None)
    b2 = Verdict(ok2, _hom_label(phi2) if phi2 is not None else None)
    eps = omega.augmentation()
    c = Verdict(eps == 1, None if eps == 1 else str(eps))
    sq = omega @ omega
    diff = sq - omega
    idem = Verdict(not diff, None if not diff else [_pc_label(k) for k, _ in diff.terms()][:5])
    bad = [_pc_label(k) for k, v in omega.terms() if v.denominator % F.p == 0]
    pint = Verdict(not bad, bad or None)
    top, strict = split_top(omega, F)
    want = expected_top(F)
    tf = Verdict(top == want, None if top == want else "top part differs from the Out_F(S) average")
    return IdempotentReport(omega, a, b1, b2, c, idem, pint, top, strict, tf)


def _pc_label(pc):
    return {"P": list(pc.P.elements), "images": list(pc.images)}


def solve_system(F):
    """(unknown classes in order, matrix, right-hand side) for the uniqueness system."""
    S = F.S
    mod = module(S, S)
    blocks = []
    for cls in S.conjugacy_classes_of_subgroups():
        P = cls[0]
        incl = mod.canonical(P, P.elements)
        others = {mod.canonical(P, phi.images) for phi in F.hom(P)}
        others.discard(incl)
        blocks.append([incl] + sorted(others, key=lambda b: b.sort_key()))
    unknowns = [b for block in blocks for b in block]
    rows, rhs = [], []
    for i, block in enumerate(blocks):
        # the summed coefficient over the block: 1 for S, 0 below
        rows.append([1 if b in block else 0 for b in unknowns])
        rhs.append(1 if i == 0 else 0)
        base = block[0]
        for q in block[1:]:
            rows.append([mod.mark(b, q) - mod.mark(b, base) for b in unknowns])
            rhs.append(0)
    return unknowns, rows, rhs


def char_idempotent_solve(F):
    unknowns, rows, rhs = solve_system(F)
    sol = solve(rows, rhs)
    omega = BurnsideElement(module(F.S, F.S), dict(zip(unknowns, sol)))
    return verify_lw(omega, F)


def characteristic_idempotent(F):
    """Cached solve; raises if the solved element fails verification."""
    rep = F._cache.get("idempotent")
    if rep is None:
        rep = F._cache["idempotent"] = char_idempotent_solve(F)
    if not rep.characteristic:
        failed = [v for v in VERDICTS if not getattr(rep, v).ok]
        raise ValueError(f"no characteristic idempotent: failed {', '.join(failed)}")
    return rep.omega


def is_idempotent_mod(x, n):
    return (x @ x).mod(n) == x.mod(n)


def find_M(omega, p):
    """Smallest multiple M of the period t with M >= N, where omega^N = omega^(N+t) mod p."""
    if not omega.is_integral():
        raise ValueError("find_M needs integer coefficients")
    base = omega.mod(p)
    seen = {}
    x, n = base, 1
    while True:
        key = frozenset(x.coeffs.items())
        if key in seen:
            N = seen[key]
            t = n - N
            return -(-N // t) * t
        seen[key] = n
        x = (x @ base).mod(p)
        n += 1


def _mult_order(a, p):
    a %= p
    k, x = 1, a
    while x != 1:
        x = x * a % p
        k += 1
    return k


def check_iteration_input(omega, F):
    """Name of the first violated precondition, or None."""
    if not omega.is_integral():
        return "integer coefficients"
    if in_fusion_span(omega, F):
        return "support in A_F(S,S)"
    if not is_f_stable(omega, F, "right")[0]:
        return "right F-stability"
    if not is_f_stable(omega, F, "left")[0]:
        return "left F-stability"
    if omega.augmentation() % F.p == 0:
        return "augmentation prime to p"
    return None


def char_idempotent_iterate(omega0, F, precision=16, check=True):
    """omega_F reduced mod p^precision, from an integral F-characteristic element."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    if check:
        bad = check_iteration_input(omega0, F)
        if bad:
            raise IterationError(f"precondition failed: {bad}")
    p = F.p
    modulus = p ** precision
    r = _mult_order(int(omega0.augmentation()), p)
    x = omega0.power(r, modulus) if r > 1 else omega0.mod(modulus)
    M = find_M(x, p)
    x = x.power(M, modulus)
    for _ in range(precision + 2):
        nxt = x.power(p, modulus)
        if nxt == x:
            return x
        x = nxt
    raise IterationError("iteration did not stabilize")
