"""Double Burnside modules A(S1, S2) with exact rational coefficients.

A basis element is the class of a pair (P, psi) with P <= S1 and
psi: P -> S2 a homomorphism, up to conjugation in S1 and in S2.  It stands
for the (S2, S1)-biset S2 x_P S1 in which (s psi(h), t) ~ (s, h t).
Composition goes right to left, like maps: for X in A(S2, S3) and
Y in A(S1, S2), ``X @ Y`` lies in A(S1, S3).
"""
from __future__ import annotations

from collections import Counter, deque
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .groups import Hom, Subgroup, enumerate_homs


class BurnsideError(ValueError):
    pass


class PairClass(NamedTuple):
    """Canonical representative of a pair class; ``images`` is aligned with P.elements."""

    P: Subgroup
    images: tuple

    @property
    def is_trivial(self):
        return len(set(self.images)) == 1

    def hom(self, target):
        return Hom(self.P, target, self.images)

    def gen_images(self):
        m = dict(zip(self.P.elements, self.images))
        return tuple(m[g] for g in self.P.generators)

    def sort_key(self):
        return (self.P.sort_key(), self.gen_images())


_MODULES = {}
_COMPOSE_CACHE = {}


def clear_caches():
    _MODULES.clear()
    _COMPOSE_CACHE.clear()


def module(S1, S2):
    key = (S1, S2)
    m = _MODULES.get(key)
    if m is None:
        m = _MODULES[key] = BurnsideModule(S1, S2)
    return m


class BurnsideModule:
    """Basis, canonical forms and marks for A(S1, S2)."""

    def __init__(self, S1, S2):
        self.S1 = S1
        self.S2 = S2
        self._canon = {}
        self._marks = {}
        self._basis = None
        self._index = None

    def __repr__(self):
        return f"A({self.S1!r}, {self.S2!r})"

    def canonical(self, P, images):
        """Canonical PairClass of the pair (P, psi) with psi given by ``images``."""
        images = tuple(images)
        key = (P.elements, images)
        hit = self._canon.get(key)
        if hit is not None:
            return hit
        S1, S2 = self.S1, self.S2
        psi = dict(zip(P.elements, images))
        best_P, gs = None, []
        for g in S1.elements:
            conj = tuple(sorted(S1.conj(g, x) for x in P.elements))
            if best_P is None or conj < best_P:
                best_P, gs = conj, [g]
            elif conj == best_P:
                gs.append(g)
        Q = Subgroup(S1, best_P)
        gens = Q.generators
        moved = set()
        for g in gs:
            gi = S1.inv[g]
            moved.add(tuple(psi[S1.conj(gi, y)] for y in gens))
        best = None
        for imgs in moved:
            for h in S2.elements:
                cand = tuple(S2.conj(h, y) for y in imgs)
                if best is None or cand < best:
                    best = cand
        full = _extend(Q, S2, best)
        pc = PairClass(Q, full)
        self._canon[key] = pc
        return pc

    def canonical_hom(self, hom):
        return self.canonical(hom.domain, hom.images)

    def basis(self):
        if self._basis is None:
            out = set()
            for cls in self.S1.conjugacy_classes_of_subgroups():
                P = cls[0]
                for h in enumerate_homs(P, self.S2):
                    out.add(self.canonical(P, h.images))
            self._basis = sorted(out, key=PairClass.sort_key)
            self._index = {b: i for i, b in enumerate(self._basis)}
        return self._basis

    def index(self, pc):
        self.basis()
        return self._index[pc]

    def trivial_class(self):
        return self.canonical(self.S1.trivial(), (self.S2.identity,))

    def _mark_data(self, q):
        """For the graph of q: the distinct conjugates (g Q g^-1, conjugated
        generators) with multiplicities, and a count of the S2-conjugates of rho."""
        data = self._marks.get(("data", q))
        if data is None:
            S1, S2 = self.S1, self.S2
            Q = q.P
            rho = dict(zip(Q.elements, q.images))
            gens = Q.generators
            conj = Counter()
            for g in S1.elements:
                cg = tuple(S1.conj(g, x) for x in gens)
                conj[(frozenset(S1.conj(g, x) for x in Q.elements), cg)] += 1
            hs = Counter(tuple(S2.conj(h, rho[x]) for x in gens) for h in S2.elements)
            data = self._marks[("data", q)] = (list(conj.items()), hs)
        return data

    def mark(self, b, q):
        """Fixed points of the graph of q on the biset of b."""
        key = (b, q)
        val = self._marks.get(key)
        if val is not None:
            return val
        conj, hs = self._mark_data(q)
        members = b.P.members
        psi = dict(zip(b.P.elements, b.images))
        count = 0
        for (sub, cg), mult in conj:
            if sub <= members:
                count += mult * hs.get(tuple(psi[y] for y in cg), 0)
        val = Fraction(count, b.P.order)
        self._marks[key] = val
        return val

    def mark_by_transporter(self, b, q):
        """Same count as ``mark``, straight from the transporter (used as a check)."""
        S1, S2 = self.S1, self.S2
        P, Q = b.P, q.P
        psi = dict(zip(P.elements, b.images))
        rho = dict(zip(Q.elements, q.images))
        gens = Q.generators
        count = 0
        for g in S1.transporter(Q, P):
            want = [psi[S1.conj(g, x)] for x in gens]
            for h in S2.elements:
                if all(S2.conj(h, rho[x]) == w for x, w in zip(gens, want)):
                    count += 1
        return Fraction(count, P.order)

    def mark_matrix(self):
        """Rows indexed by classes q, columns by basis elements b: entry mark(b, q)."""
        B = self.basis()
        return [[self.mark(b, q) for b in B] for q in B]

    def element(self, P, images, coeff=1):
        return BurnsideElement(self, {self.canonical(P, images): Fraction(coeff)})

    def zero(self):
        return BurnsideElement(self, {})


def _extend(Q, target, gen_images):
    S = Q.group
    m = {S.identity: target.identity}
    queue = deque([S.identity])
    while queue:
        x = queue.popleft()
        for g, tg in zip(Q.generators, gen_images):
            y = S.table[x][g]
            if y not in m:
                m[y] = target.table[m[x]][tg]
                queue.append(y)
    return tuple(m[x] for x in Q.elements)


def compose_classes(m23, k, m12, h):
    """[K, rho] o [H, psi] as a dict over A(S1, S3), by the double coset formula."""
    key = (m23.S1, m23.S2, m12.S1, k, h)
    hit = _COMPOSE_CACHE.get(key)
    if hit is not None:
        return hit
    S1, S2, S3 = m12.S1, m12.S2, m23.S2
    m13 = module(S1, S3)
    K, H = k.P, h.P
    rho = dict(zip(K.elements, k.images))
    psi = dict(zip(H.elements, h.images))
    psiH = set(h.images)
    out = {}
    covered = set()
    for x in S2.elements:
        if x in covered:
            continue
        for a in K.elements:
            ax = S2.table[a][x]
            for b in psiH:
                covered.add(S2.table[ax][b])
        L, theta = [], []
        for y in H.elements:
            c = S2.conj(x, psi[y])
            if c in K.members:
                L.append(y)
                theta.append(rho[c])
        pc = m13.canonical(Subgroup(S1, L), theta)
        out[pc] = out.get(pc, 0) + 1
    _COMPOSE_CACHE[key] = out
    return out


class BurnsideElement:
    """A finite rational combination of basis classes of A(S1, S2)."""

    __slots__ = ("module", "coeffs")

    def __init__(self, mod, coeffs=None):
        self.module = mod
        self.coeffs = {k: Fraction(v) for k, v in (coeffs or {}).items() if v != 0}

    @property
    def source(self):
        return self.module.S1

    @property
    def target(self):
        return self.module.S2

    def _check(self, other):
        if not isinstance(other, BurnsideElement) or other.module is not self.module:
            raise BurnsideError("elements live in different Burnside modules")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BurnsideElement(self.module, out)

    def __neg__(self):
        return BurnsideElement(self.module, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return BurnsideElement(self.module, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        """self o other."""
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        if self.source != other.target:
            raise BurnsideError("middle groups do not match")
        m13 = module(other.source, self.target)
        out = {}
        for k, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                ab = a * b
                for pc, n in compose_classes(self.module, k, other.module, h).items():
                    out[pc] = out.get(pc, 0) + ab * n
        return BurnsideElement(m13, out)

    def __eq__(self, other):
        return (isinstance(other, BurnsideElement) and self.module is other.module
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*[{list(k.P.elements)},{list(k.images)}]" for k, v in self.terms())

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, pc):
        return self.coeffs.get(pc, Fraction(0))

    def augmentation(self):
        n = self.source.order
        return sum((v * Fraction(n, k.P.order) for k, v in self.coeffs.items()), Fraction(0))

    def mark(self, q):
        return sum((v * self.module.mark(k, q) for k, v in self.coeffs.items()), Fraction(0))

    def marks(self):
        return [self.mark(q) for q in self.module.basis()]

    def reduced(self):
        return BurnsideElement(self.module, {k: v for k, v in self.coeffs.items() if not k.is_trivial})

    def vector(self):
        return [self.coefficient(b) for b in self.module.basis()]

    def is_integral(self):
        return all(v.denominator == 1 for v in self.coeffs.values())

    def is_p_integral(self, p):
        return all(v.denominator % p for v in self.coeffs.values())

    def mod(self, n):
        """Coefficients reduced into 0..n-1; denominators must be invertible mod n."""
        out = {}
        for k, v in self.coeffs.items():
            out[k] = v.numerator * pow(v.denominator, -1, n) % n
        return BurnsideElement(self.module, out)

    def power(self, e, modulus=None):
        if e < 1:
            raise ValueError("exponent must be positive")
        result, base = None, self
        while True:
            if e & 1:
                result = base if result is None else _reduce(result @ base, modulus)
            e >>= 1
            if not e:
                return result
            base = _reduce(base @ base, modulus)


def _reduce(x, modulus):
    return x if modulus is None else x.mod(modulus)


def identity(S):
    return module(S, S).element(S.whole(), S.elements)


def element_of_hom(hom, coeff=1):
    """[P, hom] in A(S1, S2), where P = hom.domain <= S1 and S2 = hom.target."""
    return module(hom.domain.group, hom.target).element(hom.domain, hom.images, coeff)


def restriction_element(phi, S=None):
    """[P, phi]_P^S in A(P, S) for phi: P -> S, with P taken as a standalone group."""
    S = S or phi.target
    P = phi.domain
    Pg, emb = P.as_group()
    return module(Pg, S).element(Pg.whole(), [phi(emb(i)) for i in Pg.elements])


def transfer_element(phi, P=None):
    """[phi(P), phi^-1]_S^P in A(S, P) for an injective phi: P -> S."""
    P = P or phi.domain
    Pg, _ = P.as_group()
    pos = {x: i for i, x in enumerate(P.elements)}
    inv = phi.inverse()
    img = phi.image()
    return module(phi.target, Pg).element(img, [pos[inv(y)] for y in img.elements])


# -- explicit bisets ---------------------------------------------------------


class Biset:
    """A finite (S2, S1)-biset: ``left[s, x]`` is s.x, ``right[x, t]`` is x.t."""

    def __init__(self, S1, S2, left, right, check=True):
        self.S1, self.S2 = S1, S2
        self.left = np.asarray(left, dtype=np.int64).reshape(S2.order, -1)
        self.right = np.asarray(right, dtype=np.int64).reshape(-1, S1.order)
        self.size = self.right.shape[0]
        if check:
            self.validate()

    def validate(self):
        S1, S2, n = self.S1, self.S2, self.size
        L, R = self.left, self.right
        if L.shape[1] != n or L.min(initial=0) < 0 or L.max(initial=0) >= n \
                or R.min(initial=0) < 0 or R.max(initial=0) >= n:
            raise BurnsideError("action tables have the wrong shape")
        pts = np.arange(n)
        if (L[S2.identity] != pts).any() or (R[:, S1.identity] != pts).any():
            raise BurnsideError("identity does not act trivially")
        for s in S2.elements:
            for s2 in S2.elements:
                if (L[s][L[s2]] != L[S2.table[s][s2]]).any():
                    raise BurnsideError("left action is not an action")
        for t in S1.elements:
            for t2 in S1.elements:
                if (R[R[:, t], t2] != R[:, S1.table[t][t2]]).any():
                    raise BurnsideError("right action is not an action")
        for s in S2.elements:
            for t in S1.elements:
                if (L[s][R[:, t]] != R[L[s], t]).any():
                    raise BurnsideError("actions do not commute")
        if not self.left_free():
            raise BurnsideError("left action is not free")

    def left_free(self):
        pts = np.arange(self.size)
        return not any((self.left[s] == pts).any() for s in self.S2.elements if s != self.S2.identity)

    @classmethod
    def from_class(cls, mod, pc):
        """The transitive biset S2 x_P S1 of a basis class."""
        S1, S2 = mod.S1, mod.S2
        P = pc.P
        psi = dict(zip(P.elements, pc.images))
        reps, where = [], {}
        for t in S1.elements:
            if t in where:
                continue
            reps.append(t)
            for h in P.elements:
                where[S1.table[h][t]] = (h, len(reps) - 1)
        # point (s, r) is s * reps[r], numbered s * len(reps) + r
        m = len(reps)
        T2 = np.asarray(S2.table)
        left = (T2[:, :, None] * m + np.arange(m)).reshape(S2.order, -1)
        h_of = np.empty((m, S1.order), dtype=np.int64)
        r_of = np.empty((m, S1.order), dtype=np.int64)
        for r, t0 in enumerate(reps):
            for u in S1.elements:
                h, r2 = where[S1.table[t0][u]]
                h_of[r, u], r_of[r, u] = psi[h], r2
        right = (T2[:, h_of] * m + r_of).reshape(-1, S1.order)
        return cls(S1, S2, left, right, check=False)

    def product(self, other):
        """self x_{S2} other, for self an (S3, S2)-biset and other an (S2, S1)-biset.

        Point x * m + r of the result is x (x) right_reps[r]."""
        if self.S1 != other.S2:
            raise BurnsideError("middle groups do not match")
        S1, S3 = other.S1, self.S2
        # representatives of the left S2-orbits on other, with y = s . reps[r]
        reps, s_of, r_of = [], np.full(other.size, -1), np.full(other.size, -1)
        for y in range(other.size):
            if s_of[y] >= 0:
                continue
            col = other.left[:, y]
            s_of[col] = np.arange(len(col))
            r_of[col] = len(reps)
            reps.append(y)
        m = len(reps)
        # point (x, r) is x (x) reps[r], numbered x * m + r
        left = (self.left[:, :, None] * m + np.arange(m)).reshape(S3.order, -1)
        Y = other.right[reps]
        right = (self.right[:, s_of[Y]] * m + r_of[Y]).reshape(-1, S1.order)
        out = Biset(S1, S3, left, right, check=False)
        out.right_reps = np.array(reps)
        return out

    @classmethod
    def disjoint_union(cls, parts):
        offsets = np.cumsum([0] + [X.size for X in parts])
        left = np.concatenate([X.left + o for X, o in zip(parts, offsets)], axis=1)
        right = np.concatenate([X.right + o for X, o in zip(parts, offsets)], axis=0)
        return cls(parts[0].S1, parts[0].S2, left, right, check=False)

    def fixed_points(self, q):
        """Points x with rho(g) x = x g for all g in Q, where q = (Q, rho)."""
        rho = dict(zip(q.P.elements, q.images))
        ok = np.ones(self.size, dtype=bool)
        for g in q.P.generators:
            ok &= self.left[rho[g]] == self.right[:, g]
        return int(ok.sum())

    def orbit_count(self):
        """Number of left S2-orbits."""
        return self.size // self.S2.order

    def orbit_labels(self):
        """Smallest point of each point's (S2 x S1)-orbit."""
        moves = [self.left[s] for s in self.S2.whole().generators]
        moves += [self.right[:, t] for t in self.S1.whole().generators]
        lab = np.arange(self.size)
        while True:
            new = lab.copy()
            for mv in moves:
                np.minimum.at(new, mv, new)
                new = np.minimum(new, new[mv])
            if (new == lab).all():
                return lab
            lab = new


def orbit_classes(X):
    """Orbit representatives of a left-free biset and the pair class of each orbit."""
    S1, S2 = X.S1, X.S2
    if not X.left_free():
        raise BurnsideError("left action is not free")
    mod = module(S1, S2)
    lab = X.orbit_labels()
    reps = np.flatnonzero(lab == np.arange(X.size))
    # y = s_of[y] . base[y], with base the least point of the left orbit
    base = X.left.min(axis=0)
    bases = np.flatnonzero(base == np.arange(X.size))
    s_of = np.empty(X.size, dtype=np.int64)
    for s in S2.elements:
        s_of[X.left[s, bases]] = s
    # an orbit's least point is also least in its left orbit, so the
    # stabilizer of x0 is the graph of psi on P = {g : x0 g in S2 x0}
    Y = X.right[reps]
    inside = base[Y] == reps[:, None]
    psi = s_of[Y]
    seen, classes = {}, []
    for row_in, row_psi in zip(inside, psi):
        key = (row_in.tobytes(), row_psi[row_in].tobytes())
        pc = seen.get(key)
        if pc is None:
            P = np.flatnonzero(row_in).tolist()
            pc = seen[key] = mod.canonical(Subgroup(S1, P), row_psi[row_in].tolist())
        classes.append(pc)
    return reps, classes


def decompose_biset(X):
    """Basis decomposition of an explicit biset with free left action."""
    reps, classes = orbit_classes(X)
    return BurnsideElement(module(X.S1, X.S2), Counter(classes))


def group_as_biset(G, S):
    """[G] in A(S, S) for S <= G, with S taken as a standalone group."""
    if S.group != G:
        raise BurnsideError("S must be a subgroup of G")
    Sg, _ = S.as_group()
    emb = S.elements
    left = [[G.table[emb[s]][x] for x in G.elements] for s in Sg.elements]
    right = [[G.table[x][emb[t]] for t in Sg.elements] for x in G.elements]
    return decompose_biset(Biset(Sg, Sg, left, right, check=False))


# -- subconjugacy, chi and stability -------------------------------------------


def _as_pair(x, S2=None):
    if isinstance(x, Hom):
        return x.domain, x
    if isinstance(x, PairClass):
        if S2 is None:
            raise BurnsideError("target group needed")
        return x.P, x.hom(S2)
    P, psi = x
    return P, psi


def _subconj(Q, rho, P, psi, F1, F2):
    S2 = F2.S
    for phi1 in F1.homs[Q]:
        if not set(phi1.images) <= P.members:
            continue
        m = {}
        ok = True
        for x in Q.elements:
            y = psi(phi1(x))
            if m.setdefault(rho(x), y) != y:
                ok = False
                break
        if not ok:
            continue
        rq = Subgroup(S2, m.keys())
        if Hom.from_map(rq, S2, m) in F2.homs[rq]:
            return True
    return False


def pair_subconjugate(q, p, F1, F2):
    """Compare two (S1, S2)-pairs under (F1, F2)-subconjugacy.

    Returns "conjugate", "strictly-sub" (q below p), "strictly-super" (q above p)
    or "incomparable".
    """
    Q, rho = _as_pair(q, F2.S)
    P, psi = _as_pair(p, F2.S)
    if Q.group != F1.S or P.group != F1.S:
        raise BurnsideError("pairs must start in the group of F1")
    up = _subconj(Q, rho, P, psi, F1, F2)
    down = _subconj(P, psi, Q, rho, F1, F2)
    if up and down:
        return "conjugate"
    if up:
        return "strictly-sub"
    if down:
        return "strictly-super"
    return "incomparable"


def chi_classes(mod, P, F, side="lower"):
    """Basis classes counted by the summed chi functional at [P].

    ``lower``: classes (F_S, F)-conjugate to [P, incl]; ``upper``: (F, F_S)-conjugate.
    """
    from .fusion import inner_fusion

    FS = inner_fusion(F.S, F.p)
    incl = Hom(P, F.S, P.elements)
    F1, F2 = (FS, F) if side == "lower" else (F, FS)
    return [b for b in mod.basis()
            if b.P.order == P.order and pair_subconjugate(b, incl, F1, F2) == "conjugate"]


def chi(omega, key):
    """Coefficient functional: a PairClass, or (P, F, side) for the summed version."""
    if isinstance(key, PairClass):
        return omega.coefficient(key)
    P, F, side = key
    if omega.source != F.S or omega.target != F.S:
        raise BurnsideError("element and fusion system live over different groups")
    return sum((omega.coefficient(b) for b in chi_classes(omega.module, P, F, side)), Fraction(0))


def is_f_stable(omega, F, side="right"):
    """(True, None) or (False, first failing morphism)."""
    S = F.S
    for P in F.subgroups:
        incl = Hom(P, S, P.elements)
        if side == "right":
            base = omega @ restriction_element(incl)
        else:
            base = transfer_element(incl) @ omega
        for phi in F.hom(P):
            if phi == incl:
                continue
            if side == "right":
                val = omega @ restriction_element(phi)
            else:
                val = transfer_element(phi) @ omega
            if val != base:
                return False, phi
    return True, None


def in_fusion_span(omega, F):
    """Classes of omega not of the form [P, phi] with phi in F (empty if supported on A_F)."""
    return [k for k in omega.coeffs if not F.contains(k.hom(F.S))]

