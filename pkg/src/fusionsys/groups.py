"""Finite groups as dense multiplication tables, with the subgroup machinery
the rest of the package needs (conjugacy, transporters, Sylow subgroups and
homomorphism search).

Elements are the integer labels ``0 .. order-1``.  Groups built from
permutations label their elements by sorting the generated permutations, so
labels are stable for identical input.
"""
from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np

CAPS = {"p_group": 64, "ambient": 1024}


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


def set_caps(p_group=None, ambient=None):
    if p_group is not None:
        CAPS["p_group"] = int(p_group)
    if ambient is not None:
        CAPS["ambient"] = int(ambient)


def prime_power_base(n):
    """Return p if ``n`` is a positive power of the prime p, else None."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return None


def is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _check_cap(order):
    cap = CAPS["p_group"] if prime_power_base(order) else CAPS["ambient"]
    if order > cap:
        raise CapExceeded(f"group of order {order} exceeds the configured cap {cap}")


class Group:
    """A finite group given by its multiplication table."""

    def __init__(self, table, name=None, perms=None, check=True):
        table = [tuple(int(x) for x in row) for row in table]
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupError("multiplication table must be square and nonempty")
        if any(not 0 <= x < n for row in table for x in row):
            raise GroupError("table entries must be element labels")
        _check_cap(n)
        self.table = tuple(table)
        self.order = n
        self.name = name
        self.perms = perms
        ident = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
        if not ident:
            raise GroupError("table has no two-sided identity")
        self.identity = ident[0]
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == self.identity and table[b][a] == self.identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError(f"element {a} has no inverse")
        self.inv = tuple(inv)
        if check:
            t = np.asarray(table, dtype=np.int64)
            # (ab)c against a(bc) for every triple
            if not np.array_equal(t[t], t[:, t]):
                raise GroupError("multiplication table is not associative")
        self._hash = hash(self.table)
        self._cache = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_perms(cls, degree, generators, name=None):
        """Group generated by permutations of ``1..degree``.

        Each generator is a list of cycles, each cycle a list of points.
        """
        gens = [_perm_from_cycles(degree, g) for g in generators]
        ident = tuple(range(degree))
        seen = {ident}
        queue = deque([ident])
        cap = max(CAPS["p_group"], CAPS["ambient"])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = tuple(x[g[i]] for i in range(degree))
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"permutation group exceeds the cap {cap}")
                    queue.append(y)
        elems = sorted(seen)
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
        return cls(table, name=name, perms=tuple(elems), check=False)

    @classmethod
    def cyclic(cls, n, name=None):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], name=name or f"Z{n}", check=False)

    # -- basics -------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Group) and self.table == other.table

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Group({self.name or 'order ' + str(self.order)})"

    def __len__(self):
        return self.order

    @property
    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self.table[a][b]

    def conj(self, g, x):
        """g x g^-1."""
        t = self.table
        return t[t[g][x]][self.inv[g]]

    def power(self, x, k):
        r = self.identity
        for _ in range(k):
            r = self.table[r][x]
        return r

    def element_order(self, x):
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def cycle_notation(self, x):
        """Cycle notation (1-based) for permutation groups, else the label."""
        if self.perms is None:
            return str(x)
        perm = self.perms[x]
        seen, out = set(), []
        for i in range(len(perm)):
            if i in seen or perm[i] == i:
                continue
            cyc, j = [i], perm[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = perm[j]
            out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
        return "".join(out) or "()"

    def label_of_cycles(self, cycles):
        if self.perms is None:
            raise GroupError("cycle notation needs a permutation group")
        degree = len(self.perms[0])
        perm = _perm_from_cycles(degree, cycles)
        try:
            return self.perms.index(perm)
        except ValueError:
            raise GroupError(f"permutation {cycles} is not in the group") from None

    # -- subgroups -----------------------------------------------------------

    def closure(self, gens, start=None):
        t = self.table
        members = set(start) if start is not None else {self.identity}
        members.add(self.identity)
        gens = list(gens)
        queue = deque(members)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[x][g]
                if y not in members:
                    members.add(y)
                    queue.append(y)
        return members

    def subgroup(self, gens):
        return Subgroup(self, self.closure(gens))

    def whole(self):
        if "whole" not in self._cache:
            self._cache["whole"] = Subgroup(self, range(self.order))
        return self._cache["whole"]

    def trivial(self):
        return Subgroup(self, [self.identity])

    def is_subgroup(self, members):
        members = set(members)
        if self.identity not in members:
            return False
        return all(self.table[a][self.inv[b]] in members for a in members for b in members)

    def subgroups(self):
        """All subgroups, ordered by decreasing order then by member tuple."""
        if "subgroups" in self._cache:
            return self._cache["subgroups"]
        triv = frozenset([self.identity])
        found = {triv: [self.identity]}
        frontier = [triv]
        while frontier:
            nxt = []
            for H in frontier:
                gens = found[H]
                done = set(H)
                for g in range(self.order):
                    if g in done:
                        continue
                    done.update(self.table[g][h] for h in H)
                    K = frozenset(self.closure(gens + [g]))
                    if K not in found:
                        found[K] = gens + [g]
                        nxt.append(K)
            frontier = nxt
        subs = sorted((Subgroup(self, K) for K in found), key=Subgroup.sort_key)
        self._cache["subgroups"] = subs
        return subs

    def conjugate_subgroup(self, g, H):
        return Subgroup(self, (self.conj(g, h) for h in H.elements))

    def conjugacy_classes_of_subgroups(self):
        """Lists of conjugate subgroups, each list in canonical order; the first
        entry of each list is the class representative."""
        if "subclasses" in self._cache:
            return self._cache["subclasses"]
        seen, classes = set(), []
        for H in self.subgroups():
            if H in seen:
                continue
            cls = sorted({self.conjugate_subgroup(g, H) for g in self.elements}, key=Subgroup.sort_key)
            seen.update(cls)
            classes.append(cls)
        self._cache["subclasses"] = classes
        return classes

    def transporter(self, H, K):
        """N_G(H, K) = {g | g H g^-1 <= K} as a sorted list."""
        if H.group != self or K.group != self:
            raise GroupError("transporter needs subgroups of this group")
        gens = H.generators
        ks = K.members
        return [g for g in self.elements if all(self.conj(g, h) in ks for h in gens)]

    def normalizer(self, H):
        return Subgroup(self, self.transporter(H, H))

    def centralizer(self, H):
        gens = H.generators
        return Subgroup(self, [g for g in self.elements if all(self.conj(g, h) == h for h in gens)])

    def center(self):
        return self.centralizer(self.whole())

    def conjugation_hom(self, g, H, target=None):
        """c_g restricted to H, as a homomorphism H -> target (default self)."""
        return Hom(H, target or self, [self.conj(g, h) for h in H.elements])

    def hom_classes(self, H, K):
        """Hom_G(H, K): the distinct maps c_g : H -> K with g in N_G(H, K)."""
        return sorted({self.conjugation_hom(g, H) for g in self.transporter(H, K)}, key=Hom.sort_key)

    def sylow(self, p):
        """The Sylow p-subgroup with lexicographically least member tuple."""
        target = p_part(self.order, p)
        P = self.trivial()
        while P.order < target:
            N = self.normalizer(P)
            for g in N.elements:
                if g in P.members:
                    continue
                k, y = 1, g
                while y not in P.members:
                    y = self.table[y][g]
                    k += 1
                if prime_power_base(k) == p:
                    h = self.power(g, k // p)
                    P = Subgroup(self, self.closure([h], start=P.members))
                    break
            else:  # pragma: no cover - Sylow's theorem
                raise GroupError("failed to extend p-subgroup")
        return min({self.conjugate_subgroup(g, P) for g in self.elements}, key=Subgroup.sort_key)

    def is_p_group(self, p=None):
        if self.order == 1:
            return True
        base = prime_power_base(self.order)
        return base is not None and (p is None or base == p)


def _perm_from_cycles(degree, cycles):
    perm = list(range(degree))
    used = set()
    for cyc in cycles:
        pts = [int(c) - 1 for c in cyc]
        if any(not 0 <= x < degree for x in pts) or used.intersection(pts) or len(set(pts)) != len(pts):
            raise GroupError(f"generator {cycles} is not a permutation of 1..{degree}")
        used.update(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


class Subgroup:
    """A subgroup of ``group``, stored as its sorted member tuple."""

    __slots__ = ("group", "elements", "members", "_hash", "_cache")

    def __init__(self, group, members):
        self.group = group
        self.elements = tuple(sorted(set(members)))
        self.members = frozenset(self.elements)
        self._hash = hash(self.elements)
        self._cache = {}

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subgroup{list(self.elements)}"

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.members

    def __le__(self, other):
        return self.members <= other.members

    def __lt__(self, other):
        return self.members < other.members

    @property
    def order(self):
        return len(self.elements)

    def sort_key(self):
        return (-len(self.elements), self.elements)

    @property
    def generators(self):
        """A small generating set, chosen greedily in label order."""
        gens = self._cache.get("gens")
        if gens is None:
            G = self.group
            gens, span = [], {G.identity}
            for x in self.elements:
                if x not in span:
                    gens.append(x)
                    span = G.closure(gens)
            self._cache["gens"] = gens = tuple(gens)
        return gens

    def is_trivial(self):
        return len(self.elements) == 1

    def as_group(self):
        """(standalone group, embedding Hom standalone -> self.group).

        Label i of the standalone group is the i-th smallest member.
        """
        res = self._cache.get("as_group")
        if res is None:
            G = self.group
            idx = {x: i for i, x in enumerate(self.elements)}
            table = [[idx[G.table[a][b]] for b in self.elements] for a in self.elements]
            perms = tuple(G.perms[x] for x in self.elements) if G.perms is not None else None
            H = Group(table, perms=perms, check=False)
            res = (H, Hom(H.whole(), G, self.elements))
            self._cache["as_group"] = res
        return res


class Hom:
    """A homomorphism from a subgroup ``domain`` to a group ``target``.

    ``images`` is aligned with ``domain.elements``.
    """

    __slots__ = ("domain", "target", "images", "_map", "_hash")

    def __init__(self, domain, target, images):
        self.domain = domain
        self.target = target
        self.images = tuple(images)
        if len(self.images) != len(domain.elements):
            raise GroupError("image list does not match the domain")
        self._map = dict(zip(domain.elements, self.images))
        self._hash = hash((domain.elements, self.images))

    @classmethod
    def from_map(cls, domain, target, mapping):
        return cls(domain, target, [mapping[x] for x in domain.elements])

    def __call__(self, x):
        return self._map[x]

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.images == other.images
                and self.domain.elements == other.domain.elements)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Hom{" + ", ".join(f"{a}->{b}" for a, b in self._map.items()) + "}"

    def sort_key(self):
        return (self.domain.sort_key(), self.images)

    @property
    def source(self):
        return self.domain.group

    def is_homomorphism(self):
        S, T, m = self.domain.group, self.target, self._map
        return all(m[S.table[a][b]] == T.table[m[a]][m[b]]
                   for a in self.domain.elements for b in self.domain.elements)

    def image(self):
        return Subgroup(self.target, self.images)

    def kernel(self):
        e = self.target.identity
        return Subgroup(self.domain.group, [x for x, y in self._map.items() if y == e])

    def is_injective(self):
        return len(set(self.images)) == len(self.images)

    def is_trivial(self):
        e = self.target.identity
        return all(y == e for y in self.images)

    def compose(self, first):
        """self o first; the image of ``first`` must lie in self's domain."""
        return Hom(first.domain, self.target, [self._map[y] for y in first.images])

    def restrict(self, sub):
        return Hom(sub, self.target, [self._map[x] for x in sub.elements])

    def inverse(self):
        """Inverse of the corestriction onto the image, as a map image -> source."""
        if not self.is_injective():
            raise GroupError("only injective homomorphisms can be inverted")
        inv = {y: x for x, y in self._map.items()}
        return Hom.from_map(self.image(), self.domain.group, inv)

    def with_target(self, target):
        return Hom(self.domain, target, self.images)


def inclusion(sub, target=None):
    return Hom(sub, target or sub.group, sub.elements)


def extend_generators(domain, target, gen_images):
    """Extend generator images to a homomorphism on ``domain``, or None."""
    S, T = domain.group, target
    gens = domain.generators
    m = {S.identity: T.identity}
    queue = deque([S.identity])
    while queue:
        x = queue.popleft()
        for g, tg in zip(gens, gen_images):
            y = S.table[x][g]
            ty = T.table[m[x]][tg]
            if y in m:
                if m[y] != ty:
                    return None
            else:
                m[y] = ty
                queue.append(y)
    return Hom.from_map(domain, target, m)


def enumerate_homs(domain, target, injective_only=False):
    """All homomorphisms ``domain -> target`` by generator-image search."""
    if isinstance(domain, Group):
        domain = domain.whole()
    S, T = domain.group, target
    gens = domain.generators
    orders = [S.element_order(g) for g in gens]
    t_orders = {t: T.element_order(t) for t in T.elements}
    choices = []
    for o in orders:
        if injective_only:
            choices.append([t for t in T.elements if t_orders[t] == o])
        else:
            choices.append([t for t in T.elements if o % t_orders[t] == 0])
    out = set()
    for imgs in itertools.product(*choices):
        f = extend_generators(domain, T, imgs)
        if f is not None and (not injective_only or f.is_injective()):
            out.add(f)
    return sorted(out, key=Hom.sort_key)


def brute_force_homs(domain, target):
    """Every multiplicative map domain -> target, assigning each element in turn
    and pruning on partial multiplicativity (test oracle; ignores generators)."""
    S, T = domain.group, target
    elems = domain.elements
    out = []
    m = {}

    def consistent(x):
        for a in m:
            for u, v in ((a, x), (x, a)):
                c = S.table[u][v]
                if c in m and m[c] != T.table[m[u]][m[v]]:
                    return False
        return True

    def assign(i):
        if i == len(elems):
            out.append(Hom(domain, T, [m[x] for x in elems]))
            return
        x = elems[i]
        for y in T.elements:
            m[x] = y
            if consistent(x):
                assign(i + 1)
            del m[x]

    assign(0)
    return out


def make_group(spec, name=None):
    """Build a Group from a group-spec dict (``kind`` = ``table`` or ``perm``)."""
    kind = spec.get("kind")
    name = name or spec.get("name")
    if kind == "table":
        return Group(spec["table"], name=name)
    if kind == "perm":
        return Group.from_perms(int(spec["degree"]), spec["generators"], name=name)
    raise GroupError(f"unknown group kind {kind!r}")


def group_spec(G):
    """Inverse of make_group: permutation groups keep their generators."""
    if G.perms is not None:
        gens = [G.perms[g] for g in G.whole().generators]
        return {"kind": "perm", "degree": len(G.perms[0]),
                "generators": [_cycles_of(p) for p in gens]}
    return {"kind": "table", "table": [list(r) for r in G.table]}


def _cycles_of(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [i + 1], perm[i]
        seen.add(i)
        while j != i:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        out.append(cyc)
    return out
