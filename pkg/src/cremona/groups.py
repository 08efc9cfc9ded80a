"""Finite groups materialized from generators.

A :class:`GroupTable` stores its elements in breadth-first order from the
identity (generators in input order), the right action of every generator
on the element list, and a generator word per element. Products of
arbitrary elements are obtained by walking the word of the right factor,
so large groups never need a full n x n table; the full table is built
lazily for small ones.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import GroupTooLarge, InconsistentData, NotAnAction, NotAProduct

DEFAULT_CAP = 20000
FULL_TABLE_LIMIT = 2500


class GroupTable:
    def __init__(self, elements, gen_indices, words, gen_table, parents):
        self.elements = elements
        self.index = {k: i for i, k in enumerate(elements)}
        self.gens = list(gen_indices)
        self.words = words
        self.gen_table = gen_table
        self.parents = parents
        self.identity = 0
        self._orders = {}

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"GroupTable(order={self.order}, gens={len(self.gens)})"

    # products -----------------------------------------------------------
    def mul(self, i: int, j: int) -> int:
        r = i
        gt = self.gen_table
        for g in self.words[j]:
            r = gt[r][g]
        return r

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inverse(i), -k
        r = 0
        for _ in range(k):
            r = self.mul(r, i)
        return r

    def element_order(self, i: int) -> int:
        o = self._orders.get(i)
        if o is None:
            o, r = 1, i
            while r != 0:
                r = self.mul(r, i)
                o += 1
            self._orders[i] = o
        return o

    def inverse(self, i: int) -> int:
        return self.power(i, self.element_order(i) - 1) if i else 0

    def conjugate(self, h: int, g: int) -> int:
        """g^-1 h g."""
        return self.mul(self.mul(self.inverse(g), h), g)

    @cached_property
    def table(self) -> np.ndarray:
        """Full composition table ``table[i, j] = index(e_i * e_j)``."""
        n = self.order
        if n > FULL_TABLE_LIMIT:
            raise MemoryError(f"full table for order {n} is not materialized")
        gt = np.array(self.gen_table, dtype=np.int32).reshape(n, max(len(self.gens), 1))
        tab = np.empty((n, n), dtype=np.int32)
        tab[:, 0] = np.arange(n)
        for j in range(1, n):
            p, g = self.parents[j]
            tab[:, j] = gt[tab[:, p], g]
        return tab

    # structure ----------------------------------------------------------
    def generate(self, gens) -> frozenset:
        """Index set of the subgroup generated by ``gens``."""
        gens = [g for g in gens if g != 0]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def subgroup_table(self, gens) -> "GroupTable":
        """The subgroup generated by ``gens`` as its own table (keys are parent indices)."""
        return closure(list(gens), self.mul, 0)

    def is_normal(self, subset) -> bool:
        return all(self.conjugate(h, g) in subset for h in subset for g in self.gens)

    def normal_closure(self, seeds) -> frozenset:
        gens = [x for x in seeds if x != 0]
        current = self.generate(gens)
        while True:
            new = next((c for h in gens for g in self.gens
                        for c in (self.conjugate(h, g),) if c not in current), None)
            if new is None:
                return current
            gens.append(new)
            current = self.generate(gens)

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.gens for b in self.gens)

    @cached_property
    def center(self) -> frozenset:
        return frozenset(x for x in range(self.order)
                         if all(self.gen_table[x][k] == self.mul(g, x) for k, g in enumerate(self.gens)))

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))

    @cached_property
    def derived_subgroup(self) -> frozenset:
        seeds = [self.commutator(a, b) for a in self.gens for b in self.gens]
        return self.normal_closure(seeds)

    def order_statistics(self) -> Counter:
        return Counter(self.element_order(i) for i in range(self.order))

    @cached_property
    def fingerprint(self) -> tuple:
        return (self.order, self.is_abelian(), tuple(sorted(self.order_statistics().items())),
                len(self.center), len(self.derived_subgroup))

    def check_axioms(self, samples: int = 1000, seed: int = 0) -> bool:
        import random
        rng = random.Random(seed)
        n = self.order
        for i in range(n):
            if self.mul(i, 0) != i or self.mul(0, i) != i:
                return False
            if self.mul(i, self.inverse(i)) != 0:
                return False
        for _ in range(samples):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True


def _small_generating_set(G: GroupTable, subset) -> list:
    gens, span = [], frozenset({0})
    for x in sorted(subset):
        if x not in span:
            gens.append(x)
            span = G.generate(gens)
            if len(span) == len(subset):
                break
    return gens


def closure(generators, mul, identity, cap: int = DEFAULT_CAP) -> GroupTable:
    """Breadth-first closure of ``generators`` under ``mul`` starting at ``identity``."""
    elements = [identity]
    index = {identity: 0}
    words = [()]
    parents = [(0, 0)]
    gen_table = []
    gens = list(generators)
    queue_pos = 0
    while queue_pos < len(elements):
        x = elements[queue_pos]
        row = []
        for k, g in enumerate(gens):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= cap:
                    raise GroupTooLarge(cap)
                index[y] = j
                elements.append(y)
                words.append(words[queue_pos] + (k,))
                parents.append((queue_pos, k))
            row.append(j)
        gen_table.append(row)
        queue_pos += 1
    gen_indices = [index[g] for g in gens]
    G = GroupTable(elements, gen_indices, words, gen_table, parents)
    G.index = index
    return G


# ---------------------------------------------------------------------------
# family tags

@dataclass(frozen=True)
class FamilyTag:
    kind: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.kind
        inner = ",".join(str(a) for a in self.args)
        return f"{self.kind}({inner})"


def Trivial():
    return FamilyTag("Trivial")


def Cyclic(n):
    return FamilyTag("Cyclic", (n,))


def Dihedral(n):
    return FamilyTag("Dihedral", (n,))


def Unrecognized(order):
    return FamilyTag("Unrecognized", (order,))


A4, S4, A5, F5, S5 = (FamilyTag(k) for k in ("A4", "S4", "A5", "F5", "S5"))


# -- concrete models used as reference groups --------------------------------

def perm_mul(p, q):
    """Composition p after q of permutations stored as image tuples."""
    return tuple(p[i] for i in q)


def perm_from_cycles(n, *cycles):
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def permutation_group(n, generators, cap=DEFAULT_CAP):
    return closure(list(generators), perm_mul, tuple(range(n)), cap)


def cyclic_group(n):
    return closure([1 % n], lambda a, b: (a + b) % n, 0)


def dihedral_group(n):
    def mul(a, b):
        k1, s1 = a
        k2, s2 = b
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)
    return closure([(1 % n, 0), (0, 1)], mul, (0, 0))


def abelian_group(invariants):
    invariants = tuple(invariants)

    def mul(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, invariants))
    gens = [tuple(1 if i == j else 0 for j in range(len(invariants))) for i in range(len(invariants))]
    return closure(gens, mul, (0,) * len(invariants))


def generalized_dihedral_group(invariants):
    invariants = tuple(invariants)

    def mul(a, b):
        (va, s), (vb, t) = a, b
        return (tuple((x + (-y if s else y)) % m for x, y, m in zip(va, vb, invariants)), s ^ t)
    zero = (0,) * len(invariants)
    gens = [(tuple(1 if i == j else 0 for j in range(len(invariants))), 0) for i in range(len(invariants))]
    return closure(gens + [(zero, 1)], mul, (zero, 0))


def direct_product(G: GroupTable, H: GroupTable):
    gens = [(g, 0) for g in G.gens] + [(0, h) for h in H.gens]
    return closure(gens, lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])), (0, 0))


def wreath_c2(H: GroupTable, cap=DEFAULT_CAP):
    def mul(a, b):
        a1, a2, s = a
        b1, b2, t = b
        if s:
            b1, b2 = b2, b1
        return (H.mul(a1, b1), H.mul(a2, b2), s ^ t)
    gens = [(h, 0, 0) for h in H.gens] + [(0, 0, 1)]
    return closure(gens, mul, (0, 0, 0), cap)


def reference_group(name):
    c = perm_from_cycles
    return {
        "A4": lambda: permutation_group(4, [c(4, (0, 1, 2)), c(4, (0, 1), (2, 3))]),
        "S4": lambda: permutation_group(4, [c(4, (0, 1, 2, 3)), c(4, (0, 1))]),
        "A5": lambda: permutation_group(5, [c(5, (0, 1, 2, 3, 4)), c(5, (0, 1, 2))]),
        "S5": lambda: permutation_group(5, [c(5, (0, 1, 2, 3, 4)), c(5, (0, 1))]),
        "F5": lambda: permutation_group(5, [c(5, (0, 1, 2, 3, 4)), c(5, (1, 2, 4, 3))]),
    }[name]()


# -- catalogue with analytic (order, abelian, |Z|, |G'|) -------------------------

@dataclass(frozen=True)
class _Spec:
    tag: FamilyTag
    order: int
    abelian: bool
    center: int
    derived: int
    build: object = field(compare=False, hash=False)


_SPORADIC = {
    "A4": (12, 1, 4), "S4": (24, 1, 12), "A5": (60, 1, 60), "F5": (20, 1, 5), "S5": (120, 1, 60),
}


def _cyclic_spec(n):
    return _Spec(Cyclic(n), n, True, n, 1, lambda: cyclic_group(n))


def _dihedral_spec(n):
    if n == 2:
        return _Spec(Dihedral(2), 4, True, 4, 1, lambda: dihedral_group(2))
    odd = n % 2
    return _Spec(Dihedral(n), 2 * n, False, 1 if odd else 2, n if odd else n // 2,
                 lambda: dihedral_group(n))


def _sporadic_spec(name):
    o, z, d = _SPORADIC[name]
    return _Spec(FamilyTag(name), o, False, z, d, lambda: reference_group(name))


def _base_specs(n):
    """Single-family groups of order n."""
    out = []
    if n >= 2:
        out.append(_cyclic_spec(n))
    if n % 2 == 0 and n // 2 >= 3:
        out.append(_dihedral_spec(n // 2))
    for name, (o, _, _) in _SPORADIC.items():
        if o == n:
            out.append(_sporadic_spec(name))
    return out


def _factorize(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(k, maximum=None):
    if maximum is None:
        maximum = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, maximum), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_invariants_of_order(n):
    """All invariant-factor lists d1 | d2 | ... of abelian groups of order n."""
    primes = _factorize(n)
    choices = [[(p, part) for part in _partitions(e)] for p, e in primes.items()]
    results = []

    def rec(i, acc):
        if i == len(choices):
            width = max((len(part) for _, part in acc), default=0)
            factors = [1] * width
            for p, part in acc:
                for j, e in enumerate(part):
                    factors[j] *= p ** e
            results.append(tuple(sorted(factors)))
            return
        for c in choices[i]:
            rec(i + 1, acc + [c])
    rec(0, [])
    return results


def _abelian_tag(invariants):
    invariants = tuple(sorted(d for d in invariants if d > 1))
    if not invariants:
        return Trivial()
    if len(invariants) == 1:
        return Cyclic(invariants[0])
    if invariants == (2, 2):
        return Dihedral(2)
    return FamilyTag("DirectProduct", tuple(Cyclic(d) for d in invariants))


def _generalized_dihedral_specs(n):
    if n % 2:
        return []
    out = []
    for inv in abelian_invariants_of_order(n // 2):
        if len(inv) < 2 or max(inv) <= 2:
            continue
        two_torsion = 2 ** sum(1 for d in inv if d % 2 == 0)
        a = n // 2
        out.append(_Spec(FamilyTag("GeneralizedDihedral", inv), n, False, two_torsion,
                         a // two_torsion, (lambda inv=inv: generalized_dihedral_group(inv))))
    return out


def _direct_product_specs(n):
    out = []
    seen = set()
    for a in range(2, n):
        if n % a:
            continue
        for X in _base_specs(a):
            if X.abelian:
                continue
            for Y in _base_specs(n // a):
                if Y.tag.kind == "Cyclic" and Y.order == 2 and X.tag.kind == "Dihedral" and X.tag.args[0] % 2:
                    continue  # D_odd x C2 is dihedral
                pair = tuple(sorted((X, Y), key=lambda s: (s.order, str(s.tag))))
                key = tuple(s.tag for s in pair)
                if key in seen:
                    continue
                seen.add(key)
                P, R = pair
                out.append(_Spec(FamilyTag("DirectProduct", key), n, False, P.center * R.center,
                                 P.derived * R.derived,
                                 (lambda P=P, R=R: direct_product(P.build(), R.build()))))
    return out


def _wreath_specs(n):
    if n % 2:
        return []
    h2 = n // 2
    h = math.isqrt(h2)
    if h * h != h2 or h < 3:
        return []
    out = []
    cands = []
    if h % 2 == 0:
        # for odd h, C_h wr C2 is C_h x D_h and is catalogued as a direct product
        cands.append(_cyclic_spec(h))
    if h % 2 == 0 and h // 2 >= 2:
        cands.append(_dihedral_spec(h // 2))
    for name, (o, _, _) in _SPORADIC.items():
        if o == h and name in ("A4", "S4", "A5"):
            cands.append(_sporadic_spec(name))
    for H in cands:
        out.append(_Spec(FamilyTag("Wreath", (H.tag,)), n, False, H.center, H.order * H.derived,
                         (lambda H=H: wreath_c2(H.build()))))
    return out


def catalogue(n):
    """Non-abelian reference families of order n."""
    specs = [s for s in _base_specs(n) if not s.abelian]
    specs += _generalized_dihedral_specs(n)
    specs += _direct_product_specs(n)
    specs += _wreath_specs(n)
    return specs


@lru_cache(maxsize=None)
def _reference_fingerprint(spec_key):
    spec = _SPEC_REGISTRY[spec_key]
    return spec.build().fingerprint


_SPEC_REGISTRY = {}


def _abelian_invariants(G: GroupTable):
    n = G.order
    counts = G.order_statistics()

    def count_dividing(m):
        return sum(c for o, c in counts.items() if m % o == 0)
    factors_by_prime = []
    for p, e in _factorize(n).items():
        logs = [0]
        for k in range(1, e + 1):
            logs.append(round(math.log(count_dividing(p ** k), p)))
        # number of cyclic p-factors of exponent >= k
        ge = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        part = []
        for k in range(e, 0, -1):
            exact = ge[k - 1] - (ge[k] if k < e else 0)
            part += [k] * exact
        factors_by_prime.append((p, part))
    width = max((len(part) for _, part in factors_by_prime), default=0)
    factors = [1] * width
    for p, part in factors_by_prime:
        for j, k in enumerate(sorted(part, reverse=True)):
            factors[j] *= p ** k
    return tuple(sorted(factors))


def recognize_family(G: GroupTable) -> FamilyTag:
    n = G.order
    if n == 1:
        return Trivial()
    if G.is_abelian():
        return _abelian_tag(_abelian_invariants(G))
    fp = G.fingerprint
    _, _, _, z, d = fp
    matches = []
    for spec in catalogue(n):
        if spec.center != z or spec.derived != d:
            continue
        _SPEC_REGISTRY.setdefault(spec.tag, spec)
        if _reference_fingerprint(spec.tag) == fp:
            matches.append(spec.tag)
    if len(matches) == 1:
        return matches[0]
    return Unrecognized(n)


# ---------------------------------------------------------------------------
# dihedral test

@dataclass(frozen=True)
class DihedralWitness:
    rotation: int
    reflection: int
    cyclic_subgroup: frozenset


def is_dihedral(G: GroupTable):
    """(True, witness) if G is dihedral (with D1 = C2, D2 = V4), else (False, None)."""
    n = G.order
    if n < 2 or n % 2:
        return False, None
    m = n // 2
    tried = set()
    involutions = [s for s in range(n) if G.element_order(s) == 2]
    for x in range(n):
        if G.element_order(x) != m:
            continue
        C = G.generate([x])
        if C in tried:
            continue
        tried.add(C)
        x_inv = G.inverse(x)
        for s in involutions:
            if s not in C and G.mul(G.mul(s, x), s) == x_inv:
                return True, DihedralWitness(x, s, C)
    return False, None


# ---------------------------------------------------------------------------
# Goursat

def quotient_table(G: GroupTable, labels) -> GroupTable:
    """The image of G under a labelling that is a homomorphism onto its label set."""
    rep = {}
    for i, lab in enumerate(labels):
        rep.setdefault(lab, i)
    return closure([labels[g] for g in G.gens],
                   lambda a, b: labels[G.mul(rep[a], rep[b])], labels[0])


def coset_labels(G: GroupTable, H) -> list:
    """Label every element of G by the smallest index in its coset xH."""
    labels = [None] * G.order
    for x in range(G.order):
        if labels[x] is None:
            coset = [G.mul(x, h) for h in H]
            m = min(coset)
            for y in coset:
                labels[y] = m
    return labels


@dataclass
class GoursatData:
    G1: GroupTable
    G2: GroupTable
    H1: frozenset
    H2: frozenset
    Q: GroupTable
    phi: dict
    cosets1: list
    cosets2: list

    @property
    def order(self) -> int:
        return len(self.H1) * len(self.H2) * self.Q.order


def _check_congruence(G, labels, what):
    for k, s in enumerate(G.gens):
        right, left = {}, {}
        for i in range(G.order):
            lab = labels[i]
            r = labels[G.gen_table[i][k]]
            l = labels[G.mul(s, i)]
            if right.setdefault(lab, r) != r or left.setdefault(lab, l) != l:
                raise NotAProduct(f"{what} is not compatible with the group law")


def goursat_decompose(G: GroupTable, p1, p2) -> GoursatData:
    img1 = [p1(k) for k in G.elements]
    img2 = [p2(k) for k in G.elements]
    if len(set(zip(img1, img2))) != G.order:
        raise NotAProduct("the two projections do not embed G into the product")
    _check_congruence(G, img1, "first projection")
    _check_congruence(G, img2, "second projection")
    G1 = quotient_table(G, img1)
    G2 = quotient_table(G, img2)
    e1, e2 = img1[0], img2[0]
    H1 = frozenset(G1.index[img1[i]] for i in range(G.order) if img2[i] == e2)
    H2 = frozenset(G2.index[img2[i]] for i in range(G.order) if img1[i] == e1)
    cos1 = coset_labels(G1, sorted(H1))
    cos2 = coset_labels(G2, sorted(H2))
    Q = quotient_table(G1, cos1)
    phi = {}
    for i in range(G.order):
        a, b = cos1[G1.index[img1[i]]], cos2[G2.index[img2[i]]]
        if phi.setdefault(a, b) != b:
            raise NotAProduct("cosets do not match")
    return GoursatData(G1, G2, H1, H2, Q, phi, cos1, cos2)


def goursat_reconstruct(d: GoursatData) -> GroupTable:
    G1, G2 = d.G1, d.G2
    if not (G1.is_normal(d.H1) and G2.is_normal(d.H2)):
        raise InconsistentData("H1 or H2 is not normal")
    reps1 = sorted(set(d.cosets1))
    if sorted(d.phi) != reps1 or sorted(set(d.phi.values())) != sorted(set(d.cosets2)):
        raise InconsistentData("phi is not a bijection of coset spaces")
    for a in reps1:
        for b in reps1:
            if d.phi[d.cosets1[G1.mul(a, b)]] != d.cosets2[G2.mul(d.phi[a], d.phi[b])]:
                raise InconsistentData("phi is not a homomorphism")
    members = [(x, y) for x in range(G1.order) for y in range(G2.order)
               if d.phi[d.cosets1[x]] == d.cosets2[y]]
    member_set = set(members)

    def mul(a, b):
        return (G1.mul(a[0], b[0]), G2.mul(a[1], b[1]))
    gens, span = [], {(0, 0)}
    for m in members:
        if m not in span:
            gens.append(m)
            span = set(closure(gens, mul, (0, 0)).elements)
            if len(span) == len(member_set):
                break
    T = closure(gens, mul, (0, 0))
    keyed = [(G1.elements[x], G2.elements[y]) for x, y in T.elements]
    return GroupTable(keyed, T.gens, T.words, T.gen_table, T.parents)


# ---------------------------------------------------------------------------
# orbit divisibility

@dataclass
class OrbitReport:
    passed: bool
    orbits: list
    violation: object = None

    def __bool__(self):
        return self.passed


def _orbits_of(gen_actions, m):
    seen = [False] * m
    out = []
    for x in range(m):
        if seen[x]:
            continue
        orb, queue = [x], deque([x])
        seen[x] = True
        while queue:
            y = queue.popleft()
            for act in gen_actions:
                z = act[y]
                if not seen[z]:
                    seen[z] = True
                    orb.append(z)
                    queue.append(z)
        out.append(sorted(orb))
    return out


def orbit_divisibility_check(G: GroupTable, action, subgroup=None, project=None) -> OrbitReport:
    """Check the orbit-length conclusions for a normal subgroup and/or a product factor.

    ``action[g][x]`` is the image of point x under element g (all elements).
    ``subgroup`` is an index set of a normal subgroup; ``project`` maps a point
    to its coordinate in the first factor of a product action.
    """
    m = len(action[0])
    for g, row in enumerate(action):
        if sorted(row) != list(range(m)):
            raise NotAnAction(f"row {g} is not a permutation")
    if list(action[0]) != list(range(m)):
        raise NotAnAction("identity does not act trivially")
    for g in range(G.order):
        for s in G.gens:
            gs = G.mul(g, s)
            for x in range(m):
                if action[gs][x] != action[g][action[s][x]]:
                    return OrbitReport(False, [], ("not a homomorphism", g, s, x))
    orbits = _orbits_of([action[s] for s in G.gens], m)
    if subgroup is not None:
        sub = sorted(subgroup)
        hgens = _small_generating_set(G, sub) if len(sub) > 1 else []
        h_orbits = _orbits_of([action[h] for h in hgens], m)
        where = {x: tuple(o) for o in h_orbits for x in o}
        index = G.order // len(sub)
        for orb in orbits:
            pieces = {where[x] for x in orb}
            lengths = {len(p) for p in pieces}
            if len(lengths) != 1 or index % len(pieces):
                return OrbitReport(False, orbits, ("subgroup", orb, sorted(pieces)))
    if project is not None:
        labels = [project(x) for x in range(m)]
        induced = {}
        for g in range(G.order):
            for x in range(m):
                key = (g, labels[x])
                if induced.setdefault(key, labels[action[g][x]]) != labels[action[g][x]]:
                    return OrbitReport(False, orbits, ("not a product action", g, x))
        for orb in orbits:
            image = {labels[x] for x in orb}
            factor_orbit = {induced[(g, labels[orb[0]])] for g in range(G.order)}
            if image != factor_orbit or len(orb) % len(factor_orbit):
                return OrbitReport(False, orbits, ("factor", orb, sorted(image)))
    return OrbitReport(True, orbits)

