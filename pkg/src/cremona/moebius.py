"""PGL2 over a cyclotomic field: maps, points, closure, orbits, fixed points."""
from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .cyclo import CycNum, CyclotomicField, field, invert, sqrt
from .errors import ConductorMismatch, InfiniteOrder, NeedsExtension, UnclassifiableGroup
from .groups import DEFAULT_CAP, GroupTable
from .groups import closure as _closure


def default_cap() -> int:
    env = os.environ.get("CREMONA_CAP")
    return int(env) if env else DEFAULT_CAP


def _normalize(entries):
    for e in entries:
        if not e.is_zero():
            if e == 1:
                return tuple(entries)
            s = invert(e)
            return tuple(x * s for x in entries)
    raise ValueError("zero vector is not projective")


class MoebiusMap:
    """A projective 2x2 matrix ((a, b), (c, d)) in canonical form."""

    __slots__ = ("entries", "field", "_hash")

    def __init__(self, entries, fld: CyclotomicField | None = None):
        flat = [x for row in entries for x in row] if len(entries) == 2 else list(entries)
        if fld is None:
            fld = next(x.field for x in flat if isinstance(x, CycNum))
        flat = [fld(x) for x in flat]
        a, b, c, d = flat
        if (a * d - b * c).is_zero():
            raise ValueError("singular matrix")
        self.entries = _normalize(flat)
        self.field = fld
        self._hash = hash(self.entries)

    @classmethod
    def _raw(cls, fld, entries):
        obj = object.__new__(cls)
        obj.entries = entries
        obj.field = fld
        obj._hash = hash(entries)
        return obj

    def __eq__(self, other):
        return isinstance(other, MoebiusMap) and (self is other or self.entries == other.entries)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        a, b, c, d = self.entries
        return f"MoebiusMap([[{a}, {b}], [{c}, {d}]])"

    @property
    def rows(self):
        a, b, c, d = self.entries
        return ((a, b), (c, d))

    def is_identity(self) -> bool:
        a, b, c, d = self.entries
        return b.is_zero() and c.is_zero() and a == d

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self) -> "MoebiusMap":
        a, b, c, d = self.entries
        return MoebiusMap._raw(self.field, _normalize((d, -b, -c, a)))

    def __call__(self, p: "ProjPoint") -> "ProjPoint":
        a, b, c, d = self.entries
        x, y = p.coords
        return ProjPoint(a * x + b * y, c * x + d * y)

    def trace_det(self):
        a, b, c, d = self.entries
        return a + d, a * d - b * c


@lru_cache(maxsize=1 << 18)
def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """Canonical form of the product f.g (apply g first)."""
    if f.field is not g.field:
        raise ConductorMismatch(f"{f.field} vs {g.field}")
    a, b, c, d = f.entries
    p, q, r, s = g.entries
    return MoebiusMap._raw(f.field, _normalize((a * p + b * r, a * q + b * s,
                                                 c * p + d * r, c * q + d * s)))


class ProjPoint:
    """A point [x:y] of P1, canonical with first nonzero coordinate 1."""

    __slots__ = ("coords", "_hash")

    def __init__(self, x, y=None):
        if y is None:
            x, y = x
        if isinstance(x, CycNum) or isinstance(y, CycNum):
            fld = x.field if isinstance(x, CycNum) else y.field
            x, y = fld(x), fld(y)
        else:
            raise TypeError("ProjPoint needs field elements; use point(field, x, y)")
        self.coords = _normalize((x, y))
        self._hash = hash(self.coords)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return self._hash

    def __repr__(self):
        x, y = self.coords
        return f"[{x}:{y}]"

    def sort_key(self):
        return tuple((c.num, c.den) for c in self.coords)


def point(fld: CyclotomicField, x, y) -> ProjPoint:
    return ProjPoint(fld(x), fld(y))


def identity(fld: CyclotomicField) -> MoebiusMap:
    return MoebiusMap((fld.one, fld.zero, fld.zero, fld.one), fld)


# -- standard generators ------------------------------------------------------

def R(fld: CyclotomicField, n: int, k: int = 1) -> MoebiusMap:
    """diag(1, w_n^k)."""
    return MoebiusMap((1, 0, 0, fld.root_of_unity(n, k)), fld)


def standard_matrices(fld: CyclotomicField) -> dict:
    """A, B and, when the field contains what they need, C, D, E, F."""
    out = {
        "I": identity(fld),
        "A": MoebiusMap((1, 0, 0, -1), fld),
        "B": MoebiusMap((0, 1, 1, 0), fld),
    }
    N = fld.conductor
    if N % 4 == 0:
        i = fld.root_of_unity(4)
        out["C"] = MoebiusMap((i, -i, 1, 1), fld)
        out["D"] = MoebiusMap((1, -i, i, -1), fld)
    if N % 5 == 0:
        w = fld.root_of_unity(5)
        out["E"] = MoebiusMap((w, 0, 0, 1), fld)
        out["F"] = MoebiusMap((1, 1 - w - invert(w), 1, -1), fld)
    return out


# -- groups ------------------------------------------------------------------

def closure(generators, cap: int | None = None) -> GroupTable:
    if not generators:
        raise ValueError("closure needs at least one generator")
    cap = default_cap() if cap is None else cap
    return _closure(list(generators), compose, identity(generators[0].field), cap)


@dataclass(frozen=True)
class KleinClass:
    kind: str
    n: int = 0

    def __str__(self):
        return f"{self.kind}({self.n})" if self.kind in ("Cyclic", "Dihedral") else self.kind

    @property
    def is_cyclic(self):
        return self.kind == "Cyclic"

    @property
    def is_odd_dihedral(self):
        return self.kind == "Dihedral" and self.n % 2 == 1

    @property
    def order(self):
        return {"Cyclic": self.n, "Dihedral": 2 * self.n, "A4": 12, "S4": 24, "A5": 60}[self.kind]


def _dihedral_profile(n):
    c = Counter()
    for k in range(n):
        c[n // gcd(k, n)] += 1
    c[2] += n
    return c


def _cyclic_profile(n):
    c = Counter()
    for k in range(n):
        c[n // gcd(k, n)] += 1
    return c


_POLYHEDRAL = {
    12: ("A4", Counter({1: 1, 2: 3, 3: 8})),
    24: ("S4", Counter({1: 1, 2: 9, 3: 8, 4: 6})),
    60: ("A5", Counter({1: 1, 2: 15, 3: 20, 5: 24})),
}


def classify_by_orders(order: int, stats: Counter) -> KleinClass:
    """Klein type from |G| and the element-order multiset."""
    if stats == _cyclic_profile(order):
        return KleinClass("Cyclic", order)
    if order % 2 == 0 and order >= 4 and stats == _dihedral_profile(order // 2):
        return KleinClass("Dihedral", order // 2)
    if order in _POLYHEDRAL and stats == _POLYHEDRAL[order][1]:
        return KleinClass(_POLYHEDRAL[order][0])
    raise UnclassifiableGroup(f"order {order} with element orders {dict(stats)}")


def klein_classify(G: GroupTable) -> KleinClass:
    return classify_by_orders(G.order, G.order_statistics())


def special_orbit_spectrum(c: KleinClass) -> list:
    """Sorted lengths of the orbits with nontrivial stabilizer (as a multiset)."""
    if c.kind == "Dihedral" and c.n == 1:
        return [1, 1]
    return {
        "Cyclic": [1, 1],
        "Dihedral": sorted([2, c.n, c.n]),
        "A4": [4, 4, 6],
        "S4": [6, 8, 12],
        "A5": [12, 20, 30],
    }[c.kind]


def orbit(G: GroupTable, p: ProjPoint) -> list:
    gens = [G.elements[g] for g in G.gens]
    seen = {p}
    out = [p]
    queue = deque([p])
    while queue:
        q = queue.popleft()
        for g in gens:
            r = g(q)
            if r not in seen:
                seen.add(r)
                out.append(r)
                queue.append(r)
    return out


def map_order(g: MoebiusMap, cap: int | None = None) -> int:
    cap = default_cap() if cap is None else cap
    k, h = 1, g
    while not h.is_identity():
        h = compose(h, g)
        k += 1
        if k > cap:
            raise InfiniteOrder(f"order exceeds {cap}")
    return k


def fixed_points(g: MoebiusMap, cap: int | None = None) -> list:
    """Fixed points of a non-identity map of finite order, over its own field.

    Raises NeedsExtension when the fixed points are not defined over the field.
    """
    if g.is_identity():
        raise ValueError("the identity fixes every point")
    fld = g.field
    order = map_order(g, cap)
    a, b, c, d = g.entries
    qa, qb, qc = c, d - a, -b          # qa x^2 + qb xy + qc y^2 = 0
    disc = qb * qb - 4 * qa * qc
    root = _disc_root(g, disc, order)
    if root is None:
        raise NeedsExtension(2 * order, fld.conductor)
    pts = []
    if qa.is_zero():
        pts.append(ProjPoint(fld.one, fld.zero))
        if not qb.is_zero():
            pts.append(ProjPoint(-qc, qb))
    else:
        for r in (root, -root):
            pts.append(ProjPoint(-qb + r, 2 * qa))
    out = []
    for p in pts:
        if p not in out:
            out.append(p)
    out.sort(key=ProjPoint.sort_key)
    for p in out:
        assert g(p) == p
    return out


def _disc_root(g: MoebiusMap, disc: CycNum, order: int):
    """A square root of the fixed-point discriminant, if it lies in the field."""
    if disc.is_zero():
        return disc
    fld = g.field
    t, det = g.trace_det()
    if order >= 3 and not t.is_zero():
        # eigenvalue ratio rho is a root of unity: lambda2 = t / (1 + rho)
        for rho in fld.roots_of_unity():
            if rho == 1 or rho == -1:
                continue
            lam2 = t * invert(1 + rho)
            if lam2 * lam2 * rho == det:
                root = lam2 * (rho - 1)
                if root * root == disc:
                    return root
        return None
    return sqrt(disc)


# -- special orbits computed from fixed points ---------------------------------

def special_orbits(G: GroupTable) -> list:
    """Orbits of points with nontrivial stabilizer, as lists of points."""
    points = []
    seen = set()
    for i in range(1, G.order):
        for p in fixed_points(G.elements[i]):
            if p not in seen:
                seen.add(p)
                points.append(p)
    orbits, covered = [], set()
    for p in points:
        if p in covered:
            continue
        orb = orbit(G, p)
        covered.update(orb)
        orbits.append(orb)
    return orbits


def special_orbit_lengths(builder, conductor: int, max_rounds: int = 4) -> tuple:
    """Sorted special orbit lengths of ``builder(field)``, escalating the conductor as needed.

    Returns (lengths, conductor actually used).
    """
    N = conductor
    for _ in range(max_rounds):
        try:
            G = closure(builder(field(N)))
            return sorted(len(o) for o in special_orbits(G)), N
        except (NeedsExtension, ConductorMismatch) as exc:
            mult = getattr(exc, "multiplier", 2)
            N = N * mult // gcd(N, mult) if N % mult else N * 2
    raise NeedsExtension(2, N)
