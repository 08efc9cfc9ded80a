"""The del Pezzo surfaces of degree 6 and 5 and their automorphisms.

Degree 6: the surface x0*y0 = x1*y1 = x2*y2 in P2 x P2 with Aut = T x| D6.
An element is stored as (torus, perm, flip): first the hexagon part moves
coordinates (x'_i = x_perm[i], or y_perm[i] when flip is set, and dually for
y'), then the torus scales x_i by t_i and y_i by 1/t_i.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .cyclo import CycNum, CyclotomicField, invert
from .errors import ConductorMismatch, OffSurface
from .groups import FamilyTag, GroupTable, closure, perm_mul, recognize_family
from .linalg import det, nullspace, rank

# hexagon generators as (perm, flip)
RHO = ((1, 2, 0), 1)
SIGMA = ((0, 2, 1), 1)
_HEX_ID = ((0, 1, 2), 0)


def _hex_mul(a, b):
    """a after b on the hexagon part."""
    (p1, f1), (p2, f2) = a, b
    return (tuple(p2[p1[i]] for i in range(3)), f1 ^ f2)


def _hex_power(h, k):
    out = _HEX_ID
    for _ in range(k):
        out = _hex_mul(out, h)
    return out


@lru_cache(maxsize=None)
def hex_normal_forms():
    """Map (k, e) -> (perm, flip) for the twelve elements rho^k sigma^e."""
    table = {}
    for k in range(6):
        for e in range(2):
            table[(k, e)] = _hex_mul(_hex_power(RHO, k), _hex_power(SIGMA, e))
    assert len(set(table.values())) == 12
    return table


@lru_cache(maxsize=None)
def _hex_lookup():
    return {v: k for k, v in hex_normal_forms().items()}


def hex_word_reduce(word: str):
    """Normal form (k, e) of a word in r, s (composition, rightmost letter first)."""
    h = _HEX_ID
    for ch in word:
        if ch == "r":
            h = _hex_mul(h, RHO)
        elif ch == "s":
            h = _hex_mul(h, SIGMA)
        else:
            raise ValueError(f"hexagon words use only r and s, got {ch!r}")
    return _hex_lookup()[h]


def hex_normal_word(k: int, e: int) -> str:
    return "r" * k + "s" * e


def hex_label(k: int, e: int) -> str:
    rot = "" if k == 0 else ("r" if k == 1 else f"r{k}")
    return (rot + "s" * e) or "id"


@dataclass(frozen=True)
class DP6Aut:
    torus: tuple
    perm: tuple
    flip: int

    @classmethod
    def make(cls, torus, word: str = "") -> "DP6Aut":
        fld = next(t.field for t in torus if isinstance(t, CycNum))
        torus = tuple(fld(t) for t in torus)
        perm, flip = hex_normal_forms()[hex_word_reduce(word)]
        return cls(_canon_torus(torus), perm, flip)

    @property
    def field(self) -> CyclotomicField:
        return self.torus[0].field

    @property
    def hex(self):
        return _hex_lookup()[(self.perm, self.flip)]

    @property
    def hex_word(self) -> str:
        return hex_normal_word(*self.hex)

    def in_torus(self) -> bool:
        return self.perm == (0, 1, 2) and self.flip == 0

    def __repr__(self):
        return f"DP6Aut(torus={list(self.torus)}, hex={self.hex_word or 'id'})"


def _canon_torus(t):
    if t[0].is_zero() or t[1].is_zero() or t[2].is_zero():
        raise ValueError("torus coordinates must be nonzero")
    if t[0] == 1:
        return tuple(t)
    s = invert(t[0])
    return tuple(x * s for x in t)


def dp6_identity(fld: CyclotomicField) -> DP6Aut:
    return DP6Aut((fld.one,) * 3, (0, 1, 2), 0)


def rho(fld):
    return DP6Aut((fld.one,) * 3, *RHO)


def sigma(fld):
    return DP6Aut((fld.one,) * 3, *SIGMA)


def iota(fld):
    return DP6Aut((fld.one,) * 3, (0, 1, 2), 1)


def torus_element(fld, t):
    return DP6Aut(_canon_torus(tuple(fld(x) for x in t)), (0, 1, 2), 0)


@lru_cache(maxsize=1 << 16)
def dp6_compose(a: DP6Aut, b: DP6Aut) -> DP6Aut:
    """a after b."""
    if a.field is not b.field:
        raise ConductorMismatch(f"{a.field} vs {b.field}")
    perm, flip = _hex_mul((a.perm, a.flip), (b.perm, b.flip))
    if a.flip:
        torus = tuple(a.torus[i] * invert(b.torus[a.perm[i]]) for i in range(3))
    else:
        torus = tuple(a.torus[i] * b.torus[a.perm[i]] for i in range(3))
    return DP6Aut(_canon_torus(torus), perm, flip)


def dp6_inverse(a: DP6Aut) -> DP6Aut:
    # the hexagon part has finite order, so its inverse is its last nontrivial power
    h = (a.perm, a.flip)
    while _hex_mul(h, (a.perm, a.flip)) != _HEX_ID:
        h = _hex_mul(h, (a.perm, a.flip))
    perm, flip = h
    t = [None] * 3
    for i in range(3):
        t[a.perm[i]] = a.torus[i] if a.flip else invert(a.torus[i])
    return DP6Aut(_canon_torus(tuple(t)), perm, flip)


def _proj3(v):
    for c in v:
        if not c.is_zero():
            s = invert(c)
            return tuple(x * s for x in v)
    raise ValueError("zero vector")


@dataclass(frozen=True)
class DP6Point:
    x: tuple
    y: tuple

    @classmethod
    def make(cls, x, y, fld: CyclotomicField | None = None):
        if fld is None:
            fld = next(c.field for c in tuple(x) + tuple(y) if isinstance(c, CycNum))
        x = _proj3([fld(c) for c in x])
        y = _proj3([fld(c) for c in y])
        p = cls(x, y)
        if not on_surface(p):
            raise OffSurface(f"{p} is not on x0y0 = x1y1 = x2y2")
        return p


def on_surface(p: DP6Point) -> bool:
    a, b, c = (p.x[i] * p.y[i] for i in range(3))
    return a == b == c


def dp6_act(a: DP6Aut, p: DP6Point) -> DP6Point:
    if not on_surface(p):
        raise OffSurface(f"{p} is not on the surface")
    src_x, src_y = (p.y, p.x) if a.flip else (p.x, p.y)
    x = [a.torus[i] * src_x[a.perm[i]] for i in range(3)]
    y = [invert(a.torus[i]) * src_y[a.perm[i]] for i in range(3)]
    return DP6Point(_proj3(x), _proj3(y))


# -- analysis ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def d6_subgroups():
    """All 16 subgroups of D6 as frozensets of (k, e), with a generator label."""
    elems = sorted(hex_normal_forms(), key=lambda g: (g[1], g[0]))[1:]
    table = hex_normal_forms()
    look = _hex_lookup()

    def gen(gs):
        span = {(0, 0)}
        queue = deque([(0, 0)])
        while queue:
            x = queue.popleft()
            for g in gs:
                y = look[_hex_mul(table[x], table[g])]
                if y not in span:
                    span.add(y)
                    queue.append(y)
        return frozenset(span)
    found = {}
    candidates = [()] + [(a,) for a in elems] + list(combinations(elems, 2))
    for gs in candidates:
        sub = gen(gs)
        label = "<" + ",".join(hex_label(*g) for g in gs) + ">" if gs else "<id>"
        prev = found.get(sub)
        if prev is None or (len(label), label) < (len(prev), prev):
            found[sub] = label
    return found


MINIMAL_HEX_IMAGES = {
    "<r>": frozenset((k, 0) for k in range(6)),
    "<r2,s>": frozenset((k, e) for k in (0, 2, 4) for e in (0, 1)),
    "<r,s>": frozenset((k, e) for k in range(6) for e in (0, 1)),
}


@dataclass
class DP6Analysis:
    group: GroupTable
    hexagon_image: frozenset
    hexagon_label: str
    torus_part: list
    minimal: bool
    fixes_point: bool


def dp6_closure(generators, cap: int | None = None) -> GroupTable:
    from .moebius import default_cap
    cap = default_cap() if cap is None else cap
    return closure(list(generators), dp6_compose, dp6_identity(generators[0].field), cap)


def dp6_analyze(generators, cap: int | None = None) -> DP6Analysis:
    G = dp6_closure(generators, cap)
    image = frozenset(a.hex for a in G.elements)
    label = d6_subgroups()[image]
    torus = [a for a in G.elements if a.in_torus()]
    minimal = image in MINIMAL_HEX_IMAGES.values()
    return DP6Analysis(G, image, label, torus, minimal, len(torus) == 1)


# -- degree 5 ---------------------------------------------------------------------

DP5_MINIMAL = {5: FamilyTag("Cyclic", (5,)), 10: FamilyTag("Dihedral", (5,)), 20: FamilyTag("F5"),
               60: FamilyTag("A5"), 120: FamilyTag("S5")}


@dataclass
class DP5Group:
    perms: list                 # one-line images of 1..5
    table: GroupTable

    @classmethod
    def from_perms(cls, perms):
        gens = []
        for p in perms:
            p = list(p)
            if sorted(p) != [1, 2, 3, 4, 5]:
                raise ValueError(f"{p} is not a permutation of 1..5")
            gens.append(tuple(i - 1 for i in p))
        if not gens:
            gens = [tuple(range(5))]
        return cls([list(p) for p in perms], closure(gens, perm_mul, tuple(range(5))))


def dp5_analyze(g: DP5Group):
    order = g.table.order
    if order in DP5_MINIMAL:
        return DP5_MINIMAL[order], True
    return recognize_family(g.table), False


def dp5_standard_generators(fld: CyclotomicField, dihedral: bool = False):
    """r: [x:y:z] -> [x : w5 y : w5^-1 z] and, optionally, s swapping y and z."""
    w = fld.root_of_unity(5)
    o, z = fld.one, fld.zero
    r = [[o, z, z], [z, w, z], [z, z, invert(w)]]
    gens = [r]
    if dihedral:
        gens.append([[o, z, z], [z, z, o], [z, o, z]])
    return gens


def _apply3(m, v):
    return _proj3([sum((m[i][k] * v[k] for k in range(3)), v[0].field.zero) for i in range(3)])


def p2_orbit(generators, start):
    start = _proj3(start)
    seen, out = {start}, [start]
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for g in generators:
            w = _apply3(g, v)
            if w not in seen:
                seen.add(w)
                out.append(w)
                queue.append(w)
    return out


def dp5_orbit_general_position(generators, start=None) -> bool:
    """Orbit of [1:1:1] (or ``start``) has 5 points in general position on a smooth conic."""
    fld = generators[0][0][0].field
    start = start or [fld.one, fld.one, fld.one]
    pts = p2_orbit(generators, [fld(c) for c in start])
    if len(pts) != 5:
        return False
    for trio in combinations(pts, 3):
        if det([list(p) for p in trio]).is_zero():
            return False
    rows = [[x * x, y * y, z * z, x * y, x * z, y * z] for x, y, z in pts]
    if rank(rows) != 5:
        return False
    (a, b, c, d, e, f), = nullspace(rows, 6)
    half = invert(fld(2))
    conic = [[a, d * half, e * half], [d * half, b, f * half], [e * half, f * half, c]]
    return not det(conic).is_zero()
