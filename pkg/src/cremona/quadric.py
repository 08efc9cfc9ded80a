"""Aut(P1 x P1) = (PGL2 x PGL2) x| C2 and the analysis of its finite subgroups."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .cyclo import CyclotomicField, field
from .errors import ConductorMismatch, FixedCurve
from .groups import GoursatData, GroupTable, goursat_decompose, recognize_family
from .groups import closure as _closure
from .moebius import (KleinClass, MoebiusMap, ProjPoint, R, compose, default_cap, fixed_points,
                      identity, klein_classify, standard_matrices)


@dataclass(frozen=True)
class QuadricAut:
    m: MoebiusMap
    n: MoebiusMap
    swap: bool = False

    def __repr__(self):
        return f"QuadricAut({self.m!r}, {self.n!r}, {'swap' if self.swap else 'id'})"

    @property
    def field(self) -> CyclotomicField:
        return self.m.field


@dataclass(frozen=True)
class QuadricPoint:
    x: ProjPoint
    y: ProjPoint

    def sort_key(self):
        return (self.x.sort_key(), self.y.sort_key())


@lru_cache(maxsize=1 << 17)
def compose_aut(a: QuadricAut, b: QuadricAut) -> QuadricAut:
    """a.b (apply b first)."""
    if a.field is not b.field:
        raise ConductorMismatch(f"{a.field} vs {b.field}")
    if a.swap:
        return QuadricAut(compose(a.m, b.n), compose(a.n, b.m), not b.swap)
    return QuadricAut(compose(a.m, b.m), compose(a.n, b.n), b.swap)


def act(a: QuadricAut, p: QuadricPoint) -> QuadricPoint:
    if a.swap:
        return QuadricPoint(a.m(p.y), a.n(p.x))
    return QuadricPoint(a.m(p.x), a.n(p.y))


def quadric_identity(fld: CyclotomicField) -> QuadricAut:
    e = identity(fld)
    return QuadricAut(e, e, False)


def inverse_aut(a: QuadricAut) -> QuadricAut:
    if a.swap:
        return QuadricAut(a.n.inverse(), a.m.inverse(), True)
    return QuadricAut(a.m.inverse(), a.n.inverse(), False)


def quadric_closure(generators, cap: int | None = None) -> GroupTable:
    cap = default_cap() if cap is None else cap
    return _closure(list(generators), compose_aut, quadric_identity(generators[0].field), cap)


# -- ruling analysis -----------------------------------------------------------

@dataclass
class RulingAnalysis:
    rank: int
    group: GroupTable
    kernel: GroupTable
    swap_rep: QuadricAut | None
    goursat: GoursatData
    H_class: object          # KleinClass (rank 1) or (KleinClass, KleinClass) (rank 2)

    @property
    def factor_classes(self):
        return self.H_class if self.rank == 2 else (self.H_class, self.H_class)


def kernel_generators(G: GroupTable) -> list:
    """Schreier generators of the non-swapping subgroup (index <= 2)."""
    gens = [G.elements[g] for g in G.gens]
    t = next((g for g in gens if g.swap), None)
    if t is None:
        return gens
    t_inv = inverse_aut(t)
    out = []
    for g in gens:
        if g.swap:
            out += [compose_aut(g, t_inv), compose_aut(t, g)]
        else:
            out += [g, compose_aut(compose_aut(t, g), t_inv)]
    fld = t.field
    e = quadric_identity(fld)
    seen, uniq = set(), []
    for g in out:
        if g != e and g not in seen:
            seen.add(g)
            uniq.append(g)
    return uniq or [e]


def analyze_rulings(generators, cap: int | None = None) -> RulingAnalysis:
    G = quadric_closure(generators, cap)
    swap_rep = next((g for g in generators if g.swap), None)
    if swap_rep is None:
        kernel = G
    else:
        kernel = quadric_closure(kernel_generators(G), cap)
    d = goursat_decompose(kernel, lambda a: a.m, lambda a: a.n)
    c1, c2 = klein_classify(d.G1), klein_classify(d.G2)
    if swap_rep is None:
        return RulingAnalysis(2, G, kernel, None, d, (c1, c2))
    if c1 != c2:
        raise AssertionError("kernel projections of a rank-1 group must be isomorphic")
    return RulingAnalysis(1, G, kernel, swap_rep, d, c1)


# -- fixed points and orbits -----------------------------------------------------

def _common_fixed_on_line(maps):
    """Common fixed points on P1 of the given maps; None means 'every point'."""
    pts = None
    for g in maps:
        if g.is_identity():
            continue
        fp = fixed_points(g)
        pts = fp if pts is None else [p for p in pts if p in fp]
    return pts


def common_fixed_points(G: GroupTable) -> list:
    elements = G.elements
    gens = [elements[g] for g in G.gens]
    kern = kernel_generators(G)
    fx = _common_fixed_on_line([a.m for a in kern])
    fy = _common_fixed_on_line([a.n for a in kern])
    if fx is None or fy is None:
        raise FixedCurve(_sample_on_fixed_curve(G, fx, fy))
    out = []
    for x, y in product(fx, fy):
        p = QuadricPoint(x, y)
        if all(act(g, p) == p for g in gens):
            out.append(p)
    return sorted(out, key=QuadricPoint.sort_key)


def _sample_on_fixed_curve(G, fx, fy):
    fld = G.elements[0].field
    swaps = [G.elements[g] for g in G.gens if G.elements[g].swap]
    base = [ProjPoint(fld.one, fld.zero), ProjPoint(fld.zero, fld.one), ProjPoint(fld.one, fld.one)]
    xs = fx if fx is not None else base
    ys = fy if fy is not None else base
    if swaps:
        s = swaps[0]
        # points (M y, y) are fixed by a swapping involution (M, M^-1, swap)
        for y in ys:
            p = QuadricPoint(s.m(y), y)
            if all(act(G.elements[g], p) == p for g in G.gens):
                return p
    for x, y in product(xs, ys):
        p = QuadricPoint(x, y)
        if all(act(G.elements[g], p) == p for g in G.gens):
            return p
    return None


def orbit_on_quadric(G: GroupTable, p: QuadricPoint) -> list:
    gens = [G.elements[g] for g in G.gens]
    seen, out = {p}, [p]
    queue = deque([p])
    while queue:
        q = queue.popleft()
        for g in gens:
            r = act(g, q)
            if r not in seen:
                seen.add(r)
                out.append(r)
                queue.append(r)
    return out


def normalizes(overgroup: GroupTable, subgroup_keys) -> bool:
    """Every element of ``overgroup`` (PGL2 table) conjugates ``subgroup_keys`` into itself."""
    sub = set(subgroup_keys)
    for g in (overgroup.elements[i] for i in overgroup.gens):
        gi = g.inverse()
        if any(compose(compose(gi, h), g) not in sub for h in sub):
            return False
    return True


# -- classification table rows ----------------------------------------------------------

def outer_involution_images(fld: CyclotomicField):
    """Images (xi(E), xi(F)) of an involutive outer automorphism xi of <E, F> = A5."""
    mats = standard_matrices(fld)
    E, F = mats["E"], mats["F"]
    from .moebius import closure as mclosure
    G = mclosure([E, F])

    def apply(word, x, y):
        imgs = (x, y)
        out = identity(fld)
        for k in word:
            out = compose(out, imgs[k])
        return out
    E2 = compose(E, E)
    e2_class = {compose(compose(g.inverse(), E2), g) for g in G.elements}
    order5 = [g for g in G.elements if g in e2_class]
    involutions = [g for g in G.elements if not g.is_identity() and compose(g, g).is_identity()]
    for x in order5:
        for y in involutions:
            xy = compose(x, y)
            if not compose(compose(xy, xy), xy).is_identity():
                continue
            ix, iy = G.index[x], G.index[y]
            if apply(G.words[ix], x, y) == E and apply(G.words[iy], x, y) == F:
                return x, y
    raise AssertionError("no involutive outer automorphism found")


def _row(spec, fld):
    mats = dict(standard_matrices(fld))
    out = []
    for m, n, s in spec:
        out.append(QuadricAut(_lookup(mats, m, fld), _lookup(mats, n, fld), s == "swap"))
    return out


def _lookup(mats, name, fld):
    if name.startswith("R"):
        return R(fld, int(name[1:]))
    if name == "xiE" or name == "xiF":
        if "xiE" not in mats:
            mats["xiE"], mats["xiF"] = outer_involution_images(fld)
        return mats[name]
    return mats[name]


@dataclass(frozen=True)
class TableRow:
    name: str
    order: int
    family: str
    generators: tuple

    def build(self, fld: CyclotomicField):
        return _row(self.generators, fld)


def _dn(n):
    return "R%d" % n


TABLE_ROWS = [
    # A4 rows
    TableRow("A4xC2", 24, "A4 x C2", (("A", "A", "id"), ("B", "B", "id"), ("C", "C", "id"), ("I", "I", "swap"))),
    TableRow("S4-diag-D", 24, "S4", (("A", "A", "id"), ("B", "B", "id"), ("C", "C", "id"), ("D", "D", "swap"))),
    TableRow("C2^4:C6-a", 96, "C2^4 : C6", (("A", "I", "id"), ("B", "I", "id"), ("C", "C", "id"), ("I", "I", "swap"))),
    TableRow("C2^4:C6-b", 96, "C2^4 : C6", (("A", "I", "id"), ("B", "I", "id"), ("C", "C", "id"), ("I", "C", "swap"))),
    TableRow("C2^2:S4", 96, "C2^2 : S4", (("A", "I", "id"), ("B", "I", "id"), ("C", "C", "id"), ("D", "D", "swap"))),
    TableRow("A4wrC2-a", 288, "A4 wr C2", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("I", "I", "swap"))),
    TableRow("A4wrC2-b", 288, "A4 wr C2", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("D", "D", "swap"))),
    # S4 rows
    TableRow("S4xC2", 48, "S4 x C2", (("A", "A", "id"), ("B", "B", "id"), ("C", "C", "id"), ("D", "D", "id"), ("I", "I", "swap"))),
    TableRow("C2^4:D6", 192, "C2^4 : D6", (("A", "I", "id"), ("B", "I", "id"), ("C", "C", "id"), ("D", "D", "id"), ("I", "I", "swap"))),
    TableRow("A4^2:C2^2", 576, "A4^2 : C2^2", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("D", "D", "id"), ("I", "I", "swap"))),
    TableRow("A4^2:C4", 576, "A4^2 : C4", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("D", "D", "id"), ("I", "D", "swap"))),
    TableRow("S4wrC2", 1152, "S4 wr C2", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("D", "I", "id"), ("I", "I", "swap"))),
    # A5 rows
    TableRow("A5xC2", 120, "A5 x C2", (("E", "E", "id"), ("F", "F", "id"), ("I", "I", "swap"))),
    TableRow("S5-twisted", 120, "S5", (("E", "xiE", "id"), ("F", "xiF", "id"), ("I", "I", "swap"))),
    TableRow("A5wrC2", 7200, "A5 wr C2", (("I", "E", "id"), ("I", "F", "id"), ("E", "I", "id"), ("F", "I", "id"), ("I", "I", "swap"))),
    # main theorem rows
    TableRow("S4xA5", 1440, "S4 x A5", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("D", "I", "id"), ("I", "E", "id"), ("I", "F", "id"))),
    TableRow("S4wrC2-main", 1152, "S4 wr C2", (("A", "I", "id"), ("B", "I", "id"), ("C", "I", "id"), ("D", "I", "id"), ("I", "I", "swap"))),
    TableRow("A5wrC2-main", 7200, "A5 wr C2", (("E", "I", "id"), ("F", "I", "id"), ("I", "I", "swap"))),
]


def dihedral_rows(n: int):
    """The n-dependent rows of the main classification for one value of n."""
    R_ = _dn(n)
    return [
        TableRow(f"D{n}xS4", 48 * n, f"D{n} x S4", ((R_, "I", "id"), ("B", "I", "id"), ("I", "A", "id"), ("I", "B", "id"), ("I", "C", "id"), ("I", "D", "id"))),
        TableRow(f"D{n}xA5", 120 * n, f"D{n} x A5", ((R_, "I", "id"), ("B", "I", "id"), ("I", "E", "id"), ("I", "F", "id"))),
        TableRow(f"D{n}wrC2", 8 * n * n, f"D{n} wr C2", ((R_, "I", "id"), ("B", "I", "id"), ("I", "I", "swap"))),
    ]


ROWS_BY_NAME = {row.name: row for row in TABLE_ROWS}


def verify_table_row(row, conductor: int = 20, cap: int | None = None):
    """(closure order, family tag) of a table row at the given conductor."""
    if isinstance(row, str):
        row = ROWS_BY_NAME[row]
    G = quadric_closure(row.build(field(conductor)), cap)
    return G.order, recognize_family(G)
