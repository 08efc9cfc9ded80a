"""Rational self-maps of P2 given by homogeneous polynomials, and linear groups on P2."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .cyclo import CycNum, CyclotomicField, invert
from .errors import ConductorMismatch, TooManyIndeterminacyHits
from .groups import GroupTable, closure

Poly = dict   # {(i, j, k): CycNum}, exponents of x, y, z


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s
    return out


def poly_mul(p: Poly, q: Poly) -> Poly:
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            s = out.get(m)
            out[m] = c1 * c2 if s is None else s + c1 * c2
    return {m: c for m, c in out.items() if not c.is_zero()}


def poly_scale(p: Poly, c: CycNum) -> Poly:
    return {m: v * c for m, v in p.items() if not (v * c).is_zero()}


def poly_eval(p: Poly, pt) -> CycNum:
    x, y, z = pt
    total = None
    for (i, j, k), c in p.items():
        term = c * x ** i * y ** j * z ** k
        total = term if total is None else total + term
    return total if total is not None else pt[0] * 0


def poly_degree(p: Poly) -> int:
    return max((sum(m) for m in p), default=-1)


def _substitute(p: Poly, subs, fld) -> Poly:
    """p(subs[0], subs[1], subs[2])."""
    powers = [{0: {(0, 0, 0): fld.one}} for _ in range(3)]

    def power(v, e):
        cache = powers[v]
        if e not in cache:
            cache[e] = poly_mul(power(v, e - 1), subs[v])
        return cache[e]
    out = {}
    for (i, j, k), c in p.items():
        term = poly_scale(poly_mul(poly_mul(power(0, i), power(1, j)), power(2, k)), c)
        out = poly_add(out, term)
    return out


@dataclass(frozen=True)
class P2RationalMap:
    """[x:y:z] -> [P0 : P1 : P2] with homogeneous P_i of one common degree."""
    polys: tuple
    field: CyclotomicField

    def __post_init__(self):
        if len(self.polys) != 3:
            raise ValueError("a map of P2 needs three components")
        if all(not p for p in self.polys):
            raise ValueError("all three components vanish identically")
        degs = {sum(m) for p in self.polys for m in p}
        if len(degs) != 1:
            raise ValueError(f"components are not homogeneous of one degree: {sorted(degs)}")

    @property
    def degree(self) -> int:
        return max(poly_degree(p) for p in self.polys)

    @classmethod
    def from_terms(cls, fld: CyclotomicField, components) -> "P2RationalMap":
        """``components``: three lists of (coefficient, (i, j, k)) pairs."""
        polys = []
        for comp in components:
            p = {}
            for coef, exps in comp:
                p = poly_add(p, {tuple(int(e) for e in exps): fld(coef)})
            polys.append(p)
        return cls(tuple(polys), fld)

    @classmethod
    def linear(cls, fld: CyclotomicField, matrix) -> "P2RationalMap":
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        return cls.from_terms(fld, [[(c, basis[j]) for j, c in enumerate(row) if fld(c) != 0] for row in matrix])

    @classmethod
    def identity(cls, fld):
        return cls.linear(fld, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __call__(self, pt):
        return tuple(poly_eval(p, pt) for p in self.polys)

    def after(self, other: "P2RationalMap") -> "P2RationalMap":
        """self o other, composed symbolically (no cancellation of common factors)."""
        if self.field is not other.field:
            raise ConductorMismatch(f"{self.field} vs {other.field}")
        return P2RationalMap(tuple(_substitute(p, other.polys, self.field) for p in self.polys), self.field)

    def terms(self):
        return [[(c, m) for m, c in sorted(p.items())] for p in self.polys]


def projectively_equal(u, v) -> bool:
    """All 2x2 minors of the rows u, v vanish."""
    return all((u[i] * v[j] - u[j] * v[i]).is_zero() for i in range(3) for j in range(i + 1, 3))


def _vanishes(v) -> bool:
    return all(c.is_zero() for c in v)


@dataclass
class ConjugationReport:
    forward: bool           # c(f(c(p))) = target(p)
    backward: bool          # c(target(c(p))) = f(p)
    checked: int
    skipped: int
    composite_degree_bound: int

    def __bool__(self):
        return self.forward

    @property
    def ordering(self) -> str:
        if self.forward and self.backward:
            return "both"
        return "c.f.c = target" if self.forward else ("c.target.c = f" if self.backward else "neither")


def _chain(maps, pt):
    for m in maps:
        pt = m(pt)
        if _vanishes(pt):
            return None
    return pt


def verify_p2_conjugation(f: P2RationalMap, c: P2RationalMap, target: P2RationalMap,
                          trials: int = 50, seed: int = 0, c_inverse: P2RationalMap | None = None) -> ConjugationReport:
    """Check c o f o c^-1 = target at seeded random integer points, exactly.

    ``c_inverse`` defaults to ``c`` (the conjugator is an involution).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    fld = f.field
    if not (fld is c.field is target.field):
        raise ConductorMismatch("all three maps must live over one field")
    c_inv = c_inverse or c
    rng = random.Random(seed)
    checked = skipped = 0
    fwd = bwd = True
    for _ in range(trials):
        p = tuple(fld(rng.randint(-20, 20)) for _ in range(3))
        if _vanishes(p):
            skipped += 1
            continue
        lhs = _chain([c_inv, f, c], p)
        rhs = _chain([target], p)
        lhs2 = _chain([c, target, c_inv], p)
        rhs2 = _chain([f], p)
        if lhs is None or rhs is None or lhs2 is None or rhs2 is None:
            skipped += 1
            continue
        checked += 1
        fwd = fwd and projectively_equal(lhs, rhs)
        bwd = bwd and projectively_equal(lhs2, rhs2)
    if 2 * checked < trials:
        raise TooManyIndeterminacyHits(f"only {checked} of {trials} sample points were checkable")
    bound = c.degree * f.degree * c_inv.degree
    return ConjugationReport(fwd, bwd, checked, skipped, bound)


def symbolic_conjugation_check(f, c, target, c_inverse=None) -> tuple:
    """(degree of c o f o c^-1 before cancellation, whether it is proportional to target)."""
    comp = c.after(f.after(c_inverse or c))
    P, T = comp.polys, target.polys
    ok = all(not poly_add(poly_mul(P[i], T[j]), poly_scale(poly_mul(P[j], T[i]), -comp.field.one))
             for i in range(3) for j in range(i + 1, 3))
    return comp.degree, ok


# -- the introductory example over Q(w5) ---------------------------------------------

def golden_ratio(fld: CyclotomicField) -> CycNum:
    """(1 + sqrt 5) / 2 = 1 + w5 + w5^4."""
    w = fld.root_of_unity(5)
    return 1 + w + w ** 4


def intro_example(fld: CyclotomicField):
    """(f, c, target) for the quadratic map [x(z-y) : z(x-y) : xz] and its linearization."""
    z_ = golden_ratio(fld)
    zi = invert(z_)
    X, Y, Z = ({(1, 0, 0): fld.one}, {(0, 1, 0): fld.one}, {(0, 0, 1): fld.one})

    def lin(a, b, c):
        p = {}
        for coef, var in ((a, X), (b, Y), (c, Z)):
            if coef != 0:
                p = poly_add(p, poly_scale(var, fld(coef)))
        return p

    def prod(*ps):
        out = {(0, 0, 0): fld.one}
        for p in ps:
            out = poly_mul(out, p)
        return out
    f = P2RationalMap((prod(X, lin(0, -1, 1)), prod(Z, lin(1, -1, 0)), prod(X, Z)), fld)
    c = P2RationalMap((
        prod(lin(1, -z_, 0), lin(0, 1, -1), lin(-z_, 0, 1)),
        prod(lin(zi, -1, 0), lin(0, z_ * z_, -1), lin(-1, 0, 1)),
        prod(lin(1, -1, 0), lin(0, z_ * z_, -1), lin(-z_, 0, 1)),
    ), fld)
    target = P2RationalMap((lin(0, 1, -zi * zi), lin(-zi, 1, 0), lin(0, 1, 0)), fld)
    return f, c, target


# -- linear groups on P2 ------------------------------------------------------------------

def _normalize3(flat):
    for e in flat:
        if not e.is_zero():
            if e == 1:
                return tuple(flat)
            s = invert(e)
            return tuple(x * s for x in flat)
    raise ValueError("zero matrix")


def _mul3(a, b):
    return _normalize3(tuple(sum((a[3 * i + k] * b[3 * k + j] for k in range(3)), a[0] * 0)
                             for i in range(3) for j in range(3)))


def p2_closure(generators, cap: int | None = None) -> GroupTable:
    """Closure in PGL3 of 3x3 matrices (nested lists of field elements)."""
    from .moebius import default_cap
    from .linalg import det
    gens = []
    for m in generators:
        rows = [list(r) for r in m]
        if det(rows).is_zero():
            raise ValueError("singular matrix")
        gens.append(_normalize3(tuple(x for r in rows for x in r)))
    fld = gens[0][0].field if gens else None
    e = _normalize3(tuple(fld.one if i % 4 == 0 else fld.zero for i in range(9)))
    return closure(gens, _mul3, e, default_cap() if cap is None else cap)
