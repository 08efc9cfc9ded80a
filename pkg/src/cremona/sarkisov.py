"""Elementary links between Hirzebruch surfaces and monomial-map witnesses.

Only the arithmetic of n is tracked: an elementary transformation centred at an
orbit of length l on the negative section goes F_n -> F_{n+l}, one centred on the
invariant n-curve goes F_n -> F_{|n-l|}.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import reduce
from math import gcd

from .cyclo import CycNum, CyclotomicField, field, invert
from .errors import (ConductorMismatch, DegenerateInput, LengthNotAvailable,
                     NoInvariantCurve, Unreachable)
from .moebius import KleinClass

SIGMA_SIDE = "Sigma"
C_SIDE = "C"

STEP_KINDS = ("ElementaryOnSigma", "ElementaryOnC", "TypeIV", "TypeII", "Contract",
              "Conjugate", "StereographicProjection", "BlowUpFixedPoint")


def klein_spectrum(c: KleinClass) -> tuple:
    """Distinct orbit lengths on P1 for a Klein group: special lengths and |G|."""
    special = {
        "Cyclic": (1,),
        "Dihedral": (2, c.n),
        "A4": (4, 6),
        "S4": (6, 8, 12),
        "A5": (12, 20, 30),
    }[c.kind]
    return tuple(sorted(set(special) | {c.order}))


@dataclass(frozen=True)
class HirzebruchState:
    n: int
    base_class: KleinClass | None
    spectrum: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not self.spectrum:
            raise ValueError("spectrum must be nonempty")
        object.__setattr__(self, "spectrum", tuple(sorted(set(self.spectrum))))

    @classmethod
    def over(cls, n: int, base_class: KleinClass) -> "HirzebruchState":
        return cls(n, base_class, klein_spectrum(base_class))


def elementary_transform(s: HirzebruchState, length: int, side: str) -> HirzebruchState:
    if length not in s.spectrum:
        raise LengthNotAvailable(f"no orbit of length {length}; available {list(s.spectrum)}")
    if side == SIGMA_SIDE:
        n = s.n + length
    elif side == C_SIDE:
        if s.n < 1:
            raise NoInvariantCurve("F_0 has no invariant curve of positive self-intersection")
        n = abs(s.n - length)
    else:
        raise ValueError(f"side must be {SIGMA_SIDE!r} or {C_SIDE!r}")
    return HirzebruchState(n, s.base_class, s.spectrum)


# -- monomial maps ------------------------------------------------------------------

def _matmul2(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _det2(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def _pow(c: CycNum, k: int) -> CycNum:
    return c ** k if k >= 0 else invert(c) ** (-k)


_SUPER = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class MonomialMap:
    """(x, y) -> (c0 x^E00 y^E01, c1 x^E10 y^E11) with E in GL2(Z).

    A coordinate swap is just the exponent matrix [[0,1],[1,0]].
    """
    exponents: tuple
    coeffs: tuple

    def __post_init__(self):
        E = tuple(tuple(int(v) for v in row) for row in self.exponents)
        if _det2(E) not in (1, -1):
            raise ValueError(f"exponent matrix {E} is not in GL2(Z)")
        object.__setattr__(self, "exponents", E)

    @property
    def field(self) -> CyclotomicField:
        return self.coeffs[0].field

    @classmethod
    def make(cls, fld: CyclotomicField, exponents, coeffs=(1, 1)) -> "MonomialMap":
        return cls(exponents, tuple(fld(c) for c in coeffs))

    def __call__(self, x: CycNum, y: CycNum):
        (a, b), (c, d) = self.exponents
        return (self.coeffs[0] * _pow(x, a) * _pow(y, b), self.coeffs[1] * _pow(x, c) * _pow(y, d))

    def __matmul__(self, other):
        return monomial_compose(self, other)

    def inverse(self) -> "MonomialMap":
        (a, b), (c, d) = self.exponents
        det = a * d - b * c
        Einv = ((d * det, -b * det), (-c * det, a * det))
        # coefficients k with (k0, k1) pushed through E equal (c0, c1)^-1
        k0 = _pow(self.coeffs[0], -Einv[0][0]) * _pow(self.coeffs[1], -Einv[0][1])
        k1 = _pow(self.coeffs[0], -Einv[1][0]) * _pow(self.coeffs[1], -Einv[1][1])
        return MonomialMap(Einv, (k0, k1))

    def is_identity(self) -> bool:
        return self.exponents == ((1, 0), (0, 1)) and self.coeffs[0] == 1 and self.coeffs[1] == 1

    def formula(self) -> str:
        parts = []
        for c, row in zip(self.coeffs, self.exponents):
            mono = "".join(v + ("" if e == 1 else str(e).translate(_SUPER))
                           for v, e in zip("xy", row) if e != 0) or "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({c})" + ("" if mono == "1" else "·" + mono))
        return f"(x,y) ↦ ({parts[0]}, {parts[1]})"

    def __str__(self):
        return self.formula()


def monomial_compose(f: MonomialMap, g: MonomialMap) -> MonomialMap:
    """f after g."""
    if f.field is not g.field:
        raise ConductorMismatch(f"{f.field} vs {g.field}")
    E = _matmul2(f.exponents, g.exponents)
    coeffs = tuple(f.coeffs[i] * _pow(g.coeffs[0], f.exponents[i][0]) * _pow(g.coeffs[1], f.exponents[i][1])
                   for i in range(2))
    return MonomialMap(E, coeffs)


def conjugate(c: MonomialMap, g: MonomialMap) -> MonomialMap:
    """c g c^-1."""
    return monomial_compose(monomial_compose(c, g), c.inverse())


def monomial_identity(fld) -> MonomialMap:
    return MonomialMap.make(fld, ((1, 0), (0, 1)))


def phi(fld, q: int = 1) -> MonomialMap:
    """(x, y) -> (x, x^-q y)."""
    return MonomialMap.make(fld, ((1, 0), (-q, 1)))


def swap(fld) -> MonomialMap:
    return MonomialMap.make(fld, ((0, 1), (1, 0)))


def diagonal(fld, M: int, a: int, b: int) -> MonomialMap:
    """(R_M^a, R_M^b) acting on affine coordinates: (x, y) -> (w^a x, w^b y)."""
    return MonomialMap.make(fld, ((1, 0), (0, 1)),
                            (fld.root_of_unity(M, a % M), fld.root_of_unity(M, b % M)))


def inversion(fld) -> MonomialMap:
    """(B, B): (x, y) -> (1/x, 1/y)."""
    return MonomialMap.make(fld, ((-1, 0), (0, -1)))


def standard_generators(M: int, a: int, b: int, fld: CyclotomicField | None = None):
    fld = fld or field(M)
    return [diagonal(fld, M, a, b), inversion(fld)]


# -- link steps ----------------------------------------------------------------------

P2 = "P2"


@dataclass
class LinkStep:
    kind: str
    length: int | None = None
    from_n: int | str | None = None
    to_n: int | str | None = None
    map_formula: MonomialMap | str | None = None
    note: str = ""
    spectrum: tuple | None = None
    claim: tuple | None = None          # generators after a Conjugate step
    exponents: tuple | None = None      # (a, b) after a Conjugate step

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")

    def formula_text(self) -> str | None:
        if self.map_formula is None:
            return None
        return str(self.map_formula)

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "length": self.length,
            "from": self.from_n,
            "to": self.to_n,
            "map": self.formula_text(),
            "note": self.note,
        }


def _step_for(s_from: HirzebruchState, length: int, side: str) -> LinkStep:
    s_to = elementary_transform(s_from, length, side)
    kind = "ElementaryOnSigma" if side == SIGMA_SIDE else "ElementaryOnC"
    return LinkStep(kind, length, s_from.n, s_to.n, spectrum=s_from.spectrum)


def _moves(n, spectrum):
    for length in spectrum:
        if n >= 1:
            yield length, C_SIDE, abs(n - length)
        yield length, SIGMA_SIDE, n + length


def _distances_to_one(spectrum, bound):
    """Steps needed to reach 1 from each state in [0, bound], moving inside [0, bound]."""
    preds = {m: [] for m in range(bound + 1)}
    for m in range(bound + 1):
        for _, _, t in _moves(m, spectrum):
            if t <= bound:
                preds[t].append(m)
    dist = {1: 0}
    queue = deque([1])
    while queue:
        t = queue.popleft()
        for m in preds[t]:
            if m not in dist:
                dist[m] = dist[t] + 1
                queue.append(m)
    return dist


def reachable(n: int, spectrum) -> bool:
    d = reduce(gcd, spectrum)
    return n % d in (1 % d, (-1) % d)


def bezout_plan(n: int, spectrum, base_class: KleinClass | None = None) -> list:
    """Shortest chain of elementary transformations F_n -> F_1.

    Ties go to the smaller largest intermediate n, then to smaller lengths
    taken first. Raises Unreachable(d) unless n = +-1 mod d, d = gcd(spectrum).
    """
    spectrum = tuple(sorted(set(spectrum)))
    if not spectrum:
        raise ValueError("empty spectrum")
    d = reduce(gcd, spectrum)
    if not reachable(n, spectrum):
        raise Unreachable(d)
    L = max(spectrum)
    bound = max(40, n + 2 * L * L + 2 * L)
    dist = _distances_to_one(spectrum, bound)
    best = dist.get(n)
    if best is None:
        raise Unreachable(d)
    # smallest ceiling T such that a shortest plan stays in [0, T]
    lo, hi = max(n, 1), bound
    while lo < hi:
        mid = (lo + hi) // 2
        if _distances_to_one(spectrum, mid).get(n) == best:
            hi = mid
        else:
            lo = mid + 1
    dist = _distances_to_one(spectrum, lo)
    state = HirzebruchState(n, base_class, spectrum)
    steps = []
    while state.n != 1:
        want = dist[state.n] - 1
        for length, side, t in sorted(_moves(state.n, spectrum), key=lambda m: (m[0], m[1] != C_SIDE)):
            if t <= lo and dist.get(t) == want:
                steps.append(_step_for(state, length, side))
                state = elementary_transform(state, length, side)
                break
    return steps


def contract_step() -> LinkStep:
    return LinkStep("Contract", None, 1, P2, note="contract the (-1)-section of F_1")


# -- the Euclidean-algorithm witness ------------------------------------------------------

def euclid_witness(a: int, b: int, M: int, fld: CyclotomicField | None = None):
    """Linearizing chain for the group <(R_M^a, R_M^b), (B, B)> on P1 x P1.

    Returns (steps, (gcd(a, b), 0)). Each Conjugate step carries its monomial map
    and the generators after conjugating by it.
    """
    if a == 0 and b == 0:
        raise DegenerateInput("a = b = 0 gives no rotation")
    if M < 1:
        raise DegenerateInput("M must be positive")
    fld = fld or field(M)
    a, b = abs(a), abs(b)
    gens = standard_generators(M, a, b, fld)
    steps = []
    while b != 0:
        if a == 0 or a > b:
            c = swap(fld)
            a, b = b, a
            note = "swap the factors"
        else:
            q = b // a
            c = phi(fld, q)
            b = b - q * a
            note = f"conjugate by ((x,y) ↦ (x, x⁻¹y))^{q}" if q > 1 else "conjugate by (x,y) ↦ (x, x⁻¹y)"
        gens = [conjugate(c, g) for g in gens]
        steps.append(LinkStep("Conjugate", map_formula=c, from_n=0, to_n=0, note=note,
                              claim=tuple(gens), exponents=(a, b)))
    ell = a
    N = M // gcd(M, ell)
    base = KleinClass("Cyclic", 2)
    spectrum = klein_spectrum(base)
    steps.append(LinkStep("ElementaryOnSigma", N, 0, N, spectrum=(N,),
                          note=f"blow up the orbit of length {N} in the fibre y = 1"))
    steps.extend(bezout_plan(N, spectrum, base) if N != 1 else [])
    steps.append(contract_step())
    return steps, (ell, 0)


# -- validation ------------------------------------------------------------------------

@dataclass
class ChainReport:
    ok: bool
    failed_step: int | None = None
    reason: str = ""
    final_generators: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_chain(original_generators, steps, final_generators=None) -> ChainReport:
    """Replay a witness chain exactly.

    Conjugate steps must turn the current generators into the claimed ones; elementary
    steps must use an available length with the right n-arithmetic and connect to the
    previous step.
    """
    gens = list(original_generators)
    prev_to = None
    for i, st in enumerate(steps):
        if prev_to is not None and st.from_n is not None and st.kind != "Conjugate" and st.from_n != prev_to:
            return ChainReport(False, i, f"step starts at {st.from_n} but previous ended at {prev_to}", gens)
        if st.kind == "Conjugate":
            if not isinstance(st.map_formula, MonomialMap):
                return ChainReport(False, i, "conjugation step carries no map", gens)
            gens = [conjugate(st.map_formula, g) for g in gens]
            if st.claim is not None and tuple(gens) != tuple(st.claim):
                return ChainReport(False, i, "conjugated generators differ from the claim", gens)
        elif st.kind in ("ElementaryOnSigma", "ElementaryOnC"):
            if st.spectrum is not None and st.length not in st.spectrum:
                return ChainReport(False, i, f"length {st.length} not in spectrum {st.spectrum}", gens)
            expected = st.from_n + st.length if st.kind == "ElementaryOnSigma" else abs(st.from_n - st.length)
            if st.kind == "ElementaryOnC" and st.from_n < 1:
                return ChainReport(False, i, "no invariant curve on F_0", gens)
            if st.to_n != expected:
                return ChainReport(False, i, f"expected F_{expected}, step claims F_{st.to_n}", gens)
        elif st.kind == "Contract":
            if st.from_n != 1:
                return ChainReport(False, i, "only F_1 contracts to P2", gens)
        if st.kind != "Conjugate" and st.to_n is not None:
            prev_to = st.to_n
    if final_generators is not None and list(final_generators) != gens:
        return ChainReport(False, len(steps), "final generators differ", gens)
    return ChainReport(True, None, "", gens)
