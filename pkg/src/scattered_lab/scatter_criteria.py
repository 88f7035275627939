"""When is U_b = {(x, b x^q + x^(q^4))} maximum scattered in F_{q^6}^2?

Two routes give the answer.  The oracle walks every m in F_{q^6} and asks
whether r_{m,b}(x) = m x + b x^q + x^(q^4) has an F_q-kernel of dimension
two or more.  The closed forms only look at the norm N = b^(q^3+1):
odd q needs a square test on a discriminant that lives in F_q, even q an
absolute trace of an element of F_q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EnumerationTooLarge,
    EvenCharRequired,
    NotInSubfield,
    OddCharRequired,
    PreconditionUnmet,
    ZeroB,
    ZeroInput,
)
from .field_tower import Elt, TowerCtx
from .linearized import BRUTE_LIMIT, LinPoly, det, det_is_zero, dickson, submatrix_Mr


def r_poly(m: Elt, b: Elt) -> LinPoly:
    tower = b.tower
    zero, one = tower.zero(), tower.one()
    return LinPoly([m, b, zero, zero, one, zero])


def _require_b(b: Elt):
    if np.any(b.is_zero()):
        raise ZeroB("b must be nonzero")


def _conjugates(x: Elt, k: int = 6) -> list[Elt]:
    return [x.frob(i) for i in range(k)]


# -- verdicts ---------------------------------------------------------------------

@dataclass
class ScatterVerdict:
    scattered: bool
    route: str
    N: Elt
    b: Elt | None = None
    witness_m: Elt | None = None

    def to_json(self) -> dict:
        out = {
            "b": None if self.b is None else list(self.b.coeffs),
            "N": list(self.N.coeffs),
            "scattered": self.scattered,
            "route": self.route,
        }
        if self.witness_m is not None:
            out["witness_m"] = list(self.witness_m.coeffs)
        return out


def _large_kernel_mask(m: Elt, b: Elt) -> np.ndarray:
    """Per m: both det M_0 and det M_1 of r_{m,b} vanish (kernel dim >= 2)."""
    M = dickson(r_poly(m, b))
    zero0 = np.atleast_1d(det_is_zero(submatrix_Mr(M, 0)))
    hit = np.zeros(zero0.shape, dtype=bool)
    idx = np.nonzero(zero0)[0]
    if idx.size:
        sub = Elt(M.tower, M.c[idx])
        hit[idx] = np.atleast_1d(det_is_zero(submatrix_Mr(sub, 1)))
    return hit


def brute_is_scattered(b: Elt, chunk: int = 4096) -> ScatterVerdict:
    """Check every m; witnesses are searched as g^0, g^1, ..., g^(q^6-2), then 0."""
    tower = b.tower
    _require_b(b)
    if tower.Q > BRUTE_LIMIT:
        raise EnumerationTooLarge(f"q^6 = {tower.Q} exceeds {BRUTE_LIMIT}")
    N = tower.norm_q6_q3(b)
    order = tower.Q - 1
    steps = tower.power_table(tower.g, min(chunk, order))
    jump = tower.g ** len(steps)
    start = tower.one()
    for s in range(0, order, len(steps)):
        m = (start * steps)[: order - s]
        hit = _large_kernel_mask(m, b)
        if hit.any():
            k = int(np.argmax(hit))
            return ScatterVerdict(False, "oracle", N, b, m[k])
        start = start * jump
    if _large_kernel_mask(tower.zero((1,)), b)[0]:
        return ScatterVerdict(False, "oracle", N, b, tower.zero())
    return ScatterVerdict(True, "oracle", N, b)


# -- the quadratic phi_b ------------------------------------------------------------

@dataclass
class PhiQuadratic:
    parity: str
    A: Elt
    B: Elt
    C: Elt
    N: Elt
    delta_b: Elt | None = None
    ac_over_b2: Elt | None = None

    def coefficients(self) -> tuple[Elt, Elt, Elt]:
        return self.A, self.B, self.C

    def evaluate(self, t: Elt) -> Elt:
        return (self.A * t + self.B) * t + self.C


def _sym(N: Elt):
    n0, n1, n2 = N, N.frob(1), N.frob(2)
    s1 = n0 + n1 + n2
    s2 = n0 * n1 + n0 * n2 + n1 * n2
    s3 = n0 * n1 * n2
    return n0, n1, n2, s1, s2, s3


def _B_from_norm(N: Elt) -> Elt:
    n0, n1, n2, s1, s2, s3 = _sym(N)
    if N.tower.p == 2:
        return s3 + s1
    return -s3 + 2 * n0 * n1 - n0 - n1 + n2


def _C_over_Aq3(N: Elt) -> Elt:
    """C / A^(q^3) = -(N-1)^(q^2+q+1) (odd) or (N+1)^(q^2+q+1) (even)."""
    u = N - 1 if N.tower.p != 2 else N + 1
    v = u * u.frob(1) * u.frob(2)
    return -v if N.tower.p != 2 else v


def delta_from_norm(N: Elt) -> Elt:
    """Discriminant of phi_b as a function of N alone (odd q)."""
    *_, s1, s2, s3 = _sym(N)
    u = s3 - s1
    return u * u + 8 * s3 - 4 * s2


def ac_over_b2_from_norm(N: Elt) -> Elt:
    """AC/B^2 = N^(q+1) (N+1)^(q^2+q+1) / B^2 (even q, B != 0)."""
    n0, n1, *_ = _sym(N)
    B = _B_from_norm(N)
    return n0 * n1 * _C_over_Aq3(N) / (B * B)


def tr_q3_q_ac_over_b2(N: Elt) -> Elt:
    """Closed form of Tr_{q^3/q}(AC/B^2) in terms of N (even q); B must be nonzero."""
    *_, s1, s2, s3 = _sym(N)
    B = s3 + s1
    return s2 * (s1 + s2 + s3 + 1) / (B * B)


def phi_b(b: Elt) -> PhiQuadratic:
    tower = b.tower
    _require_b(b)
    N = tower.norm_q6_q3(b)
    A = b.frob(1) * b
    B = _B_from_norm(N)
    C = A.frob(3) * _C_over_Aq3(N)
    if tower.p == 2:
        ratio = None if B.is_zero() else A * C / (B * B)
        return PhiQuadratic("even", A, B, C, N, ac_over_b2=ratio)
    return PhiQuadratic("odd", A, B, C, N, delta_b=B * B - 4 * A * C)


def _mono(bs: list[Elt], exps) -> Elt:
    out = bs[0].tower.one()
    for bi, k in zip(bs, exps):
        if k:
            out = out * bi**k
    return out


def phi_literal(b: Elt) -> tuple[Elt, Elt, Elt]:
    """Coefficients of phi_b written directly as monomials in the conjugates of b."""
    bs = _conjugates(b)
    one = b.tower.one()
    A = _mono(bs, (1, 1, 0, 0, 0, 0))
    B = (
        -_mono(bs, (1, 1, 1, 1, 1, 1))
        + 2 * _mono(bs, (1, 1, 0, 1, 1, 0))
        - _mono(bs, (1, 0, 0, 1, 0, 0))
        - _mono(bs, (0, 1, 0, 0, 1, 0))
        + _mono(bs, (0, 0, 1, 0, 0, 1))
    )
    u = _mono(bs, (1, 0, 0, 1, 0, 0)) - one
    C = -_mono(bs, (0, 0, 0, 1, 1, 0)) * u * u.frob(1) * u.frob(2)
    return A, B, C


def delta_literal(b: Elt) -> Elt:
    """Discriminant of phi_b expanded in the conjugates of b."""
    bs = _conjugates(b)
    full = _mono(bs, (1,) * 6)
    return (
        full * full
        - 2 * _mono(bs, (2, 1, 1, 2, 1, 1))
        - 2 * _mono(bs, (1, 2, 1, 1, 2, 1))
        - 2 * _mono(bs, (1, 1, 2, 1, 1, 2))
        + _mono(bs, (2, 0, 0, 2, 0, 0))
        + _mono(bs, (0, 0, 2, 0, 0, 2))
        + _mono(bs, (0, 2, 0, 0, 2, 0))
        + 8 * full
        - 2 * _mono(bs, (1, 1, 0, 1, 1, 0))
        - 2 * _mono(bs, (1, 0, 1, 1, 0, 1))
        - 2 * _mono(bs, (0, 1, 1, 0, 1, 1))
    )


def delta_expanded_norm(N: Elt) -> Elt:
    """The discriminant as a fully expanded polynomial in N, N^q, N^(q^2)."""
    n0, n1, n2 = N, N.frob(1), N.frob(2)
    s3 = n0 * n1 * n2
    return (
        s3 * s3
        - 2 * (s3 * n0 + s3 * n1 + s3 * n2)
        + n0 * n0 + n1 * n1 + n2 * n2
        + 8 * s3
        - 2 * (n0 * n1 + n1 * n2 + n0 * n2)
    )


# -- closed-form criteria -----------------------------------------------------------

def _check_norm(N: Elt):
    if not np.all(N.tower.in_subfield(N, 3)):
        raise NotInSubfield("N must lie in F_{q^3}")


def criterion_odd(N: Elt):
    """U_b is maximum scattered iff the discriminant is a square in F_q^*."""
    tower = N.tower
    if tower.p == 2:
        raise OddCharRequired("criterion_odd needs odd q")
    _check_norm(N)
    return tower.is_square_in_Fq_star(delta_from_norm(N))


def criterion_even(N: Elt):
    """B != 0, N not in {0, 1} and Tr_{q^3/2}(AC/B^2) = 0."""
    tower = N.tower
    if tower.p != 2:
        raise EvenCharRequired("criterion_even needs even q")
    _check_norm(N)
    B = _B_from_norm(N)
    ok = ~N.is_zero() & (N != 1) & ~B.is_zero()
    safe_B = tower.where(ok, B, tower.one(np.shape(ok)))
    *_, s1, s2, s3 = _sym(N)
    inner = s2 * (s1 + s2 + s3 + 1) / (safe_B * safe_B)
    inner = tower.where(ok, inner, tower.zero(np.shape(ok)))
    tr = tower.abs_trace(inner, tower.e)
    out = ok & tr.is_zero()
    return bool(out) if np.ndim(out) == 0 else out


def criterion(N: Elt):
    return criterion_even(N) if N.tower.p == 2 else criterion_odd(N)


def is_scattered(b: Elt) -> ScatterVerdict:
    tower = b.tower
    _require_b(b)
    N = tower.norm_q6_q3(b)
    if tower.p == 2:
        return ScatterVerdict(bool(criterion_even(N)), "closed_form_even", N, b)
    if N == 1:
        return ScatterVerdict(False, "closed_form_odd", N, b)
    return ScatterVerdict(bool(criterion_odd(N)), "closed_form_odd", N, b)


# -- roots of phi_b and their power class -----------------------------------------

ODD_CASES = ("delta_zero", "delta_square_N_in_Fq", "delta_square_N_not_in_Fq", "delta_nonsquare")
EVEN_CASES = ("B_zero", "N_in_Fq", "N_not_in_Fq_tr1", "N_not_in_Fq_tr0")
POWER_BRANCHES = {
    "delta_zero": True,
    "delta_square_N_in_Fq": True,
    "delta_square_N_not_in_Fq": False,
    "delta_nonsquare": True,
    "B_zero": True,
    "N_in_Fq": True,
    "N_not_in_Fq_tr1": True,
    "N_not_in_Fq_tr0": False,
}


@dataclass
class RootPowerStatus:
    case: str
    roots: list[Elt] = field(default_factory=list)
    all_roots_are_powers: bool = False

    @property
    def expected(self) -> bool:
        return POWER_BRANCHES[self.case]


def classify_branch(phi: PhiQuadratic) -> str:
    tower = phi.N.tower
    N_in_Fq = bool(tower.in_subfield(phi.N, 1))
    if phi.parity == "odd":
        d = phi.delta_b
        if d.is_zero():
            return "delta_zero"
        if tower.is_square_in_Fq_star(d):
            return "delta_square_N_in_Fq" if N_in_Fq else "delta_square_N_not_in_Fq"
        return "delta_nonsquare"
    if phi.B.is_zero():
        return "B_zero"
    if N_in_Fq:
        return "N_in_Fq"
    tr = tower.trace_down(phi.ac_over_b2, "F2")
    return "N_not_in_Fq_tr0" if tr.is_zero() else "N_not_in_Fq_tr1"


def root_power_status(b: Elt) -> RootPowerStatus:
    phi = phi_b(b)
    tower = b.tower
    roots = tower.solve_quadratic(phi.A, phi.B, phi.C)
    powers = all(bool(tower.power_class_q2q1(t)) for t in roots)
    return RootPowerStatus(classify_branch(phi), roots, bool(roots) and powers)


def mainlemma_check(b: Elt, verdict: ScatterVerdict | None = None) -> bool:
    """True iff phi_b has a nonzero root that is a (q^2+q+1)-th power.

    Only meaningful for non-scattered b with N != 1; anything else raises.
    """
    tower = b.tower
    _require_b(b)
    N = tower.norm_q6_q3(b)
    if N == 1:
        raise PreconditionUnmet("N = 1")
    if verdict is None:
        verdict = brute_is_scattered(b)
    if verdict.scattered:
        raise PreconditionUnmet("U_b is scattered")
    phi = phi_b(b)
    roots = tower.solve_quadratic(phi.A, phi.B, phi.C)
    return any(not t.is_zero() and bool(tower.power_class_q2q1(t)) for t in roots)


# -- determinant identities ----------------------------------------------------------

def det_M0_in_t(m: Elt, b: Elt) -> Elt:
    """det M_0(m, b) rewritten through t = m^(q^3+q^4+q^5); m must be nonzero."""
    t = m.frob(3) * m.frob(4) * m.frob(5)
    T = _conjugates(t)
    bs = _conjugates(b)
    T45 = T[5] * T[4]

    def bm(*exps):
        return _mono(bs, exps)

    s = (
        bm(1, 1, 0, 0, 0, 0) * T45 * T[0]
        - bm(0, 1, 0, 0, 1, 0) * T45
        + bm(1, 0, 0, 0, 0, 1) * T[5] * T45
        + bm(0, 0, 0, 0, 1, 1) * T45 * T[4]
        - bm(1, 0, 0, 1, 0, 0) * T45
        + bm(0, 0, 0, 1, 1, 0) * T45 * T[3]
        + bm(1, 1, 0, 1, 1, 0) * T45
        - bm(0, 0, 1, 0, 0, 1) * T45
        + bm(0, 1, 1, 0, 1, 1) * T45
        + bm(0, 1, 1, 0, 0, 0) * T45 * T[1]
        + bm(0, 0, 1, 1, 0, 0) * T[2] * T45
        + bm(1, 0, 1, 1, 0, 1) * T45
        - bm(1, 1, 1, 1, 1, 1) * T45
        + T[4] * T[4] * T[0]
        + T45
        + T[5] * T[5] * T[3]
        + T45 * T[3] * T[0]
    )
    return s / T45


def det_M1_in_t(m: Elt, b: Elt) -> Elt:
    t = m.frob(3) * m.frob(4) * m.frob(5)
    bs = _conjugates(b)
    return (
        -_mono(bs, (0, 1, 1, 0, 1, 0))
        - _mono(bs, (1, 0, 1, 1, 0, 0))
        + _mono(bs, (1, 1, 1, 1, 1, 0))
        - bs[4] * t.frob(4)
        + bs[2]
        - bs[0] * t.frob(5)
    )


def lemmanuovo_holds(b: Elt) -> bool | None:
    """Even q, Tr_{q^3/2}(AC/B^2) = 1: roots t of phi_b^(q^4) obey
    t^q = b^(q^4-1) t + b^(q^2-1) (N+1)^(q+1).  None when the case does not apply."""
    tower = b.tower
    phi = phi_b(b)
    if phi.parity != "even" or phi.ac_over_b2 is None:
        return None
    if tower.trace_down(phi.ac_over_b2, "F2").is_zero():
        return None
    A, B, C = (c.frob(4) for c in phi.coefficients())
    roots = tower.solve_quadratic(A, B, C)
    u = phi.N + 1
    rhs_const = b.frob(2) / b * u * u.frob(1)
    coef = b.frob(4) / b
    return bool(roots) and all(t.frob(1) == coef * t + rhs_const for t in roots)


def substitution_identities_check(m: Elt, b: Elt) -> bool:
    if m.is_zero() or b.is_zero():
        raise ZeroInput("m and b must be nonzero")
    M = dickson(r_poly(m, b))
    ok = det(submatrix_Mr(M, 0)) == det_M0_in_t(m, b)
    ok = ok and det(submatrix_Mr(M, 1)) == det_M1_in_t(m, b)
    extra = lemmanuovo_holds(b)
    return bool(ok and extra is not False)


def resultant_consequence(m: Elt, b: Elt):
    """Where det M_0 = det M_1 = 0 and N != 1, phi_b(m^(q^3+q^4+q^5)) must vanish.

    Returns a boolean mask over the batch: True where the implication holds.
    """
    tower = b.tower
    M = dickson(r_poly(m, b))
    both = np.atleast_1d(det_is_zero(submatrix_Mr(M, 0))) & np.atleast_1d(
        det_is_zero(submatrix_Mr(M, 1))
    )
    phi = phi_b(b)
    t = m.frob(3) * m.frob(4) * m.frob(5)
    root = np.atleast_1d(phi.evaluate(t).is_zero())
    if phi.N == 1:
        return np.ones_like(both)
    return ~both | root
