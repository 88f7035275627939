"""Arithmetic in the tower F_p < F_q < F_{q^3} < F_{q^6}.

The big field is F_p[x]/(modulus) with deg(modulus) = 6e.  Elements are
numpy arrays of base-p digits, coefficient of x^i at index i.  Every
operation broadcasts over leading axes, so a batch of a million elements
is just an array of shape (10**6, 6e).

Subfields are never embedded separately.  F_{q^k} is the fixed field of
x -> x^(q^k) inside F_{q^6}.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadCharacteristic,
    BadSubfieldIndex,
    DivisionByZero,
    EvenCharRequired,
    IndexOutOfRange,
    InvalidFieldSpec,
    NotInSubfield,
    OddCharRequired,
    ZeroLeadingCoefficient,
)
from .numtheory import is_prime, prime_divisors, prime_power

EXT_DEGREE = 6
TABLE_LIMIT = 2**18


# -- polynomials over F_p as python lists, constant term first ---------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    n = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) > n:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - n
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pmod([c % p for c in out], f, p)


def _ppowmod(a: list[int], n: int, f: Sequence[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, f, p)
    while n:
        if n & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        n >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p given constant term first."""
    f = _ptrim(list(f))
    n = len(f) - 1
    if n < 1 or f[-1] % p == 0:
        return False
    x = [0, 1]
    frob = [x]
    r = x
    for _ in range(n):
        r = _ppowmod(r, p, f, p)
        frob.append(r)
    if _psub(frob[n], _pmod(x, f, p), p):
        return False
    for ell in prime_divisors(n):
        g = _pgcd(f, _psub(frob[n // ell], x, p), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible, compared constant term first."""
    for low in itertools.product(range(p), repeat=degree):
        if low[0] == 0:
            continue
        f = low + (1,)
        if is_irreducible(f, p):
            return f
    raise InvalidFieldSpec(f"no irreducible of degree {degree} over F_{p}")


# -- field spec ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidFieldSpec(f"p={self.p!r} is not prime")
        if not isinstance(self.e, int) or self.e < 1:
            raise InvalidFieldSpec(f"e={self.e!r} must be a positive integer")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        d = EXT_DEGREE * self.e
        if len(mod) != d + 1:
            raise InvalidFieldSpec(f"modulus must have degree {d}")
        if any(not 0 <= c < self.p for c in mod):
            raise InvalidFieldSpec("modulus digits must lie in [0, p)")
        if mod[-1] != 1:
            raise InvalidFieldSpec("modulus must be monic")
        if not is_irreducible(mod, self.p):
            raise InvalidFieldSpec("modulus is reducible")

    @classmethod
    def default(cls, p: int, e: int = 1) -> FieldSpec:
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidFieldSpec(f"p={p!r} is not prime")
        if not isinstance(e, int) or e < 1:
            raise InvalidFieldSpec(f"e={e!r} must be a positive integer")
        return cls(p, e, _default_modulus(p, EXT_DEGREE * e))

    @classmethod
    def for_q(cls, q: int) -> FieldSpec:
        return cls.default(*prime_power(q))

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def degree(self) -> int:
        return EXT_DEGREE * self.e

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def _default_modulus(p: int, degree: int) -> tuple[int, ...]:
    return least_irreducible(p, degree)


# -- linear algebra mod p on small integer matrices ---------------------------

def _matpow_mod(m: np.ndarray, n: int, p: int) -> np.ndarray:
    result = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while n:
        if n & 1:
            result = result @ base % p
        base = base @ base % p
        n >>= 1
    return result


def solve_left_mod_p(m: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution v of v @ m = rhs over F_p, or None if inconsistent."""
    a = np.concatenate([m.T % p, (rhs % p)[:, None]], axis=1).astype(np.int64)
    rows, cols = a.shape[0], m.shape[0]
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if np.any(a[r:, -1]):
        return None
    v = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        v[c] = a[i, -1]
    return v


# -- the tower ----------------------------------------------------------------

class TowerCtx:
    """Immutable arithmetic context for F_{q^6} = F_p[x]/(modulus)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, d = spec.p, spec.degree
        self.p, self.e, self.d = p, spec.e, d
        self.q = spec.q
        self.q3 = self.q**3
        self.Q = self.q**6
        mod = list(spec.modulus)

        powers = [_pmod([0] * k + [1], mod, p) for k in range(2 * d - 1)]
        red = np.zeros((2 * d - 1, d), dtype=np.int64)
        for k, poly in enumerate(powers):
            red[k, : len(poly)] = poly
        idx = np.add.outer(np.arange(d), np.arange(d)).ravel()
        self._mul_table = red[idx]
        # float64 matmul is exact while every partial sum stays below 2**53
        self._float_ok = d * d * (p - 1) ** 3 < 2**53
        if self._float_ok:
            self._mul_table = self._mul_table.astype(np.float64)

        pmat = np.zeros((d, d), dtype=np.int64)
        for j in range(d):
            img = _ppowmod([0] * j + [1], p, mod, p)
            pmat[j, : len(img)] = img
        self._pmat = pmat
        self._pframes = [_matpow_mod(pmat, k, p) for k in range(d)]
        self._qframes = [self._pframes[(self.e * i) % d] for i in range(EXT_DEGREE)]
        self._pframes_f = [m.astype(np.float64) for m in self._pframes]
        self._weights = p ** np.arange(d, dtype=np.int64)

        self._order_primes = prime_divisors(self.Q - 1)
        self.g = self._find_generator()
        self._self_check()

    def __repr__(self):
        return f"TowerCtx(p={self.p}, e={self.e}, q={self.q})"

    # construction -------------------------------------------------------

    def _find_generator(self) -> Elt:
        # candidates in lex order of (c0, c1, ...), c0 most significant
        d = self.d
        for digits in itertools.product(range(self.p), repeat=d):
            c = np.array(digits, dtype=np.int64)
            if not c.any():
                continue
            if self.is_primitive(self._wrap(c)):
                return self._wrap(c)
        raise InvalidFieldSpec("no primitive element found")

    def is_primitive(self, x: Elt) -> bool:
        if x.is_zero():
            return False
        one = self.one()
        return all(x ** ((self.Q - 1) // ell) != one for ell in self._order_primes)

    def _self_check(self):
        rng = np.random.default_rng(0)
        x = self.random(rng, (8,))
        y = x.c
        for _ in range(self.d):
            y = self._ppow_lin(y, 1)
        if not np.array_equal(y, x.c):
            raise InvalidFieldSpec("frobenius(x, 6) != x; modulus is broken")
        if self.g ** (self.Q - 1) != self.one():
            raise InvalidFieldSpec("generator order does not divide q^6 - 1")

    # element constructors ------------------------------------------------

    def _wrap(self, c: np.ndarray) -> Elt:
        return Elt(self, c)

    def elt(self, coeffs) -> Elt:
        """Validated element (or batch) from digit sequences."""
        c = np.asarray(coeffs, dtype=np.int64)
        if c.ndim == 0 or c.shape[-1] != self.d:
            raise InvalidFieldSpec(f"expected {self.d} digits per element")
        if np.any(c < 0) or np.any(c >= self.p):
            raise InvalidFieldSpec(f"digits must lie in [0, {self.p})")
        return Elt(self, c.copy())

    def scalar(self, n: int, shape: tuple = ()) -> Elt:
        c = np.zeros(shape + (self.d,), dtype=np.int64)
        c[..., 0] = n % self.p
        return Elt(self, c)

    def zero(self, shape: tuple = ()) -> Elt:
        return self.scalar(0, shape)

    def one(self, shape: tuple = ()) -> Elt:
        return self.scalar(1, shape)

    def x(self) -> Elt:
        c = np.zeros(self.d, dtype=np.int64)
        c[1 % self.d] = 1
        return Elt(self, c)

    def random(self, rng: np.random.Generator, shape: tuple = ()) -> Elt:
        return Elt(self, rng.integers(0, self.p, size=shape + (self.d,), dtype=np.int64))

    def random_nonzero(self, rng: np.random.Generator, shape: tuple = ()) -> Elt:
        x = self.random(rng, shape)
        while True:
            bad = x.is_zero()
            if not np.any(bad):
                return x
            fresh = rng.integers(0, self.p, size=x.c[bad].shape, dtype=np.int64)
            x.c[bad] = fresh

    def all_elements(self) -> Elt:
        """Every element of F_{q^6}, ordered by packed index (c0 least significant)."""
        n = np.arange(self.Q, dtype=np.int64)
        return Elt(self, (n[:, None] // self._weights) % self.p)

    def stack(self, items: Iterable[Elt]) -> Elt:
        return Elt(self, np.stack([it.c for it in items]))

    def concat(self, items: Iterable[Elt]) -> Elt:
        return Elt(self, np.concatenate([it.c for it in items]))

    def where(self, mask, a: Elt, b: Elt) -> Elt:
        a_c, b_c = np.broadcast_arrays(a.c, b.c)
        m = np.asarray(mask)[..., None]
        return Elt(self, np.where(m, a_c, b_c))

    def power_table(self, base: Elt, n: int) -> Elt:
        """base**k for k in range(n), built by doubling."""
        out = self.one((1,))
        step = base
        while out.c.shape[0] < n:
            out = Elt(self, np.concatenate([out.c, (out * step).c]))
            step = step * step
        return out[:n]

    def pack(self, x: Elt) -> np.ndarray:
        """Integer key sum c_i p^i; a bijection F_{q^6} -> [0, q^6)."""
        return x.c @ self._weights

    # core arithmetic on digit arrays ---------------------------------------

    @functools.cached_property
    def _log_tables(self):
        """(log, exp, digits) lookup tables, or None when q^6 is too large.

        Only an internal speed-up for products and inverses; built on first use.
        """
        if self.Q > TABLE_LIMIT:
            return None
        gp = np.zeros((1, self.d), dtype=np.int64)
        gp[0, 0] = 1
        step = self.g.c
        while gp.shape[0] < self.Q - 1:
            gp = np.concatenate([gp, self._mul_poly(gp, step)])
            step = self._mul_poly(step, step)
        exp = gp[: self.Q - 1] @ self._weights
        log = np.zeros(self.Q, dtype=np.int64)
        log[exp] = np.arange(self.Q - 1)
        n = np.arange(self.Q, dtype=np.int64)
        digits = (n[:, None] // self._weights) % self.p
        return log, exp, digits

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        tables = self._log_tables if a.size + b.size > 64 * self.d else None
        if tables is not None:
            log, exp, digits = tables
            ka, kb = a @ self._weights, b @ self._weights
            k = exp[(log[ka] + log[kb]) % (self.Q - 1)]
            k[(ka == 0) | (kb == 0)] = 0
            return digits[k]
        return self._mul_poly(a, b)

    def _mul_poly(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(a, b)
        lead = a.shape[:-1]
        d = self.d
        outer = (a[..., :, None] * b[..., None, :]).reshape(lead + (d * d,))
        if not self._float_ok:
            return (outer % self.p) @ self._mul_table % self.p
        r = outer.astype(np.float64) @ self._mul_table
        return r.astype(np.int64) % self.p

    def _ppow_lin(self, c: np.ndarray, k: int) -> np.ndarray:
        k %= self.d
        if k == 0:
            return c.copy()
        r = c.astype(np.float64) @ self._pframes_f[k]
        return r.astype(np.int64) % self.p

    def _pow(self, c: np.ndarray, n: int) -> np.ndarray:
        if n < 0:
            return self._pow(self._inv(c, strict=True), -n)
        result = np.zeros_like(c)
        result[..., 0] = 1
        base = c
        while n:
            if n & 1:
                result = self._mul(result, base)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _inv(self, c: np.ndarray, strict: bool) -> np.ndarray:
        if strict and np.any(~c.any(axis=-1)):
            raise DivisionByZero("inverse of zero in F_q^6")
        tables = self._log_tables if c.size > 64 * self.d else None
        if tables is not None:
            log, exp, digits = tables
            k = c @ self._weights
            out = exp[(-log[k]) % (self.Q - 1)]
            out[k == 0] = 0
            return digits[out]
        return self._pow(c, self.Q - 2)

    # tower operations ------------------------------------------------------

    def frobenius(self, x: Elt, i: int) -> Elt:
        if i < 0:
            raise IndexOutOfRange("frobenius index must be nonnegative")
        return Elt(self, self._ppow_lin(x.c, self.e * (i % EXT_DEGREE)))

    def pth_power(self, x: Elt, j: int = 1) -> Elt:
        return Elt(self, self._ppow_lin(x.c, j))

    def norm_q6_q3(self, b: Elt) -> Elt:
        return b.frob(3) * b

    def in_subfield(self, x: Elt, k: int):
        if k not in (1, 2, 3, 6):
            raise BadSubfieldIndex(f"k={k} does not divide 6")
        return x.frob(k) == x

    def _require_subfield(self, x: Elt, k: int, what: str):
        if not np.all(self.in_subfield(x, k)):
            raise NotInSubfield(f"{what} is not in F_q^{k}")

    def trace_down(self, x: Elt, target: str = "Fq") -> Elt:
        """Trace from F_{q^3} to F_q ("Fq") or to F_2 ("F2")."""
        self._require_subfield(x, 3, "trace argument")
        if target == "Fq":
            return x + x.frob(1) + x.frob(2)
        if target == "F2":
            if self.p != 2:
                raise BadCharacteristic("trace to F_2 needs characteristic 2")
            return self.abs_trace(x, 3 * self.e)
        raise ValueError(f"unknown trace target {target!r}")

    def abs_trace(self, x: Elt, length: int) -> Elt:
        """sum of x^(p^i) for i < length; the absolute trace of F_{p^length}."""
        acc = x.c.copy()
        cur = x.c
        for _ in range(length - 1):
            cur = self._ppow_lin(cur, 1)
            acc = acc + cur
        return Elt(self, acc % self.p)

    def trace_fq_f2(self, x: Elt) -> Elt:
        """Tr_{q/2} of an element of F_q."""
        if self.p != 2:
            raise EvenCharRequired("Tr_{q/2} needs characteristic 2")
        self._require_subfield(x, 1, "trace argument")
        return self.abs_trace(x, self.e)

    def is_square_in_Fq_star(self, a: Elt):
        if self.p == 2:
            raise OddCharRequired("square classes of F_q^* need odd q")
        self._require_subfield(a, 1, "argument")
        return (~a.is_zero()) & (a ** ((self.q - 1) // 2) == self.one())

    def power_class_q2q1(self, t: Elt):
        """True where t is a (q^2+q+1)-th power in F_{q^6}."""
        zero = t.is_zero()
        via_exp = zero | (t ** ((self.q - 1) * (self.q3 + 1)) == self.one())
        via_norm = zero | self.in_subfield(t ** (self.q3 + 1), 1)
        if not np.array_equal(via_exp, via_norm):
            raise ArithmeticError("power-class tests disagree")
        return via_exp

    def sqrt(self, a: Elt) -> Elt | None:
        """A square root in F_{q^6}, or None (scalar only)."""
        if a.is_zero():
            return self.zero()
        if self.p == 2:
            return self.pth_power(a, self.d - 1)
        if a ** ((self.Q - 1) // 2) != self.one():
            return None
        return self._tonelli_shanks(a)

    def _tonelli_shanks(self, a: Elt) -> Elt:
        s, t = 0, self.Q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        one = self.one()
        z = self.g**t
        x = a ** ((t + 1) // 2)
        b = a**t
        m = s
        while b != one:
            i, b2 = 0, b
            while b2 != one:
                b2, i = b2 * b2, i + 1
            w = z ** (1 << (m - i - 1))
            x, z = x * w, w * w
            b, m = b * z, i
        return x

    def solve_artin_schreier(self, c: Elt) -> Elt | None:
        """One U in F_{q^6} with U^2 + U = c (characteristic 2), or None."""
        if self.p != 2:
            raise EvenCharRequired("Artin-Schreier form needs characteristic 2")
        lin = (self._pmat + np.eye(self.d, dtype=np.int64)) % 2
        v = solve_left_mod_p(lin, c.c, 2)
        return None if v is None else Elt(self, v)

    def solve_quadratic(self, A: Elt, B: Elt, C: Elt) -> list[Elt]:
        """Roots of A T^2 + B T + C in F_{q^6}, sorted by packed key."""
        if A.is_zero():
            raise ZeroLeadingCoefficient("A must be nonzero")
        if self.p == 2:
            if B.is_zero():
                roots = [self.sqrt(C / A)]
            else:
                u = self.solve_artin_schreier(A * C / (B * B))
                if u is None:
                    return []
                s = B / A
                roots = [s * u, s * (u + 1)]
        else:
            disc = B * B - 4 * A * C
            root = self.sqrt(disc)
            if root is None:
                return []
            den = (2 * A).inv()
            roots = [(-B + root) * den, (-B - root) * den]
        uniq = {int(self.pack(r)): r for r in roots}
        return [uniq[k] for k in sorted(uniq)]

    def norm_fiber_representative(self, k: int) -> tuple[Elt, Elt]:
        if not 0 <= k < self.q3 - 1:
            raise IndexOutOfRange(f"k={k} outside [0, q^3-1)")
        b = self.g**k
        return b, self.norm_q6_q3(b)

    def norm_fiber_table(self) -> tuple[Elt, Elt]:
        """All representatives g^k and their norms, k in [0, q^3-1)."""
        b = self.power_table(self.g, self.q3 - 1)
        return b, self.norm_q6_q3(b)

    def subfield(self, k: int) -> Subfield:
        if k not in (1, 2, 3, 6):
            raise BadSubfieldIndex(f"k={k} does not divide 6")
        return _subfield(self, k)


@functools.lru_cache(maxsize=None)
def tower(p: int, e: int = 1) -> TowerCtx:
    return TowerCtx(FieldSpec.default(p, e))


def tower_for_q(q: int) -> TowerCtx:
    return tower(*prime_power(q))


# -- elements -------------------------------------------------------------------

class Elt:
    """Element (or batch of elements) of F_{q^6}; digits on the last axis."""

    __slots__ = ("tower", "c")
    __array_ufunc__ = None

    def __init__(self, tower: TowerCtx, c: np.ndarray):
        self.tower = tower
        self.c = c

    @property
    def shape(self) -> tuple:
        return self.c.shape[:-1]

    @property
    def is_scalar(self) -> bool:
        return self.c.ndim == 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        if not self.is_scalar:
            raise TypeError("coeffs is defined for single elements; use .c")
        return tuple(int(v) for v in self.c)

    def to_list(self):
        return self.c.tolist()

    def __len__(self):
        if self.is_scalar:
            raise TypeError("a single field element has no length")
        return self.c.shape[0]

    def __iter__(self):
        if self.is_scalar:
            raise TypeError("a single field element is not iterable")
        for row in self.c:
            yield Elt(self.tower, row)

    def __getitem__(self, idx) -> Elt:
        if self.is_scalar:
            raise TypeError("cannot index a single field element")
        return Elt(self.tower, self.c[idx])

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Elt):
            if other.tower is not self.tower:
                raise TypeError("elements belong to different towers")
            return other.c
        if isinstance(other, (int, np.integer)):
            c = np.zeros(self.tower.d, dtype=np.int64)
            c[0] = int(other) % self.tower.p
            return c
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elt(self.tower, (self.c + o) % self.tower.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elt(self.tower, (self.c - o) % self.tower.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elt(self.tower, (o - self.c) % self.tower.p)

    def __neg__(self):
        return Elt(self.tower, (-self.c) % self.tower.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not isinstance(other, Elt):
            return Elt(self.tower, self.c * int(o[0]) % self.tower.p)
        return Elt(self.tower, self.tower._mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elt(self.tower, self.tower._mul(self.c, self.tower._inv(o, strict=True)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Elt(self.tower, self.tower._mul(o, self.tower._inv(self.c, strict=True)))

    def __pow__(self, n: int):
        return Elt(self.tower, self.tower._pow(self.c, int(n)))

    def inv(self, strict: bool = True) -> Elt:
        """Multiplicative inverse; with strict=False zero maps to zero."""
        return Elt(self.tower, self.tower._inv(self.c, strict))

    def frob(self, i: int) -> Elt:
        return self.tower.frobenius(self, i)

    def is_zero(self):
        z = ~self.c.any(axis=-1)
        return bool(z) if self.is_scalar else z

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        eq = np.all(self.c == o, axis=-1)
        return bool(eq) if eq.ndim == 0 else eq

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq if isinstance(eq, bool) else ~eq

    def __hash__(self):
        if not self.is_scalar:
            raise TypeError("batches are unhashable")
        return hash((self.tower.spec, self.coeffs))

    def __repr__(self):
        if self.is_scalar:
            return f"Elt({list(self.coeffs)})"
        return f"Elt(batch shape={self.shape})"


# -- module-level operations ------------------------------------------------------

def arith(x: Elt, y, op: str) -> Elt:
    """Dispatch add/sub/mul/div/pow by name; for pow, y is an integer."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: Elt, i: int) -> Elt:
    return x.tower.frobenius(x, i)


def norm_q6_q3(b: Elt) -> Elt:
    return b.tower.norm_q6_q3(b)


def trace_down(x: Elt, target: str = "Fq") -> Elt:
    return x.tower.trace_down(x, target)


def in_subfield(x: Elt, k: int):
    return x.tower.in_subfield(x, k)


def is_square_in_Fq_star(a: Elt):
    return a.tower.is_square_in_Fq_star(a)


def power_class_q2q1(t: Elt):
    return t.tower.power_class_q2q1(t)


def solve_quadratic(A: Elt, B: Elt, C: Elt) -> list[Elt]:
    return A.tower.solve_quadratic(A, B, C)


def norm_fiber_representative(ctx: TowerCtx, k: int) -> tuple[Elt, Elt]:
    return ctx.norm_fiber_representative(k)


# -- small subfields as index tables ------------------------------------------------

class Subfield:
    """F_{q^k} as integer indices: 0 is zero, i >= 1 stands for h^(i-1).

    h is the canonical generator g^((q^6-1)/(q^k-1)).  Addition, negation and
    the q-Frobenius are lookup tables, so vectorised counting over F_q^3
    triples never touches the big field.
    """

    MAX_TABLE = 1024

    def __init__(self, tower: TowerCtx, k: int):
        self.tower = tower
        self.k = k
        self.size = tower.q**k
        order = self.size - 1
        h = tower.g ** ((tower.Q - 1) // order)
        self.elements = tower.concat([tower.zero((1,)), tower.power_table(h, order)])
        keys = tower.pack(self.elements)
        self._sorted_keys = np.sort(keys)
        self._key_to_index = np.argsort(keys)
        n = self.size
        idx = np.arange(n)
        self.neg = self.index_of(-self.elements)
        self.inv = np.zeros(n, dtype=np.int64)
        self.inv[1:] = (-(idx[1:] - 1)) % order + 1
        self.conj = self.index_of(self.elements.frob(1))
        if n <= self.MAX_TABLE:
            a = self.elements[:, None]
            b = self.elements[None, :]
            self.add = self.index_of(a + b)
        else:
            self.add = None

    def index_of(self, x: Elt) -> np.ndarray:
        keys = self.tower.pack(x)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.size - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise NotInSubfield(f"element outside F_q^{self.k}")
        return self._key_to_index[pos]

    def mul(self, i, j):
        i, j = np.asarray(i), np.asarray(j)
        out = (i - 1 + j - 1) % (self.size - 1) + 1
        return np.where((i == 0) | (j == 0), 0, out)

    def sub(self, i, j):
        return self.add[i, self.neg[j]]

    def div(self, i, j):
        if np.any(np.asarray(j) == 0):
            raise DivisionByZero("division by zero in subfield")
        return self.mul(i, self.inv[j])

    def pow(self, i, n: int):
        i = np.asarray(i)
        out = ((i - 1) * n) % (self.size - 1) + 1
        if n == 0:
            return np.ones_like(i)
        return np.where(i == 0, 0, out)

    def from_int(self, n: int) -> int:
        return int(self.index_of(self.tower.scalar(n)))


@functools.lru_cache(maxsize=None)
def _subfield(tower: TowerCtx, k: int) -> Subfield:
    return Subfield(tower, k)
