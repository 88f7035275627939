"""Equivalence classes of the U_b family and the rank-metric codes they induce.

Within the family, GL-equivalence is equality of norms and semilinear
equivalence allows a field automorphism on the norm, so the semilinear
classes inside the set of good norms are the orbits of N -> N^p.

The code attached to b is C_b = {x -> a x + beta (b x^q + x^(q^4))}.  It is
F_{q^6}-linear in (a, beta), so its minimum distance is the least rank of a
nonzero codeword.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NormOne, NotClosed, TooLargeForExhaustive, ZeroB
from .field_tower import Elt, TowerCtx
from .linearized import N as NCOEF
from .linearized import LinPoly, kernel_dim_dickson
from .scatter_criteria import is_scattered

DEFAULT_SEED = 20240611
EXHAUSTIVE_LIMIT = 2**22
DEFAULT_SAMPLE = 10_000


def default_seed() -> int:
    raw = os.environ.get("SCATTERED_LAB_SEED")
    return int(raw) if raw not in (None, "") else DEFAULT_SEED


# -- equivalence -------------------------------------------------------------------

def _norms(b: Elt, c: Elt) -> tuple[Elt, Elt]:
    if b.is_zero() or c.is_zero():
        raise ZeroB("b and c must be nonzero")
    tower = b.tower
    nb, nc = tower.norm_q6_q3(b), tower.norm_q6_q3(c)
    if nb == 1 or nc == 1:
        raise NormOne("norm 1 is excluded")
    return nb, nc


def gl_equivalent(b: Elt, c: Elt) -> bool:
    nb, nc = _norms(b, c)
    return nb == nc


def gammal_equivalent(b: Elt, c: Elt) -> bool:
    nb, nc = _norms(b, c)
    tower = b.tower
    return any(nb == tower.pth_power(nc, j) for j in range(3 * tower.e))


@dataclass
class OrbitReport:
    gamma_size: int
    orbit_count: int
    orbit_sizes: list[int]
    lower_bound: Fraction
    frobenius_closed: bool
    e: int

    @property
    def bound_holds(self) -> bool:
        return self.orbit_count >= math.ceil(self.lower_bound)

    @property
    def sizes_divide(self) -> bool:
        return all((3 * self.e) % s == 0 for s in self.orbit_sizes)

    def to_json(self) -> dict:
        return {
            "gamma_size": self.gamma_size,
            "orbit_count": self.orbit_count,
            "lower_bound": str(self.lower_bound),
            "lower_bound_ceil": math.ceil(self.lower_bound),
            "frobenius_closed": self.frobenius_closed,
            "orbit_sizes": sorted(self.orbit_sizes),
            "match": self.frobenius_closed and self.bound_holds and self.sizes_divide,
        }


def frobenius_orbits(ctx: TowerCtx, gamma) -> OrbitReport:
    """Split a Frobenius-stable set of norms into orbits of N -> N^p."""
    members = list(gamma)
    keys = [int(ctx.pack(n)) for n in members]
    key_set = set(keys)
    seen: set[int] = set()
    sizes = []
    for n, k in zip(members, keys):
        if k in seen:
            continue
        size = 0
        cur, ck = n, k
        while True:
            seen.add(ck)
            size += 1
            cur = ctx.pth_power(cur, 1)
            ck = int(ctx.pack(cur))
            if ck not in key_set:
                raise NotClosed(f"Frobenius image of {list(n.coeffs)} left the set")
            if ck == k:
                break
        sizes.append(size)
    return OrbitReport(
        gamma_size=len(members),
        orbit_count=len(sizes),
        orbit_sizes=sizes,
        lower_bound=Fraction(len(members), 3 * ctx.e),
        frobenius_closed=True,
        e=ctx.e,
    )


# -- the codes C_b -------------------------------------------------------------------

def codeword(a: Elt, beta: Elt, b: Elt) -> LinPoly:
    """h_{a,beta}(x) = a x + beta b x^q + beta x^(q^4)."""
    zero = b.tower.zero()
    return LinPoly([a, beta * b, zero, zero, beta, zero])


def codeword_ranks(a: Elt, beta: Elt, b: Elt) -> np.ndarray:
    return NCOEF - np.atleast_1d(kernel_dim_dickson(codeword(a, beta, b)))


@dataclass
class MrdReport:
    b: Elt
    scattered: bool
    code_dimension_over_Fp: int
    min_rank: int
    rank_distribution: dict[int, int]
    exhaustive: bool
    codewords_checked: int
    sample_size: int = 0
    seed: int | None = None
    expected_dimension: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def is_mrd(self) -> bool:
        return self.min_rank == NCOEF - 1

    def to_json(self) -> dict:
        return {
            "b": list(self.b.coeffs),
            "scattered": self.scattered,
            "code_dimension_over_Fp": self.code_dimension_over_Fp,
            "expected_dimension": self.expected_dimension,
            "min_rank": self.min_rank,
            "is_mrd": self.is_mrd,
            "exhaustive": self.exhaustive,
            "codewords_checked": self.codewords_checked,
            "sample_size": self.sample_size,
            "seed": self.seed,
            "rank_distribution": sorted(self.rank_distribution.items()),
            "match": self.is_mrd == self.scattered
            and self.code_dimension_over_Fp == self.expected_dimension,
        }


def _rank_mod_p(m: np.ndarray, p: int) -> int:
    a = m % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        below = np.arange(r + 1, rows)
        a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
        if r == rows:
            break
    return r


def code_dimension_over_Fp(b: Elt) -> int:
    """F_p-rank of (a, beta) -> h_{a,beta}, each map written as a d x d matrix over F_p."""
    tower = b.tower
    d = tower.d
    basis = Elt(tower, np.eye(d, dtype=np.int64))
    zero = tower.zero((d,))
    gens = [codeword(basis, zero, b), codeword(zero, basis, b)]
    rows = []
    for g in gens:
        # images of every basis vector x^j under each generator
        imgs = g.coeffs.c[:, None, :, :]
        img = LinPoly(Elt(tower, imgs))(basis[None, :])
        rows.append(img.c.reshape(d, d * d))
    return _rank_mod_p(np.concatenate(rows), tower.p)


def _tally(dist: dict[int, int], ranks: np.ndarray):
    vals, counts = np.unique(ranks, return_counts=True)
    for v, c in zip(vals.tolist(), counts.tolist()):
        dist[v] = dist.get(v, 0) + c


def mrd_check(
    b: Elt,
    exhaustive: bool = False,
    sample: int = DEFAULT_SAMPLE,
    seed: int | None = None,
    chunk: int = 2**14,
) -> MrdReport:
    tower = b.tower
    if b.is_zero():
        raise ZeroB("b must be nonzero")
    Q = tower.Q
    dist: dict[int, int] = {}
    checked = 0
    if exhaustive:
        if Q * Q > EXHAUSTIVE_LIMIT:
            raise TooLargeForExhaustive(f"q^12 = {Q * Q} exceeds {EXHAUSTIVE_LIMIT}")
        everything = tower.all_elements()
        for start in range(0, Q * Q, chunk):
            n = np.arange(start, min(start + chunk, Q * Q))
            a, beta = everything[n % Q], everything[n // Q]
            _tally(dist, codeword_ranks(a, beta, b))
            checked += n.size
        used_seed = None
    else:
        used_seed = default_seed() if seed is None else seed
        rng = np.random.default_rng(used_seed)
        for start in range(0, sample, chunk):
            size = min(chunk, sample - start)
            a = tower.random(rng, (size,))
            beta = tower.random(rng, (size,))
            _tally(dist, codeword_ranks(a, beta, b))
            checked += size
        everything = tower.all_elements()
        for start in range(0, Q, chunk):
            a = everything[start : start + chunk]
            _tally(dist, codeword_ranks(a, tower.zero(a.shape), b))
            checked += len(a)
    nonzero = [r for r, c in dist.items() if r > 0 and c > 0]
    return MrdReport(
        b=b,
        scattered=is_scattered(b).scattered,
        code_dimension_over_Fp=code_dimension_over_Fp(b),
        min_rank=min(nonzero),
        rank_distribution=dict(sorted(dist.items())),
        exhaustive=exhaustive,
        codewords_checked=checked,
        sample_size=0 if exhaustive else sample,
        seed=used_seed,
        expected_dimension=12 * tower.e,
    )


def idealiser_spot_check(b: Elt, rng: np.random.Generator, trials: int = 20) -> bool:
    """Left multiplication by any field element maps a codeword back into the code."""
    tower = b.tower
    for _ in range(trials):
        s, a, beta, x = (tower.random(rng) for _ in range(4))
        lhs = s * codeword(a, beta, b)(x)
        rhs = codeword(s * a, s * beta, b)(x)
        if lhs != rhs:
            return False
    return True
