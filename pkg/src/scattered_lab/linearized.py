"""q-linearized polynomials over F_{q^6}, their Dickson matrices and kernels.

A LinPoly sum a_i x^(q^i), i < 6, is an F_q-linear endomorphism of F_{q^6}.
Its kernel dimension can be read off the determinants of the nested
top-right blocks of its Dickson matrix; ``kernel_dim_brute`` counts zeros
directly and serves as the oracle for that shortcut.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import BadIndex, EnumerationTooLarge, NonSubspaceKernel
from .field_tower import EXT_DEGREE, Elt, TowerCtx

N = EXT_DEGREE
BRUTE_LIMIT = 2**24


class LinPoly:
    """f(x) = sum a_i x^(q^i); ``coeffs`` is an Elt of shape (..., 6)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        if isinstance(coeffs, Elt):
            c = coeffs
        else:
            items = list(coeffs)
            if len(items) != N:
                raise ValueError(f"a linearized polynomial needs {N} coefficients")
            tower = next(a.tower for a in items if isinstance(a, Elt))
            c = _stack_last(tower, [a if isinstance(a, Elt) else tower.scalar(a) for a in items])
        if c.c.ndim < 2 or c.c.shape[-2] != N:
            raise ValueError(f"coefficient array must have shape (..., {N}, d)")
        self.coeffs = c

    @property
    def tower(self) -> TowerCtx:
        return self.coeffs.tower

    @property
    def shape(self) -> tuple:
        return self.coeffs.shape[:-1]

    def __getitem__(self, i: int) -> Elt:
        return Elt(self.tower, self.coeffs.c[..., i, :])

    def __add__(self, other: LinPoly) -> LinPoly:
        return LinPoly(self.coeffs + other.coeffs)

    def __sub__(self, other: LinPoly) -> LinPoly:
        return LinPoly(self.coeffs - other.coeffs)

    def __call__(self, x: Elt) -> Elt:
        return evaluate(self, x)

    def to_json(self) -> list[list[int]]:
        return self.coeffs.c.tolist()

    def __repr__(self):
        if not self.shape:
            return f"LinPoly({self.coeffs.c.tolist()})"
        return f"LinPoly(batch shape={self.shape})"

    @classmethod
    def identity(cls, tower: TowerCtx) -> LinPoly:
        return cls([tower.one()] + [tower.zero()] * (N - 1))

    @classmethod
    def trace(cls, tower: TowerCtx) -> LinPoly:
        return cls([tower.one()] * N)

    @classmethod
    def random(cls, tower: TowerCtx, rng: np.random.Generator, shape: tuple = ()) -> LinPoly:
        return cls(tower.random(rng, shape + (N,)))


def _stack_last(tower: TowerCtx, items: Sequence[Elt]) -> Elt:
    arrays = np.broadcast_arrays(*[it.c for it in items])
    return Elt(tower, np.stack(arrays, axis=-2))


def evaluate(f: LinPoly, x: Elt) -> Elt:
    acc = None
    for i in range(N):
        term = f[i] * x.frob(i)
        acc = term if acc is None else acc + term
    return acc


def dickson(f: LinPoly) -> Elt:
    """Dickson matrix as an Elt grid of shape (..., 6, 6); entry (i, j) = a_{j-i}^(q^i)."""
    tower = f.tower
    rows = []
    for i in range(N):
        shifted = Elt(tower, np.roll(f.coeffs.c, i, axis=-2))
        rows.append(shifted.frob(i).c)
    return Elt(tower, np.stack(rows, axis=-3))


def submatrix_Mr(M: Elt, r: int) -> Elt:
    """First 6-r rows and last 6-r columns of a Dickson matrix."""
    if not isinstance(r, (int, np.integer)) or not 0 <= r < N:
        raise BadIndex(f"r={r} outside [0, {N})")
    n = M.c.shape[-2]
    return Elt(M.tower, M.c[..., : n - r, r:, :])


# -- determinants ---------------------------------------------------------------

def _eliminate(tower: TowerCtx, c: np.ndarray, want_value: bool):
    """Division-free elimination over a flat batch of square grids.

    Each update row_j <- piv*row_j - a_jk*row_k multiplies the determinant by
    piv, so det = sign * prod(diag) / prod(piv^(n-k-1)).  With want_value
    False only the zero pattern of det is produced.
    """
    m = c.copy()
    batch, n = m.shape[0], m.shape[1]
    ar = np.arange(batch)
    p = tower.p
    singular = np.zeros(batch, dtype=bool)
    flips = np.zeros(batch, dtype=np.int64)
    scale = tower.one((batch,)).c if want_value else None
    for k in range(n):
        nz = m[:, k:, k, :].any(axis=-1)
        has = nz.any(axis=1)
        singular |= ~has
        piv_row = k + np.argmax(nz, axis=1)
        swap = piv_row != k
        if swap.any():
            idx = ar[swap]
            pr = piv_row[swap]
            tmp = m[idx, pr].copy()
            m[idx, pr] = m[idx, k]
            m[idx, k] = tmp
            flips += swap
        if k == n - 1:
            break
        piv = m[:, k, k, :]
        lower = m[:, k + 1 :, k:, :]
        factor = m[:, k + 1 :, k : k + 1, :]
        pivot_row = m[:, k : k + 1, k:, :]
        m[:, k + 1 :, k:, :] = (
            tower._mul(piv[:, None, None, :], lower) - tower._mul(factor, pivot_row)
        ) % p
        if want_value:
            scale = tower._mul(scale, tower._pow(piv, n - k - 1))
    singular |= ~m[:, n - 1, n - 1, :].any(axis=-1)
    if not want_value:
        return singular
    diag = tower.one((batch,)).c
    for k in range(n):
        diag = tower._mul(diag, m[:, k, k, :])
    inv_scale = tower._inv(np.where(singular[:, None], tower.one((batch,)).c, scale), strict=True)
    det = tower._mul(diag, inv_scale)
    det = np.where((flips % 2 == 1)[:, None], (-det) % p, det)
    det[singular] = 0
    return det


def _as_flat(M: Elt):
    c = M.c
    if c.ndim < 3 or c.shape[-2] != c.shape[-3]:
        raise ValueError("determinant needs a square grid")
    lead = c.shape[:-3]
    return c.reshape((-1,) + c.shape[-3:]), lead


def _chunk_size(tower: TowerCtx, n: int) -> int:
    return max(256, 2**22 // max(1, n * n * tower.d * tower.d))


def det(M: Elt) -> Elt:
    """Determinant of a square grid of field elements (batched over leading axes)."""
    tower = M.tower
    flat, lead = _as_flat(M)
    if flat.shape[1] == 0:
        return tower.one(lead)
    step = _chunk_size(tower, flat.shape[1])
    parts = [_eliminate(tower, flat[s : s + step], True) for s in range(0, flat.shape[0], step)]
    out = np.concatenate(parts) if parts else np.zeros((0, tower.d), dtype=np.int64)
    return Elt(tower, out.reshape(lead + (tower.d,)))


def det_is_zero(M: Elt):
    tower = M.tower
    flat, lead = _as_flat(M)
    if flat.shape[1] == 0:
        out = np.zeros(flat.shape[0], dtype=bool)
    else:
        step = _chunk_size(tower, flat.shape[1])
        out = np.concatenate(
            [_eliminate(tower, flat[s : s + step], False) for s in range(0, flat.shape[0], step)]
        ) if flat.shape[0] else np.zeros(0, dtype=bool)
    out = out.reshape(lead)
    return bool(out) if out.ndim == 0 else out


def det_cofactor(M: Elt) -> Elt:
    """Laplace expansion along the first row; slow, single grid only."""
    tower = M.tower
    n = M.c.shape[0]
    if n == 0:
        return tower.one()
    if n == 1:
        return Elt(tower, M.c[0, 0])
    total = tower.zero()
    for j in range(n):
        minor = np.delete(np.delete(M.c, 0, axis=0), j, axis=1)
        term = Elt(tower, M.c[0, j]) * det_cofactor(Elt(tower, minor))
        total = total + term if j % 2 == 0 else total - term
    return total


def rank(M: Elt) -> int:
    """Rank of a single (rows x cols) grid by first-nonzero pivoting."""
    tower = M.tower
    m = M.c.copy()
    rows, cols = m.shape[0], m.shape[1]
    r = 0
    for col in range(cols):
        nz = [i for i in range(r, rows) if m[i, col].any()]
        if not nz:
            continue
        k = nz[0]
        m[[r, k]] = m[[k, r]]
        inv = tower._inv(m[r, col], strict=True)
        for i in range(r + 1, rows):
            if m[i, col].any():
                f = tower._mul(m[i, col], inv)
                m[i] = (m[i] - tower._mul(f[None, :], m[r])) % tower.p
        r += 1
        if r == rows:
            break
    return r


# -- kernel dimension -----------------------------------------------------------

def kernel_dim_dickson(f: LinPoly):
    """Smallest t with det M_t(f) != 0, or 6 if every block is singular."""
    M = dickson(f)
    lead = f.shape
    flat = M.c.reshape((-1, N, N, M.tower.d))
    out = np.full(flat.shape[0], N, dtype=np.int64)
    todo = np.arange(flat.shape[0])
    for t in range(N):
        if todo.size == 0:
            break
        block = Elt(M.tower, flat[todo][:, : N - t, t:, :])
        zero = det_is_zero(block)
        zero = np.atleast_1d(zero)
        out[todo[~zero]] = t
        todo = todo[zero]
    out = out.reshape(lead)
    return int(out) if out.ndim == 0 else out


def kernel_dim_brute(f: LinPoly) -> int:
    tower = f.tower
    if f.shape:
        raise ValueError("kernel_dim_brute takes a single polynomial")
    if tower.Q > BRUTE_LIMIT:
        raise EnumerationTooLarge(f"q^6 = {tower.Q} exceeds {BRUTE_LIMIT}")
    zeros = 0
    step = 2**16
    weights = tower._weights
    for start in range(0, tower.Q, step):
        n = np.arange(start, min(start + step, tower.Q), dtype=np.int64)
        x = Elt(tower, (n[:, None] // weights) % tower.p)
        zeros += int(np.count_nonzero(evaluate(f, x).is_zero()))
    dim = round(math.log(zeros, tower.q))
    if tower.q**dim != zeros:
        raise NonSubspaceKernel(f"{zeros} zeros is not a power of q={tower.q}")
    return dim
