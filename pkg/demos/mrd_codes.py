"""A scattered b gives an MRD code {a x + beta (b x^q + x^(q^4))}.

At q=3 every nonzero codeword of such a code has rank at least 5. We sample
codewords (seeded, override with SCATTERED_LAB_SEED) and show the rank spread.
"""

from scattered_lab import is_scattered, mrd_check, tower_for_q

ctx = tower_for_q(3)
bs, _ = ctx.norm_fiber_table()
good = next(bs[k] for k in range(len(bs)) if is_scattered(bs[k]).scattered)
bad = next(bs[k] for k in range(len(bs)) if not is_scattered(bs[k]).scattered)

for label, b in (("scattered", good), ("not scattered", bad)):
    r = mrd_check(b, sample=5000)
    print(f"{label:>14}: MRD={r.is_mrd}  min rank={r.min_rank}  ranks={dict(sorted(r.rank_distribution.items()))}")
