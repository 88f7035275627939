"""Which binomials b x^q + x^(q^4) are scattered when q is small?

Walk one representative per norm class, ask the closed form, and check it
against the exhaustive oracle. Then look at a failing b and its witness.
"""

from scattered_lab import brute_is_scattered, is_scattered, kernel_dim_brute, r_poly, tower_for_q

for q in (2, 3, 4):
    ctx = tower_for_q(q)
    bs, Ns = ctx.norm_fiber_table()
    fast = [is_scattered(bs[k]).scattered for k in range(len(bs))]
    slow = [brute_is_scattered(bs[k]).scattered for k in range(len(bs))]
    print(f"q={q}: {sum(fast)} of {len(bs)} norms scattered, oracle agrees: {fast == slow}")

# a non-scattered b always comes with an m where r_{m,b} drops rank by at least 2
ctx = tower_for_q(3)
k = next(k for k in range(1, ctx.Q) if not is_scattered(ctx.g**k).scattered)
verdict = brute_is_scattered(ctx.g**k)
f = r_poly(verdict.witness_m, verdict.b)
print(f"\nb = g^{k} is not scattered; witness m = {verdict.witness_m}, kernel dimension {kernel_dim_brute(f)}")
