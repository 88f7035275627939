"""Count the good norms and compare with floor((q^2+q+1)(q-2)/2).

The count is done by the closed forms over F_{q^3}, so q up to 16 is quick.
"""

import time

from scattered_lab import enumerate_gamma, frobenius_orbits, tower_for_q

print(f"{'q':>3} {'|Gamma|':>8} {'formula':>8} {'orbits':>7} {'secs':>6}")
for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
    t = time.perf_counter()
    ctx = tower_for_q(q)
    rep = enumerate_gamma(ctx)
    orbits = frobenius_orbits(ctx, rep.gamma).orbit_count if rep.gamma else 0
    print(f"{q:>3} {rep.size:>8} {rep.conjecture_value:>8} {orbits:>7} {time.perf_counter() - t:>6.2f}")
