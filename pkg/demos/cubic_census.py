"""Cubics over F_q sorted by number of roots.

For odd q and for even q the same size shows up from a different direction:
3 gamma_0 + (triple-root count) reproduces |Gamma|.
"""

from scattered_lab import conjecture_value, star_census_even, star_census_odd

for q in (3, 5, 7, 9):
    r = star_census_odd(q)
    print(f"odd  q={q}: gammas {r.gamma0, r.gamma1, r.gamma2, r.gamma3}"
          f"  3g0+dq = {3 * r.gamma0 + r.triple_root_count}  |Gamma| = {conjecture_value(q)}")

for q in (2, 4, 8, 16):
    r = star_census_even(q)
    print(f"even q={q}: gammas {r.gamma0, r.gamma1, r.gamma2, r.gamma3}"
          f"  |Gamma| = {r.actual['|Gamma|']}  all formulas hold: {r.all_match}")
