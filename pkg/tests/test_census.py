import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scattered_lab import (
    basic_multiplier_check,
    conjecture_value,
    enumerate_gamma,
    in_subfield,
    lemma_ff_count,
    star_census_even,
    star_census_odd,
    tower_for_q,
)
from scattered_lab.census import closed_form_value, gcd_n2, lemma_ff_expected, lemma_ff_sweep
from scattered_lab.errors import (
    ConstraintViolated,
    EnumerationTooLarge,
    EvenCharRequired,
    NotPrimePower,
    OddCharRequired,
)
from scattered_lab.numtheory import is_prime
from scattered_lab.scatter_criteria import delta_from_norm


def _is_prime_power(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


PRIME_POWERS = [q for q in range(2, 200) if _is_prime_power(q)]


# -- plain-integer oracles for the cubic censuses ------------------------------------------

def _odd_oracle(q):
    """Star census over a prime field using nothing but integers mod q."""
    squares = {x * x % q for x in range(1, q)}
    gam = [0, 0, 0, 0]
    total = rooted = 0
    for S, R, P in itertools.product(range(q), repeat=3):
        D = ((S - P) ** 2 + 8 * P - 4 * R) % q
        if D not in squares:
            continue
        total += 1
        roots = [t for t in range(q) if (t**3 - S * t * t + R * t - P) % q == 0]
        gam[len(roots)] += 1
        rooted += len(roots)
    # pairs (A, B), B = u + v*i in F_q[i]/(i^2 - n) with n a non-residue
    n = next(x for x in range(2, q) if x not in squares)
    pairs = 0
    for A, u, v in itertools.product(range(q), repeat=3):
        tr, nm = 2 * u, u * u - n * v * v
        S, R, P = A + tr, A * tr + nm, A * nm
        if ((S - P) ** 2 + 8 * P - 4 * R) % q in squares:
            pairs += 1
    return total, gam, rooted, pairs


def _even_oracle(q):
    """Star census in characteristic 2, element by element through the tower."""
    ctx = tower_for_q(q)
    fq = list(ctx.subfield(1).elements)
    e = ctx.e

    def tr(x):
        acc, y = ctx.zero(), x
        for _ in range(e):
            acc, y = acc + y, y * y
        return acc

    gam = [0, 0, 0, 0]
    total = rooted = triple = 0
    for S, R, P in itertools.product(fq, repeat=3):
        if P == S:
            continue
        den = (P + S) * (P + S)
        if not tr(R * (S + P + R + 1) / den).is_zero():
            continue
        total += 1
        roots = [t for t in fq if t * t * t + S * t * t + R * t + P == 0]
        gam[len(roots)] += 1
        rooted += len(roots)
        # (T + S)^3 = T^3 + S T^2 + S^2 T + S^3 in characteristic 2
        if S * S == R and S * S * S == P:
            triple += 1
    return total, gam, rooted, triple


# -- values of the counting formula ---------------------------------------------------------

@pytest.mark.parametrize("q,want", [(2, 0), (3, 6), (4, 21), (5, 46), (7, 142), (8, 219), (9, 318)])
def test_conjecture_value_examples(q, want):
    assert conjecture_value(q) == want
    assert closed_form_value(q) == want


@given(st.sampled_from(PRIME_POWERS))
def test_floor_identity_matches_parity_split(q):
    assert conjecture_value(q) == closed_form_value(q)
    assert (q * q + q + 1) * (q - 2) == q**3 - q**2 - q - 2


@pytest.mark.parametrize("bad", [1, 6, 10, 12])
def test_conjecture_value_rejects_non_prime_powers(bad):
    with pytest.raises(NotPrimePower):
        conjecture_value(bad)


def test_gcd_n2_uses_the_exponent():
    assert [gcd_n2(q) for q in (2, 4, 8, 16, 9, 3)] == [1, 2, 1, 2, 2, 1]


# -- the set of good norms ------------------------------------------------------------------

@pytest.mark.parametrize("q,size", [(2, 0), (3, 6), (5, 46)])
def test_enumerate_gamma_examples(q, size):
    report = enumerate_gamma(tower_for_q(q))
    assert report.size == size == report.conjecture_value
    assert report.matches_conjecture and report.matches_closed_form


def test_gamma_members_are_distinct_units_of_the_cubic_subfield():
    ctx = tower_for_q(8)
    report = enumerate_gamma(ctx)
    members = ctx.stack(report.gamma)
    assert len(set(ctx.pack(members).tolist())) == report.size
    assert np.all(in_subfield(members, 3))
    assert not np.any(members.is_zero()) and not np.any(members == 1)


def test_gamma_oracle_mode():
    report = enumerate_gamma(tower_for_q(3), oracle=True)
    assert report.oracle_checked and report.size == 6
    with pytest.raises(EnumerationTooLarge):
        enumerate_gamma(tower_for_q(7), oracle=True)


def test_gamma_report_json_layout():
    out = enumerate_gamma(tower_for_q(4)).to_json()
    assert list(out)[:9] == [
        "q", "p", "e", "modulus", "parity", "size", "conjecture_value", "closed_form_value", "match",
    ]
    assert out["match"] and len(out["gamma"]) == 21
    assert "gamma" not in enumerate_gamma(tower_for_q(4)).to_json(with_members=False)


# -- cubic censuses --------------------------------------------------------------------------

@pytest.mark.parametrize(
    "q,total,rooted,conj,combo",
    [(3, 9, 12, 9, 6), (5, 50, 60, 44, 46), (7, 147, 168, 131, 142)],
)
def test_star_census_odd_examples(q, total, rooted, conj, combo):
    r = star_census_odd(q)
    assert (r.total, r.rooted_pairs, r.conjroot_pairs) == (total, rooted, conj)
    assert 3 * r.gamma0 + r.triple_root_count == combo
    assert r.all_match


@pytest.mark.parametrize("q", [3, 5, 7])
def test_star_census_odd_against_integer_oracle(q):
    total, gam, rooted, pairs = _odd_oracle(q)
    r = star_census_odd(q)
    assert r.total == total
    assert [r.gamma0, r.gamma1, r.gamma2, r.gamma3] == gam
    assert r.rooted_pairs == rooted
    assert r.conjroot_pairs == pairs


def test_star_census_even_examples():
    r = star_census_even(4)
    assert (r.total, r.rooted_pairs, r.gamma1, r.gamma2, r.gamma3, r.gamma0) == (24, 30, 8, 5, 4, 7)
    assert r.actual["|Gamma|"] == 21
    r = star_census_even(2)
    assert (r.total, r.gamma0, r.actual["|Gamma|"]) == (2, 0, 0)
    assert star_census_even(8).actual["|Gamma|"] == 219


@pytest.mark.parametrize("q", [2, 4, 8])
def test_star_census_even_against_elementwise_oracle(q):
    total, gam, rooted, triple = _even_oracle(q)
    r = star_census_even(q)
    assert r.total == total
    assert [r.gamma0, r.gamma1, r.gamma2, r.gamma3] == gam
    assert r.rooted_pairs == rooted
    assert r.triple_root_count == triple


@pytest.mark.parametrize("fn,q", [(star_census_odd, 3), (star_census_odd, 9), (star_census_even, 4), (star_census_even, 16)])
def test_census_internal_consistency(fn, q):
    r = fn(q)
    assert r.gamma1 + 2 * r.gamma2 + 3 * r.gamma3 == r.rooted_pairs
    assert r.gamma0 == r.total - r.gamma1 - r.gamma2 - r.gamma3
    assert r.all_match, r.to_json()["table"]


def test_census_parity_errors():
    with pytest.raises(OddCharRequired):
        star_census_odd(4)
    with pytest.raises(EvenCharRequired):
        star_census_even(9)


@pytest.mark.parametrize("q", [3, 5])
def test_norm_discriminant_matches_star_status_of_its_minimal_cubic(q):
    ctx = tower_for_q(q)
    _, Ns = ctx.norm_fiber_table()
    Ns = Ns[~np.asarray(in_subfield(Ns, 1))]
    n0, n1, n2 = Ns, Ns.frob(1), Ns.frob(2)
    S, R, P = n0 + n1 + n2, n0 * n1 + n0 * n2 + n1 * n2, n0 * n1 * n2
    star = np.asarray(ctx.is_square_in_Fq_star((S - P) * (S - P) + 8 * P - 4 * R))
    assert np.array_equal(star, np.asarray(ctx.is_square_in_Fq_star(delta_from_norm(Ns))))


def test_basic_multiplier():
    for q in (3, 5, 7):
        assert basic_multiplier_check(q)
    with pytest.raises(OddCharRequired):
        basic_multiplier_check(4)
    with pytest.raises(EnumerationTooLarge):
        basic_multiplier_check(11)


# -- conic point counts ------------------------------------------------------------------------

def test_lemma_ff_examples():
    ctx = tower_for_q(4)
    fq = list(ctx.subfield(1).elements)
    tr0 = next(a for a in fq[1:] if ctx.trace_fq_f2(a).is_zero())
    tr1 = next(a for a in fq[1:] if not ctx.trace_fq_f2(a).is_zero())
    zero = ctx.zero()
    # beta = gamma = 0 is valid when alpha != 0
    assert lemma_ff_count(tr0, zero, zero) == 2
    assert lemma_ff_count(tr1, zero, zero) == 4
    one = ctx.one()
    with pytest.raises(ConstraintViolated):
        lemma_ff_count(tr1, one, one)  # alpha(1+1) = 0 = (1+1)(1+1)
    with pytest.raises(ConstraintViolated):
        lemma_ff_count(zero, zero, zero)
    with pytest.raises(ConstraintViolated):
        lemma_ff_count(ctx.g, zero, zero)
    with pytest.raises(EvenCharRequired):
        lemma_ff_count(tower_for_q(3).one(), tower_for_q(3).zero(), tower_for_q(3).zero())


@pytest.mark.parametrize("q", [4, 8])
def test_lemma_ff_elementwise_count_agrees_with_table_sweep(q):
    ctx = tower_for_q(q)
    fq = list(ctx.subfield(1).elements)
    counted = agree = 0
    for a, b, c in itertools.product(fq[1:], fq, fq):
        if a * (b * b + 1) == (c + b) * (c + 1):
            continue
        counted += 1
        agree += lemma_ff_count(a, b, c) == lemma_ff_expected(a)
    sweep = lemma_ff_sweep(q)
    assert counted == agree == sweep["triples"] == sweep["agree"]
    assert sweep["count_q"] + sweep["count_q_minus_2"] == sweep["triples"]
