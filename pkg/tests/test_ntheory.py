from hypothesis import given, strategies as st

from newman_lab.ntheory import (
    factorize,
    is_prime,
    multiplicative_order,
    power_cycle,
    primes_up_to,
    primitive_root,
    totient,
)


def test_small_values():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert totient(36) == 12
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert multiplicative_order(4, 5) == 2
    assert primitive_root(7) == 3


@given(st.integers(2, 50), st.integers(1, 400))
def test_power_cycle_is_least(b, q):
    mu, lam = power_cycle(b, q)
    seq = [pow(b, p, q) for p in range(mu + 2 * lam + 2)]
    assert all(seq[p + lam] == seq[p] for p in range(mu, mu + lam + 2))
    # no shorter period, and the preperiod cannot start earlier
    assert all(seq[mu + d] != seq[mu] for d in range(1, lam))
    assert mu == 0 or seq[mu - 1] != seq[mu - 1 + lam]


@given(st.integers(3, 3000))
def test_primitive_root_order(p):
    if is_prime(p):
        assert multiplicative_order(primitive_root(p), p) == p - 1
