import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdisc.errors import InvalidInput, InvalidModulus, NotCoprime
from hyperdisc.numtheory import choose_delta, choose_t19, eta_decompose, mod_inverse, snd


def snd_oracle(n):
    return min(k for k in range(2, n + 2) if n % k)


@pytest.mark.parametrize("n, expected", [(1, 2), (12, 5), (2520, 11), (720720, 17)])
def test_snd_examples(n, expected):
    assert snd(n) == expected == snd_oracle(n)


def test_snd_rejects_nonpositive():
    with pytest.raises(InvalidInput):
        snd(0)


def test_snd_sweep():
    for n in range(1, 3000):
        k = snd(n)
        assert n % k != 0
        assert all(n % j == 0 for j in range(2, k))


def is_prime_power(k):
    p = next(d for d in range(2, k + 1) if k % d == 0)
    while k % p == 0:
        k //= p
    return k == 1


def test_snd_is_prime_power():
    assert all(is_prime_power(snd(n)) for n in range(1, 5000))


@pytest.mark.parametrize(
    "q, m, eta",
    [(19, 4, (1, 1, 2, 1)), (3, 2, (1, 1)), (8, 3, (2, 1, 1)), (2, 1, (2,))],
)
def test_eta_examples(q, m, eta):
    d = eta_decompose(q)
    assert (d.m, d.eta) == (m, eta)


def test_eta_round_trip():
    for q in range(2, 10_001):
        d = eta_decompose(q)
        assert 2**d.m - 1 <= q <= 2 ** (d.m + 1) - 2
        assert sum(e * 2**i for i, e in enumerate(d.eta)) == q
        assert set(d.eta) <= {1, 2}


def test_eta_rejects_small():
    with pytest.raises(InvalidInput):
        eta_decompose(1)


@pytest.mark.parametrize("a, q, inv", [(3, 19, 13), (1, 7, 1), (2, 5, 3), (-1, 7, 6)])
def test_mod_inverse(a, q, inv):
    assert mod_inverse(a, q) == inv
    assert (a * inv) % q == 1


def test_mod_inverse_not_coprime():
    with pytest.raises(NotCoprime):
        mod_inverse(6, 9)


@pytest.mark.parametrize("n, q, eta_last, delta", [(4, 3, 1, -1), (12, 5, 2, -1), (60, 7, 1, 3)])
def test_choose_delta_examples(n, q, eta_last, delta):
    assert choose_delta(n, q, eta_last) == delta


@pytest.mark.parametrize("n, q", [(4, 4), (9, 3)])
def test_choose_delta_bad_modulus(n, q):
    with pytest.raises(InvalidModulus):
        choose_delta(n, q, 1)


@given(st.integers(1, 10**9), st.sampled_from([3, 5, 7, 9, 11, 13, 17, 19, 25, 27]), st.sampled_from([1, 2]))
def test_choose_delta_properties(n, q, eta_last):
    if n % q == 0:
        return
    delta = choose_delta(n, q, eta_last)
    assert (n + eta_last * delta) % q == 0
    assert delta % 2 == 1 and -q < delta < q


@pytest.mark.parametrize("n, t", [(20, -7), (110, 9), (1, -7)])
def test_choose_t19_examples(n, t):
    assert choose_t19(n) == t
    assert (2 * n + 3 * t) % 19 == 0


def test_choose_t19_rejects_multiple():
    with pytest.raises(InvalidInput):
        choose_t19(38)


def test_choose_t19_depends_on_residue_only():
    for n in range(1, 2000):
        if n % 19:
            t = choose_t19(n)
            assert t == choose_t19(n + 19) == choose_t19(n + 38)
            assert t % 2 == 1 and -19 < t < 19
