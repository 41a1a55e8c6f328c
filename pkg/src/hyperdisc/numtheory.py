"""Elementary number theory used by the constructions."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidInput, InvalidModulus, NotCoprime


@dataclass(frozen=True)
class EtaDecomposition:
    """``q = sum(eta[i] * 2**i)`` with every digit in {1, 2}."""

    q: int
    m: int
    eta: tuple[int, ...]

    def __post_init__(self):
        if len(self.eta) != self.m:
            raise InvalidInput(f"eta has {len(self.eta)} digits, expected m={self.m}")
        if any(e not in (1, 2) for e in self.eta):
            raise InvalidInput(f"eta digits must be 1 or 2, got {self.eta}")
        if sum(e << i for i, e in enumerate(self.eta)) != self.q:
            raise InvalidInput(f"eta {self.eta} does not sum to q={self.q}")


def snd(n: int) -> int:
    """Smallest positive integer that does not divide ``n``.

    Always a prime power; found by trial from 2 upward, which is cheap
    because the answer grows like log n.
    """
    if n < 1:
        raise InvalidInput(f"snd needs n >= 1, got {n}")
    k = 2
    while n % k == 0:
        k += 1
    return k


def eta_decompose(q: int) -> EtaDecomposition:
    if q < 2:
        raise InvalidInput(f"eta_decompose needs q >= 2, got {q}")
    # 2**m - 1 <= q <= 2**(m+1) - 2  <=>  m = bit_length(q + 1) - 1
    m = (q + 1).bit_length() - 1
    rest = q - ((1 << m) - 1)
    eta = tuple(1 + ((rest >> i) & 1) for i in range(m))
    return EtaDecomposition(q, m, eta)


def mod_inverse(a: int, q: int) -> int:
    if q < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {q}")
    if gcd(a % q, q) != 1:
        raise NotCoprime(f"{a} is not invertible modulo {q}")
    return pow(a, -1, q)


def _odd_representative(r: int, q: int) -> int:
    # q odd, r in (0, q): exactly one of r, r - q is odd
    return r if r % 2 else r - q


def choose_delta(n: int, q: int, eta_last: int) -> int:
    """Odd ``delta`` in (-q, q) with ``q | n + eta_last * delta``."""
    if q < 3 or q % 2 == 0:
        raise InvalidModulus(f"q must be odd and >= 3, got {q}")
    if n % q == 0:
        raise InvalidModulus(f"q={q} divides n={n}")
    if eta_last not in (1, 2):
        raise InvalidInput(f"eta_last must be 1 or 2, got {eta_last}")
    r = (-n * mod_inverse(eta_last, q)) % q
    return _odd_representative(r, q)


def choose_t19(n: int) -> int:
    """Odd ``t`` in (-19, 19) with ``19 | 2n + 3t``."""
    if n % 19 == 0:
        raise InvalidInput(f"19 divides n={n}")
    r = (-2 * n * mod_inverse(3, 19)) % 19
    return _odd_representative(r, 19)
