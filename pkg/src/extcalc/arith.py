"""Exact p-adic and binomial arithmetic.

Everything here works on Python integers; nothing touches floating point.
The helpers cover digit sums and valuations, p-factors of binomial
coefficients, the products used in Granville's congruence, and the
classification of degrees (prime powers, the sets A(p) and B(p), and the
set J_d of primes contributing to the second Ext-group).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class ArithError(ValueError):
    """Invalid argument to an arithmetic helper."""


class InfiniteValuation(ArithError):
    """Raised when asked for the valuation of zero."""


@dataclass(frozen=True)
class PrimePower:
    p: int
    l: int

    def __post_init__(self):
        if not is_prime(self.p) or self.l < 1:
            raise ArithError(f"not a prime power: {self.p}^{self.l}")

    @property
    def value(self) -> int:
        return self.p**self.l


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.value < self.modulus:
            raise ArithError(f"bad residue {self.value} mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus, modulus)

    def __int__(self):
        return self.value

    def __mul__(self, other):
        if isinstance(other, Residue):
            _same_modulus(self, other)
            other = other.value
        return Residue.of(self.value * other, self.modulus)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, Residue):
            _same_modulus(self, other)
            other = other.value
        return Residue.of(self.value + other, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return Residue.of(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        return Residue(pow(self.value, -1, self.modulus), self.modulus)

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"


def _same_modulus(a: Residue, b: Residue):
    if a.modulus != b.modulus:
        raise ArithError("residues with different moduli")


@dataclass(frozen=True)
class DigitExpansion:
    p: int
    digits: tuple[int, ...]  # least significant first

    @classmethod
    def of(cls, p: int, n: int) -> "DigitExpansion":
        if n < 0:
            raise ArithError("negative integer has no base-p expansion")
        digits = []
        while n:
            n, r = divmod(n, p)
            digits.append(r)
        return cls(p, tuple(digits))

    @property
    def value(self) -> int:
        return sum(c * self.p**k for k, c in enumerate(self.digits))

    def digit(self, k: int) -> int:
        return self.digits[k] if k < len(self.digits) else 0


# ---------------------------------------------------------------- primes


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _check_prime(p: int):
    if not is_prime(p):
        raise ArithError(f"{p} is not prime")


# ---------------------------------------------------------------- valuations


def valuation(p: int, n: int) -> int:
    """Largest e with p**e dividing n."""
    if n == 0:
        raise InfiniteValuation("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def digit_sum(p: int, n: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


def binomial(n: int, r: int) -> int:
    """C(n, r) by the multiplicative formula; 0 when r > n."""
    if r < 0 or r > n:
        return 0
    r = min(r, n - r)
    num, den = 1, 1
    for i in range(1, r + 1):
        num *= n - r + i
        den *= i
        g = math.gcd(num, den)
        num //= g
        den //= g
    return num // den


def kummer_valuation(p: int, n: int, r: int) -> int:
    """v_p(C(n, r)) from base-p digit sums."""
    if r > n or r < 0:
        raise ArithError(f"need 0 <= r <= n, got n={n}, r={r}")
    carries, rem = divmod(digit_sum(p, r) + digit_sum(p, n - r) - digit_sum(p, n), p - 1)
    assert rem == 0
    return carries


def p_factor(p: int, n: int, r: int) -> int:
    """The exact power of p dividing C(n, r)."""
    return p ** kummer_valuation(p, n, r)


# ---------------------------------------------------------------- mu, theta, gcd


def mu(p: int, d: int) -> int:
    if d < 1:
        raise ArithError("mu needs d >= 1")
    if d == 1:
        return 0
    return min(kummer_valuation(p, d, k) for k in range(1, d))


def theta(p: int, d: int) -> int:
    """Minimum of v_p C(d,k) + v_p C(k,r) over 0<r<k<d with p dividing exactly one of k, r."""
    if d < 2:
        raise ArithError("theta needs d >= 2")
    best = None
    for k in range(2, d):
        vk = kummer_valuation(p, d, k)
        if best is not None and vk >= best:
            continue
        k_div = k % p == 0
        for r in range(1, k):
            if (r % p == 0) == k_div:
                continue
            v = vk + kummer_valuation(p, k, r)
            if best is None or v < best:
                best = v
    return 0 if best is None else best


def binomial_row_gcd(d: int) -> int:
    if d < 2:
        raise ArithError("binomial_row_gcd needs d >= 2")
    g = 0
    for k in range(1, d):
        g = math.gcd(g, binomial(d, k))
        if g == 1:
            break
    return g


# ---------------------------------------------------------------- Granville


def odd_part_product(p: int, m: int) -> int:
    """Product of the integers in [1, m] coprime to p (1 for m = 0)."""
    out = 1
    for i in range(1, m + 1):
        if i % p:
            out *= i
    return out


@lru_cache(maxsize=None)
def _odd_part_product_mod(p: int, m: int, modulus: int) -> int:
    out = 1
    for i in range(1, m + 1):
        if i % p:
            out = out * i % modulus
    return out


def granville_sign(p: int, N: int) -> int:
    # +1 only for p = 2, N >= 3 (Granville's convention)
    return 1 if (p == 2 and N >= 3) else -1


def tilde_f(p: int, N: int, n: int) -> Residue:
    """The unit F~_{p,N}(n) modulo p**N."""
    if n < 0:
        raise ArithError("tilde_f needs n >= 0")
    modulus = p**N
    value = 1
    j = 0
    while n // p**j:
        block = (n // p**j) % modulus
        value = value * _odd_part_product_mod(p, block, modulus) % modulus
        j += 1
    alpha = sum(n // p**j for j in range(N, max(N, j) + 1))
    if granville_sign(p, N) == -1 and alpha % 2:
        value = -value % modulus
    return Residue(value, modulus)


def granville_check(p: int, N: int, n: int, r: int) -> bool:
    if r > n or r < 0:
        raise ArithError(f"need 0 <= r <= n, got n={n}, r={r}")
    modulus = p**N
    cofactor = binomial(n, r) // p_factor(p, n, r)
    denominator = tilde_f(p, N, r) * tilde_f(p, N, n - r)
    rhs = tilde_f(p, N, n) * denominator.inverse()
    return cofactor % modulus == rhs.value


# ---------------------------------------------------------------- classification


def prime_power_decomposition(d: int) -> PrimePower | None:
    if d < 2:
        return None
    p = smallest_prime_factor(d)
    l = valuation(p, d)
    if p**l == d:
        return PrimePower(p, l)
    return None


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ArithError("no prime factor")
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def decompose_a(p: int, d: int) -> tuple[int, int] | None:
    """(n, m) with d = p^n (p^m + 1), m >= 1, or None."""
    if d < 1:
        return None
    n = valuation(p, d)
    rest = d // p**n - 1
    if rest < p:
        return None
    m = valuation(p, rest)
    if p**m == rest:
        return n, m
    return None


def membership_ab(p: int, d: int) -> tuple[bool, bool]:
    _check_prime(p)
    in_a = decompose_a(p, d) is not None
    in_b = d > 1 and p**valuation(p, d) == d
    assert not (in_a and in_b)
    return in_a, in_b


def j_set(d: int) -> set[int]:
    return {p for p in primes_up_to(d - 1) if decompose_a(p, d) is not None}
