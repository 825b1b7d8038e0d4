"""Small integer utilities: factorization, totient, prime powers."""

from math import gcd, lcm  # noqa: F401  (re-exported)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, primes in increasing order."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k and k >= 1, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    return next(iter(f.items()))


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = 1
    for p, k in factorize(m).items():
        result *= p ** (k - 1) * (p - 1)
    return result


def p_part(m: int, p: int) -> int:
    """Largest power of p dividing m."""
    q = 1
    while m % p == 0:
        m //= p
        q *= p
    return q


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]
