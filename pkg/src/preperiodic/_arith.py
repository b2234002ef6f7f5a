"""Small integer helpers: primality, prime iteration, denominator checks."""

from math import gcd, isqrt


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_from(start):
    """Yield primes >= start in ascending order, forever."""
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


def divides_power_of(d, N):
    """True iff every prime factor of d also divides N."""
    d = abs(d)
    if d == 0:
        return False
    while d > 1:
        g = gcd(d, N)
        if g == 1:
            return False
        while d % g == 0:
            d //= g
    return True


def lcm_all(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
