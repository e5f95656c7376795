"""Exact integer/rational scalars, primality, and the doubly-exponential prime schedule.

Rationals are gmpy2.mpq values: always reduced, denominator positive, and
hashable, so structural equality of canonical forms is plain ``==``.  The
fractions.Fraction type interoperates transparently and is accepted anywhere
a Rational is.

Primality is deterministic for everything the schedule reaches in practice:
trial division for small inputs, then Miller-Rabin with the proven witness
sets (valid below 3317044064679887385961981), and for anything larger the
fixed witness set 2..floor(2*ln(n)^2), which is deterministic and correct
under ERH; a certified fallback can be layered on top by callers that need
unconditional proofs at those sizes.
"""

import math
import threading

from gmpy2 import mpq

from .errors import BitBudgetError

Rational = mpq

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Proven deterministic Miller-Rabin witness sets (threshold, bases).
_MR_WITNESS_TABLE = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

_TRIAL_DIVISION_LIMIT = 1 << 20


def _mr_composite(n: int, a: int, d: int, r: int) -> bool:
    # True iff witness a proves n composite; n - 1 == d * 2**r with d odd.
    a %= n
    if a == 0:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test (see module docstring for the strategy)."""
    n = int(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _TRIAL_DIVISION_LIMIT:
        f = 49
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for bound, bases in _MR_WITNESS_TABLE:
        if n < bound:
            break
    else:
        # ERH-deterministic witness set for out-of-table sizes.
        bases = range(2, math.floor(2 * math.log(n) ** 2) + 1)
    return not any(_mr_composite(n, a, d, r) for a in bases)


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    n = int(n)
    if n < 2:
        return 2
    c = n + 1 + (n % 2)  # first odd candidate above n
    while not is_prime(c):
        c += 2
    return c


def genus(n: int) -> int:
    """Genus of a smooth plane curve of degree n: (n-1)(n-2)/2."""
    n = int(n)
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    return (n - 1) * (n - 2) // 2


def cover_threshold(g: int) -> int:
    """Prime bound 64*g^2 above which a prime-degree Fermat curve is cover-free."""
    g = int(g)
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    return 64 * g * g


def totient(n: int) -> int:
    """Euler's totient, by trial-division factorization (inputs stay small)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    result = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            result -= result // f
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        result -= result // m
    return result


class PrimeSchedule:
    """The recurrence p0 = 5, p_{i+1} = least prime > (4(p_i-1)(p_i-2))^2.

    Entries are memoized; extension is serialized so concurrent readers are
    safe.  Growth is doubly exponential, so a bit-size budget (default 256)
    guards against runaway computation: exceeding it raises BitBudgetError.
    """

    DEFAULT_MAX_BITS = 256

    def __init__(self, max_bits: int = DEFAULT_MAX_BITS):
        if max_bits < 4:
            raise ValueError("max_bits too small to hold p0 = 5")
        self.max_bits = max_bits
        self._primes = [5]
        self._lock = threading.Lock()

    def prime(self, i: int) -> int:
        """Return p_i, extending the memo table as needed."""
        if i < 0:
            raise ValueError(f"schedule index must be >= 0, got {i}")
        if i < len(self._primes):
            return self._primes[i]
        with self._lock:
            while i >= len(self._primes):
                p = self._primes[-1]
                lower = (4 * (p - 1) * (p - 2)) ** 2
                if lower.bit_length() > self.max_bits:
                    raise BitBudgetError(len(self._primes), lower.bit_length(), self.max_bits)
                self._primes.append(next_prime(lower))
        return self._primes[i]

    __getitem__ = prime

    def known(self) -> tuple:
        """Entries computed so far."""
        return tuple(self._primes)


_DEFAULT_SCHEDULE = PrimeSchedule()


def prime_schedule(i: int) -> int:
    """p_i from the shared default-budget schedule instance."""
    return _DEFAULT_SCHEDULE.prime(i)
