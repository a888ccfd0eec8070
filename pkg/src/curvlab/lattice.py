"""Lattice points on circles: solutions of x^2 + y^2 = n over the integers."""

from __future__ import annotations

import math
from dataclasses import dataclass

SCAN_CAP = 10**8


@dataclass(frozen=True)
class LatticeCircle:
    """All m in Z^2 with |m|^2 = n, closed under the 8 lattice symmetries."""

    n: int
    vectors: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.vectors)

    @property
    def radius(self) -> float:
        return math.sqrt(self.n)


def lattice_circle(n: int) -> LatticeCircle:
    """Enumerate the circle by scanning x and solving for y exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > SCAN_CAP:
        raise ValueError(f"n = {n} beyond the scan cap {SCAN_CAP}")
    if n == 0:
        return LatticeCircle(n=0, vectors=((0, 0),))
    found = set()
    for x in range(math.isqrt(n) + 1):
        y2 = n - x * x
        y = math.isqrt(y2)
        if y * y == y2:
            # orbit under negation and swap
            for px, py in ((x, y), (y, x)):
                for sx in (1, -1):
                    for sy in (1, -1):
                        found.add((sx * px, sy * py))
    return LatticeCircle(n=n, vectors=tuple(sorted(found)))


def r2_count(n: int) -> int:
    """Representation count by the divisor formula (independent oracle).

    Factor n = 2^a * prod p^e (p = 1 mod 4) * prod q^f (q = 3 mod 4);
    the count is 0 if any f is odd, else 4 * prod (e + 1).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    count = 4
    m = n
    while m % 2 == 0:
        m //= 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if p % 4 == 3:
                if e % 2 == 1:
                    return 0
            else:
                count *= e + 1
        p += 2
    if m > 1:
        if m % 4 == 3:
            return 0
        count *= 2
    return count
