"""Prime-power finite fields GF(p^n) built from scratch.

Field elements are integers ``0..p^n-1`` whose base-p digits are the
coefficients of a polynomial of degree < n (digit i is the coefficient of
x^i).  Irreducible moduli are ordered by the same integer encoding, which
orders them lexicographically from the highest non-leading coefficient down.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .errors import BadParameter


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic b; coefficient lists low degree first."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(poly) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for lower in cartesian(range(p), repeat=d):
            if not _poly_mod(poly, list(lower) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> list[int]:
    for code in range(p ** n):
        coeffs = [(code // p ** i) % p for i in range(n)] + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise BadParameter(f"no irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class FieldGF:
    p: int
    n: int
    modulus: tuple[int, ...]
    generator: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return self.p ** self.n

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul[x][a]
            k += 1
        return k


def _digits(a: int, p: int, n: int) -> list[int]:
    return [(a // p ** i) % p for i in range(n)]


def _encode(coeffs: list[int], p: int) -> int:
    return sum(c * p ** i for i, c in enumerate(coeffs))


def gf_field(p: int, n: int, max_size: int | None = None) -> FieldGF:
    """GF(p^n) with the smallest irreducible modulus and smallest primitive element."""
    if not is_prime(p):
        raise BadParameter(f"{p} is not prime")
    if n < 1:
        raise BadParameter("field degree must be at least 1")
    q = p ** n
    if max_size is not None and q > max_size:
        raise BadParameter(f"field of size {q} exceeds {max_size}")
    modulus = smallest_irreducible(p, n)
    digits = [_digits(a, p, n) for a in range(q)]
    add = tuple(tuple(_encode([(x + y) % p for x, y in zip(digits[a], digits[b])], p) for b in range(q)) for a in range(q))
    mul_rows = []
    for a in range(q):
        row = []
        for b in range(q):
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(digits[a]):
                if x:
                    for j, y in enumerate(digits[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
            rem = _poly_mod(prod, modulus, p)
            row.append(_encode(rem, p))
        mul_rows.append(tuple(row))
    mul = tuple(mul_rows)
    field = FieldGF(p, n, tuple(modulus), 0, add, mul)
    for a in range(1, q):
        if field.mult_order(a) == q - 1:
            return FieldGF(p, n, tuple(modulus), a, add, mul)
    raise BadParameter("no primitive element found")  # unreachable for a field
