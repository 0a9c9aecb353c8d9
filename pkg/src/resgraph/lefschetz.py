"""Exact arithmetic in Q(zeta_N) and the two-fixed-point holomorphic Lefschetz count."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Sequence

Poly = tuple[Fraction, ...]  # low degree first, no trailing zeros


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def _mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _trim(q), _trim(r)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """Phi_n with integer coefficients, as ``x^n - 1`` divided by Phi_d for the proper divisors d."""
    p: Poly = _trim([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p, r = _divmod(p, cyclotomic_polynomial(d))
            assert not r
    return p


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@dataclass(frozen=True)
class CycloNumber:
    """Element of Q(zeta_N) as the reduced polynomial in zeta_N (degree < phi(N))."""

    N: int
    coeffs: Poly

    def __post_init__(self):
        phi = cyclotomic_polynomial(self.N)
        _, r = _divmod(_trim(self.coeffs), phi)
        object.__setattr__(self, "coeffs", r)

    @classmethod
    def rational(cls, N: int, value) -> "CycloNumber":
        return cls(N, (Fraction(value),))

    @classmethod
    def zeta_power(cls, N: int, k: int) -> "CycloNumber":
        k %= N
        return cls(N, tuple([Fraction(0)] * k + [Fraction(1)]))

    def padded(self) -> Poly:
        """Coefficient vector of length phi(N)."""
        phi = len(cyclotomic_polynomial(self.N)) - 1
        return self.coeffs + (Fraction(0),) * (phi - len(self.coeffs))

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber.rational(self.N, other)
        if other.N != self.N:
            raise ValueError("mixing different cyclotomic fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycloNumber(self.N, _sub(self.coeffs, _sub((), other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CycloNumber(self.N, _sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return CycloNumber(self.N, _sub((), self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return CycloNumber(self.N, _mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if not self.coeffs:
            raise ZeroDivisionError("zero has no inverse in Q(zeta_N)")
        # extended Euclid: s * self + t * Phi = gcd (a nonzero constant, Phi irreducible)
        r0, r1 = cyclotomic_polynomial(self.N), self.coeffs
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
        return CycloNumber(self.N, tuple(c / r1[0] for c in s1))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(self.N, other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(float(c) * z ** k for k, c in enumerate(self.coeffs))


def _fixed_point_term(N: int, a: int, b: int) -> CycloNumber:
    if a % N == 0 or b % N == 0:
        raise ZeroDivisionError(f"weight divisible by the order {N}")
    one = CycloNumber.rational(N, 1)
    return ((one - CycloNumber.zeta_power(N, a)) * (one - CycloNumber.zeta_power(N, b))).inverse()


def lefschetz_sum(N: int, weights: Sequence[tuple[int, int]]) -> CycloNumber:
    """``sum 1/((1 - zeta^r)(1 - zeta^k))`` over the isolated fixed points with weights (r, k)."""
    if N < 2:
        raise ValueError("order must be at least 2")
    total = CycloNumber.rational(N, 0)
    for a, b in weights:
        total = total + _fixed_point_term(N, a, b)
    return total


def solve_two_point(N: int) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """Weights ``(r, k), (l, m)`` mod N with Lefschetz sum 1, up to swapping within and between points."""
    if N < 2:
        raise ValueError("order must be at least 2")
    units = range(1, N)
    terms = {(a, b): _fixed_point_term(N, a, b) for a, b in product(units, repeat=2)}
    out = set()
    for (p1, t1), (p2, t2) in product(terms.items(), repeat=2):
        if t1 + t2 == 1:
            pair = tuple(sorted((tuple(sorted(p1)), tuple(sorted(p2)))))
            out.add(pair)
    return out
