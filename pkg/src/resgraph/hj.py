"""Hirzebruch-Jung continued fractions and cyclic quotient types ``1/r(1, q)``."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence, Union


@dataclass(frozen=True)
class CyclicType:
    r: int
    q: int

    def __post_init__(self):
        if self.r < 2 or not 1 <= self.q < self.r or gcd(self.r, self.q) != 1:
            raise ValueError(f"not a cyclic quotient type: 1/{self.r}(1,{self.q})")

    @classmethod
    def normalized(cls, m: int, q1: int, q2: int) -> "CyclicType":
        """``1/m(q1, q2)`` rewritten as ``1/m(1, q)``."""
        if gcd(m, q1) != 1 or gcd(m, q2) != 1:
            raise ValueError(f"1/{m}({q1},{q2}) needs weights coprime to {m}")
        return cls(m, q2 * pow(q1, -1, m) % m)


@dataclass(frozen=True)
class TParams:
    """``1/(d n^2)(1, d n a - 1)`` with ``gcd(a, n) == 1``."""

    d: int
    n: int
    a: int

    @property
    def cyclic_type(self) -> CyclicType:
        return CyclicType(self.d * self.n ** 2, self.d * self.n * self.a - 1)


@dataclass(frozen=True)
class DuValMarker:
    """Cyclic Du Val point ``A_k = 1/(k+1)(1, k)``."""

    k: int


def to_chain(c: CyclicType) -> list[int]:
    r, q = c.r, c.q
    out = []
    while q:
        n = -(-r // q)
        out.append(n)
        r, q = q, n * q - r
    return out


def from_chain(ws: Sequence[int]) -> CyclicType:
    if not ws or any(w < 2 for w in ws):
        raise ValueError(f"chain weights must be >= 2, got {list(ws)}")
    # r/q = n_1 - 1/(n_2 - ...), folded from the far end
    num, den = 1, 0
    for w in reversed(ws):
        num, den = w * num - den, num
    return CyclicType(num, den)


def dual(c: CyclicType) -> CyclicType:
    return CyclicType(c.r, c.r - c.q)


def t_singularity_params(c: CyclicType) -> Union[TParams, DuValMarker, None]:
    """T-parameters of ``1/m(1, q)`` when ``(1 + q)^2 = 0 mod m``; None otherwise."""
    m, q = c.r, c.q
    if (1 + q) ** 2 % m:
        return None
    k = gcd(q + 1, m)  # = d n
    n = m // k
    if n == 1:
        return DuValMarker(m - 1)
    d, rem = divmod(k, n)
    a = (q + 1) // k
    assert rem == 0 and d * n * n == m and gcd(a, n) == 1 and d * n * a - 1 == q
    return TParams(d, n, a)


def t_singularities(max_r: int):
    """All non-Du Val T-types ``1/(dn^2)(1, dna-1)`` with ``dn^2 <= max_r``, ``1 <= a < n``."""
    for n in range(2, int(max_r ** 0.5) + 1):
        for d in range(1, max_r // (n * n) + 1):
            for a in range(1, n):
                if gcd(a, n) == 1:
                    yield TParams(d, n, a)
