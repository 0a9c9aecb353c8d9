"""Numerical invariants of a singularity read off its minimal-resolution graph."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Union

from . import exact
from .graph_core import (
    DualGraph,
    ForkedChain,
    GraphShape,
    NotContractible,
    QDivisor,
    Star,
    arithmetic_genus,
    canonical_degrees,
    dot_with_curves,
    intersect,
)
from .hj import from_chain


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CodiscrepancyData:
    delta: QDivisor
    K2: Fraction
    index: int
    maxcoeff: Fraction

    @property
    def log_canonical(self) -> bool:
        return self.maxcoeff <= 1

    @property
    def log_terminal(self) -> bool:
        return self.maxcoeff < 1


@dataclass(frozen=True)
class FundamentalCycleData:
    Z: QDivisor
    Z2: int
    mult: int
    pa: int

    @property
    def rational(self) -> bool:
        return self.pa == 0


@dataclass(frozen=True)
class MilnorData:
    value: Fraction
    integral: bool


@dataclass(frozen=True)
class NonIntegral:
    """Closed form for a mixed-arm star: K^2 exists but is not an integer."""

    value: Fraction


@dataclass(frozen=True)
class CoverData:
    """Index-one cover of a strictly lc point: ``-K^2``, multiplicity, embedding dimension."""

    minus_K2: int
    mult: int
    embdim: int


def codiscrepancy(g: DualGraph) -> CodiscrepancyData:
    """Solve ``Delta . E_i = 2 - 2 g_i + E_i^2`` (i.e. ``K_Y = eta^* K_X - Delta``)."""
    rhs = [-(2 - 2 * v.genus - v.weight) for v in g.vertices]
    try:
        a = exact.solve_positive_definite(g.sparse_rows(sign=-1), rhs)
    except exact.NotPositiveDefinite as e:
        raise NotContractible(str(e)) from None
    delta = QDivisor.on(g, a)
    # Delta^2 = sum a_i (Delta . E_i), and Delta . E_i is the right-hand side
    k2 = sum((ai * -bi for ai, bi in zip(a, rhs)), Fraction(0))
    index = lcm(*(c.denominator for c in a))
    return CodiscrepancyData(delta, k2, index, max(a))


def _arm_kind(arm) -> tuple[int, str]:
    c = from_chain(arm)
    if c.r == 2:
        return 2, "both"
    if c.q == 1 and len(arm) == 1:
        return c.r, "nDV"
    if c.q == c.r - 1:
        return c.r, "DV"
    return c.r, "other"


def star_arm_pattern(shape: Star) -> tuple[tuple[int, ...], str]:
    """``(r_1, r_2, r_3)`` and one of DV / nDV / Mixed / Other for a three-armed star."""
    if len(shape.arms) != 3:
        raise ShapeMismatch(f"expected three arms, got {len(shape.arms)}")
    kinds = [_arm_kind(a) for a in shape.arms]
    rs = tuple(r for r, _ in kinds)
    tags = {k for _, k in kinds} - {"both"}
    if "other" in tags:
        kind = "Other"
    elif tags <= {"DV"}:
        kind = "DV"
    elif tags == {"nDV"}:
        kind = "nDV"
    else:
        kind = "Mixed"
    return rs, kind


def k2_closed_form(shape: GraphShape) -> Union[Fraction, NonIntegral]:
    """K^2 of the strictly lc patterns with the DV / nDV closed forms.

    Forked chains: ``-sum(n_i - 2)``.  Stars ``<n; r_1, r_2, r_3>`` with
    ``sum 1/r_i == 1``: ``-(n - 2)`` for (-2)-chain arms, ``-(n - 9 + sum r_i)``
    for single-curve arms; mixed arms give a non-integral value.
    """
    if isinstance(shape, ForkedChain):
        return Fraction(-sum(n - 2 for n in shape.spine))
    if isinstance(shape, Star) and len(shape.arms) == 3:
        rs, kind = star_arm_pattern(shape)
        if sum(Fraction(1, r) for r in rs) != 1 or kind == "Other":
            raise ShapeMismatch(f"{shape} is not one of the strictly lc star patterns")
        n = shape.center
        if kind == "DV":
            return Fraction(-(n - 2))
        if kind == "nDV":
            return Fraction(-(n - 9 + sum(rs)))
        # K^2 = C^2 + sum of per-arm contributions (1 - 1/r or 4 - r - 3/r)
        value = Fraction(-n)
        for arm, r in zip(shape.arms, rs):
            kind_i = _arm_kind(arm)[1]
            if kind_i == "nDV":
                value += 4 - r - Fraction(3, r)
            else:
                value += 1 - Fraction(1, r)
        return NonIntegral(value)
    raise ShapeMismatch(f"no closed K^2 form for {shape}")


def chain_delta_contribution(kind: str, m: int = 0, r: int = 0) -> Fraction:
    """``D^2 - C^2`` for a chain hanging off a curve ``C`` of discrepancy -1.

    ``kind="TwoChain"``: ``m`` curves of weight 2, value ``m/(m+1)``.
    ``kind="SingleVertex"``: one curve of weight ``r``, value ``(r-1)(3-r)/r``.
    """
    if kind == "TwoChain":
        if m < 1:
            raise ValueError("m must be >= 1")
        return Fraction(m, m + 1)
    if kind == "SingleVertex":
        if r < 2:
            raise ValueError("r must be >= 2")
        return Fraction((r - 1) * (3 - r), r)
    raise ValueError(f"unknown kind {kind!r}")


def fundamental_cycle(g: DualGraph) -> FundamentalCycleData:
    """Artin's minimal cycle with ``Z . E_i <= 0`` for all i.

    Laufer's loop: start from the reduced exceptional divisor and keep adding
    the lowest-indexed ``E_i`` with ``Z . E_i > 0``.
    """
    from .graph_core import is_negative_definite

    if is_negative_definite(g) != "Definite":
        raise NotContractible("fundamental cycle needs a negative definite graph")
    n = len(g)
    z = [1] * n
    dots = [g.degree(i) - v.weight for i, v in enumerate(g.vertices)]
    while True:
        i = next((i for i in range(n) if dots[i] > 0), None)
        if i is None:
            break
        z[i] += 1
        dots[i] -= g.vertices[i].weight
        for j, m in g.adjacency[i].items():
            dots[j] += m
    Z = QDivisor.on(g, z)
    z2 = int(intersect(g, Z, Z))
    pa = arithmetic_genus(g, Z)
    mult = -z2 if pa == 0 else max(2, -z2)
    return FundamentalCycleData(Z, z2, mult, pa)


def milnor_number(g: DualGraph, cd: CodiscrepancyData | None = None) -> MilnorData:
    """``mu = K^2 + (number of exceptional curves)``; meaningful only under a Q-Gorenstein smoothing."""
    cd = cd or codiscrepancy(g)
    mu = cd.K2 + len(g)
    return MilnorData(mu, mu.denominator == 1)


def index_one_cover_K2(shape: GraphShape, kind: str, index: int, n: int) -> CoverData:
    """``-K^2`` of the index-one cover: ``I(n-2)`` for DV, ``I(n-1)`` for nDV.

    For forked chains ``n`` is ``sum(n_i - 2) + 2``; for stars it is the
    center weight.
    """
    if index not in (2, 3, 4, 6):
        raise ShapeMismatch(f"index {index} is not that of a strictly lc point with I > 1")
    if isinstance(shape, ForkedChain):
        if kind != "DV" or index != 2:
            raise ShapeMismatch("forked chains are index-2 and of DV type")
        if n != sum(w - 2 for w in shape.spine) + 2:
            raise ShapeMismatch(f"n={n} does not match the spine {shape.spine}")
    elif isinstance(shape, Star):
        rs, arm_kind = star_arm_pattern(shape)
        if arm_kind not in ("DV", "nDV") or arm_kind != kind:
            raise ShapeMismatch(f"star arms are {arm_kind}, not {kind}")
        if lcm(*rs) != index or shape.center != n:
            raise ShapeMismatch("index or center weight do not match the star")
    else:
        raise ShapeMismatch(f"{shape} is not a strictly lc pattern of index > 1")
    value = index * (n - 2) if kind == "DV" else index * (n - 1)
    return CoverData(value, max(2, value), max(3, value))


def c_anticanonical(g: DualGraph, cd: CodiscrepancyData | None = None) -> Fraction:
    """Local Riemann-Roch correction ``c_P(-K_X)`` of a rational lc point.

    Evaluated from the definition ``-1/2 <D*> . (floor(eta^* D) - K_Y)`` with
    ``D = -K_X``.  When Delta has full support the closed form
    ``Delta^2 - ceil(Delta)^2 - 3`` is also evaluated and must agree.  For Du
    Val points Delta = 0, the fractional part vanishes and the value is 0.
    """
    cd = cd or codiscrepancy(g)
    fc = fundamental_cycle(g)
    if not fc.rational:
        raise ValueError("c_P(-K_X) is only defined here for rational singularities")
    definitional = _c_definitional(g, cd.delta)
    if all(c > 0 for c in cd.delta.coeffs):
        closed = c_closed_form(g, cd)
        if closed != definitional:
            raise AssertionError(f"c_P mismatch: closed {closed} vs definition {definitional}")
    return definitional


def c_closed_form(g: DualGraph, cd: CodiscrepancyData) -> Fraction:
    up = cd.delta.ceil()
    return cd.K2 - intersect(g, up, up) - 3


def _c_definitional(g: DualGraph, delta: QDivisor) -> Fraction:
    # eta^* D = -K_Y - Delta; its exceptional part is -Delta, fractional part ceil(Delta) - Delta
    frac = delta.ceil() - delta
    up_dots = dot_with_curves(g, delta.ceil())
    k_dots = canonical_degrees(g)
    # (floor(eta^* D) - K_Y) . E_i = (-2 K_Y - ceil(Delta)) . E_i
    rhs = [-2 * k - u for k, u in zip(k_dots, up_dots)]
    return -Fraction(1, 2) * sum((f * r for f, r in zip(frac.coeffs, rhs)), Fraction(0))
