"""Taxonomy of log canonical surface singularities and Q-Gorenstein smoothability."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .graph_core import (
    Chain,
    Cycle,
    DualGraph,
    EllipticVertex,
    ForkedChain,
    GraphShape,
    NotContractible,
    Other,
    Star,
    is_negative_definite,
    recognize_shape,
)
from .hj import CyclicType, DuValMarker, TParams, from_chain, t_singularity_params
from .invariants import (
    CodiscrepancyData,
    CoverData,
    FundamentalCycleData,
    MilnorData,
    c_anticanonical,
    codiscrepancy,
    fundamental_cycle,
    index_one_cover_K2,
    milnor_number,
    star_arm_pattern,
)

SMOOTHABLE = "Smoothable"
NOT_SMOOTHABLE = "NotSmoothable"
UNKNOWN = "Unknown"


class NotNegativeDefinite(NotContractible):
    pass


class ClassificationConflict(AssertionError):
    """Shape-based and Delta-based lc/lt verdicts disagree (never expected)."""


@dataclass(frozen=True)
class SingularityClass:
    """``tag`` is one of DuVal, LogTerminalCyclic, LogTerminalOther, SimpleElliptic,
    Cusp, StrictLC2, StrictLC, NotLogCanonical; the other fields are filled per tag."""

    tag: str
    dv_or_ndv: str = "NA"
    ade: Optional[str] = None
    cyclic: Optional[CyclicType] = None
    index: Optional[int] = None
    n: Optional[int] = None
    weights: tuple[int, ...] = ()
    arms: tuple[CyclicType, ...] = ()


@dataclass(frozen=True)
class Verdict:
    status: str
    provenance: str
    mu: Optional[int] = None

    def __post_init__(self):
        if self.status == SMOOTHABLE and self.mu is not None and self.mu < 0:
            raise ValueError("a smoothable point cannot have negative Milnor number")


def ade_symbol(shape: GraphShape) -> Optional[str]:
    """ADE type of an all-(-2) tree, or None."""
    if isinstance(shape, Chain) and set(shape.weights) == {2}:
        return f"A{len(shape.weights)}"
    if isinstance(shape, Star) and shape.center == 2 and len(shape.arms) == 3:
        if any(set(a) != {2} for a in shape.arms):
            return None
        lens = sorted(len(a) for a in shape.arms)
        if lens[:2] == [1, 1]:
            return f"D{lens[2] + 3}"
        if lens[:2] == [1, 2] and lens[2] in (2, 3, 4):
            return f"E{lens[2] + 4}"
    return None


def _shape_lc_status(shape: GraphShape) -> str:
    """lt / slc / not-lc read off the graph shape alone."""
    if isinstance(shape, Chain):
        return "lt"
    if isinstance(shape, (ForkedChain, Cycle, EllipticVertex)):
        return "slc"
    if isinstance(shape, Star) and len(shape.arms) == 3:
        s = sum(Fraction(1, from_chain(a).r) for a in shape.arms)
        return "lt" if s > 1 else "slc" if s == 1 else "nlc"
    return "nlc"


def _delta_lc_status(cd: CodiscrepancyData) -> str:
    return "lt" if cd.maxcoeff < 1 else "slc" if cd.maxcoeff == 1 else "nlc"


def classify(g: DualGraph, cd: CodiscrepancyData | None = None) -> SingularityClass:
    if cd is None:
        # all pivots of the solve are positive, which already proves definiteness
        try:
            cd = codiscrepancy(g)
        except NotContractible:
            raise NotNegativeDefinite(
                f"intersection form is {is_negative_definite(g)}"
            ) from None
    shape = recognize_shape(g)
    by_shape, by_delta = _shape_lc_status(shape), _delta_lc_status(cd)
    if by_shape != by_delta:
        raise ClassificationConflict(f"{shape}: shape says {by_shape}, Delta says {by_delta}")
    if by_delta == "nlc":
        return SingularityClass("NotLogCanonical")
    if by_delta == "lt":
        if cd.maxcoeff == 0:
            sym = ade_symbol(shape)
            if sym is None:
                raise ClassificationConflict(f"{shape}: Delta = 0 but not an ADE graph")
            cyc = from_chain(shape.weights) if isinstance(shape, Chain) else None
            return SingularityClass("DuVal", ade=sym, cyclic=cyc, index=1)
        if isinstance(shape, Chain):
            return SingularityClass(
                "LogTerminalCyclic", cyclic=from_chain(shape.weights), index=cd.index,
                weights=shape.weights,
            )
        return SingularityClass("LogTerminalOther", index=cd.index)
    if isinstance(shape, EllipticVertex):
        _expect_index(cd, 1, shape)
        return SingularityClass("SimpleElliptic", index=1, n=shape.weight)
    if isinstance(shape, Cycle):
        _expect_index(cd, 1, shape)
        return SingularityClass("Cusp", index=1, weights=shape.weights)
    if isinstance(shape, ForkedChain):
        _expect_index(cd, 2, shape)
        return SingularityClass(
            "StrictLC2", dv_or_ndv="DV", index=2, weights=shape.spine,
            n=sum(w - 2 for w in shape.spine) + 2,
        )
    assert isinstance(shape, Star)
    rs, kind = star_arm_pattern(shape)
    idx = lcm(*rs)
    _expect_index(cd, idx, shape)
    return SingularityClass(
        "StrictLC", dv_or_ndv=kind if kind != "Other" else "Mixed", index=idx,
        n=shape.center, weights=tuple(rs), arms=tuple(from_chain(a) for a in shape.arms),
    )


def _expect_index(cd, idx, shape):
    if cd.index != idx:
        raise ClassificationConflict(f"{shape}: index {cd.index} from Delta, {idx} from shape")


def rationality(g: DualGraph, fc: FundamentalCycleData | None = None) -> bool:
    """Artin's criterion ``p_a(Z) == 0``; cross-checked against the index for strictly lc points."""
    fc = fc or fundamental_cycle(g)
    rational = fc.pa == 0
    cd = codiscrepancy(g)
    if cd.maxcoeff == 1 and rational != (cd.index > 1):
        raise ClassificationConflict("strictly lc: rational must coincide with index > 1")
    return rational


def _milnor_int(g, cd) -> int:
    mu = milnor_number(g, cd).value
    assert mu.denominator == 1
    return int(mu)


# index-2 spines with separate existence results, up to reversal
_NAMED_INDEX2 = {(4, 3), (3, 4), (3, 3, 3)}


def smoothability(g: DualGraph, cls: SingularityClass | None = None) -> Verdict:
    cd = codiscrepancy(g)
    cls = cls or classify(g, cd)
    tag = cls.tag
    if tag == "DuVal":
        return Verdict(SMOOTHABLE, "Du Val points are T-singularities", _milnor_int(g, cd))
    if tag == "LogTerminalCyclic":
        tp = t_singularity_params(cls.cyclic)
        if isinstance(tp, (TParams, DuValMarker)):
            return Verdict(
                SMOOTHABLE, "cyclic quotient with (q1+q2)^2 = 0 mod m (T-singularity)",
                _milnor_int(g, cd),
            )
        return Verdict(NOT_SMOOTHABLE, "cyclic quotient failing (q1+q2)^2 = 0 mod m")
    if tag == "LogTerminalOther":
        return Verdict(NOT_SMOOTHABLE, "non-cyclic log terminal point that is not Du Val")
    if tag == "StrictLC2":
        spine = cls.weights
        excess = sum(w - 3 for w in spine)
        if excess > 3:
            return Verdict(NOT_SMOOTHABLE, f"index 2 needs sum(n_i - 3) <= 3, got {excess}")
        mu = _milnor_int(g, cd)
        if len(spine) == 1 and spine[0] <= 6:
            return Verdict(SMOOTHABLE, "[n; [2]^4] with n <= 6 (simple elliptic cover)", mu)
        if sum(w - 2 for w in spine) <= 2:
            return Verdict(SMOOTHABLE, "index 2 with sum(n_i - 2) <= 2 (multiplicity 4)", mu)
        if spine in _NAMED_INDEX2:
            return Verdict(SMOOTHABLE, "[4,3; [2]^4] / [3,3,3; [2]^4] (de Jong-van Straten)", mu)
        return Verdict(UNKNOWN, "index 2 with sum(n_i - 3) <= 3: existence of a smoothing unknown")
    if tag == "StrictLC":
        if cls.dv_or_ndv != "nDV":
            return Verdict(
                NOT_SMOOTHABLE, f"index {cls.index} needs single-curve arms [n; [r1],[r2],[r3]]"
            )
        allowed = {3: {2, 3, 4}, 4: {2, 3}, 6: {2}}[cls.index]
        if cls.n in allowed:
            return Verdict(
                SMOOTHABLE, f"index {cls.index} with n in {sorted(allowed)}", _milnor_int(g, cd)
            )
        return Verdict(
            NOT_SMOOTHABLE, f"index {cls.index} needs n in {sorted(allowed)} (mu = 13 - n - sum r_i >= 0)"
        )
    if tag == "SimpleElliptic":
        if cls.n <= 9:
            return Verdict(SMOOTHABLE, "simple elliptic of degree <= 9")
        return Verdict(NOT_SMOOTHABLE, "simple elliptic of degree > 9 (mult <= 9 fails)")
    if tag == "Cusp":
        fc = fundamental_cycle(g)
        bound = len(g) + 9
        if fc.mult > bound:
            return Verdict(NOT_SMOOTHABLE, f"cusp with mult {fc.mult} > curves + 9 = {bound}")
        return Verdict(UNKNOWN, f"cusp with mult {fc.mult} <= curves + 9 = {bound}")
    # not log canonical
    fc = fundamental_cycle(g)
    if fc.rational and cd.K2.denominator != 1:
        return Verdict(NOT_SMOOTHABLE, "rational point with non-integral K^2")
    return Verdict(UNKNOWN, "not log canonical: outside the classification")


@dataclass(frozen=True)
class SingularityReport:
    graph: DualGraph
    shape: GraphShape
    definiteness: str
    codiscrepancy: Optional[CodiscrepancyData] = None
    fundamental: Optional[FundamentalCycleData] = None
    milnor: Optional[MilnorData] = None
    milnor_qualifier: str = "invalid"
    cover: Optional[CoverData] = None
    klass: Optional[SingularityClass] = None
    verdict: Optional[Verdict] = None
    rational: Optional[bool] = None
    c_anticanonical: Optional[Fraction] = None


def analyze(g: DualGraph) -> SingularityReport:
    """Every invariant the package knows for one graph; raises NotNegativeDefinite if not contractible."""
    shape = recognize_shape(g)
    definiteness = is_negative_definite(g)
    if definiteness != "Definite":
        raise NotNegativeDefinite(f"intersection form is {definiteness}")
    cd = codiscrepancy(g)
    fc = fundamental_cycle(g)
    cls = classify(g, cd)
    verdict = smoothability(g, cls)
    rational = rationality(g, fc)
    mil = milnor_number(g, cd)
    if not rational or verdict.status == NOT_SMOOTHABLE:
        qualifier = "invalid"
    elif verdict.status == SMOOTHABLE:
        qualifier = "valid"
    else:
        qualifier = "conditional"
    cover = None
    if cls.tag in ("StrictLC2", "StrictLC") and cls.dv_or_ndv in ("DV", "nDV"):
        cover = index_one_cover_K2(shape, cls.dv_or_ndv, cls.index, cls.n)
    c_val = None
    if rational and cd.log_canonical:
        c_val = c_anticanonical(g, cd)
    return SingularityReport(
        g, shape, definiteness, cd, fc, mil, qualifier, cover, cls, verdict, rational, c_val
    )
