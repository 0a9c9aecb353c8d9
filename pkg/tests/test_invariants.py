from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from resgraph.graph_core import (
    Chain,
    ForkedChain,
    NotContractible,
    Star,
    chain,
    cycle,
    elliptic,
    forked_chain,
    is_negative_definite,
    recognize_shape,
    star,
)
from resgraph.hj import CyclicType, t_singularities, to_chain
from resgraph.invariants import (
    NonIntegral,
    ShapeMismatch,
    c_anticanonical,
    chain_delta_contribution,
    codiscrepancy,
    fundamental_cycle,
    index_one_cover_K2,
    k2_closed_form,
    milnor_number,
)
from strategies import graphs, sympy_delta

# Delta, K^2 and index frozen from an independent sympy LU solve of M a = b
DELTA_CASES = [
    (chain([2]), [0], 0, 1),
    (chain([3, 5, 2]), [F(3, 5), F(4, 5), F(2, 5)], -3, 5),
    (chain([3]), [F(1, 3)], F(-1, 3), 3),
    (chain([3, 2, 2]), [F(3, 7), F(2, 7), F(1, 7)], F(-3, 7), 7),
    (forked_chain([3]), [1, F(1, 2), F(1, 2), F(1, 2), F(1, 2)], -1, 2),
    (forked_chain([4, 3]), [1, 1] + [F(1, 2)] * 4, -3, 2),
    (forked_chain([3, 3, 3]), [1, 1, 1] + [F(1, 2)] * 4, -3, 2),
    (star(2, [[2], [3], [6]]), [1, F(1, 2), F(2, 3), F(5, 6)], -4, 6),
    (star(3, [[3], [3], [3]]), [1, F(2, 3), F(2, 3), F(2, 3)], -3, 3),
    (star(2, [[2], [4], [4]]), [1, F(1, 2), F(3, 4), F(3, 4)], -3, 4),
    (star(2, [[3], [3], [2, 2]]), [1, F(2, 3), F(2, 3), F(2, 3), F(1, 3)], F(-4, 3), 3),
    (star(2, [[2], [2, 2], [2, 2]]), [0] * 6, 0, 1),
    (cycle([2, 2, 3, 2]), [1, 1, 1, 1], -1, 1),
    (cycle([14, 2]), [1, 1], -12, 1),
    (elliptic(1), [1], -1, 1),
    (elliptic(3), [1], -3, 1),
]


@pytest.mark.parametrize("g, delta, k2, index", DELTA_CASES)
def test_codiscrepancy_frozen(g, delta, k2, index):
    cd = codiscrepancy(g)
    assert list(cd.delta.coeffs) == [F(x) for x in delta]
    assert cd.K2 == k2
    assert cd.index == index


@given(graphs())
def test_codiscrepancy_matches_sympy(g):
    if is_negative_definite(g) != "Definite":
        with pytest.raises(NotContractible):
            codiscrepancy(g)
        return
    cd = codiscrepancy(g)
    assert [F(int(x.p), int(x.q)) for x in sympy_delta(g)] == list(cd.delta.coeffs)


# Z frozen from an exhaustive search for the least Z >= 0 with Z.E_i <= 0
FC_CASES = [
    (forked_chain([4]), [1, 1, 1, 1, 1], -4),
    (forked_chain([3]), [2, 1, 1, 1, 1], -4),
    (forked_chain([3, 3]), [1] * 6, -4),
    (forked_chain([5, 2]), [1, 2, 1, 1, 1, 1], -5),
    (star(2, [[2], [2, 2], [2, 2]]), [3, 2, 2, 1, 2, 1], -2),
    (star(2, [[2], [2], [2]]), [2, 1, 1, 1], -2),
    (chain([3, 5, 2]), [1, 1, 1], -6),
    (star(2, [[2], [3], [6]]), [2, 1, 1, 1], -7),
    (star(3, [[3], [3], [3]]), [1, 1, 1, 1], -6),
]


@pytest.mark.parametrize("g, z, z2", FC_CASES)
def test_fundamental_cycle_frozen(g, z, z2):
    fc = fundamental_cycle(g)
    assert list(fc.Z.coeffs) == z
    assert fc.Z2 == z2 and fc.mult == -z2 and fc.pa == 0 and fc.rational


def test_fundamental_cycle_non_rational():
    fc = fundamental_cycle(cycle([2, 2, 3, 2]))
    assert fc.pa == 1 and not fc.rational and fc.mult == 2
    fc = fundamental_cycle(cycle([14, 2]))
    assert fc.Z2 == -12 and fc.mult == 12
    fc = fundamental_cycle(elliptic(5))
    assert fc.pa == 1 and fc.mult == 5


@given(graphs(max_vertices=7), st.randoms())
def test_fundamental_cycle_order_independent(g, rnd):
    if is_negative_definite(g) != "Definite":
        return
    order = list(range(len(g)))
    rnd.shuffle(order)
    a = fundamental_cycle(g).Z.as_dict()
    b = fundamental_cycle(g.relabel(order)).Z.as_dict()
    assert a == b


@given(st.lists(st.integers(2, 7), min_size=1, max_size=5))
def test_fork_k2_closed_form(spine):
    g = forked_chain(spine)
    if is_negative_definite(g) != "Definite":
        return
    assert codiscrepancy(g).K2 == k2_closed_form(ForkedChain(tuple(spine)))


STRICT_STARS = [
    ((3, 3, 3), [[3], [3], [3]], [[2, 2], [2, 2], [2, 2]]),
    ((2, 4, 4), [[2], [4], [4]], [[2], [2, 2, 2], [2, 2, 2]]),
    ((2, 3, 6), [[2], [3], [6]], [[2], [2, 2], [2, 2, 2, 2, 2]]),
]


@pytest.mark.parametrize("rs, ndv, dv", STRICT_STARS)
@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_star_k2_closed_forms(rs, ndv, dv, n):
    for arms, kind in [(ndv, "nDV"), (dv, "DV")]:
        g = star(n, arms)
        if is_negative_definite(g) != "Definite":
            continue
        shape = recognize_shape(g)
        expected = -(n - 2) if kind == "DV" else -(n - 9 + sum(rs))
        assert k2_closed_form(shape) == codiscrepancy(g).K2 == expected


def test_mixed_star_is_non_integral():
    g = star(2, [[3], [3], [2, 2]])
    v = k2_closed_form(recognize_shape(g))
    assert isinstance(v, NonIntegral) and v.value == codiscrepancy(g).K2 == F(-4, 3)
    with pytest.raises(ShapeMismatch):
        k2_closed_form(Chain((2, 2)))
    with pytest.raises(ShapeMismatch):
        k2_closed_form(Star(2, ((2,), (2,), (3,))))


@pytest.mark.parametrize("rs, ndv, dv", STRICT_STARS)
@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_chain_contributions_sum_to_k2(rs, ndv, dv, n):
    # K^2 = C^2 + sum over arms of (D^2 - C^2) when C has codiscrepancy 1
    for arms, kind in [(ndv, "SingleVertex"), (dv, "TwoChain")]:
        g = star(n, arms)
        if is_negative_definite(g) != "Definite":
            continue
        parts = [
            chain_delta_contribution("TwoChain", m=len(a)) if kind == "TwoChain"
            else chain_delta_contribution("SingleVertex", r=a[0])
            for a in arms
        ]
        assert codiscrepancy(g).K2 == -n + sum(parts)


@pytest.mark.parametrize("r", [2, 3, 4, 6])
def test_chain_contribution_single_vertex(r):
    assert chain_delta_contribution("SingleVertex", r=r) == F((r - 1) * (3 - r), r)
    with pytest.raises(ValueError):
        chain_delta_contribution("SingleVertex", r=1)
    with pytest.raises(ValueError):
        chain_delta_contribution("nope")


@pytest.mark.parametrize(
    "g, mu",
    [(chain([2, 2, 2]), 3), (forked_chain([4]), 3), (star(2, [[2], [3], [6]]), 0), (forked_chain([3]), 4)],
)
def test_milnor(g, mu):
    m = milnor_number(g)
    assert m.integral and m.value == mu


def test_milnor_non_integral():
    m = milnor_number(chain([3]))
    assert not m.integral and m.value == F(2, 3)


def test_t_singularity_milnor():
    for t in t_singularities(200):
        assert milnor_number(chain(to_chain(t.cyclic_type))).value == t.d - 1


def test_index_one_cover():
    c = index_one_cover_K2(ForkedChain((4,)), "DV", 2, 4)
    assert (c.minus_K2, c.mult, c.embdim) == (4, 4, 4)
    c = index_one_cover_K2(Star(3, ((3,), (3,), (3,))), "nDV", 3, 3)
    assert c.minus_K2 == 6
    with pytest.raises(ShapeMismatch):
        index_one_cover_K2(ForkedChain((4,)), "DV", 2, 5)
    with pytest.raises(ShapeMismatch):
        index_one_cover_K2(Star(3, ((3,), (3,), (3,))), "DV", 3, 3)
    with pytest.raises(ShapeMismatch):
        index_one_cover_K2(Chain((2,)), "DV", 2, 2)


@pytest.mark.parametrize(
    "g, c",
    [
        (forked_chain([3]), -1),
        (forked_chain([5, 2, 4]), -1),
        (star(3, [[2, 2], [2, 2], [2, 2]]), -1),
        (star(3, [[3], [3], [3]]), 0),
        (star(2, [[2], [3], [6]]), 0),
        (chain([4]), 0),
        (chain([3, 5, 2]), 0),
        (chain([2, 2]), 0),
        (chain([3]), F(-1, 3)),
    ],
)
def test_c_anticanonical(g, c):
    assert c_anticanonical(g) == c


def test_c_anticanonical_requires_rational():
    with pytest.raises(ValueError):
        c_anticanonical(cycle([2, 3]))
