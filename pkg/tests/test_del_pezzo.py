from fractions import Fraction

import pytest

from resgraph.del_pezzo import (
    I2,
    I3,
    I4,
    I6,
    II,
    TABLE,
    FiberType,
    RowParameterOutOfRange,
    assemble_row,
    derive_range,
    fiber_class,
    fiber_graph,
    verify_row,
    verify_theorem_main,
)
from resgraph.graph_core import (
    ForkedChain,
    Star,
    canonical_degrees,
    dot_with_curves,
    forked_chain,
    intersect,
    recognize_shape,
    star,
)
from resgraph.invariants import codiscrepancy


@pytest.mark.parametrize(
    "f, coeffs",
    [
        (I2, [1, 2, 1]),
        (I3, [1, 3, 2, 1]),
        (I4, [1, 4, 3, 2, 1]),
        (I6, [1, 6, 5, 4, 3, 2, 1]),
        # order a, b, c, d, then the (-1)-curve
        (II, [1, 2, 2, 1, 2]),
    ],
)
def test_fiber_class(f, coeffs):
    F = fiber_class(f)
    g = fiber_graph(f)
    assert list(F.coeffs) == coeffs
    assert all(x == 0 for x in dot_with_curves(g, F))
    assert intersect(g, F, F) == 0
    assert sum(c * k for c, k in zip(F.coeffs, canonical_degrees(g))) == -2
    assert len(g) == f.components
    assert sum(1 for v in g.vertices if v.weight == 1) == 1


def test_fiber_type_validation():
    with pytest.raises(ValueError):
        FiberType("I", 5)
    with pytest.raises(ValueError):
        FiberType("III")


def test_assemble_examples():
    g, extra, rho = assemble_row(2, 4)
    assert recognize_shape(g) == ForkedChain((4,)) and extra == ["A1"] * 4 and rho == 10
    g, extra, rho = assemble_row(5, 3)
    assert recognize_shape(g) == Star(3, ((3,), (3,), (3,))) and extra == ["A2"] * 3 and rho == 11
    g, extra, rho = assemble_row(7, 2)
    assert recognize_shape(g) == Star(2, ((2,), (3,), (6,))) and extra == ["A1", "A2", "A5"] and rho == 13
    g, extra, rho = assemble_row(1, 5)
    assert len(g) == 1 and g.vertices[0].genus == 1 and rho == 2 and extra == []
    g, _, _ = assemble_row(3, 5)
    assert recognize_shape(g) in (ForkedChain((5, 2, 2)), ForkedChain((2, 2, 5)))
    g, extra, _ = assemble_row(4, 7)
    assert recognize_shape(g) == ForkedChain((2, 2, 7, 2, 2)) and extra == []


def test_same_lattice_as_direct_builders():
    assert codiscrepancy(assemble_row(6, 3)[0]).K2 == codiscrepancy(star(3, [[2], [4], [4]])).K2
    assert codiscrepancy(assemble_row(2, 5)[0]).K2 == codiscrepancy(forked_chain([5])).K2


@pytest.mark.parametrize("row_id, n", [(4, 11), (4, 2), (2, 7), (7, 3), (1, 10), (1, 0), (8, 3), (0, 1)])
def test_out_of_range(row_id, n):
    with pytest.raises(RowParameterOutOfRange):
        assemble_row(row_id, n)


def test_verify_row_examples():
    v = verify_row(2, 4)
    assert (v.K2X, v.mu_sum, v.noether_sum, v.ok) == (2, 7, 10, True)
    v = verify_row(7, 2)
    assert (v.K2X, v.mu_sum, v.noether_sum, v.rhoY, v.ok) == (1, 8, 10, 13, True)
    v = verify_row(1, 9)
    assert v.ok and v.mu_sum is None and v.notes
    assert verify_row(3, 6).existence == "possibly empty"
    assert verify_row(3, 4).existence == "occurs"
    with pytest.raises(RowParameterOutOfRange):
        verify_row(4, 11)


def test_declared_rho_column():
    assert [r.rhoY for r in TABLE] == [2, 10, 10, 10, 11, 12, 13]


def test_every_cell():
    tv = verify_theorem_main()
    assert len({v.row_id for v in tv.rows}) == 7
    for v in tv.rows:
        assert v.ok, v
        assert v.K2X == v.K2X_lattice == TABLE[v.row_id - 1].K2X(v.n)
        assert v.rhoY == TABLE[v.row_id - 1].rhoY
        if v.row_id > 1:
            assert v.noether_sum == 10 and 10 - v.rhoY == v.K2X + codiscrepancy(v.o_graph).K2
        assert v.section_discrepancy == -1
    assert tv.ok


def test_derived_ranges():
    for r in TABLE:
        assert derive_range(r.row_id) == r.n_range
    assert derive_range(3)[1] == 8
    assert derive_range(1)[1] == 9
