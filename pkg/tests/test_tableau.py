from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_sca.tableau import (
    Tableau,
    column_insert,
    combinatorial_R,
    count_rectangles,
    enumerate_tableaux,
    insert_word_by_rows,
    r_matrix,
    row_insert,
)

SMALL = [(r, l, n) for n in (1, 2, 3) for r in range(1, n + 1) for l in (1, 2, 3)]


def test_example_products_and_energies():
    b = Tableau.parse("112/223")
    assert combinatorial_R(b, 1, 2) == (2, Tableau.parse("111/223"), 0)
    assert str(column_insert(1, b)) == "1112/223"
    assert combinatorial_R(b, 3, 2) == (1, Tableau.parse("122/233"), 1)
    assert str(column_insert(3, b)) == "112/223/3"


def test_row_insert_bumps_into_longer_product():
    # inserting 1 into 112/223 by rows bumps a 2, which bumps a 3 into a new row
    assert str(row_insert(Tableau.parse("112/223"), 1)) == "111/222/3"


@pytest.mark.parametrize("r,l,n", SMALL)
def test_rectangle_count_matches_enumeration(r, l, n):
    assert len(enumerate_tableaux(r, l, n)) == count_rectangles(r, l, n)


@pytest.mark.parametrize("r,l,n", SMALL)
def test_R_is_a_bijection(r, l, n):
    rm = r_matrix(r, l, n)
    images = {rm.apply(b, c)[:2] for b in rm.tableaux for c in range(1, n + 2)}
    assert len(images) == len(rm) * (n + 1)
    assert images == {(c, b) for b in rm.tableaux for c in range(1, n + 2)}


@pytest.mark.parametrize("r,l,n", SMALL)
def test_product_shape_dichotomy(r, l, n):
    rm = r_matrix(r, l, n)
    low = (l + 1,) + (l,) * (r - 1)
    high = (l,) * r + (1,)
    for b, c in product(rm.tableaux, range(1, n + 2)):
        shape = column_insert(c, b).shape
        assert shape in (low, high)
        assert rm.apply(b, c)[2] == (1 if shape == high and low != high else 0)


@pytest.mark.parametrize("r,l,n", SMALL)
def test_column_insertion_equals_row_insertion_of_row_word(r, l, n):
    for b, c in product(enumerate_tableaux(r, l, n), range(1, n + 2)):
        assert column_insert(c, b) == insert_word_by_rows(Tableau(((c,),)), b.row_word())


@pytest.mark.parametrize("r,l,n", [(r, l, n) for n in (1, 2) for r in range(1, n + 1) for l in (1, 2)])
def test_two_letter_transport_preserves_plactic_class(r, l, n):
    # x (x) y reads as the word w(y) w(x); moving two letters through b keeps its class
    rm = r_matrix(r, l, n)
    for b, c1, c2 in product(rm.tableaux, range(1, n + 2), range(1, n + 2)):
        d1, b1, _ = rm.apply(b, c1)
        d2, b2, _ = rm.apply(b1, c2)
        before = insert_word_by_rows(Tableau(()), (c2, c1) + b.row_word())
        after = insert_word_by_rows(b2, (d2, d1))
        assert before == after


@given(st.lists(st.integers(1, 4), min_size=0, max_size=12))
def test_row_insertion_stays_semistandard(word):
    t = insert_word_by_rows(Tableau(()), word)
    assert t.is_semistandard() and t.size == len(word)
