import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_monochromatic
from thicklab import ramsey
from thicklab.ramsey import GridOracle, PairColoring


def test_constant_coloring_keeps_half():
    A, k = ramsey.ramsey_extract(PairColoring(10, 2, lambda i, j: 0))
    assert k == 0 and len(A) >= 5


def test_single_pair():
    assert ramsey.ramsey_extract(PairColoring(2, 2, lambda i, j: 1)) == ((0, 1), 1)


def test_parity_coloring():
    f = PairColoring(9, 2, lambda i, j: (i + j) % 2)
    A, k = ramsey.ramsey_extract(f)
    assert len(A) >= 2 and naive_monochromatic(f, A, k)


def test_too_small_ground():
    with pytest.raises(ValueError):
        ramsey.ramsey_extract(PairColoring(1, 2, lambda i, j: 0))


def test_guarantee_arithmetic():
    assert ramsey.ceil_log(729, 3) == 6
    assert ramsey.ceil_log(730, 3) == 7
    assert ramsey.size_guarantee(3 ** 8, 3) == 3


def test_constant_oracle_witness():
    w = ramsey.anti_thick_witness(ramsey.grid_oracle("constant:1", 16))
    assert w.color_set == {1}


def test_order_oracle_avoids_diagonal():
    w = ramsey.anti_thick_witness(ramsey.grid_oracle("order3", 81))
    assert w.color_set <= {0, 1}
    assert not set(w.K) & set(w.L)


def test_random_oracle_large():
    h = ramsey.grid_oracle("random:7", 729)
    w = ramsey.anti_thick_witness(h)
    assert w.K and w.L
    assert len({h(a, b) for a in w.K for b in w.L}) <= 2


def test_file_oracle(tmp_path):
    p = tmp_path / "h.json"
    p.write_text("[[0,1,1,1],[2,0,1,1],[2,2,0,1],[2,2,2,0]]")
    w = ramsey.anti_thick_witness(ramsey.grid_oracle(f"file:{p}", 4))
    assert w.color_set <= {1, 2}


def test_unknown_oracle():
    with pytest.raises(ValueError):
        ramsey.grid_oracle("nope", 4)


def test_witness_needs_three_colors():
    with pytest.raises(ValueError):
        ramsey.anti_thick_witness(GridOracle(8, 2, lambda i, j: 0))


@given(st.integers(2, 60), st.integers(2, 4), st.integers(0, 10 ** 6))
@settings(max_examples=150, deadline=None)
def test_extraction_is_monochromatic_and_meets_guarantee(m, c, seed):
    f = PairColoring(m, c, lambda i, j: ramsey.hashed_value(seed, i, j, c))
    A, k = ramsey.ramsey_extract(f)
    assert naive_monochromatic(f, A, k)
    assert len(A) >= ramsey.size_guarantee(m, c)


def test_constant_extraction_nondecreasing_in_m():
    sizes = [len(ramsey.ramsey_extract(PairColoring(m, 2, lambda i, j: 0))[0]) for m in range(2, 40)]
    assert sizes == sorted(sizes)
