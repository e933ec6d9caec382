import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from khpotts.homology import (GF2, BigradedComplex, SparseMatrix, graded_euler_characteristic, homology,
                              normalize_ring, prime_power_factors, rank_gf2, smith_normal_form)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def determinantal_divisors(rows):
    """d_k = gcd of all k x k minors; invariants are d_k / d_(k-1)."""
    m = Matrix(rows)
    out = []
    prev = 1
    for k in range(1, min(m.shape) + 1):
        g = 0
        for rs in itertools.combinations(range(m.shape[0]), k):
            for cs in itertools.combinations(range(m.shape[1]), k):
                g = math.gcd(g, int(m.extract(list(rs), list(cs)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariants == (1, 6)
    zero = smith_normal_form([[0, 0], [0, 0]])
    assert zero.invariants == () and zero.rank == 0
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariants == (1, 1, 1)


@settings(max_examples=300)
@given(matrices)
def test_snf_matches_determinantal_divisors(rows):
    snf = smith_normal_form(rows)
    assert list(snf.invariants) == determinantal_divisors(rows)
    assert snf.rank == Matrix(rows).rank()


@settings(max_examples=100)
@given(matrices)
def test_snf_matches_sympy(rows):
    diag = sympy_snf(Matrix(rows), domain=ZZ)
    expected = [abs(int(diag[i, i])) for i in range(min(diag.shape)) if diag[i, i] != 0]
    assert list(smith_normal_form(rows).invariants) == sorted(expected)


@settings(max_examples=300)
@given(matrices)
def test_rank_gf2_matches_brute_force(rows):
    reduced = [[x % 2 for x in row] for row in rows]
    n_cols = len(rows[0])
    # rank = log2 of the number of distinct GF(2) combinations of the rows
    spans = {tuple([0] * n_cols)}
    for row in reduced:
        spans |= {tuple((a + b) % 2 for a, b in zip(s, row)) for s in spans}
    assert 2 ** rank_gf2(SparseMatrix.from_dense(rows)) == len(spans)


def test_prime_power_factors():
    assert sorted(prime_power_factors(12)) == [3, 4]
    assert prime_power_factors(1) == []
    assert sorted(prime_power_factors(360)) == [5, 8, 9]


def test_sparse_matmul_matches_dense():
    rng = random.Random(1)
    for _ in range(30):
        a = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        b = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(4)]
        prod = (SparseMatrix.from_dense(a) @ SparseMatrix.from_dense(b)).to_dense()
        assert prod == (Matrix(a) * Matrix(b)).tolist()


def two_term(rows):
    """Complex Z^c -> Z^r in degrees 0 -> 1, one j-grade."""
    m = SparseMatrix.from_dense(rows)
    bases = {(0, 0): list(range(m.n_cols)), (1, 0): list(range(m.n_rows))}
    return BigradedComplex("Z", bases, {(0, 0): m})


def test_exact_complex_has_no_homology():
    cx = two_term([[1, 0], [0, 1]])
    assert homology(cx).nonzero_betti() == {}


def test_torsion_is_reported_in_prime_powers():
    h = homology(two_term([[2, 0], [0, 6]]))
    assert h.nonzero_betti() == {}
    assert h.torsion[(1, 0)] == (2, 2, 3)
    h2 = homology(two_term([[2, 0], [0, 6]]).with_ring(GF2))
    assert h2.nonzero_betti() == {(0, 0): 2, (1, 0): 2}


@settings(max_examples=100)
@given(matrices)
def test_euler_characteristic_of_chains_equals_homology(rows):
    cx = two_term(rows)
    assert graded_euler_characteristic(cx) == graded_euler_characteristic(homology(cx))


def test_ring_names():
    assert normalize_ring("z") == "Z" and normalize_ring("gf2") == GF2
    with pytest.raises(ValueError):
        normalize_ring("Q")
