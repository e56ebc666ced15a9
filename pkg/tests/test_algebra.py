import itertools
from math import gcd, prod

import pytest
from hypothesis import given, settings, strategies as st

from graphlink.algebra import (
    NovikovModule, cokernel, determinant, integer_kernel_basis, smith_normal_form,
)


def minors_gcd(matrix, size):
    rows, cols = len(matrix), len(matrix[0])
    g = 0
    for rs in itertools.combinations(range(rows), size):
        for cs in itertools.combinations(range(cols), size):
            g = gcd(g, determinant([[matrix[r][c] for c in cs] for r in rs]))
    return g


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@pytest.mark.parametrize("matrix, factors", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[6]], [6]),
    ([[0, 4, 6]], [2]),
])
def test_smith_examples(matrix, factors):
    assert smith_normal_form(matrix) == factors


@pytest.mark.parametrize("matrix, module", [
    ([[6]], NovikovModule(0, (6,))),
    ([[0]], NovikovModule(1)),
    ([[1, 0], [0, 4]], NovikovModule(0, (4,))),
    ([[2, 0], [0, 3]], NovikovModule(0, (6,))),
    ([[1, 2, 3]], NovikovModule(2)),
    ([[2], [4]], NovikovModule(0, (2,))),
    ([], NovikovModule(0)),
])
def test_cokernel_examples(matrix, module):
    assert cokernel(matrix) == module


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_matches_minors(matrix):
    factors = smith_normal_form(matrix)
    assert len(factors) == min(len(matrix), len(matrix[0]))
    running = 1
    for size, d in enumerate(factors, start=1):
        running *= d
        assert running == minors_gcd(matrix, size)
    nonzero = [d for d in factors if d]
    assert factors == nonzero + [0] * (len(factors) - len(nonzero))
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_smith_is_unimodular_invariant(matrix, rng):
    # add random multiples of one row to another and swap columns
    a = [row[:] for row in matrix]
    for _ in range(6):
        if len(a) > 1:
            i, j = rng.sample(range(len(a)), 2)
            k = rng.randint(-3, 3)
            a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        if len(a[0]) > 1:
            i, j = rng.sample(range(len(a[0])), 2)
            for row in a:
                row[i], row[j] = row[j], -row[i]
    assert smith_normal_form(a) == smith_normal_form(matrix)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_against_permutations(matrix):
    n = len(matrix)
    expected = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        expected += sign * prod(matrix[i][perm[i]] for i in range(n))
    assert determinant(matrix) == expected
    assert abs(expected) == prod(smith_normal_form(matrix))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_basis(matrix):
    ncols = len(matrix[0])
    basis = integer_kernel_basis(matrix, ncols)
    rank = len([d for d in smith_normal_form(matrix) if d])
    assert len(basis) == ncols - rank
    for vec in basis:
        assert any(vec) and gcd(*vec) == 1
        assert all(sum(a * x for a, x in zip(row, vec)) == 0 for row in matrix)


def test_module_rendering():
    assert str(NovikovModule(0)) == "0"
    assert str(NovikovModule(1, (6,))) == "Λ/(6) ⊕ Λ"
    assert str(NovikovModule(3, (2, 4))) == "Λ/(2) ⊕ Λ/(4) ⊕ Λ^3"
    assert NovikovModule(0).is_trivial and not NovikovModule(0, (2,)).is_trivial


@pytest.mark.parametrize("rank, torsion", [(-1, ()), (0, (1,)), (0, (4, 6))])
def test_module_rejects_bad_data(rank, torsion):
    with pytest.raises(ValueError):
        NovikovModule(rank, torsion)
