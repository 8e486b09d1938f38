"""GF(2) linear algebra: ranks, inversion, substitution, Dickson form."""

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from boolfourier import (
    BooleanFunction,
    DependentInput,
    FamilySpec,
    Gf2Matrix,
    LinearMap,
    anf_of,
    apply_linear,
    complete_basis,
    deg2,
    generate,
    gf2_invert,
    gf2_rank,
    span_dim,
    wht,
)
from boolfourier.gf2 import dickson_matrix, echelon_pivots, solve_linear_system

from helpers import _independent, parity


# ---------------------------------------------------------------------------
# Rank / span.


def test_rank_frozen():
    assert gf2_rank([]) == 0
    assert gf2_rank([0]) == 0
    assert gf2_rank([1, 2, 3]) == 2
    assert gf2_rank([1, 2, 4]) == 3
    assert span_dim([5, 3, 6]) == 2  # 5 ^ 3 = 6


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 255), max_size=6))
def test_rank_matches_elimination_oracle(masks):
    nz = [m for m in masks if m]
    r = gf2_rank(masks)
    assert 0 <= r <= len(nz)
    # rank == size of a maximal independent subset found greedily
    best = 0
    for size in range(len(nz), 0, -1):
        import itertools

        if any(_independent(c) for c in itertools.combinations(nz, size)):
            best = size
            break
    assert r == best


def test_echelon_pivots():
    ech, pivots = echelon_pivots([3, 1])
    assert sorted(pivots) == [0, 1]
    assert gf2_rank(ech) == 2


# ---------------------------------------------------------------------------
# Matrix inversion and solving.


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.randoms(use_true_random=False))
def test_invert_roundtrip(n, rng):
    rows = [rng.getrandbits(n) for _ in range(n)]
    mat = Gf2Matrix(rows, n)
    inv = gf2_invert(mat)
    if gf2_rank(rows) < n:
        assert inv is None
        return
    assert inv is not None
    # row i of mat * inv == e_i
    for i in range(n):
        acc = 0
        for j in range(n):
            if (rows[i] >> j) & 1:
                acc ^= inv.rows[j]
        assert acc == 1 << i


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.randoms(use_true_random=False))
def test_solve_linear_system(n, rng):
    rows = [rng.getrandbits(n) or 1 for _ in range(min(n, 3))]
    x = rng.getrandbits(n)
    rhs = [parity(r & x) for r in rows]
    sol = solve_linear_system(rows, rhs, n)
    assert sol is not None
    assert all(parity(r & sol) == b for r, b in zip(rows, rhs))


def test_solve_inconsistent():
    # x1 = 0 and x1 = 1 cannot both hold
    assert solve_linear_system([1, 1], [0, 1], 2) is None


# ---------------------------------------------------------------------------
# Basis completion and linear substitution.


def test_complete_basis_prefix():
    lm = complete_basis([3, 4], 3)
    cols = lm.forward.rows
    assert cols[0] == 3 and cols[1] == 4
    assert gf2_rank(cols) == 3


def test_complete_basis_dependent():
    with pytest.raises(DependentInput):
        complete_basis([3, 3], 3)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(1, 5))
def test_apply_linear_preserves_spectral_profile(data, n):
    f = BooleanFunction.from_int(
        n, data.draw(st.integers(0, (1 << (1 << n)) - 1))
    )
    rows = data.draw(
        st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n)
    )
    assume(gf2_rank(rows) == n)
    g = apply_linear(f, LinearMap(Gf2Matrix(rows, n)))
    sf, sg = wht(f), wht(g)
    assert sf.l0() == sg.l0()
    assert sf.l1_num() == sg.l1_num()
    assert sorted(sf.coeffs.values()) == sorted(sg.coeffs.values())
    assert deg2(f) == deg2(g)


def test_apply_linear_identity():
    f = generate(FamilySpec("majority", {"n": 3}))
    ident = LinearMap(Gf2Matrix([1, 2, 4], 3))
    assert np.array_equal(apply_linear(f, ident).table, f.table)


# ---------------------------------------------------------------------------
# Dickson matrix of a quadratic.


def test_dickson_bent_ip_frozen():
    ip4 = generate(FamilySpec("bent_ip", {"k": 4}))
    mat = dickson_matrix(anf_of(ip4))
    assert mat.rows == [2, 1, 8, 4]  # coupling x1<->x2, x3<->x4
    assert gf2_rank(mat.rows) == 4


@pytest.mark.parametrize("k,expected_rank", [(2, 2), (4, 4), (6, 6)])
def test_dickson_rank_of_bent(k, expected_rank):
    f = generate(FamilySpec("bent_ip", {"k": k}))
    assert gf2_rank(dickson_matrix(anf_of(f)).rows) == expected_rank


def test_dickson_symmetric_zero_diagonal():
    maj = generate(FamilySpec("majority", {"n": 3}))
    mat = dickson_matrix(anf_of(maj))
    n = 3
    for i in range(n):
        assert not (mat.rows[i] >> i) & 1  # zero diagonal
        for j in range(n):
            assert ((mat.rows[i] >> j) & 1) == ((mat.rows[j] >> i) & 1)
