import subprocess
import sys
from array import array
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from multipath import _kernels_py, kernels
from multipath.fields import GF, QQ
from multipath.homology import (_markowitz_order, _csr, induced_rank, kernel_basis, apply, rank,
                                rank_fraction_free, rank_mod_p, rank_multimodular)
from multipath.sparse import SparseMatrix

from oracles import dense_rank

small_ints = st.integers(-4, 4)


@st.composite
def matrices(draw, max_dim=8, values=small_ints):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(values, min_size=c, max_size=c), min_size=r, max_size=r))
    return rows


def to_sparse(rows, fld):
    return SparseMatrix.from_entries(len(rows), len(rows[0]), fld,
                                     [(i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v])


@given(matrices())
def test_rational_routes_agree_with_dense(rows):
    m = to_sparse(rows, QQ)
    want = dense_rank(rows)
    assert rank_multimodular(m) == want
    assert rank_fraction_free(m) == want
    assert rank(m) == want


@given(matrices(values=st.fractions(-3, 3, max_denominator=4)))
def test_fraction_entries(rows):
    m = to_sparse(rows, QQ)
    assert rank_multimodular(m) == rank_fraction_free(m) == dense_rank(rows)


@given(matrices(max_dim=6, values=st.integers(-10**12, 10**12)))
def test_large_entries(rows):
    m = to_sparse(rows, QQ)
    assert rank_multimodular(m) == dense_rank(rows)


@given(matrices(), st.sampled_from([2, 3, 5, 7, 2**31 - 1]))
def test_modular_rank(rows, p):
    m = to_sparse(rows, GF(p))
    assert rank(m) == rank_mod_p(m, p) == dense_rank(rows, p)


def test_rank_drops_mod_p():
    rows = [[1, 1], [1, 4]]
    assert rank(to_sparse(rows, QQ)) == 2
    assert rank(to_sparse(rows, GF(3))) == 1


def test_multimodular_certificate_beyond_one_prime():
    # determinant is a product of two primes just below 2**31
    p, q = 2147483647, 2147483629
    rows = [[p, 0], [0, q]]
    assert rank_multimodular(to_sparse(rows, QQ)) == 2


@given(matrices(), st.sampled_from([2, 5, 65521]))
def test_compiled_and_python_kernels_agree(rows, p):
    if not kernels.COMPILED:
        pytest.skip("compiled kernel not built")
    from multipath import _kernels
    ordered, colmap = _markowitz_order([{j: v for j, v in enumerate(r) if v % p} for r in rows])
    if not ordered:
        return
    indptr, indices, values = _csr(ordered, colmap, p)
    a = _kernels.rank_mod_p(len(colmap), indptr, indices, values, p)
    b = _kernels_py.rank_mod_p(len(colmap), array("q", indptr), array("q", indices), array("q", values), p)
    assert a == b == dense_rank(rows, p)


def test_pure_python_backend_selected_by_env():
    code = "from multipath import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"MULTIPATH_PURE_PYTHON": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_empty_and_zero_matrices():
    assert rank(SparseMatrix.zeros(0, 3, QQ)) == 0
    assert rank(SparseMatrix.zeros(3, 3, QQ)) == 0
    assert rank(SparseMatrix.identity(5, GF(7))) == 5


@settings(max_examples=50)
@given(matrices(max_dim=6), st.sampled_from([QQ, GF(5)]))
def test_kernel_basis(rows, fld):
    m = to_sparse(rows, fld)
    basis = kernel_basis(m)
    assert len(basis) == m.ncols - rank(m)
    assert all(not apply(m, v) for v in basis)


def test_induced_rank_identity_and_zero():
    # complex 0 -> K -> 0 and the identity on it
    eye = SparseMatrix.identity(1, QQ)
    zero_in = SparseMatrix.zeros(1, 0, QQ)
    zero_out = SparseMatrix.zeros(0, 1, QQ)
    assert induced_rank(eye, zero_out, zero_in) == 1
    assert induced_rank(SparseMatrix.zeros(1, 1, QQ), zero_out, zero_in) == 0


def test_sparse_algebra():
    a = SparseMatrix.from_entries(2, 2, QQ, [(0, 0, 1), (0, 1, 2), (1, 1, Fraction(1, 2))])
    assert a.to_dense() == [[1, 2], [0, Fraction(1, 2)]]
    assert (a @ SparseMatrix.identity(2, QQ)) == a
    assert (a - a).is_zero()
    assert a.transpose().transpose() == a
    assert a.scaled(2).to_dense() == [[2, 4], [0, 1]]
    assert a.entries() == [(0, 0, 1), (0, 1, 2), (1, 1, Fraction(1, 2))]


SCRIPT = """
from multipath.algebra import dual_numbers
from multipath.complex import build_multipath_complex
from multipath.digraph import h_graph, polygon
from multipath.fields import GF, QQ
from multipath.homology import betti
print([betti(build_multipath_complex(g, dual_numbers(), fld=f))
       for g in (h_graph(), polygon(3)) for f in (QQ, GF(2))])
"""


def test_backends_agree_end_to_end():
    outs = []
    for env in ({}, {"MULTIPATH_PURE_PYTHON": "1"}):
        res = subprocess.run([sys.executable, "-c", SCRIPT], env={"PATH": "", **env},
                             capture_output=True, text=True, check=True)
        outs.append(res.stdout)
    assert outs[0] == outs[1]
