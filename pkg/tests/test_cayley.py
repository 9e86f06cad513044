import random
import re

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from plateau import cayley
from plateau.boolfun import BooleanFunction, anf_to_function, from_truth_table, parse_anf, weight
from plateau.cayley import CertificateMethod
from plateau.errors import CertificateFailure, InputError, LoopedGraph, TooLargeForDense
from plateau.transform import SpectrumKind, SpectrumVector, fourier

from oracles import bfs_components, dense_adjacency, tt_of


def graph_of(text, n):
    return cayley.build(anf_to_function(parse_anf(text, n)))


def loop_free(n):
    for code in range(0, 1 << (1 << n), 2):
        yield BooleanFunction(n, tt_of(code, n))


def dot_edges(text):
    return [line for line in text.splitlines() if "--" in line]


# --- build / adjacency ------------------------------------------------------------

def test_build_majority(majority):
    g = cayley.build(majority)
    assert g.support == {0b011, 0b101, 0b110, 0b111}
    assert g.degree == 4 and g.order == 8


def test_build_x1():
    g = graph_of("x1", 2)
    assert g.support == {0b10, 0b11} and g.degree == 2


def test_build_empty(zero3):
    g = cayley.build(zero3)
    assert g.support == frozenset() and g.degree == 0


def test_looped_graph_refused():
    with pytest.raises(LoopedGraph):
        cayley.build(from_truth_table("1000"))
    with pytest.raises(LoopedGraph):
        cayley.from_support(2, [0, 3])
    with pytest.raises(InputError):
        cayley.from_support(2, [4])


def test_single_generator_is_a_matching():
    A = cayley.adjacency_matrix(cayley.from_support(2, [0b11]))
    assert A.tolist() == [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def test_majority_row_sums(majority):
    A = cayley.adjacency_matrix(cayley.build(majority))
    assert A.row_sums() == [4] * 8
    assert A.is_symmetric()


def test_empty_support_zero_matrix(zero3):
    assert cayley.adjacency_matrix(cayley.build(zero3)).tolist() == [[0] * 8 for _ in range(8)]


def test_dense_limit(monkeypatch):
    g = cayley.from_support(9, [1])
    with pytest.raises(TooLargeForDense):
        cayley.adjacency_matrix(g)
    assert cayley.adjacency_matrix(g, limit=9).dimension == 512
    monkeypatch.setenv("PLATEAU_DENSE_LIMIT", "2")
    with pytest.raises(TooLargeForDense):
        cayley.adjacency_matrix(cayley.from_support(3, [1]))
    monkeypatch.setenv("PLATEAU_DENSE_LIMIT", "13")
    with pytest.raises(InputError):
        cayley.dense_limit()
    monkeypatch.setenv("PLATEAU_DENSE_LIMIT", "many")
    with pytest.raises(InputError):
        cayley.dense_limit()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_adjacency_matches_oracle_and_sums(n):
    for f in loop_free(n):
        g = cayley.build(f)
        A = cayley.adjacency_matrix(g)
        assert A.tolist() == dense_adjacency(n, g.support)
        assert A.row_sums() == [weight(f)] * (1 << n)
        assert (A.entries.sum(axis=0) == weight(f)).all()


@pytest.mark.parametrize("n", range(1, 9))
def test_dyadic_property(n):
    rng = random.Random(n)
    tt = [0] + [rng.getrandbits(1) for _ in range((1 << n) - 1)]
    A = cayley.adjacency_array(cayley.build(BooleanFunction(n, tt)))
    idx = np.arange(1 << n)
    for c in range(1 << n):
        assert np.array_equal(A, A[np.ix_(idx ^ c, idx ^ c)])


# --- connectivity -----------------------------------------------------------------

def test_components_examples(majority):
    assert len(cayley.connected_components(cayley.build(majority))) == 1
    assert cayley.is_connected(graph_of("x1", 2))
    comps = cayley.connected_components(cayley.from_support(2, [0b11]))
    assert comps == [[0b00, 0b11], [0b01, 0b10]]


def test_empty_support_singletons(zero3):
    assert cayley.connected_components(cayley.build(zero3)) == [[v] for v in range(8)]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_components_match_bfs(n):
    for f in loop_free(n):
        g = cayley.build(f)
        comps = cayley.connected_components(g)
        assert sorted(comps) == bfs_components(n, g.support)
        assert len(comps) == 1 << (n - cayley.rank(g))
        assert cayley.is_connected(g) == (len(comps) == 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_translation_isomorphisms(n):
    for f in loop_free(n):
        g = cayley.build(f)
        comps = cayley.connected_components(g)
        for other in comps[1:]:
            c = cayley.translation_isomorphism(g, comps[0], other)
            assert sorted(x ^ c for x in comps[0]) == other


def test_translation_isomorphism_rejects_non_coset():
    g = cayley.from_support(2, [0b11])
    with pytest.raises(CertificateFailure):
        cayley.translation_isomorphism(g, [0, 3], [1, 3])


@given(st.lists(st.integers(1, 63), max_size=8))
def test_span_basis_has_distinct_leading_bits(vectors):
    basis = cayley.span_basis(vectors)
    leads = [b.bit_length() for b in basis]
    assert len(set(leads)) == len(leads)
    assert set(cayley.span(basis)) >= set(vectors) | {0}
    assert len(cayley.span(basis)) == 1 << len(basis)


# --- spectrum ---------------------------------------------------------------------

def test_majority_spectrum(majority):
    cert = cayley.spectrum(cayley.build(majority), fourier(majority))
    assert cert.eigenvalues == {4: 1, 2: 1, 0: 3, -2: 3}
    assert cert.method is CertificateMethod.DENSE and cert.characters_checked == 8


def test_empty_spectrum(zero3):
    assert cayley.spectrum(cayley.build(zero3), fourier(zero3)).eigenvalues == {0: 8}


def test_complete_graph_spectrum():
    f = from_truth_table("0111")
    assert cayley.spectrum(cayley.build(f), fourier(f)).eigenvalues == {3: 1, -1: 3}


def test_character_matrix_is_hadamard():
    for n in range(1, 6):
        H = cayley.character_matrix(n)
        assert np.array_equal(H @ H.T, (1 << n) * np.eye(1 << n, dtype=np.int64))
        assert np.array_equal(H[:, 5 % (1 << n)], cayley.character(n, 5 % (1 << n)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dense_certificate_exhaustive(n):
    for f in loop_free(n):
        cert = cayley.spectrum(cayley.build(f), fourier(f))
        assert cert.characters_checked == 1 << n
        assert sum(cert.eigenvalues.values()) == 1 << n


def test_sampled_certificate_above_limit():
    rng = random.Random(9)
    f = BooleanFunction(9, [0] + [rng.getrandbits(1) for _ in range(511)])
    cert = cayley.spectrum(cayley.build(f), fourier(f), limit=8, samples=16, seed=1)
    assert cert.method is CertificateMethod.SAMPLED
    assert 1 < cert.characters_checked <= 17


def test_sampled_and_dense_agree(figure_function):
    g = cayley.build(figure_function)
    four = fourier(figure_function)
    dense = cayley.spectrum(g, four)
    sampled = cayley.spectrum(g, four, limit=0, samples=32)
    assert dense.eigenvalues == sampled.eigenvalues


def test_wrong_spectrum_rejected(majority):
    g = cayley.build(majority)
    bad = SpectrumVector(3, SpectrumKind.FOURIER, [4, -2, -2, 0, -2, 0, 2, 0])
    with pytest.raises(CertificateFailure):
        cayley.spectrum(g, bad)
    with pytest.raises(CertificateFailure):
        cayley.spectrum(g, bad, limit=0, samples=64)
    with pytest.raises(CertificateFailure):
        cayley.spectrum(g, SpectrumVector(3, SpectrumKind.FOURIER, [3, -2, -2, 0, -2, 0, 0, 2]))
    with pytest.raises(InputError):
        cayley.spectrum(g, SpectrumVector(3, SpectrumKind.WALSH_HADAMARD, [0] * 8))


# --- export -----------------------------------------------------------------------

def test_dot_matching():
    text = cayley.export_dot(cayley.from_support(2, [0b11]))
    assert text.startswith("graph G_f {")
    assert len(re.findall(r'^  "\w+";$', text, re.M)) == 4
    assert dot_edges(text) == ['  "00" -- "11";', '  "01" -- "10";']


def test_dot_majority(majority):
    text = cayley.export_dot(cayley.build(majority), labels="integer")
    assert len(dot_edges(text)) == 16
    assert '  "0" -- "3";' in text


def test_dot_figure_function(figure_function):
    text = cayley.export_dot(cayley.build(figure_function))
    assert len(re.findall(r'^  "[01]{5}";$', text, re.M)) == 32
    assert len(dot_edges(text)) == 32 * weight(figure_function) // 2 == 192
    assert cayley.export_dot(cayley.build(figure_function)) == text


def test_dot_limits():
    with pytest.raises(TooLargeForDense):
        cayley.export_dot(cayley.from_support(11, [1]))
    with pytest.raises(InputError):
        cayley.export_dot(cayley.from_support(2, [1]), labels="hex")


def test_adjacency_csv(majority):
    rows = cayley.adjacency_csv(cayley.build(majority)).splitlines()
    assert len(rows) == 8
    assert all(sum(map(int, r.split(","))) == 4 for r in rows)
