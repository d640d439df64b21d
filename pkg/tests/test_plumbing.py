import itertools
import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mubar.exceptions import ConsistencyError, InputError
from mubar.plumbing import (
    IntersectionForm,
    analyze,
    aps_index,
    bareiss_determinant,
    build_plumbing,
    evaluate_continued_fraction,
    intersection_form,
    mubar_oracle,
    negative_continued_fraction,
    signature,
    symmetric_pivots,
    wu_class,
)
from mubar.seifert import enumerate_corpus, validate

E8 = IntersectionForm.from_rows(
    [
        [-2, 1, 1, 0, 1, 0, 0, 0],
        [1, -2, 0, 0, 0, 0, 0, 0],
        [1, 0, -2, 1, 0, 0, 0, 0],
        [0, 0, 1, -2, 0, 0, 0, 0],
        [1, 0, 0, 0, -2, 1, 0, 0],
        [0, 0, 0, 0, 1, -2, 1, 0],
        [0, 0, 0, 0, 0, 1, -2, 1],
        [0, 0, 0, 0, 0, 0, 1, -2],
    ]
)


def brute_wu_classes(Q):
    m = Q.dimension
    found = []
    for bits in itertools.product((0, 1), repeat=m):
        if all((sum(w * q for w, q in zip(bits, Q.matrix[i])) - Q.matrix[i][i]) % 2 == 0 for i in range(m)):
            found.append(bits)
    return found


def float_signature(Q):
    eig = np.linalg.eigvalsh(np.array(Q.matrix, dtype=float))
    return int(np.sum(eig > 1e-9) - np.sum(eig < -1e-9))


@pytest.mark.parametrize("a, b, expected", [(5, 4, [2, 2, 2, 2]), (7, 1, [7]), (3, 2, [2, 2]), (7, 3, [3, 2, 2]), (2, 1, [2])])
def test_negative_continued_fraction(a, b, expected):
    assert negative_continued_fraction(a, b) == expected


@pytest.mark.parametrize("a, b", [(4, 2), (3, 3), (3, 0), (3, 5)])
def test_negative_continued_fraction_rejects(a, b):
    with pytest.raises(InputError):
        negative_continued_fraction(a, b)


@given(st.integers(2, 500), st.integers(1, 499))
def test_continued_fraction_roundtrip(a, b):
    if not (b < a and math.gcd(a, b) == 1):
        return
    coeffs = negative_continued_fraction(a, b)
    assert all(c >= 2 for c in coeffs)
    assert evaluate_continued_fraction(coeffs) == Fraction(a, b)


def test_poincare_sphere_is_e8():
    G = build_plumbing(validate([2, 3, 5]))
    assert G.size == 8
    assert set(G.framings) == {-2}
    assert sorted(len(arm) for arm in G.arms) == [1, 2, 4]
    Q = intersection_form(G)
    assert bareiss_determinant(Q) == 1
    assert Q == E8
    assert signature(Q) == -8
    assert wu_class(Q).is_zero
    assert mubar_oracle(validate([2, 3, 5])) == -1
    assert aps_index(validate([2, 3, 5])) == 0


def test_sigma_2_3_7_plumbing():
    Y = validate([2, 3, 7])
    G = build_plumbing(Y)
    assert G.framings == (-1, -2, -3, -7)
    Q = intersection_form(G)
    assert Q.matrix == ((-1, 1, 1, 1), (1, -2, 0, 0), (1, 0, -3, 0), (1, 0, 0, -7))
    assert abs(bareiss_determinant(Q)) == 1
    assert signature(Q) == -4
    w = wu_class(Q)
    assert w.coords == (0, 1, 1, 1)
    assert w.square(Q) == -12
    assert mubar_oracle(Y) == 1
    assert aps_index(Y) == 0


def test_small_forms():
    Q = IntersectionForm.from_rows([[-1]])
    assert bareiss_determinant(Q) == -1
    assert signature(Q) == -1
    assert signature(IntersectionForm.from_rows([[1, 0], [0, -1]])) == 0
    assert signature(IntersectionForm.from_rows([[0, 1], [1, 0]])) == 0
    assert wu_class(IntersectionForm.from_rows([[3, 0, 0], [0, -1, 0], [0, 0, 5]])).coords == (1, 1, 1)


def test_rejects_asymmetric_matrix():
    with pytest.raises(InputError):
        IntersectionForm.from_rows([[1, 2], [0, 1]])


def test_singular_form_detected():
    with pytest.raises(ConsistencyError):
        signature(IntersectionForm.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(ConsistencyError):
        wu_class(IntersectionForm.from_rows([[2, 0], [0, 1]]))


def random_symmetric(rng, m, lo=-4, hi=4, density=0.5):
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            if i == j or rng.random() < density:
                rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return IntersectionForm.from_rows(rows)


def test_signature_matches_eigenvalues_on_random_forms():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        Q = random_symmetric(rng, rng.randint(1, 7))
        if bareiss_determinant(Q) == 0:
            continue
        assert signature(Q) == float_signature(Q)
        checked += 1


def test_pivot_determinant_matches_bareiss():
    rng = random.Random(11)
    for _ in range(200):
        Q = random_symmetric(rng, rng.randint(1, 7))
        det = bareiss_determinant(Q)
        if det == 0:
            continue
        piv = symmetric_pivots(Q)
        product = math.prod(piv.singles + piv.blocks)
        assert product == det


def test_zero_diagonal_forces_block_pivot():
    Q = IntersectionForm.from_rows([[0, 2, 1], [2, 0, 0], [1, 0, 0]])
    assert bareiss_determinant(Q) == 0
    Q = IntersectionForm.from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 3], [0, 0, 3, 0]])
    piv = symmetric_pivots(Q)
    assert len(piv.blocks) == 2
    assert signature(Q) == float_signature(Q) == 0


SMALL_CORPUS = [Y for Y in enumerate_corpus(3, 13)]


def test_wu_class_matches_enumeration():
    for Y in SMALL_CORPUS:
        Q = intersection_form(build_plumbing(Y))
        if Q.dimension > 14:
            continue
        assert brute_wu_classes(Q) == [wu_class(Q).coords]


def test_corpus_plumbings_against_oracles():
    for Y in SMALL_CORPUS:
        data = analyze(Y)
        Q = data.form
        assert data.determinant == bareiss_determinant(Q)
        assert abs(data.determinant) == 1
        assert data.negative_definite
        assert data.signature == float_signature(Q) == -Q.dimension
        assert (data.signature - data.wu_square) % 8 == 0
        assert G_is_star(data.graph, Y.n)


def G_is_star(G, n):
    degree = [0] * G.size
    for u, v in G.edges:
        degree[u] += 1
        degree[v] += 1
    if len(G.edges) != G.size - 1 or degree[G.center] != n:
        return False
    return sorted(v for arm in G.arms for v in arm) == list(range(1, G.size))


def test_arm_fractions_roundtrip():
    for Y in SMALL_CORPUS:
        G = build_plumbing(Y)
        from mubar.seifert import solve_coefficients

        b = solve_coefficients(Y)
        for ai, bi, arm in zip(Y.a, b, G.arms):
            coeffs = [-G.framings[v] for v in arm]
            assert evaluate_continued_fraction(coeffs) == Fraction(ai, (-bi) % ai)


def test_spin_iff_even_framings():
    for Y in SMALL_CORPUS:
        data = analyze(Y)
        all_even = all(f % 2 == 0 for f in data.graph.framings)
        assert data.wu.is_zero == all_even


def test_graph_serialisation():
    G = build_plumbing(validate([2, 3, 7]))
    payload = json.loads(G.to_json())
    assert payload == {"arms": [[1], [2], [3]], "center": 0, "framings": {"0": -1, "1": -2, "2": -3, "3": -7}}
    dot = G.to_dot()
    assert dot.startswith("graph plumbing {")
    assert '0 [label="-1"];' in dot
    assert "0 -- 3;" in dot
