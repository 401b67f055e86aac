from itertools import product

import pytest
from hypothesis import given, strategies as st

from affspringer.roots import AffineRoot, FiniteRoot, affine_root_positive
from affspringer.weyl import (AffineWeylElement, _scan_box, bruhat_interval_below,
                              bruhat_interval_by_reflections, bruhat_leq, bruhat_leq_fw,
                              elements_up_to_length, enumerate_F, finite_weyl_group,
                              in_fundamental_box, in_fundamental_box_by_vertices, is_min_coset_rep,
                              is_min_coset_rep_by_vertices, length, longest_box_element,
                              min_coset_rep, parse_element, reduced_word, reflection,
                              separating_hyperplanes, w0)

from conftest import elements

W = AffineWeylElement
S = W.simple_reflection


def brute_force_length(w, c=12):
    """Count hyperplanes <lam, e_i - e_j> = k strictly separating the two barycenters."""
    n = w.n
    p = [n - 1 - k for k in range(n)]  # n times the barycenter of A_0
    q = w.scaled_barycenter()
    count = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a, b = p[i - 1] - p[j - 1], q[i - 1] - q[j - 1]
            for k in range(-c, c + 1):
                if (a - n * k) * (b - n * k) < 0:
                    count += 1
    return count


# group law

def test_group_law_examples():
    a = W((2, 3, 1), (1, 0, -1))
    assert (a * a.inverse()).is_identity()
    assert W.translation((1, -1, 0)) * W.translation((2, 0, -2)) == W.translation((3, -1, -2))
    wbar, vbar = W.finite((2, 3, 1)), W.finite((3, 1, 2))
    mu, nu = (1, 0, -1), (0, 2, -2)
    lhs = (wbar * W.translation(mu)) * (vbar * W.translation(nu))
    shifted = vbar.unpermute(mu)
    assert lhs == (wbar * vbar) * W.translation(tuple(x + y for x, y in zip(shifted, nu)))


def test_rank_mismatch_rejected():
    with pytest.raises(ValueError):
        W.identity(2) * W.identity(3)
    with pytest.raises(ValueError):
        W((1, 2), (1, 0))


@given(elements(3), elements(3), elements(3))
def test_associativity_and_inverse(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity() and (a.inverse() * a).is_identity()


# actions

def test_action_on_roots_examples():
    r = AffineRoot(FiniteRoot(1, 2), 0)
    assert W.identity(2).act_on_affine_root(r) == r
    w = W.translation((1, -1))
    assert w.inverse_act_on_affine_root(r) == AffineRoot(FiniteRoot(1, 2), 2)
    assert w.act_on_affine_root(r).positive != (-w.act_on_affine_root(r)).positive


def test_action_on_vertices_examples():
    assert W.identity(2).act_on_vertex((3, 4)) == (3, 4)
    assert W.translation((1, -1)).act_on_vertex((0, 0)) == (1, -1)
    assert W.finite((2, 1)).act_on_vertex((1, 0)) == (0, 1)


@given(elements(3), elements(3), st.sampled_from([(1, 2), (2, 1), (1, 3), (3, 2)]), st.integers(-3, 3))
def test_root_action_is_a_group_action(a, b, ij, level):
    r = AffineRoot(FiniteRoot(*ij), level)
    assert (a * b).act_on_affine_root(r) == a.act_on_affine_root(b.act_on_affine_root(r))


@given(elements(3), st.sampled_from([(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]), st.integers(-3, 3))
def test_inverse_action_formula(w, ij, level):
    # w^{-1}(alpha + k delta) = wbar^{-1}(alpha) + (k + <mu, wbar^{-1}(alpha)>) delta
    alpha = FiniteRoot(*ij)
    winv = w.finite_part().inverse().perm
    pulled = FiniteRoot(winv[alpha.i - 1], winv[alpha.j - 1])
    expected = AffineRoot(pulled, level + pulled.pair(w.trans))
    assert w.inverse_act_on_affine_root(AffineRoot(alpha, level)) == expected


@given(elements(3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_root_action_matches_vertex_action(w, lam):
    # (w r)(w lam) = r(lam)
    r = AffineRoot(FiniteRoot(1, 3), 2)
    assert w.act_on_affine_root(r)(w.act_on_vertex(lam)) == r(lam)


# length and reduced words

def test_length_examples():
    assert length(W.identity(3)) == 0
    for n in (2, 3, 4):
        for i in range(n):
            assert length(S(n, i)) == 1
    assert length(W.translation((1, -1))) == 2


@given(elements(3, 6))
def test_length_matches_hyperplane_scan(w):
    assert length(w) == brute_force_length(w)
    assert len(separating_hyperplanes(w)) == length(w)


@given(elements(3, 6))
def test_reduced_word_round_trip(w):
    word = reduced_word(w)
    assert len(word) == length(w)
    assert W.from_word(3, word) == w


def test_reduced_word_examples():
    assert reduced_word(W.identity(3)) == ()
    for i in range(3):
        assert reduced_word(S(3, i)) == (i,)


@given(elements(3, 4), elements(3, 4))
def test_length_subadditive(a, b):
    assert length(a * b) <= length(a) + length(b)


def test_reflections_in_separating_hyperplanes_lower_length():
    for w in elements_up_to_length(3, 4):
        for beta in separating_hyperplanes(w):
            r = reflection(3, beta)
            assert (r * r).is_identity()
            assert length(r * w) < length(w)


# Bruhat order

def test_bruhat_examples():
    for w in elements_up_to_length(3, 4):
        assert bruhat_leq(W.identity(3), w)
        assert bruhat_leq(w, w)
    assert not bruhat_leq(S(2, 0), S(2, 1))
    assert bruhat_interval_below(W.identity(2)) == {W.identity(2)}
    assert bruhat_interval_below(S(2, 1)) == {W.identity(2), S(2, 1)}


def test_interval_matches_reflection_closure():
    for w in elements_up_to_length(3, 6):
        assert bruhat_interval_below(w) == bruhat_interval_by_reflections(w)


def test_bruhat_criteria_agree_on_min_reps():
    reps = [w for w in elements_up_to_length(3, 8) if is_min_coset_rep(w)]
    for y in reps:
        for w in reps:
            assert bruhat_leq(y, w) == bruhat_leq_fw(y, w), (y, w)


def test_bruhat_fw_rejects_non_min_reps():
    with pytest.raises(ValueError):
        bruhat_leq_fw(S(3, 1), W.identity(3))


# minimal coset representatives and the box

def test_min_coset_rep_examples():
    assert is_min_coset_rep(W.identity(3))
    for i in (1, 2):
        assert not is_min_coset_rep(S(3, i))


def test_min_coset_criteria_agree():
    for n, ell in ((2, 8), (3, 8), (4, 4)):
        for w in elements_up_to_length(n, ell):
            assert is_min_coset_rep(w) == is_min_coset_rep_by_vertices(w), w
            assert in_fundamental_box(w) == in_fundamental_box_by_vertices(w), w


@given(elements(3, 6))
def test_min_coset_rep_is_minimal_in_its_coset(w):
    rep = min_coset_rep(w)
    assert is_min_coset_rep(rep)
    coset = [z * w for z in finite_weyl_group(3)]
    assert rep in coset
    assert length(rep) == min(length(u) for u in coset)


def test_box_examples():
    assert in_fundamental_box(W.identity(3))
    assert enumerate_F(2) == [W.identity(2)]
    box2 = _scan_box(2, 2)
    assert box2 == [W.identity(2)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_box_is_window_stable_and_dominant(n):
    box = enumerate_F(n)
    assert sorted(box) == _scan_box(n, 16) == _scan_box(n, 32)
    for w in box:
        assert is_min_coset_rep(w)
        assert all(v[k] >= v[k + 1] for v in w.vertex_images() for k in range(n - 1))


def test_box_matches_vertex_scan():
    # the vertex form of the box conditions, scanned without the translation pre-filter
    for n in (2, 3, 4):
        brute = [w for mu in product(range(-3, 4), repeat=n) if sum(mu) == 0
                 for w in (W(p.perm, mu) for p in finite_weyl_group(n)) if in_fundamental_box_by_vertices(w)
                 and is_min_coset_rep_by_vertices(w)]
        assert sorted(brute) == sorted(enumerate_F(n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_longest_box_element(n):
    wf = longest_box_element(n)
    box = enumerate_F(n)
    assert wf in box
    assert length(wf) == max(length(w) for w in box)
    for x in box:
        assert length(wf) == length(x) + length(x.inverse() * wf)
    if n == 2:
        assert wf == W.identity(2)


def test_w0():
    assert w0(2).perm == (2, 1) and w0(3).perm == (3, 2, 1)
    for n in (2, 3, 4):
        assert (w0(n) * w0(n)).is_identity()
        assert length(w0(n)) == n * (n - 1) // 2


def test_parse_element_forms():
    w = W((2, 3, 1), (1, 0, -1))
    assert parse_element(w.encode()) == w
    assert parse_element("s0 s1", 3) == S(3, 0) * S(3, 1)
    assert parse_element("", 3) == W.identity(3)
    with pytest.raises(ValueError):
        parse_element("s1 s7", 3)
    with pytest.raises(ValueError):
        parse_element(w.encode(), 4)


def test_affine_positivity_is_preserved_only_on_right_elements():
    # a separating hyperplane of w is exactly a positive root sent negative by w^{-1}
    for w in elements_up_to_length(3, 5):
        neg = 0
        for ij in ((1, 2), (1, 3), (2, 3)):
            for k in range(-6, 7):
                r = AffineRoot(FiniteRoot(*ij), k)
                if affine_root_positive(r) and not w.inverse_act_on_affine_root(r).positive:
                    neg += 1
                r = AffineRoot(FiniteRoot(ij[1], ij[0]), k)
                if affine_root_positive(r) and not w.inverse_act_on_affine_root(r).positive:
                    neg += 1
        assert neg == length(w)
