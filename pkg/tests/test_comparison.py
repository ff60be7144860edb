import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bfs_members, brute_min_k, brute_n_comparison_fails
from oscomp import (
    INDUCED,
    DirectSum,
    Status,
    check_criteria_agreement,
    corpus,
    is_full_element,
    n_comparison,
    numerical,
    omega_surrogate,
    stable_dom_via_states,
    stably_dominated,
    tail_property_check,
)
from oscomp.comparison import sdom_decision
from oscomp.errors import BoundTooSmall, PreconditionViolated


# -- stable domination --------------------------------------------------------

def test_three_stably_below_four_at_k3(w2):
    cert = stably_dominated(w2, 3, 4)
    assert cert.k == 3 and cert.inner.x == 12 and cert.inner.y == 12 and cert.inner.witness == 0
    assert cert.replay(w2)


def test_zero_is_dominated_at_k1(w2):
    assert stably_dominated(w2, 0, 4).k == 1
    assert stably_dominated(w2, 0, 0).k == 1


def test_four_not_stably_below_three(w2):
    assert stably_dominated(w2, 4, 3, k_max=500) is None
    assert sdom_decision(w2, 4, 3) is False


@pytest.mark.parametrize("gens", [(2, 3), (3, 4), (4, 5), (3, 5, 7), (4, 6, 9)])
def test_min_k_matches_scan_oracle(gens):
    model = numerical(*gens, element_bound=3000)
    members = bfs_members(gens, 3000)
    elems = [v for v in sorted(members) if v <= 25]
    for x, y in itertools.product(elems, repeat=2):
        got = stably_dominated(model, x, y, k_max=60)
        want = brute_min_k(lambda d: d in members, x, y, 60)
        assert (got.k if got else None) == want, (x, y)


def test_induced_mode_closed_form():
    m = numerical(3, 4, order_mode=INDUCED, element_bound=500)
    cert = stably_dominated(m, 4, 6)
    # (k+1)4 <= 6k first at k = 2
    assert cert.k == 2 and cert.replay(m)
    assert stably_dominated(m, 6, 6) is None


def test_direct_sum_domination_is_componentwise(w1, w2):
    s = DirectSum((w1, w2))
    x = s.normalize([[0, 2], [1, 3]])
    y = s.normalize([[0, 3], [1, 4]])
    cert = stably_dominated(s, x, y)
    assert cert is not None and cert.replay(s)
    # smallest k good in both coordinates; k = 3 fails in W_1 (8 <= 9 needs 1)
    want = next(k for k in range(1, 50) if w1.leq_bool((k + 1) * 2, 3 * k) and w2.leq_bool((k + 1) * 3, 4 * k))
    assert cert.k == want == 6
    assert stably_dominated(s, x, s.normalize([[0, 3]])) is None


# -- tail property -------------------------------------------------------------

def test_tail_from_k0_for_w1(w1):
    assert tail_property_check(w1, 2, 3, 2)
    # k = 3 alone fails: 8 <= 9 needs 1 in W_1
    assert not w1.leq_bool(8, 9)


def test_tail_for_w2(w2):
    assert tail_property_check(w2, 3, 4, 3)


def test_tail_trivial_for_zero(w2):
    assert tail_property_check(w2, 0, 4, 1)


def test_tail_rejects_uncertified_base(w2):
    with pytest.raises(PreconditionViolated):
        tail_property_check(w2, 3, 4, 1)


# -- state criterion ------------------------------------------------------------

def test_state_value_three_quarters(w2):
    v = stable_dom_via_states(w2, 3, 4)
    assert v.status is Status.HOLDS and v.max_value == pytest.approx(0.75) and str(v.max_value) == "3/4"


def test_state_value_four_thirds(w2):
    v = stable_dom_via_states(w2, 4, 3)
    assert v.status is Status.FAILS and str(v.max_value) == "4/3"


def test_equal_elements_are_not_strictly_below(w2):
    v = stable_dom_via_states(w2, 4, 4)
    assert v.status is Status.FAILS and v.max_value == 1


def test_criteria_examples(w1, w2):
    assert check_criteria_agreement(w2, [(x, y) for x in range(21) for y in range(21)
                                       if w2.contains(x) and w2.contains(y)]).ok
    report = check_criteria_agreement(w1, [(0, 3), (2, 3)])
    assert [r.search_k for r in report.rows] == [1, 2]
    assert all(r.states.status is Status.HOLDS for r in report.rows)
    assert str(report.rows[1].states.max_value) == "2/3"


def test_criteria_on_direct_sum_and_affine():
    s = corpus.family_womega(2)
    elems = s.with_bound(8).enumerate(8)
    assert check_criteria_agreement(s, itertools.product(elems, repeat=2)).ok
    a = corpus.random_model(2, corpus.RandomModelParams(kind="affine", generators=3))
    elems = a.with_bound(5).enumerate(5)
    assert check_criteria_agreement(a, itertools.product(elems, repeat=2)).ok


# -- fullness -------------------------------------------------------------------

def test_fullness_examples(w1, w2):
    assert is_full_element(w2, 3)
    assert not is_full_element(w2, 0)
    pair = DirectSum((w1, w1))
    assert not is_full_element(pair, pair.normalize([[0, 2]]))
    assert is_full_element(pair, pair.normalize([[0, 2], [1, 2]]))


# -- n-comparison -----------------------------------------------------------------

def test_w2_fails_one_comparison_with_family_witness(w2):
    v = n_comparison(w2, 1, 40)
    assert v.status is Status.FAILS
    assert v.witness.x == 3 and v.witness.ys == (4, 4)
    assert v.verify(w2)


def test_w2_has_two_comparison(w2):
    assert n_comparison(w2, 2, 40).status is Status.HOLDS


def test_w1_is_not_almost_unperforated(w1):
    v = n_comparison(w1, 0, 30)
    assert v.status is Status.FAILS and v.witness.x == 2 and v.witness.ys == (3,)


def test_bound_too_small(w2):
    with pytest.raises(BoundTooSmall):
        n_comparison(w2, 1, 2)


@pytest.mark.parametrize("gens,n,bound", [((2, 3), 0, 14), ((2, 3), 1, 14), ((3, 4), 1, 14),
                                          ((3, 4), 2, 12), ((3, 5), 1, 12), ((4, 5, 7), 1, 12)])
def test_n_comparison_matches_product_oracle(gens, n, bound):
    model = numerical(*gens, element_bound=5000)
    v = n_comparison(model, n, bound)
    brute = brute_n_comparison_fails(gens, n, bound, k_max=40)
    assert (v.status is Status.FAILS) == (brute is not None)
    if brute is not None:
        assert v.witness.x == brute[0]


def test_weak_variant_on_direct_sum():
    s = corpus.family_womega(2)
    assert n_comparison(s, 1, 12, weak=True).status is Status.FAILS
    assert n_comparison(s, 2, 12, weak=True).status is Status.HOLDS


def test_womega_embeds_coordinate_witnesses():
    s = corpus.family_womega(3)
    v = n_comparison(s, 2, default_bound := corpus.default_report_bound(s))
    assert v.status is Status.FAILS and v.verify(s)
    # the witness lives in the W_3 coordinate (index 2)
    assert v.witness.x.terms == ((2, 4),)
    assert all(y.terms == ((2, 5),) for y in v.witness.ys)
    assert n_comparison(s, 3, default_bound).status is Status.HOLDS


def test_omega_surrogate_holds_on_womega():
    v = omega_surrogate(corpus.family_womega(3), 40)
    assert v.status is Status.HOLDS and v.note.startswith("algebraic surrogate")


@pytest.mark.parametrize("seed", range(4))
def test_monotone_hierarchy_on_random_models(seed):
    model = corpus.random_model(seed, corpus.RandomModelParams(kind="numerical", generators=3))
    statuses = [n_comparison(model, n, 40).status for n in range(4)]
    first_hold = next((i for i, s in enumerate(statuses) if s is Status.HOLDS), None)
    if first_hold is not None:
        assert all(s is Status.HOLDS for s in statuses[first_hold:])


def test_witnesses_replay_on_their_own(w2):
    v = n_comparison(w2, 1, 40)
    # replay uses only the stored certificates and the order test
    assert all(c.replay(w2) for c in v.witness.certificates)


# -- invariants ---------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(x=st.integers(0, 30), y=st.integers(0, 30), scale=st.integers(1, 4))
def test_scaling_invariance(x, y, scale):
    # y and scale*y dominate each other up to proportionality, so <_s agrees
    w2 = corpus.family_wn(2, element_bound=2000)
    if not (w2.contains(x) and w2.contains(y)) or y == 0:
        return
    a = sdom_decision(w2, x, y, k_max=200)
    b = sdom_decision(w2, x, scale * y, k_max=200)
    if a is not None and a is not False:
        assert b is not None and b is not False


@settings(max_examples=40, deadline=None)
@given(x=st.integers(0, 25), y=st.integers(0, 25), z=st.integers(0, 25))
def test_transitivity(x, y, z):
    w2 = corpus.family_wn(2, element_bound=4000)
    if not all(w2.contains(v) for v in (x, y, z)):
        return
    if stably_dominated(w2, x, y) and stably_dominated(w2, y, z):
        assert stably_dominated(w2, x, z) is not None


def test_random_triples_agree():
    rng = random.Random(7)
    for seed in range(10):
        model = corpus.random_model(seed, corpus.RandomModelParams(kind="mixed"))
        elems = model.with_bound(10).enumerate(10)
        pairs = [(rng.choice(elems), rng.choice(elems)) for _ in range(10)]
        assert check_criteria_agreement(model, pairs).ok


def test_agreement_alias():
    from oscomp import check_criteria_agreement, check_prop21_agreement

    assert check_prop21_agreement is check_criteria_agreement
