import itertools
from fractions import Fraction

import pytest

from oscomp import INDUCED, AffineSemigroup, DirectSum, corpus, numerical, state_cone
from oscomp.errors import UnsupportedOrderMode, ZeroNormalizer


def test_w2_cone_is_the_single_point_one_quarter(w2):
    cone = state_cone(w2, 4)
    assert cone.vertices == ((Fraction(1, 4),),)
    assert cone.evaluate(cone.vertices[0], 3) == Fraction(3, 4)


def test_identity_state_on_nonnegative_integers(zplus):
    cone = state_cone(zplus, 1)
    assert cone.vertices == ((Fraction(1),),)


def test_zero_normalizer_is_rejected(w2):
    with pytest.raises(ZeroNormalizer):
        state_cone(w2, 0)


def test_induced_order_is_unsupported():
    with pytest.raises(UnsupportedOrderMode):
        state_cone(numerical(3, 4, order_mode=INDUCED), 4)


def test_direct_sum_ideal_is_the_support(w1, w2):
    s = DirectSum((w1, w2))
    y = s.normalize([[1, 4]])
    cone = state_cone(s, y)
    assert all(g.terms[0][0] == 1 for g in cone.ideal_generators)
    assert all(g.terms[0][0] == 0 for g in cone.excluded_generators)
    with pytest.raises(ValueError):
        cone.maximize(s.normalize([[0, 2]]))


def _grid_states(gens, y, grid=24):
    """Rational points v = (a/grid, b/grid) of the cone, on a fine grid."""
    out = []
    for a, b in itertools.product(range(-3 * grid, 3 * grid + 1), repeat=2):
        v = (Fraction(a, grid), Fraction(b, grid))
        if v[0] * y[0] + v[1] * y[1] == 1 and all(v[0] * g[0] + v[1] * g[1] >= 0 for g in gens):
            out.append(v)
    return out


@pytest.mark.parametrize("y", [(2, 2), (1, 2), (3, 2), (2, 4)])
def test_affine_maximum_dominates_grid_search(y):
    gens = ((1, 0), (1, 2), (0, 2))
    model = AffineSemigroup(2, gens, element_bound=60)
    cone = state_cone(model, y)
    assert cone.complete and not cone.empty
    points = _grid_states(gens, y)
    assert points
    for x in model.with_bound(6).enumerate(6):
        exact, arg = cone.maximize(x)
        assert max(v[0] * x[0] + v[1] * x[1] for v in points) <= exact
        assert cone.contains(arg)
        assert cone.evaluate(arg, x) == exact


@pytest.mark.parametrize("seed", range(5))
def test_vertices_are_order_preserving_states(seed):
    model = corpus.random_model(seed, corpus.RandomModelParams(kind="affine", generators=3))
    elems = [e for e in model.with_bound(6).enumerate(6) if not model.is_zero(e)]
    for y in elems[:4]:
        cone = state_cone(model, y)
        if cone.empty or not cone.complete:
            continue
        for v in cone.vertices:
            assert cone.contains(v)
            assert cone.evaluate(v, y) == 1
            ideal = [e for e in elems if cone.reduced(e) is not None]
            for a, b in itertools.product(ideal, repeat=2):
                if model.leq_bool(a, b):
                    assert cone.evaluate(v, a) <= cone.evaluate(v, b)
                assert cone.evaluate(v, model.add(a, b)) == cone.evaluate(v, a) + cone.evaluate(v, b)
