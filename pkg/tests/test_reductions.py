import itertools
import random

import pytest

from oscomp import (
    CfpInstance,
    Completion,
    DirectSum,
    Principal,
    SequenceDescriptor,
    corpus,
    numerical,
    stably_dominated,
)
from oscomp.errors import NoFullPair, OracleFailure, PreconditionViolated
from oscomp.reductions import (
    block_sequence,
    find_full_pair,
    omega_oracle,
    omega_to_cfp_grouping,
    sdom_common_k,
    weak_omega_to_cfp,
)

P = Principal


def const(i):
    return SequenceDescriptor.constant(i)


def fixed(n):
    return lambda x_prime, x, z_seq: n


@pytest.fixture(scope="module")
def wc():
    return Completion(corpus.family_wn(2))


def test_blocks_of_three(wc):
    ys = SequenceDescriptor((), tuple(P(v) for v in (3, 4, 6, 7, 8, 9)))
    blocks = block_sequence(wc, ys, 2)
    assert blocks[0] == P(13) and blocks[1] == P(24) and blocks[2] == P(13)


def test_mock_oracle_sets_k(wc):
    ys = const(P(3))
    inst = CfpInstance(P(3), 2, ys, x_seq=const(P(3)))
    cert = omega_to_cfp_grouping(wc, inst, fixed(1))
    assert cert.k == 6 and cert.n == 1 and cert.replay(wc, inst)
    assert cert.blocks == (P(9), P(9))


def test_smallest_grouping(wc):
    inst = CfpInstance(P(3), 1, const(P(3)), x_seq=const(P(3)))
    cert = omega_to_cfp_grouping(wc, inst, omega_oracle(wc))
    assert cert.n == 0 and cert.k == 2 and cert.blocks == (P(6),)
    link = cert.links[0]
    assert link.lower == P(6) and link.upper == P(6)
    assert cert.replay(wc, inst)


def test_oracle_without_answer(wc):
    inst = CfpInstance(P(3), 1, const(P(3)), x_seq=const(P(3)))
    with pytest.raises(OracleFailure):
        omega_to_cfp_grouping(wc, inst, fixed(None))


def test_replay_catches_tampering(wc):
    inst = CfpInstance(P(3), 1, const(P(3)), x_seq=const(P(3)))
    cert = omega_to_cfp_grouping(wc, inst, omega_oracle(wc))
    bad = type(cert)(cert.m, cert.n, cert.k + 1, cert.blocks, cert.links, cert.block_proof,
                     cert.final_sum, cert.final_proof)
    assert not bad.replay(wc, inst)
    other = CfpInstance(P(3), 1, const(P(4)), x_seq=const(P(3)))
    assert not cert.replay(wc, other)


def test_weak_reduction_trims_the_zero_head(wc):
    ys = SequenceDescriptor((P(0),), (P(3),))
    xs = SequenceDescriptor((P(0),), (P(3),))
    inst = CfpInstance(P(0), 1, ys, x_seq=xs)
    cert = weak_omega_to_cfp(wc, inst, omega_oracle(wc))
    assert cert.trim == 1 and cert.replay(wc, inst)


def test_weak_reduction_without_trim(wc):
    inst = CfpInstance(P(3), 1, const(P(3)), x_seq=const(P(3)))
    assert weak_omega_to_cfp(wc, inst, omega_oracle(wc)).trim == 0


def test_full_pair_of_w2(wc):
    v, w = find_full_pair(wc)
    assert v == P(3) and wc.way_below(v, w)


def test_no_full_pair_in_zero_model():
    zero = Completion(numerical(element_bound=10))
    with pytest.raises(NoFullPair):
        find_full_pair(zero)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_grouping_certificates_replay(n):
    comp = Completion(corpus.family_wn(n))
    oracle = omega_oracle(comp)
    rng = random.Random(100 + n)
    for _ in range(15):
        inst = corpus.random_cfp_instance(comp, rng)
        cert = omega_to_cfp_grouping(comp, inst, oracle)
        assert cert.k == (cert.n + 1) * (cert.m + 1)
        assert cert.replay(comp, inst)
        # the CFP checker never needs more terms than the reduction
        assert comp.check_cfp(inst).k <= cert.k


# -- common k for transitivity ---------------------------------------------------

def test_common_k_for_w2(w2):
    chain = sdom_common_k(w2, 3, 4, 6)
    assert chain.k == 12 and chain.tails == (12, 6)
    assert [(c.x, c.y) for c in chain.links] == [(39, 48), (48, 52), (52, 72)]
    assert chain.replay(w2)


def test_common_k_with_zero_uses_second_tail(w2):
    chain = sdom_common_k(w2, 0, 4, 6)
    assert chain.k == 6 and chain.replay(w2)


def test_common_k_for_w1(w1):
    chain = sdom_common_k(w1, 2, 3, 6)
    assert chain.k == 6 and chain.replay(w1)


def test_common_k_needs_both_premises(w2):
    with pytest.raises(PreconditionViolated):
        sdom_common_k(w2, 4, 3, 6)


def test_common_k_on_direct_sum():
    s = DirectSum((corpus.family_wn(1), corpus.family_wn(2)))
    e = s.normalize
    chain = sdom_common_k(s, e([[0, 2]]), e([[0, 3], [1, 3]]), e([[0, 6], [1, 4]]))
    assert chain.replay(s)


def test_common_k_over_small_triples():
    model = corpus.family_wn(2, element_bound=5000)
    elems = model.enumerate(14)
    for x, y, z in itertools.product(elems, repeat=3):
        if stably_dominated(model, x, y) and stably_dominated(model, y, z):
            assert sdom_common_k(model, x, y, z).replay(model)
