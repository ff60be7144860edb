"""Certificate-producing reductions.

* :func:`omega_to_cfp_grouping` turns an ω-comparison answer on grouped
  blocks ``z_j = y_{j(m+1)+1} + ... + y_{j(m+1)+m+1}`` into a CFP index
  ``k = (n+1)(m+1)``.
* :func:`weak_omega_to_cfp` first drops the leading non-full ``y`` terms.
* :func:`sdom_common_k` finds one ``k`` witnessing both links of a
  transitive stable-domination chain.

Oracles are plain callables ``oracle(x_prime, x, z_seq) -> int | None`` so
that the reductions can be driven by the real checker or by a mock.
Certificates replay with the base model's order test alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .comparison import stably_dominated
from .completion import (
    TOP,
    CfpInstance,
    Completion,
    InclusionProof,
    Principal,
    SequenceDescriptor,
)
from .errors import NoFullElement, NoFullPair, OracleFailure, PreconditionViolated
from .semigroup import SemigroupModel

Oracle = Callable[..., Optional[int]]


def block_sequence(completion: Completion, y_seq: SequenceDescriptor, m: int) -> SequenceDescriptor:
    """Blocks of ``m+1`` consecutive terms, again eventually periodic."""
    width = m + 1
    n_pre = -(-len(y_seq.preamble) // width)
    period = len(y_seq.period) // math.gcd(len(y_seq.period), width)

    def block(j):
        return completion.partial_sum(y_seq, j * width, (j + 1) * width)

    return SequenceDescriptor(
        tuple(block(j) for j in range(n_pre)),
        tuple(block(j) for j in range(n_pre, n_pre + period)),
    )


@dataclass(frozen=True)
class BlockLink:
    """``(m+1)x_1 ⊆ x_{j(m+1)+1} + ... + x_{j(m+1)+m+1} ⊆ m z_j``."""

    j: int
    lower: object
    middle: object
    upper: object
    first: InclusionProof
    second: InclusionProof


@dataclass(frozen=True)
class GroupingCertificate:
    m: int
    n: int
    k: int
    blocks: tuple
    links: tuple
    block_proof: InclusionProof
    final_sum: object
    final_proof: InclusionProof
    trim: int = 0

    def replay(self, completion: Completion, instance: CfpInstance) -> bool:
        """Re-check every inequality from the stored proofs and the instance data."""
        m, n = self.m, self.n
        if self.k != (n + 1) * (m + 1) or m != instance.m:
            return False
        xs = instance.x_seq.drop(self.trim)
        ys = instance.y_seq.drop(self.trim)
        width = m + 1
        x1 = xs[0]
        for link in self.links:
            j = link.j
            if link.lower != completion.scale(width, x1):
                return False
            if completion.equal(link.middle, completion.partial_sum(xs, j * width, (j + 1) * width)) is not True:
                return False
            z_j = completion.partial_sum(ys, j * width, (j + 1) * width)
            if z_j != self.blocks[j] or completion.equal(link.upper, completion.scale(m, z_j)) is not True:
                return False
            for proof, lhs, rhs in ((link.first, link.lower, link.middle), (link.second, link.middle, link.upper)):
                if not _proof_matches(completion, proof, lhs, rhs):
                    return False
        if [link.j for link in self.links] != list(range(n + 1)):
            return False
        z_total = completion.partial_sum(SequenceDescriptor(self.blocks, (self.blocks[-1],)), 0, n + 1)
        if not _proof_matches(completion, self.block_proof, instance.x_prime, z_total):
            return False
        total = completion.partial_sum(ys, 0, self.k)
        if completion.equal(self.final_sum, total) is not True:
            return False
        return _proof_matches(completion, self.final_proof, instance.x_prime, total)


def _proof_matches(completion, proof, lhs, rhs) -> bool:
    if proof is None or proof.lhs != lhs:
        return False
    if proof.kind != "top" and completion.equal(proof.rhs, rhs) is not True:
        return False
    if proof.kind == "top" and rhs != TOP:
        return False
    return proof.replay(completion.base)


def omega_oracle(completion: Completion, k_max: int = 500, weak: bool = False) -> Oracle:
    """The ω-comparison checker of ``completion`` packaged as an oracle."""

    def oracle(x_prime, x, z_seq):
        verdict = completion.omega_comparison_check(x_prime, x, z_seq, k_max, weak)
        return verdict.n

    return oracle


def omega_to_cfp_grouping(completion: Completion, instance: CfpInstance, oracle: Oracle) -> GroupingCertificate:
    m = instance.m
    if m < 1:
        raise PreconditionViolated("m must be a positive integer")
    xs, ys = instance.x_seq, instance.y_seq
    if xs is None:
        raise PreconditionViolated("the grouping reduction needs a sequence x_n")
    completion.check_increasing(xs)
    width = m + 1
    x1 = xs[0]
    z_seq = block_sequence(completion, ys, m)

    try:
        n = oracle(instance.x_prime, x1, z_seq)
    except PreconditionViolated as exc:
        raise OracleFailure(f"oracle rejected the grouped instance: {exc}") from None
    if n is None:
        raise OracleFailure("the oracle found no index within its bound")

    links = []
    for j in range(n + 1):
        lower = completion.scale(width, x1)
        middle = completion.partial_sum(xs, j * width, (j + 1) * width)
        upper = completion.scale(m, z_seq[j])
        ok1, p1 = completion.inclusion(lower, middle)
        ok2, p2 = completion.inclusion(middle, upper)
        if not (ok1 and ok2):
            raise PreconditionViolated(f"block chain for z_{j} does not hold", j)
        links.append(BlockLink(j, lower, middle, upper, p1, p2))

    z_total = completion.partial_sum(z_seq, 0, n + 1)
    ok, block_proof = completion.inclusion(instance.x_prime, z_total)
    if not ok:
        raise OracleFailure(f"oracle index {n} does not bound x' by the block sums")
    k = (n + 1) * width
    total = completion.partial_sum(ys, 0, k)
    ok, final_proof = completion.inclusion(instance.x_prime, total)
    if not ok:  # pragma: no cover - the block sum and the prefix sum coincide
        raise OracleFailure("prefix sum does not contain x'")
    blocks = tuple(z_seq[j] for j in range(n + 1))
    return GroupingCertificate(m, n, k, blocks, tuple(links), block_proof, total, final_proof)


def find_full_pair(completion: Completion):
    """Smallest full ``v`` with ``v ≪ TOP``, as the pair ``(Principal(v), TOP)``."""
    if completion.trivial:
        raise NoFullPair("the zero model has no pair v ≪ w with v full and v != w")
    try:
        v = completion.some_full_element()
    except NoFullElement:
        raise NoFullPair(f"no representable full element ≪ another in {completion.base.describe()}") from None
    return Principal(v), TOP


def weak_omega_to_cfp(completion: Completion, instance: CfpInstance, oracle: Oracle,
                      v_ll_w=None) -> GroupingCertificate:
    """Trim the non-full head of ``y_seq``, then run the grouping reduction.

    The returned certificate records the number of dropped terms in
    ``trim``; its index ``k`` refers to the trimmed sequences.
    """
    if v_ll_w is None:
        v_ll_w = find_full_pair(completion)
    v, w = v_ll_w
    if not completion.way_below(v, w) or completion.is_full_interval(v) is not True:
        raise NoFullPair(f"{v!r} ≪ {w!r} is not a pair with a full left side")

    ys = instance.y_seq
    flags = [completion.is_full_interval(y) for y in ys.represented()]
    if None in flags:
        raise NoFullPair("fullness of some y term is undecided")
    if not all(flags[len(ys.preamble):]):
        raise PreconditionViolated("the periodic part of y_n contains non-full terms")
    trim = max((i + 1 for i, f in enumerate(flags) if not f), default=0)

    xs = instance.x_seq.drop(trim)
    trimmed = CfpInstance(instance.x_prime, instance.m, ys.drop(trim), x_seq=xs)
    if not completion.way_below(instance.x_prime, xs[0]):  # pragma: no cover - x_n is increasing
        raise PreconditionViolated("x' is not compactly contained in the first kept x term")
    cert = omega_to_cfp_grouping(completion, trimmed, oracle)
    return GroupingCertificate(cert.m, cert.n, cert.k, cert.blocks, cert.links, cert.block_proof,
                               cert.final_sum, cert.final_proof, trim)


@dataclass(frozen=True)
class CommonKChain:
    """``(k+1)x <= ky <= (k+1)y <= kz`` for one ``k``."""

    x: object
    y: object
    z: object
    k: int
    tails: tuple
    links: tuple

    def replay(self, model: SemigroupModel) -> bool:
        k = self.k
        expected = (
            (model.scale(k + 1, self.x), model.scale(k, self.y)),
            (model.scale(k, self.y), model.scale(k + 1, self.y)),
            (model.scale(k + 1, self.y), model.scale(k, self.z)),
        )
        return all(
            c.x == a and c.y == b and c.replay(model) for c, (a, b) in zip(self.links, expected)
        ) and len(self.links) == 3


def sdom_common_k(model: SemigroupModel, x, y, z, k_max: Optional[int] = None) -> CommonKChain:
    x, y, z = (model.check_member(model.normalize(v), name) for v, name in ((x, "x"), (y, "y"), (z, "z")))
    first = stably_dominated(model, x, y, k_max)
    second = stably_dominated(model, y, z, k_max)
    if first is None or second is None:
        raise PreconditionViolated("both x <_s y and y <_s z must be certified")
    tails = ((first.k + 1) * first.k, (second.k + 1) * second.k)
    k = tails[1] if model.is_zero(x) else max(tails)
    links = (
        model.leq_cert(model.scale(k + 1, x), model.scale(k, y)),
        model.leq_cert(model.scale(k, y), model.scale(k + 1, y)),
        model.leq_cert(model.scale(k + 1, y), model.scale(k, z)),
    )
    if None in links:  # pragma: no cover - the tail property guarantees every link
        raise PreconditionViolated(f"common chain fails at k = {k}")
    return CommonKChain(x, y, z, k, tails, links)
