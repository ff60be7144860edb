"""Interval completion Λσ(V) of a discrete model and the CFP checkers.

Only a finitely describable class of countably generated intervals is
representable:

* ``Principal(g)``      -- the downset of ``g``,
* ``ChainGenerated``    -- the union of the downsets of an increasing chain
  whose tail is arithmetic: ``preamble[-1] + t*increment`` for ``t >= 0``,
* ``TOP``               -- all of V.

A chain whose increment is zero is stored as a principal interval, and one
whose increment is full is stored as ``TOP``. All completeness claims made
by this module are relative to that class.

Sequences of intervals (or of elements) are eventually periodic
:class:`SequenceDescriptor` values. CFP verdicts on such sequences are
certified when positive and only evidence when negative.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Optional, Union

from .comparison import Status, default_k_max, stably_dominated
from .errors import (
    IncompatibleModels,
    NoFullElement,
    NotIncreasing,
    OscompError,
    PreconditionViolated,
    UndecidableAtBound,
)
from .semigroup import OrderCertificate, ProptoCertificate, SemigroupModel


@dataclass(frozen=True)
class Principal:
    g: Any


@dataclass(frozen=True)
class ChainGenerated:
    preamble: tuple
    increment: Any

    @property
    def base(self):
        return self.preamble[-1]


@dataclass(frozen=True)
class Top:
    def __repr__(self):
        return "TOP"


TOP = Top()
Interval = Union[Principal, ChainGenerated, Top]


@dataclass(frozen=True)
class SequenceDescriptor:
    """Eventually periodic sequence: ``preamble`` then ``period`` repeated forever.

    Indexing is 0-based; the CFP definitions count from 1, so their ``y_n``
    is ``seq[n - 1]``.
    """

    preamble: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "preamble", tuple(self.preamble))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise OscompError("a sequence needs a non-empty period")

    @classmethod
    def constant(cls, item):
        return cls((), (item,))

    def __getitem__(self, i):
        if i < 0:
            raise IndexError(i)
        if i < len(self.preamble):
            return self.preamble[i]
        return self.period[(i - len(self.preamble)) % len(self.period)]

    @property
    def horizon(self):
        return len(self.preamble) + len(self.period)

    def represented(self):
        return list(self.preamble) + list(self.period)

    def drop(self, t):
        if t <= len(self.preamble):
            return SequenceDescriptor(self.preamble[t:], self.period)
        r = (t - len(self.preamble)) % len(self.period)
        return SequenceDescriptor((), self.period[r:] + self.period[:r])

    def map(self, f):
        return SequenceDescriptor(tuple(map(f, self.preamble)), tuple(map(f, self.period)))


def joint_horizon(*seqs):
    """Number of leading indices that determine every joint pattern of ``seqs``."""
    pre = max(len(s.preamble) for s in seqs)
    period = math.lcm(*(len(s.period) for s in seqs))
    return pre + period


@dataclass(frozen=True)
class ArithmeticChain:
    """Interval sequence ``preamble..., start, start + P(step), start + 2P(step), ...``."""

    preamble: tuple
    start: Any
    step: Any


@dataclass(frozen=True)
class InclusionProof:
    """Replayable evidence for ``lhs ⊆ rhs``.

    ``kind`` is one of ``top`` (rhs is V), ``trivial`` (V = {0}),
    ``principal`` (``cert`` proves ``lhs.g <= rhs.g``), ``chain`` (``cert``
    proves ``lhs.g <= rhs.base + t*rhs.increment``) or ``chain_chain``
    (``cert`` proves ``lhs.base <= rhs.base + t*rhs.increment`` and
    ``propto`` proves ``lhs.increment <= n*rhs.increment``).
    """

    kind: str
    lhs: Any
    rhs: Any
    t: int = 0
    cert: Optional[OrderCertificate] = None
    propto: Optional[ProptoCertificate] = None

    def replay(self, model) -> bool:
        if self.kind == "top":
            return isinstance(self.rhs, Top)
        if self.kind == "trivial":
            return not model.generator_elements
        if self.kind == "principal":
            return (
                isinstance(self.lhs, Principal)
                and isinstance(self.rhs, Principal)
                and self.cert.x == self.lhs.g
                and self.cert.y == self.rhs.g
                and self.cert.replay(model)
            )
        if self.kind in ("chain", "chain_chain"):
            rhs = self.rhs
            if not isinstance(rhs, ChainGenerated):
                return False
            target = model.add(rhs.base, model.scale(self.t, rhs.increment))
            if self.cert.y != target or not self.cert.replay(model):
                return False
            if self.kind == "chain":
                return isinstance(self.lhs, Principal) and self.cert.x == self.lhs.g
            lhs = self.lhs
            return (
                isinstance(lhs, ChainGenerated)
                and self.cert.x == lhs.base
                and self.propto is not None
                and self.propto.replay(model, lhs.increment, rhs.increment)
            )
        return False


@dataclass(frozen=True)
class CfpInstance:
    """Data of one CFP question.

    ``x_seq`` is used by the CFP checker, ``x`` by the strong checker.
    """

    x_prime: Any
    m: int
    y_seq: SequenceDescriptor
    x_seq: Optional[SequenceDescriptor] = None
    x: Any = None


@dataclass(frozen=True)
class CfpVerdict:
    status: str  # "Certificate" or "NoCertificateWithinBound"
    k: Optional[int]
    k_max: int
    partial_sum: Any = None
    proof: Optional[InclusionProof] = None

    CERTIFICATE = "Certificate"
    NONE = "NoCertificateWithinBound"

    @property
    def certified(self):
        return self.status == self.CERTIFICATE

    def replay(self, completion, instance, offset=0) -> bool:
        if not self.certified:
            return True
        acc = completion.partial_sum(instance.y_seq, offset, offset + self.k)
        return (
            self.proof.lhs == instance.x_prime
            and completion.equal(self.proof.rhs, acc) is True
            and self.proof.replay(completion.base)
        )


@dataclass(frozen=True)
class OmegaVerdict:
    status: str
    n: Optional[int]
    k_max: int
    proof: Optional[InclusionProof] = None
    domination: tuple = ()

    @property
    def certified(self):
        return self.status == CfpVerdict.CERTIFICATE


@dataclass(frozen=True)
class LargestElement:
    p: Interval
    full_element: Any
    properly_infinite: bool
    dominated_checked: int


@dataclass
class QVerdict:
    status: Status
    mode: str
    bound: int
    m_max: int
    witness: Optional[tuple] = None
    checked: int = 0
    note: str = ""

    def verify(self, completion) -> bool:
        if self.status is not Status.FAILS:
            return True
        u, m = self.witness
        mu = completion.scale(m, u)
        if self.mode == "Q":
            return completion.equal(mu, TOP) is True and completion.equal(u, TOP) is False
        return (
            completion.interval_leq(completion.interval_add(mu, mu), mu)
            and not completion.interval_leq(completion.interval_add(u, u), u)
        )


@dataclass(frozen=True)
class DiscreteCfpVerdict:
    status: str
    k: Optional[int]
    k_max: int
    cert: Optional[OrderCertificate] = None

    @property
    def certified(self):
        return self.status == CfpVerdict.CERTIFICATE


class Completion:
    """Λσ(V) over a base model, restricted to the representable intervals.

    ``bound`` is the element-size horizon used by every scan over
    representable intervals (fullness sweeps, (Q)/(QQ) searches).
    """

    def __init__(self, base: SemigroupModel, bound: Optional[int] = None):
        self.base = base
        self.bound = bound if bound is not None else min(base.element_bound, 12)

    def __repr__(self):
        return f"Completion({self.base.describe()})"

    # -- construction -----------------------------------------------------
    def _elem(self, g):
        try:
            g = self.base.normalize(g)
        except OscompError as exc:
            raise IncompatibleModels(f"{g!r} is not an element of {self.base.describe()}: {exc}") from None
        if not self.base.contains(g):
            raise IncompatibleModels(f"{g!r} is not a member of {self.base.describe()}")
        return g

    def principal(self, g) -> Principal:
        return Principal(self._elem(g))

    def chain(self, preamble, increment) -> Interval:
        pre = tuple(self._elem(p) for p in preamble)
        if not pre:
            pre = (self.base.zero,)
        inc = self._elem(increment)
        for a, b in zip(pre, pre[1:]):
            if not self.base.leq_bool(a, b):
                raise NotIncreasing(f"chain preamble not increasing at {a!r} -> {b!r}")
        return self._normalize(ChainGenerated(pre, inc))

    @property
    def top(self):
        return TOP

    @property
    def trivial(self):
        return not self.base.generator_elements

    def _normalize(self, interval):
        if isinstance(interval, ChainGenerated):
            if self.base.is_zero(interval.increment):
                return Principal(interval.base)
            if self._full_decision(interval.increment) is True:
                return TOP
        if self.trivial:
            return Principal(self.base.zero)
        return interval

    def _full_decision(self, e) -> Optional[bool]:
        undecided = False
        for g in self.base.generator_elements:
            if self.base.propto_cert(g, e, self.base.default_n_max(g, e)) is not None:
                continue
            d = self.base.propto_decision(g, e)
            if d is False:
                return False
            undecided = True
        return None if undecided else True

    def _rep(self, interval):
        """An element whose multiples are cofinal in the interval (None for TOP)."""
        if isinstance(interval, Principal):
            return interval.g
        if isinstance(interval, ChainGenerated):
            return self.base.add(interval.base, interval.increment)
        return None

    # -- arithmetic -------------------------------------------------------
    def interval_add(self, i, j) -> Interval:
        if isinstance(i, Top) or isinstance(j, Top):
            return TOP
        add = self.base.add
        if isinstance(i, Principal) and isinstance(j, Principal):
            return Principal(add(i.g, j.g))
        if isinstance(i, Principal):
            i, j = j, i
        if isinstance(j, Principal):
            return self._normalize(ChainGenerated((add(i.base, j.g),), i.increment))
        return self._normalize(ChainGenerated((add(i.base, j.base),), add(i.increment, j.increment)))

    def scale(self, m: int, i) -> Interval:
        if m == 0:
            return Principal(self.base.zero)
        if isinstance(i, Top):
            return TOP
        if isinstance(i, Principal):
            return Principal(self.base.scale(m, i.g))
        return self._normalize(ChainGenerated(tuple(self.base.scale(m, p) for p in i.preamble),
                                              self.base.scale(m, i.increment)))

    def partial_sum(self, seq, start, stop) -> Interval:
        acc = Principal(self.base.zero)
        for idx in range(start, stop):
            acc = self.interval_add(acc, seq[idx])
        return acc

    # -- order ------------------------------------------------------------
    def inclusion(self, i, j):
        """``(decision, proof)`` for ``i ⊆ j``; decision is True, False or None."""
        base = self.base
        if isinstance(j, Top):
            return True, InclusionProof("top", i, j)
        if isinstance(i, Top):
            if self.trivial:
                return True, InclusionProof("trivial", i, j)
            if isinstance(j, ChainGenerated) and self._full_decision(j.increment) is None:
                return None, None
            return False, None
        if isinstance(i, Principal):
            if isinstance(j, Principal):
                cert = base.leq_cert(i.g, j.g)
                return (cert is not None), (InclusionProof("principal", i, j, cert=cert) if cert else None)
            hit = base.first_t(i.g, j.base, j.increment)
            if hit is not None:
                return True, InclusionProof("chain", i, j, t=hit[0], cert=hit[1])
            return (False if base.eventually_leq(i.g, j.base, j.increment) is False else None), None
        # i is a chain with non-zero increment: it is unbounded
        if isinstance(j, Principal):
            return False, None
        hit = base.first_t(i.base, j.base, j.increment)
        pc = base.propto_cert(i.increment, j.increment, base.default_n_max(i.increment, j.increment))
        if hit is not None and pc is not None:
            return True, InclusionProof("chain_chain", i, j, t=hit[0], cert=hit[1], propto=pc)
        if base.propto_decision(i.increment, j.increment) is False:
            return False, None
        if base.eventually_leq(i.base, j.base, j.increment) is False:
            return False, None
        return None, None

    def interval_leq(self, i, j) -> bool:
        decision, _ = self.inclusion(i, j)
        if decision is None:
            raise UndecidableAtBound(f"cannot decide {i!r} ⊆ {j!r} at the search horizon")
        return decision

    def equal(self, i, j) -> Optional[bool]:
        a, _ = self.inclusion(i, j)
        if a is False:
            return False
        b, _ = self.inclusion(j, i)
        if b is False:
            return False
        return True if (a and b) else None

    def interval_member(self, i, x) -> bool:
        x = self.base.normalize(x)
        self.base.check_member(x, "x")
        return self.interval_leq(Principal(x), i)

    def way_below(self, i, j) -> bool:
        """Compact containment ``i ≪ j`` on representable intervals."""
        if isinstance(i, Principal):
            return self.interval_leq(i, j)
        if isinstance(i, Top):
            return self.trivial
        return False

    # -- fullness and proportionality ------------------------------------
    def interval_propto(self, i, j) -> Optional[bool]:
        """``i ⊆ N*j`` for some N."""
        if isinstance(j, Top):
            return True
        if isinstance(i, Top):
            # N*J stays a proper chain or principal interval unless V = {0}
            if self.trivial:
                return True
            return None if isinstance(j, ChainGenerated) and self._full_decision(j.increment) is None else False
        return self.base.propto_decision(self._rep(i), self._rep(j))

    def is_full_interval(self, i) -> Optional[bool]:
        if isinstance(i, Top):
            return True
        return self._full_decision(self._rep(i))

    def check_increasing(self, seq):
        items = seq.represented() + [seq.period[0]]
        for idx, (a, b) in enumerate(zip(items, items[1:])):
            if not self.interval_leq(a, b):
                raise NotIncreasing(f"sequence not increasing at index {idx}")

    def is_full_sequence(self, x_seq, bound: Optional[int] = None) -> bool:
        """Increasing, and every compactly contained interval is ∝ some term.

        The terms are eventually constant (an increasing periodic tail is
        constant), so the test reduces to fullness of the last represented
        term, which is decided on the generators of V.
        """
        self.check_increasing(x_seq)
        verdict = self.is_full_interval(x_seq.period[-1])
        if verdict is None:
            raise UndecidableAtBound("fullness of the sequence is undecided")
        return verdict

    # -- suprema ----------------------------------------------------------
    def sup_chain(self, chain) -> Interval:
        """Supremum (union) of an increasing representable chain."""
        if isinstance(chain, SequenceDescriptor):
            self.check_increasing(chain)
            return chain.period[-1]
        if isinstance(chain, ArithmeticChain):
            items = list(chain.preamble) + [chain.start]
            for a, b in zip(items, items[1:]):
                if not self.interval_leq(a, b):
                    raise NotIncreasing(f"chain not increasing at {a!r} -> {b!r}")
            start, step = chain.start, chain.step
            if self.base.is_zero(step) or isinstance(start, Top):
                return start
            if isinstance(start, Principal):
                return self._normalize(ChainGenerated((start.g,), step))
            return self._normalize(ChainGenerated((start.base,), self.base.add(start.increment, step)))
        items = list(chain)
        if not items:
            raise OscompError("empty chain")
        for a, b in zip(items, items[1:]):
            if not self.interval_leq(a, b):
                raise NotIncreasing(f"chain not increasing at {a!r} -> {b!r}")
        return items[-1]

    def full_elements(self, bound=None):
        bound = self.bound if bound is None else bound
        return [e for e in self.base.with_bound(bound).enumerate(bound) if self._full_decision(e) is True]

    def some_full_element(self, bound=None):
        """Smallest full element of size <= bound, else the sum of all generators
        (every generator lies below it, so it is full)."""
        fulls = self.full_elements(bound)
        if fulls:
            return fulls[0]
        total = self.base.total(self.base.generator_elements)
        if self._full_decision(total) is True:
            return total
        raise NoFullElement(f"no full element found in {self.base.describe()}")

    def largest_element(self, bound: Optional[int] = None) -> LargestElement:
        bound = self.bound if bound is None else bound
        g = self.some_full_element(bound)
        p = self.sup_chain(ArithmeticChain((), Principal(g), g))
        if self.equal(p, TOP) is not True:  # pragma: no cover - guards the normalisation
            raise OscompError("supremum of the multiples of a full element is not TOP")
        properly_infinite = self.interval_leq(self.interval_add(p, p), p)
        checked = 0
        for w in self.base.with_bound(bound).enumerate(bound):
            if not self.interval_leq(Principal(w), p):  # pragma: no cover
                raise OscompError(f"{w!r} is not below the largest element")
            checked += 1
        return LargestElement(p, g, properly_infinite, checked)

    def representables(self, bound: Optional[int] = None) -> list:
        bound = self.bound if bound is None else bound
        elems = self.base.with_bound(bound).enumerate(bound)
        out, seen = [], set()
        for item in itertools.chain(
            (Principal(e) for e in elems),
            (self._normalize(ChainGenerated((b,), i)) for b in elems for i in elems if not self.base.is_zero(i)),
            (TOP,),
        ):
            if item not in seen:
                seen.add(item)
                out.append(item)
        return out

    def property_q_check(self, mode: str = "Q", bound: Optional[int] = None, m_max: int = 4) -> QVerdict:
        """Search representable ``u`` and ``m <= m_max`` for a (Q) or (QQ) counterexample."""
        if mode not in ("Q", "QQ"):
            raise OscompError(f"unknown mode {mode!r}")
        bound = self.bound if bound is None else bound
        if mode == "Q":
            self.largest_element(bound)
        undecided = False
        checked = 0
        for u in self.representables(bound):
            for m in range(1, m_max + 1):
                checked += 1
                mu = self.scale(m, u)
                if mode == "Q":
                    hit = self.equal(mu, TOP)
                    if hit is None:
                        undecided = True
                        continue
                    if hit:
                        same = self.equal(u, TOP)
                        if same is False:
                            return QVerdict(Status.FAILS, mode, bound, m_max, (u, m), checked)
                        undecided |= same is None
                else:
                    hit, _ = self.inclusion(self.interval_add(mu, mu), mu)
                    if hit is None:
                        undecided = True
                        continue
                    if hit:
                        own, _ = self.inclusion(self.interval_add(u, u), u)
                        if own is False:
                            return QVerdict(Status.FAILS, mode, bound, m_max, (u, m), checked)
                        undecided |= own is None
        status = Status.UNKNOWN if undecided else Status.HOLDS
        return QVerdict(status, mode, bound, m_max, None, checked, "representable intervals only")

    # -- comparison on intervals -----------------------------------------
    def interval_stably_dominated(self, x, y, k_max: Optional[int] = None):
        """Smallest ``k`` with ``(k+1)x ⊆ ky`` and its proof, or None."""
        if isinstance(y, Top):
            return 1, InclusionProof("top", self.scale(2, x), TOP)
        if k_max is None:
            rep = self._rep(x)
            k_max = default_k_max(self.base) + (self.base.size(rep) if rep is not None else 0) + 1
        if isinstance(x, Principal) and isinstance(y, Principal):
            cert = stably_dominated(self.base, x.g, y.g, k_max)
            if cert is None:
                return None
            k = cert.k
            return k, InclusionProof("principal", Principal(cert.inner.x), Principal(cert.inner.y), cert=cert.inner)
        for k in range(1, k_max + 1):
            decision, proof = self.inclusion(self.scale(k + 1, x), self.scale(k, y))
            if decision:
                return k, proof
        return None

    def omega_comparison_check(self, x_prime, x, y_seq, k_max: int = 500, weak: bool = False) -> OmegaVerdict:
        """Smallest ``n <= k_max`` with ``x' ⊆ y_0 + ... + y_n``."""
        if not self.way_below(x_prime, x):
            raise PreconditionViolated("x' is not compactly contained in x")
        doms = []
        for idx, y in enumerate(y_seq.represented()):
            sd = self.interval_stably_dominated(x, y)
            if sd is None:
                raise PreconditionViolated(f"x <_s y_{idx} could not be certified", idx)
            if weak and self.is_full_interval(y) is not True:
                raise PreconditionViolated(f"y_{idx} is not full", idx)
            doms.append(sd[0])
        acc = Principal(self.base.zero)
        for n in range(k_max + 1):
            acc = self.interval_add(acc, y_seq[n])
            decision, proof = self.inclusion(x_prime, acc)
            if decision:
                return OmegaVerdict(CfpVerdict.CERTIFICATE, n, k_max, proof, tuple(doms))
        return OmegaVerdict(CfpVerdict.NONE, None, k_max, None, tuple(doms))

    def validate_cfp(self, instance: CfpInstance, strong: bool = False, bound: Optional[int] = None):
        """Raise :class:`PreconditionViolated` unless the instance satisfies the hypotheses."""
        if instance.m < 1:
            raise PreconditionViolated("m must be a positive integer")
        ys = instance.y_seq
        if strong:
            x = instance.x
            if x is None:
                raise PreconditionViolated("the strong checker needs a single x")
            if not self.way_below(instance.x_prime, x):
                raise PreconditionViolated("x' is not compactly contained in x", 0)
            for n, y in enumerate(ys.represented(), start=1):
                if not self.interval_leq(x, self.scale(instance.m, y)):
                    raise PreconditionViolated(f"x <= m*y_{n} fails", n)
            return
        xs = instance.x_seq
        if xs is None:
            raise PreconditionViolated("the CFP checker needs a sequence x_n")
        try:
            full = self.is_full_sequence(xs, bound)
        except NotIncreasing as exc:
            raise PreconditionViolated(f"x_n is not increasing: {exc}") from None
        if not full:
            raise PreconditionViolated("x_n is not a full sequence")
        if not self.way_below(instance.x_prime, xs[0]):
            raise PreconditionViolated("x' is not compactly contained in x_1", 1)
        for idx in range(joint_horizon(xs, ys)):
            if not self.interval_leq(xs[idx], self.scale(instance.m, ys[idx])):
                raise PreconditionViolated(f"x_{idx + 1} <= m*y_{idx + 1} fails", idx + 1)

    def check_cfp(self, instance: CfpInstance, k_max: int = 500, strong: bool = False,
                  bound: Optional[int] = None) -> CfpVerdict:
        """Smallest ``k <= k_max`` with ``x' ⊆ y_1 + ... + y_k``."""
        self.validate_cfp(instance, strong, bound)
        return self.cfp_scan(instance.x_prime, instance.y_seq, k_max)

    def cfp_scan(self, x_prime, y_seq, k_max, offset=0) -> CfpVerdict:
        acc = Principal(self.base.zero)
        for k in range(1, k_max + 1):
            acc = self.interval_add(acc, y_seq[offset + k - 1])
            decision, proof = self.inclusion(x_prime, acc)
            if decision:
                return CfpVerdict(CfpVerdict.CERTIFICATE, k, k_max, acc, proof)
        return CfpVerdict(CfpVerdict.NONE, None, k_max)


# ---------------------------------------------------------------------------
# the discrete (algebraically ordered) strong CFP and the bridge to Λσ(V)


def discrete_cfp_scan(model: SemigroupModel, x, y_seq: SequenceDescriptor, m: int, k_max: int) -> DiscreteCfpVerdict:
    """Discrete strong CFP: given ``x <= m*y_n`` for all n, find k with ``x <= y_1 + ... + y_k``."""
    for n, y in enumerate(y_seq.represented(), start=1):
        if not model.leq_bool(x, model.scale(m, y)):
            raise PreconditionViolated(f"x <= m*y_{n} fails", n)
    acc = model.zero
    for k in range(1, k_max + 1):
        acc = model.add(acc, y_seq[k - 1])
        cert = model.leq_cert(x, acc)
        if cert is not None:
            return DiscreteCfpVerdict(CfpVerdict.CERTIFICATE, k, k_max, cert)
    return DiscreteCfpVerdict(CfpVerdict.NONE, None, k_max)


def lift_discrete_instance(x, y_seq: SequenceDescriptor, m: int) -> CfpInstance:
    """Principal lift of a discrete strong instance: ``X' = X = [0, x]``, ``Y_n = [0, y_n]``."""
    return CfpInstance(Principal(x), m, y_seq.map(Principal), x=Principal(x))


def discretize_strong_instance(completion: Completion, instance: CfpInstance):
    """Discrete instance ``(x, y_seq, m)`` matched to a continuous strong instance.

    ``X' ≪ X`` forces ``X' = [0, a]`` with ``a`` in X, and ``a`` lies in
    every ``m*Y_n``; since each ``Y_n`` is upwards directed one picks the
    first chain element ``y_n`` of ``Y_n`` with ``a <= m*y_n``.
    """
    base = completion.base
    xp = instance.x_prime
    if not isinstance(xp, Principal):
        raise PreconditionViolated("x' must be compactly contained, hence principal")
    a = xp.g
    m = instance.m

    def pick(y):
        if isinstance(y, Principal):
            return y.g
        if isinstance(y, Top):
            return a
        hit = base.first_t(a, base.scale(m, y.base), base.scale(m, y.increment))
        if hit is None:
            raise UndecidableAtBound(f"no element of {y!r} dominates {a!r} after scaling")
        return base.add(y.base, base.scale(hit[0], y.increment))

    return a, instance.y_seq.map(pick), m
