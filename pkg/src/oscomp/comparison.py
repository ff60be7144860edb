"""Stable domination, n-comparison and their certificates.

Stable domination ``x <_s y`` is decided two ways:

* by search: the smallest ``k`` with ``(k+1)x <= ky`` (:func:`stably_dominated`),
* by states: ``x ∝ y`` and every state normalized at ``y`` is strictly
  below 1 at ``x`` (:func:`stable_dom_via_states`).

The two must never decisively disagree; :func:`check_criteria_agreement`
cross-validates them.

Verdicts are three-valued (:class:`Status`). A search that runs out of
room says ``UNKNOWN``; only a finite certificate turns a negative into a
decisive answer.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .errors import BoundTooSmall, OscompError, PreconditionViolated, UnsupportedOrderMode, ValueOutOfBound
from .semigroup import (
    ALGEBRAIC,
    INDUCED,
    DirectSum,
    NumericalSemigroup,
    OrderCertificate,
    ProptoCertificate,
    SemigroupModel,
)
from .states import state_cone

# how much further than n_max to look once x ∝ y is known to hold
PROPTO_SEARCH_FACTOR = 16


class Status(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "FailsWithWitness"
    UNKNOWN = "UnknownAtBound"


@dataclass(frozen=True)
class StableDomCertificate:
    """``(k+1)x <= ky`` together with the order certificate proving it."""

    x: object
    y: object
    k: int
    inner: OrderCertificate

    def replay(self, model) -> bool:
        return (
            self.k >= 1
            and self.inner.x == model.scale(self.k + 1, self.x)
            and self.inner.y == model.scale(self.k, self.y)
            and self.inner.replay(model)
        )


def default_k_max(model: SemigroupModel) -> int:
    """``4 * (horizon + largest generator size)``."""
    largest = max((model.size(g) for g in model.generator_elements), default=1)
    return 4 * (model.horizon + largest)


def _induced_min_k(model, x, y):
    """Closed form for the coordinatewise order: smallest k, or None if impossible."""
    k = 1
    for a, b in zip(model.coords(x), model.coords(y)):
        if a == 0:
            continue
        if b <= a:
            return None
        k = max(k, -(-a // (b - a)))
    return k


def stably_dominated(model: SemigroupModel, x, y, k_max: Optional[int] = None) -> Optional[StableDomCertificate]:
    """Smallest ``k <= k_max`` with ``(k+1)x <= ky``, or None."""
    if k_max is None:
        k_max = default_k_max(model)
    if model.order_mode is INDUCED:
        k = _induced_min_k(model, x, y)
        if k is None or k > k_max:
            return None
        cert = model.leq_cert(model.scale(k + 1, x), model.scale(k, y))
        return StableDomCertificate(x, y, k, cert)
    if isinstance(model, NumericalSemigroup):
        k = _numerical_min_k(model, x, y, k_max)
        if k is None:
            return None
        return StableDomCertificate(x, y, k, model.leq_cert((k + 1) * x, k * y))
    if isinstance(model, DirectSum):
        k = _sum_min_k(model, x, y, k_max)
        if k is None:
            return None
        return StableDomCertificate(x, y, k, model.leq_cert(model.scale(k + 1, x), model.scale(k, y)))
    lhs, rhs = model.zero, model.zero
    for k in range(1, k_max + 1):
        lhs = model.add(lhs, x) if k > 1 else model.scale(2, x)
        rhs = model.add(rhs, y)
        cert = model.leq_cert(lhs, rhs)
        if cert is not None:
            return StableDomCertificate(x, y, k, cert)
    return None


def _sum_min_k(model, x, y, k_max):
    # both relations are componentwise; a component without a k rules out a common one
    parts = [(c, a, b) for c, a, b in zip(model.components, model.dense(x), model.dense(y)) if not c.is_zero(a)]
    if any(stably_dominated(c, a, b, k_max) is None for c, a, b in parts):
        return None
    for k in range(1, k_max + 1):
        if all(c.leq_bool(c.scale(k + 1, a), c.scale(k, b)) for c, a, b in parts):
            return k
    return None


def _numerical_min_k(model, x, y, k_max):
    if x == 0:
        return 1
    if y <= x:
        return None
    d = model.gcd
    xr, yr = x // d, y // d
    # beyond the horizon every difference is a member, so the scan is short
    limit = min(k_max, (model.reduced_frobenius + 1 + xr) // (yr - xr) + 1)
    for k in range(1, limit + 1):
        if model.contains(k * y - (k + 1) * x):
            return k
    return None


def tail_property_check(model: SemigroupModel, x, y, m: int, probe_extra: int = 100, cert=None) -> bool:
    """Check ``(k+1)x <= ky`` for every k in ``[(m+1)m, (m+1)m + probe_extra]``.

    ``cert`` (a :class:`StableDomCertificate` with ``k == m``) is replayed
    first when given; otherwise the base inequality is re-derived.
    """
    if cert is None:
        base = model.leq_cert(model.scale(m + 1, x), model.scale(m, y))
        if base is None:
            raise PreconditionViolated(f"(m+1)x <= my fails for m={m}")
        cert = StableDomCertificate(x, y, m, base)
    if cert.k != m or not cert.replay(model):
        raise PreconditionViolated("the base certificate does not replay")
    k0 = (m + 1) * m
    lhs = model.scale(k0 + 1, x)
    rhs = model.scale(k0, y)
    for _ in range(probe_extra + 1):
        if not model.leq_bool(lhs, rhs):
            return False
        lhs = model.add(lhs, x)
        rhs = model.add(rhs, y)
    return True


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True)
class StateVerdict:
    status: Status
    max_value: Optional[Fraction] = None
    maximizer: Optional[tuple] = None
    propto: Optional[ProptoCertificate] = None
    reason: str = ""

    @property
    def holds(self) -> Optional[bool]:
        return {Status.HOLDS: True, Status.FAILS: False}.get(self.status)


# cones depend only on (model, y); sweeps ask for the same y many times
_cached_cone = functools.lru_cache(maxsize=4096)(state_cone)


def stable_dom_via_states(model: SemigroupModel, x, y, n_max: Optional[int] = None) -> StateVerdict:
    """``x ∝ y`` and ``max f(x) < 1`` over the state cone at ``y``, decided exactly."""
    if model.order_mode is not ALGEBRAIC:
        raise UnsupportedOrderMode("the state criterion needs the algebraic order")
    if n_max is None:
        n_max = model.default_n_max(x, y)
    if model.is_zero(y):
        # S(W, 0) is empty: the criterion reduces to x ∝ 0, i.e. x = 0
        if model.is_zero(x):
            return StateVerdict(Status.HOLDS, propto=ProptoCertificate(1, model.leq_cert(x, y)),
                                reason="empty state space")
        return StateVerdict(Status.FAILS, reason="x is not proportional to 0")
    pc = model.propto_cert(x, y, n_max)
    if pc is None:
        decision = model.propto_decision(x, y)
        if decision is False:
            return StateVerdict(Status.FAILS, reason="x is not proportional to y")
        if decision is None:
            return StateVerdict(Status.UNKNOWN, reason=f"x ∝ y undecided within n_max={n_max}")
        # decided true by structure, so a certificate exists; look further for it
        try:
            pc = model.propto_cert(x, y, PROPTO_SEARCH_FACTOR * max(n_max, model.default_n_max(x, y)))
        except ValueOutOfBound:
            pc = None
        if pc is None:
            return StateVerdict(Status.UNKNOWN, reason="proportionality certificate not found")
    cone = _cached_cone(model, y)
    if not cone.complete:
        return StateVerdict(Status.UNKNOWN, propto=pc, reason="order ideal of y not fully classified")
    if cone.empty:
        return StateVerdict(Status.HOLDS, propto=pc, reason="empty state space")
    best, arg = cone.maximize(x)
    status = Status.HOLDS if best < 1 else Status.FAILS
    return StateVerdict(status, best, arg, pc)


def sdom_decision(model, x, y, k_max=None, n_max=None):
    """Certificate if ``x <_s y`` is proved, False if refuted, None if undecided."""
    cert = stably_dominated(model, x, y, k_max)
    if cert is not None:
        return cert
    if model.order_mode is INDUCED:
        return False if _induced_min_k(model, x, y) is None else None
    if isinstance(model, NumericalSemigroup):
        return False if (x != 0 and y <= x) else None
    if isinstance(model, DirectSum):
        parts = zip(model.components, model.dense(x), model.dense(y))
        if any(sdom_decision(c, a, b, k_max, n_max) is False for c, a, b in parts):
            return False
    verdict = stable_dom_via_states(model, x, y, n_max)
    return False if verdict.status is Status.FAILS else None


@dataclass
class AgreementRow:
    x: object
    y: object
    search_k: Optional[int]
    states: Optional[StateVerdict]

    @property
    def decisive_disagreement(self) -> bool:
        if self.states is None or self.states.status is Status.UNKNOWN:
            return False
        if self.search_k is not None:
            return self.states.status is Status.FAILS
        return False

    @property
    def exhausted(self) -> bool:
        return self.search_k is None and self.states is not None and self.states.status is Status.HOLDS


@dataclass
class AgreementReport:
    rows: list = field(default_factory=list)

    @property
    def disagreements(self):
        return [r for r in self.rows if r.decisive_disagreement]

    @property
    def exhausted(self):
        return [r for r in self.rows if r.exhausted]

    @property
    def ok(self):
        return not self.disagreements


def check_criteria_agreement(model: SemigroupModel, pairs, k_max=None, n_max=None) -> AgreementReport:
    """Run both criteria on every pair and collect decisive disagreements."""
    report = AgreementReport()
    for x, y in pairs:
        cert = stably_dominated(model, x, y, k_max)
        states = stable_dom_via_states(model, x, y, n_max) if model.order_mode is ALGEBRAIC else None
        report.rows.append(AgreementRow(x, y, cert.k if cert else None, states))
    return report


check_prop21_agreement = check_criteria_agreement  # name used by existing callers


# ---------------------------------------------------------------------------
# fullness


def is_full_element(model: SemigroupModel, x, bound: Optional[int] = None) -> bool:
    """Every member is ∝ ``x``.

    It suffices to test the generators, since ∝ is closed under addition;
    that test is exact, so ``bound`` is accepted for interface symmetry only.
    """
    for g in model.generator_elements:
        if model.propto_cert(g, x, model.default_n_max(g, x)) is not None:
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# n-comparison


@dataclass(frozen=True)
class ComparisonWitness:
    """``x <_s y_j`` for every j, yet ``x <= y_0 + ... + y_n`` fails."""

    x: object
    ys: tuple
    certificates: tuple

    def replay(self, model) -> bool:
        if len(self.certificates) != len(self.ys):
            return False
        for y, cert in zip(self.ys, self.certificates):
            if cert.x != self.x or cert.y != y or not cert.replay(model):
                return False
        # the order relation is exact on members, so a failed test is decisive
        return model.leq_cert(self.x, model.total(self.ys)) is None


@dataclass
class ComparisonVerdict:
    status: Status
    n: Optional[int]
    bound: int
    weak: bool = False
    witness: Optional[ComparisonWitness] = None
    checked: int = 0
    note: str = ""
    per_x: Optional[dict] = None

    def verify(self, model) -> bool:
        if self.status is Status.FAILS:
            return self.witness is not None and self.witness.replay(model)
        return True


def _nonzero(model, elems):
    return [e for e in elems if not model.is_zero(e)]


def n_comparison(model: SemigroupModel, n: int, bound: int, weak: bool = False,
                 k_max: Optional[int] = None) -> ComparisonVerdict:
    """Exhaustive n-comparison test over all members of size at most ``bound``.

    Every ``x`` and every tuple ``(y_0, ..., y_n)`` with ``x <_s y_j`` is
    covered by iterated sumsets of the dominating set of ``x``. In weak
    mode the ``y_j`` range over full elements only. ``n = 0`` is almost
    unperforation.
    """
    if n < 0:
        raise OscompError("n must be non-negative")
    m = model.with_bound(bound)
    if not any(m.size(g) <= bound for g in m.generator_elements):
        raise BoundTooSmall(f"no non-zero member of size <= {bound}")
    if isinstance(m, DirectSum) and not weak:
        return _direct_sum_comparison(m, bound, lambda c: n_comparison(c, n, bound, False, k_max), n)
    if isinstance(m, NumericalSemigroup):
        return _numerical_sweep(m, bound, weak, n_fixed=n)
    return _generic_sweep(m, bound, weak, k_max, n_fixed=n)


def omega_surrogate(model: SemigroupModel, bound: int, n_cap: int = 8, k_max: Optional[int] = None,
                    weak: bool = False) -> ComparisonVerdict:
    """Discrete surrogate of ω-comparison (x' = x, ≪ replaced by =).

    Holds when every ``x`` up to ``bound`` has some ``n_x <= n_cap`` such
    that every ``(n_x+1)``-tuple of its dominating elements already sums
    above ``x``; the first ``n_x + 1`` terms of any sequence then suffice.
    """
    m = model.with_bound(bound)
    if not any(m.size(g) <= bound for g in m.generator_elements):
        raise BoundTooSmall(f"no non-zero member of size <= {bound}")
    if isinstance(m, DirectSum) and not weak:
        verdict = _direct_sum_comparison(m, bound, lambda c: omega_surrogate(c, bound, n_cap, k_max), None)
    elif isinstance(m, NumericalSemigroup):
        verdict = _numerical_sweep(m, bound, weak, n_cap=n_cap)
    else:
        verdict = _generic_sweep(m, bound, weak, k_max, n_cap=n_cap)
    verdict.note = ("algebraic surrogate (x' = x); " + verdict.note).strip("; ")
    return verdict


def _direct_sum_comparison(model, bound, run, n):
    """Order and stable domination are componentwise, so a sum fails iff a component does."""
    verdicts = [run(c) if c.enumerate(bound)[1:] else None for c in model.components]
    failing = []
    for i, v in enumerate(verdicts):
        if v is not None and v.status is Status.FAILS:
            w = v.witness
            x = model.embed(i, w.x)
            ys = tuple(model.embed(i, y) for y in w.ys)
            certs = tuple(
                StableDomCertificate(x, y, c.k, model.leq_cert(model.scale(c.k + 1, x), model.scale(c.k, y)))
                for y, c in zip(ys, w.certificates)
            )
            failing.append(ComparisonWitness(x, ys, certs))
    checked = sum(v.checked for v in verdicts if v is not None)
    if failing:
        best = min(failing, key=lambda w: (model.sort_key(w.x), [model.sort_key(y) for y in w.ys]))
        return ComparisonVerdict(Status.FAILS, n, bound, witness=best, checked=checked,
                                 note=f"componentwise; witness in component {best.x.terms[0][0]}")
    if all(v is None or v.status is Status.HOLDS for v in verdicts):
        per_x = None
        if n is None:
            per_x = {"max_n": max((v.per_x["max_n"] for v in verdicts if v is not None and v.per_x), default=0)}
        return ComparisonVerdict(Status.HOLDS, n, bound, checked=checked, note="componentwise", per_x=per_x)
    return ComparisonVerdict(Status.UNKNOWN, n, bound, checked=checked, note="componentwise")


def _backtrack(layers, s, dom, step_back, key=None):
    """Greedy decomposition of ``s`` into ``len(layers)`` dominating elements, sorted by ``key``."""
    ys = []
    for j in range(len(layers) - 1, 0, -1):
        for y in dom:
            prev = step_back(s, y)
            if prev is not None and layers[j - 1](prev):
                ys.append(y)
                s = prev
                break
        else:  # pragma: no cover - layers are built from dom, a decomposition exists
            raise AssertionError("sumset backtrack failed")
    ys.append(s)
    return tuple(sorted(ys, key=key))


def _numerical_sweep(model: NumericalSemigroup, bound, weak, n_fixed=None, n_cap=None):
    d = model.gcd
    elems = model.enumerate(bound)
    red = np.asarray([e // d for e in elems], dtype=np.int64)
    cands = red[red > 0]  # every non-zero member is full in a numerical semigroup
    b = int(bound // d)
    layers_needed = (n_fixed if n_fixed is not None else n_cap) + 1
    horizon = model.reduced_frobenius + 1
    mask = model.reduced_mask(max(layers_needed * b + 1, horizon + 1))
    kmax = horizon + b + 2
    algebraic = model.order_mode is ALGEBRAIC
    checked = 0
    per_x = {}

    for x in (int(v) for v in red if v > 0):
        if algebraic:
            ks = kernels.min_k_row(x, cands, kmax, mask, horizon)
        else:
            ks = np.where(cands > x, np.maximum(1, -(-x // np.maximum(cands - x, 1))), 0)
        dom = cands[ks > 0]
        if dom.size == 0:
            continue
        kmap = dict(zip(cands.tolist(), ks.tolist()))
        dmask = np.zeros(b + 1, dtype=np.bool_)
        dmask[dom] = True
        layers = [dmask]
        found_n = None
        for j in range(layers_needed):
            if j:
                layers.append(kernels.sumset(layers[-1], dmask, (j + 1) * b + 1))
            total = layers[-1]
            sums = np.flatnonzero(total)
            checked += sums.size
            diff = sums - x
            if algebraic:
                ok = (diff >= 0) & mask[np.clip(diff, 0, mask.shape[0] - 1)]
            else:
                ok = diff >= 0
            bad = sums[~ok]
            if n_fixed is not None:
                if j < n_fixed:
                    continue
                if bad.size:
                    s = int(bad[0])
                    tables = [lyr for lyr in layers]
                    ys = _backtrack(
                        [(lambda v, t=t: 0 <= v < t.shape[0] and bool(t[v])) for t in tables],
                        s, dom.tolist(), lambda v, y: v - y if v >= y else None,
                    )
                    return _numerical_failure(model, x * d, [y * d for y in ys], kmap, n_fixed, bound, checked)
            elif not bad.size:
                found_n = j
                break
        if n_cap is not None:
            if found_n is None:
                return ComparisonVerdict(Status.UNKNOWN, None, bound, weak, checked=checked,
                                         note=f"x={x * d} needs more than {n_cap + 1} terms")
            per_x[x * d] = found_n
    if n_cap is not None:
        return ComparisonVerdict(Status.HOLDS, None, bound, weak, checked=checked,
                                 per_x={"max_n": max(per_x.values(), default=0)})
    return ComparisonVerdict(Status.HOLDS, n_fixed, bound, weak, checked=checked)


def _numerical_failure(model, x, ys, kmap, n, bound, checked):
    d = model.gcd
    certs = []
    for y in ys:
        k = kmap[y // d]
        certs.append(StableDomCertificate(x, y, k, model.leq_cert((k + 1) * x, k * y)))
    witness = ComparisonWitness(x, tuple(ys), tuple(certs))
    return ComparisonVerdict(Status.FAILS, n, bound, witness=witness, checked=checked)


def _generic_sweep(model, bound, weak, k_max, n_fixed=None, n_cap=None):
    elems = model.enumerate(bound)
    cands = _nonzero(model, elems)
    if weak:
        cands = [y for y in cands if is_full_element(model, y, bound)]
    layers_needed = (n_fixed if n_fixed is not None else n_cap) + 1
    undecided = False
    checked = 0
    per_x = {}
    for x in _nonzero(model, elems):
        dom, certs = [], {}
        for y in cands:
            r = sdom_decision(model, x, y, k_max)
            if r is False:
                continue
            if r is None:
                undecided = True
                continue
            dom.append(y)
            certs[y] = r
        if not dom:
            continue
        # layer j maps saturated sums of j+1 dominating elements to a parent link
        layers = [{}]
        for y in dom:
            layers[0].setdefault(model.saturate(y, x), (None, y))
        found_n = None
        for j in range(layers_needed):
            if j:
                nxt = {}
                for s in sorted(layers[-1], key=model.sort_key):
                    for y in dom:
                        nxt.setdefault(model.saturate(model.add(s, y), x), (s, y))
                layers.append(nxt)
            checked += len(layers[-1])
            bad = [s for s in layers[-1] if model.leq_cert(x, s) is None]
            if n_fixed is not None:
                if j < n_fixed:
                    continue
                if bad:
                    s = min(bad, key=model.sort_key)
                    ys = []
                    for lyr in reversed(layers):
                        s, y = lyr[s]
                        ys.append(y)
                    ys = tuple(sorted(ys, key=model.sort_key))
                    witness = ComparisonWitness(x, ys, tuple(certs[y] for y in ys))
                    return ComparisonVerdict(Status.FAILS, n_fixed, bound, weak, witness, checked)
            elif not bad:
                found_n = j
                break
        if n_cap is not None:
            if found_n is None:
                return ComparisonVerdict(Status.UNKNOWN, None, bound, weak, checked=checked,
                                         note=f"x={x!r} needs more than {n_cap + 1} terms")
            per_x[x] = found_n
    status = Status.UNKNOWN if undecided else Status.HOLDS
    note = "some stable-domination pairs undecided" if undecided else ""
    if n_cap is not None:
        return ComparisonVerdict(status, None, bound, weak, checked=checked, note=note,
                                 per_x={"max_n": max(per_x.values(), default=0)})
    return ComparisonVerdict(status, n_fixed, bound, weak, checked=checked, note=note)
