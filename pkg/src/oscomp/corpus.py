"""Example families, seeded random models and instances, batch reports."""
from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Optional

from .comparison import Status, n_comparison, omega_surrogate
from .completion import (
    TOP,
    CfpInstance,
    CfpVerdict,
    ChainGenerated,
    Completion,
    Principal,
    SequenceDescriptor,
)
from .errors import NoFullElement, OscompError, ParseError
from .io import jsonable, model_to_json
from .semigroup import (
    ALGEBRAIC,
    AffineSemigroup,
    DirectSum,
    NumericalSemigroup,
    OrderMode,
    SemigroupModel,
)

REPORT_SCHEMA = 1
KNOWN_CHECKS = (
    "almost_unperforation",
    "n_comparison",
    "weak_n_comparison",
    "omega_surrogate",
    "Q",
    "QQ",
    "CFP",
    "strong_CFP",
)


# ---------------------------------------------------------------------------
# families


def family_wn(n: int, element_bound: Optional[int] = None) -> NumericalSemigroup:
    """``<n+1, n+2>`` with the algebraic order."""
    if n < 1:
        raise OscompError("family index must be >= 1")
    bound = 4 * (n + 1) * (n + 2) if element_bound is None else element_bound
    return NumericalSemigroup((n + 1, n + 2), ALGEBRAIC, bound)


def family_womega(n_max: int, element_bound: Optional[int] = None) -> DirectSum:
    """Direct sum of the first ``n_max`` members of :func:`family_wn`."""
    if n_max < 1:
        raise OscompError("n_max must be >= 1")
    bound = 4 * (n_max + 1) * (n_max + 2) if element_bound is None else element_bound
    return DirectSum(tuple(family_wn(n, bound) for n in range(1, n_max + 1)), ALGEBRAIC, bound)


def z_plus(element_bound: int = 10_000) -> NumericalSemigroup:
    return NumericalSemigroup((1,), ALGEBRAIC, element_bound)


@dataclass(frozen=True)
class RandomModelParams:
    kind: str = "numerical"  # numerical | affine | mixed
    generators: int = 2
    max_generator: int = 10
    dimension: int = 2
    max_coordinate: int = 3
    order_mode: str = "algebraic"
    element_bound: int = 200


def random_model(seed: int, params: RandomModelParams = RandomModelParams()) -> SemigroupModel:
    """Reproducible pseudo-random numerical or affine model."""
    rng = random.Random(seed)
    kind = params.kind
    if kind == "mixed":
        kind = rng.choice(("numerical", "affine"))
    mode = OrderMode(params.order_mode)
    if kind == "numerical":
        pool = range(2, max(params.max_generator, 3) + 1)
        count = min(params.generators, len(pool))
        gens = tuple(sorted(rng.sample(pool, count)))
        return NumericalSemigroup(gens, mode, params.element_bound)
    if kind == "affine":
        d = params.dimension
        gens = set()
        # the unit-free part keeps models interesting; a zero vector is redrawn
        while len(gens) < params.generators:
            v = tuple(rng.randint(0, params.max_coordinate) for _ in range(d))
            if any(v):
                gens.add(v)
        return AffineSemigroup(d, tuple(sorted(gens)), mode, params.element_bound)
    raise OscompError(f"unknown random model kind {params.kind!r}")


# ---------------------------------------------------------------------------
# random CFP instances over a completion


def _pool(completion: Completion, size: int):
    elems = completion.base.with_bound(size).enumerate(size)
    fulls = [e for e in elems if not completion.base.is_zero(e) and completion._full_decision(e) is True]
    if not fulls and completion.base.generator_elements:
        fulls = [completion.some_full_element(size)]
    return elems, fulls


def _below(completion, rng, elems, top_elem):
    return rng.choice([e for e in elems if completion.base.leq_bool(e, top_elem)])


def _y_for(completion, rng, elems, x_interval, m, chain_prob):
    base = completion.base
    if isinstance(x_interval, Principal):
        a = x_interval.g
        cands = [e for e in elems if base.leq_bool(a, base.scale(m, e))]
        y = rng.choice(cands) if cands else a
    elif isinstance(x_interval, ChainGenerated):
        # m*Y must contain the whole chain: take Y with the same increment
        y_base = x_interval.base
        return completion._normalize(ChainGenerated((y_base,), x_interval.increment))
    else:
        return TOP
    nonzero = [e for e in elems if not base.is_zero(e)]
    if nonzero and rng.random() < chain_prob:
        return completion._normalize(ChainGenerated((y,), rng.choice(nonzero)))
    return Principal(y)


def random_cfp_instance(completion: Completion, rng: random.Random, size: Optional[int] = None,
                        chain_prob: float = 0.2, top_prob: float = 0.1) -> CfpInstance:
    """Valid CFP instance: full increasing ``x_n``, ``x_n <= m*y_n``, ``x' ≪ x_1``."""
    size = size if size is not None else completion.bound
    elems, fulls = _pool(completion, size)
    if not fulls:
        raise NoFullElement(f"no full element of size <= {size}")
    m = rng.randint(1, 3)
    n_pre = rng.randint(0, 2)
    top_x = rng.random() < top_prob
    tail_elem = rng.choice(fulls)
    tail = TOP if top_x else Principal(tail_elem)
    pre = []
    cur = tail_elem
    for _ in range(n_pre):
        cur = _below(completion, rng, elems, cur)
        pre.append(Principal(cur))
    pre.reverse()
    x_seq = SequenceDescriptor(tuple(pre), (tail,))
    y_pre = tuple(_y_for(completion, rng, elems, x, m, chain_prob) for x in pre)
    y_period = tuple(_y_for(completion, rng, elems, tail, m, chain_prob) for _ in range(rng.randint(1, 3)))
    first = x_seq[0]
    x_prime = Principal(_below(completion, rng, elems, first.g) if isinstance(first, Principal) else rng.choice(elems))
    return CfpInstance(x_prime, m, SequenceDescriptor(y_pre, y_period), x_seq=x_seq)


def random_strong_instance(completion: Completion, rng: random.Random, size: Optional[int] = None,
                           chain_prob: float = 0.3) -> CfpInstance:
    """Valid strong CFP instance with a principal ``x``."""
    size = size if size is not None else completion.bound
    elems, _ = _pool(completion, size)
    m = rng.randint(1, 3)
    a = rng.choice(elems)
    x = Principal(a)
    ys = [_y_for(completion, rng, elems, x, m, chain_prob) for _ in range(rng.randint(0, 2) + rng.randint(1, 3))]
    n_pre = rng.randint(0, len(ys) - 1)
    x_prime = Principal(_below(completion, rng, elems, a))
    return CfpInstance(x_prime, m, SequenceDescriptor(tuple(ys[:n_pre]), tuple(ys[n_pre:])), x=x)


def random_discrete_strong(model: SemigroupModel, rng: random.Random, size: int):
    """``(x, y_seq, m)`` with ``x <= m*y_n`` for all n."""
    elems = model.with_bound(size).enumerate(size)
    m = rng.randint(1, 3)
    x = rng.choice(elems)
    cands = [e for e in elems if model.leq_bool(x, model.scale(m, e))] or [x]
    ys = [rng.choice(cands) for _ in range(rng.randint(1, 4))]
    n_pre = rng.randint(0, len(ys) - 1)
    return x, SequenceDescriptor(tuple(ys[:n_pre]), tuple(ys[n_pre:])), m


# ---------------------------------------------------------------------------
# batch reports


@dataclass(frozen=True)
class ReportBounds:
    """Bounds for :func:`run_report`.

    ``bound=None`` picks a per-model default. Sweeps that cannot be split
    into numerical components (weak variants on sums, affine models) use
    ``min(bound, generic_bound)``. Both values are written into the report.
    """

    bound: Optional[int] = None
    generic_bound: int = 20
    n_max: int = 5
    omega_cap: int = 8
    q_bound: int = 8
    q_m_max: int = 4
    cfp_instances: int = 20
    cfp_k_max: int = 500
    seed: int = 0


def default_report_bound(model: SemigroupModel) -> int:
    """Numerical parts get twice their conductor plus slack, affine parts 12."""
    if isinstance(model, NumericalSemigroup):
        want = max(40, 2 * model.horizon + 2 * max(model.generators, default=1))
    elif isinstance(model, DirectSum):
        want = max((default_report_bound(c) for c in model.components), default=12)
    else:
        want = 12
    return min(model.element_bound, want) if isinstance(model, NumericalSemigroup) else want


def normalize_checks(checks) -> list:
    if checks is None:
        return list(KNOWN_CHECKS)
    lookup = {c.lower().replace("-", "_"): c for c in KNOWN_CHECKS}
    out = []
    for c in checks:
        key = c.strip().lower().replace("-", "_")
        if key not in lookup:
            raise ParseError(f"unknown check {c!r}; known: {', '.join(KNOWN_CHECKS)}", "checks")
        if lookup[key] not in out:
            out.append(lookup[key])
    return out


def _comparison_entry(verdict, model):
    entry = {"status": verdict.status.value, "checked": verdict.checked}
    if verdict.witness is not None:
        entry["witness"] = {"x": jsonable(verdict.witness.x), "ys": jsonable(verdict.witness.ys)}
    if verdict.note:
        entry["note"] = verdict.note
    if verdict.per_x is not None and verdict.status is Status.HOLDS:
        entry["max_n"] = verdict.per_x.get("max_n")
    return entry, verdict.verify(model)


def _cfp_entry(completion, bounds, strong, rng):
    certified = 0
    max_k = 0
    replay_ok = True
    total = bounds.cfp_instances
    for _ in range(total):
        inst = random_strong_instance(completion, rng) if strong else random_cfp_instance(completion, rng)
        verdict = completion.check_cfp(inst, bounds.cfp_k_max, strong=strong)
        if verdict.status == CfpVerdict.CERTIFICATE:
            certified += 1
            max_k = max(max_k, verdict.k)
            replay_ok &= verdict.replay(completion, inst)
    status = Status.HOLDS if certified == total else Status.UNKNOWN
    entry = {"status": status.value, "instances": total, "certified": certified, "max_k": max_k,
             "note": "eventually periodic seeded instances; certificates replayed"}
    return entry, replay_ok


def _hierarchy_violations(entries, prefix):
    keys = sorted((k for k in entries if k.startswith(prefix + "[")), key=lambda k: int(k[len(prefix) + 1:-1]))
    seen_holds = None
    out = []
    for k in keys:
        status = entries[k]["status"]
        if status == Status.HOLDS.value and seen_holds is None:
            seen_holds = k
        elif status == Status.FAILS.value and seen_holds is not None:
            out.append(f"hierarchy: {seen_holds} holds but {k} fails")
    return out


def report_model(model_id: str, model: SemigroupModel, checks=None, bounds: ReportBounds = ReportBounds(),
                 timings: bool = False) -> dict:
    checks = normalize_checks(checks)
    bound = bounds.bound if bounds.bound is not None else default_report_bound(model)
    generic = min(bound, bounds.generic_bound)
    used = asdict(replace(bounds, bound=bound, generic_bound=generic))

    def sweep_bound(weak):
        if isinstance(model, NumericalSemigroup):
            return bound
        if isinstance(model, DirectSum) and not weak:
            return bound
        return generic

    verdicts, clock, violations = {}, {}, []

    def record(name, fn):
        start = time.perf_counter()
        try:
            entry, ok = fn()
        except OscompError as exc:
            entry, ok = {"status": Status.UNKNOWN.value, "note": f"{type(exc).__name__}: {exc}"}, True
        clock[name] = round(time.perf_counter() - start, 6)
        verdicts[name] = entry
        if not ok:
            violations.append(f"replay failure: {name}")

    if "almost_unperforation" in checks:
        record("almost_unperforation", lambda: _comparison_entry(n_comparison(model, 0, sweep_bound(False)), model))
    for name, weak in (("n_comparison", False), ("weak_n_comparison", True)):
        if name in checks:
            for n in range(bounds.n_max + 1):
                record(f"{name}[{n}]", lambda n=n, weak=weak: _comparison_entry(n_comparison(model, n, sweep_bound(weak), weak), model))
            violations.extend(_hierarchy_violations(verdicts, name))
    if "omega_surrogate" in checks:
        record("omega_surrogate", lambda: _comparison_entry(omega_surrogate(model, sweep_bound(False), bounds.omega_cap), model))

    needs_completion = {"Q", "QQ", "CFP", "strong_CFP"} & set(checks)
    if needs_completion:
        completion = Completion(model, bounds.q_bound)
        for mode in ("Q", "QQ"):
            if mode in checks:
                def run_q(mode=mode):
                    v = completion.property_q_check(mode, bounds.q_bound, bounds.q_m_max)
                    entry = {"status": v.status.value, "checked": v.checked, "note": v.note}
                    if v.witness is not None:
                        entry["witness"] = {"u": jsonable(v.witness[0], model), "m": v.witness[1]}
                    return entry, v.verify(completion)
                record(mode, run_q)
        for name, strong in (("CFP", False), ("strong_CFP", True)):
            if name in checks:
                rng = random.Random(f"{bounds.seed}:{name}:{model_key(model)}")
                record(name, lambda strong=strong, rng=rng: _cfp_entry(completion, bounds, strong, rng))

    out = {
        "schema": REPORT_SCHEMA,
        "model_id": model_id,
        "model": model_to_json(model),
        "bounds": used,
        "verdicts": verdicts,
        "violations": violations,
    }
    if timings:
        out["timings"] = clock
    return out


def model_key(model) -> str:
    return json.dumps(model_to_json(model), sort_keys=True, separators=(",", ":"))


def _threads(threads):
    if threads is not None:
        return max(1, threads)
    try:
        return max(1, int(os.environ.get("OSCOMP_THREADS", "1")))
    except ValueError:
        return 1


def run_report(models, checks=None, bounds: ReportBounds = ReportBounds(), threads: Optional[int] = None,
               timings: bool = False):
    """Reports for ``models`` (pairs ``(id, model)`` or bare models), in input order.

    Returns ``(reports, exit_status)``; the status is 1 when any report has
    a hierarchy violation or a failed replay.
    """
    checks = normalize_checks(checks)
    items = [m if isinstance(m, tuple) else (f"model{i}", m) for i, m in enumerate(models)]
    with ThreadPoolExecutor(max_workers=_threads(threads)) as pool:
        reports = list(pool.map(lambda item: report_model(item[0], item[1], checks, bounds, timings), items))
    status = 1 if any(r["violations"] for r in reports) else 0
    return reports, status
