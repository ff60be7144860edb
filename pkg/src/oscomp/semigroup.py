"""Finitely generated positively ordered abelian semigroups.

Three model kinds are supported:

* :class:`NumericalSemigroup` -- a submonoid of ``Z+`` given by generators,
* :class:`AffineSemigroup` -- a submonoid of ``Z+^d`` given by generators,
* :class:`DirectSum` -- a finite direct sum of the above.

Elements are plain values: an ``int`` for numerical models, a tuple of ints
for affine models and a :class:`SumElem` (finite support, zero components
dropped) for direct sums. A model is immutable; membership tables are
write-once caches.

Every model carries an order mode. ``ALGEBRAIC`` means ``x <= y`` iff
``y = x + z`` for a member ``z``; ``INDUCED`` is the coordinatewise integer
order restricted to members.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import math
import threading
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Any, Optional

import numpy as np

from . import kernels
from .errors import (
    NegativeInput,
    NotAMember,
    OscompError,
    ParseError,
    ValueOutOfBound,
    WrongKind,
)

DEFAULT_ELEMENT_BOUND = 10_000
# search horizon for the semi-decisions on affine models
AFFINE_SEARCH_LIMIT = 64
_MAX_GRID_CELLS = 40_000_000


class OrderMode(str, enum.Enum):
    ALGEBRAIC = "algebraic"
    INDUCED = "induced"


ALGEBRAIC = OrderMode.ALGEBRAIC
INDUCED = OrderMode.INDUCED


@dataclass(frozen=True)
class SumElem:
    """Finite-support element of a direct sum.

    ``terms`` holds ``(component index, component element)`` pairs with
    strictly increasing indices and no zero components.
    """

    terms: tuple = ()

    def __repr__(self):
        inner = ", ".join(f"{i}: {e!r}" for i, e in self.terms)
        return f"SumElem({{{inner}}})"


@dataclass(frozen=True)
class OrderCertificate:
    """Evidence for ``x <= y``.

    In algebraic mode ``witness`` is the ``z`` with ``y = x + z``; in induced
    mode it is ``None`` and the proof is the coordinatewise comparison of
    two members.
    """

    x: Any
    y: Any
    witness: Any
    mode: OrderMode

    def replay(self, model) -> bool:
        if self.mode is not model.order_mode:
            return False
        if self.mode is ALGEBRAIC:
            return (
                self.witness is not None
                and model.contains(self.witness)
                and model.add(self.x, self.witness) == self.y
            )
        return (
            model.contains(self.x)
            and model.contains(self.y)
            and all(a <= b for a, b in zip(model.coords(self.x), model.coords(self.y)))
        )


@dataclass(frozen=True)
class ProptoCertificate:
    """Evidence for ``x <= n*y`` (the relation written x ∝ y)."""

    n: int
    inner: OrderCertificate

    def replay(self, model, x=None, y=None) -> bool:
        if self.n < 1:
            return False
        if x is not None and self.inner.x != x:
            return False
        if y is not None and self.inner.y != model.scale(self.n, y):
            return False
        return self.inner.replay(model)


class Membership:
    """Result of :func:`member`: truthy iff the value is a member."""

    __slots__ = ("is_member", "factorization")

    def __init__(self, is_member, factorization=None):
        self.is_member = is_member
        self.factorization = factorization

    def __bool__(self):
        return self.is_member

    def __repr__(self):
        return f"Membership({self.is_member}, factorization={self.factorization})"


def _to_int(value, where="value"):
    if isinstance(value, bool):
        raise ParseError(f"expected an integer, got {value!r}", where)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            raise ParseError(f"not a base-10 integer: {value!r}", where) from None
    raise ParseError(f"expected an integer, got {value!r}", where)


def _coords_leq(a, b):
    return all(p <= q for p, q in zip(a, b))


class SemigroupModel:
    """Shared behaviour of the three model kinds.

    Subclasses provide the arithmetic (``zero``, ``add``, ``scale``, ``sub``,
    ``size``, ``coords``), ``contains`` and the semi-decision hooks
    ``propto_decision``, ``eventually_leq`` and ``default_t_max``.
    """

    kind = "abstract"
    order_mode: OrderMode
    element_bound: int

    # -- arithmetic -------------------------------------------------------
    def is_zero(self, x) -> bool:
        return x == self.zero

    def scale(self, n: int, x):
        if n < 0:
            raise NegativeInput("negative multiplier")
        out = self.zero
        base = x
        while n:
            if n & 1:
                out = self.add(out, base)
            base = self.add(base, base)
            n >>= 1
        return out

    def total(self, elems):
        out = self.zero
        for e in elems:
            out = self.add(out, e)
        return out

    def sort_key(self, x):
        return (self.size(x), self.coords(x))

    def support(self, x) -> frozenset:
        return frozenset(i for i, c in enumerate(self.coords(x)) if c)

    def with_bound(self, bound: int):
        """Copy of the model whose element bound is at least ``bound``."""
        if bound <= self.element_bound:
            return self
        return replace(self, element_bound=int(bound))

    # -- order ------------------------------------------------------------
    def leq_cert(self, x, y) -> Optional[OrderCertificate]:
        """Order test without bound checks; ``x`` and ``y`` are assumed members."""
        if self.order_mode is ALGEBRAIC:
            z = self.sub(y, x)
            if z is None or not self.contains(z):
                return None
            return OrderCertificate(x, y, z, ALGEBRAIC)
        if _coords_leq(self.coords(x), self.coords(y)):
            return OrderCertificate(x, y, None, INDUCED)
        return None

    def leq_bool(self, x, y) -> bool:
        return self.leq_cert(x, y) is not None

    def propto_cert(self, x, y, n_max: int) -> Optional[ProptoCertificate]:
        for n in range(1, n_max + 1):
            cert = self.leq_cert(x, self.scale(n, y))
            if cert is not None:
                return ProptoCertificate(n, cert)
        return None

    def first_t(self, x, base, inc, t_max=None):
        """Smallest ``t <= t_max`` with ``x <= base + t*inc`` and its certificate."""
        if t_max is None:
            t_max = self.default_t_max(x, base, inc)
        t0 = self.first_t_floor(x, base, inc)
        target = self.add(base, self.scale(t0, inc))
        for t in range(t0, t_max + 1):
            cert = self.leq_cert(x, target)
            if cert is not None:
                return t, cert
            if self.is_zero(inc):
                return None
            target = self.add(target, inc)
        return None

    def first_t_floor(self, x, base, inc) -> int:
        """A ``t`` below which ``x <= base + t*inc`` is impossible."""
        return 0

    def saturate(self, s, x):
        """Canonical stand-in ``s'`` for ``s`` with ``x <= s + w`` iff ``x <= s' + w``
        for every member ``w``, compatible with addition. Identity by default."""
        return s

    def check_member(self, x, what="element"):
        if self.size(x) > self.element_bound:
            raise ValueOutOfBound(f"{what} {x!r} exceeds element bound {self.element_bound}")
        if not self.contains(x):
            raise NotAMember(f"{what} {x!r} is not a member of {self.describe()}")
        return x

    def enumerate(self, bound: int) -> list:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumericalSemigroup(SemigroupModel):
    """Submonoid of the non-negative integers generated by ``generators``."""

    generators: tuple = ()
    order_mode: OrderMode = ALGEBRAIC
    element_bound: int = DEFAULT_ELEMENT_BOUND

    kind = "numerical"

    def __post_init__(self):
        gens = []
        for g in self.generators:
            g = _to_int(g, "generators")
            if g < 0:
                raise NegativeInput(f"negative generator {g}")
            if g > 0:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))
        object.__setattr__(self, "order_mode", OrderMode(self.order_mode))
        if _to_int(self.element_bound, "element_bound") <= 0:
            raise ParseError("element_bound must be positive", "element_bound")
        object.__setattr__(self, "element_bound", _to_int(self.element_bound))

    def describe(self):
        return "<" + ",".join(map(str, self.generators)) + ">"

    # -- structure --------------------------------------------------------
    @cached_property
    def gcd(self) -> int:
        return math.gcd(*self.generators) if self.generators else 0

    @cached_property
    def reduced_generators(self) -> tuple:
        d = self.gcd
        return tuple(g // d for g in self.generators) if d else ()

    @cached_property
    def apery(self) -> tuple:
        """Apéry set of the reduced semigroup w.r.t. its smallest generator.

        Entry ``r`` is the least member congruent to ``r`` modulo the
        smallest reduced generator (Dijkstra over residues).
        """
        gens = self.reduced_generators
        if not gens:
            return ()
        a = gens[0]
        dist = [None] * a
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            c, r = heapq.heappop(heap)
            if c != dist[r]:
                continue
            for g in gens[1:]:
                nr = (r + g) % a
                nc = c + g
                if dist[nr] is None or nc < dist[nr]:
                    dist[nr] = nc
                    heapq.heappush(heap, (nc, nr))
        return tuple(dist)

    @cached_property
    def gap_reason(self) -> Optional[str]:
        """Why :func:`frobenius` has no value: ``"trivial"``, ``"gcd"``, ``"no_gaps"`` or None."""
        if not self.generators:
            return "trivial"
        if self.gcd != 1:
            return "gcd"
        if self.generators[0] == 1:
            return "no_gaps"
        return None

    @cached_property
    def reduced_frobenius(self) -> int:
        """Frobenius number of the reduced semigroup (-1 when it is all of Z+)."""
        ap = self.apery
        if not ap:
            return -1
        return max(ap) - len(ap)

    @cached_property
    def horizon(self) -> int:
        """Every multiple of ``gcd`` at or above this value is a member."""
        return self.gcd * (self.reduced_frobenius + 1) if self.generators else 0

    @property
    def ambient_dim(self) -> int:
        return 1

    @property
    def generator_elements(self) -> tuple:
        return self.generators

    # -- arithmetic -------------------------------------------------------
    zero = 0

    def normalize(self, value):
        v = _to_int(value)
        if v < 0:
            raise NegativeInput(f"negative value {v}")
        return v

    def add(self, x, y):
        return x + y

    def scale(self, n, x):
        if n < 0:
            raise NegativeInput("negative multiplier")
        return n * x

    def sub(self, y, x):
        return y - x if y >= x else None

    def size(self, x):
        return x

    def coords(self, x):
        return (x,)

    def sort_key(self, x):
        return (x, (x,))

    # -- membership -------------------------------------------------------
    def contains(self, v) -> bool:
        if v < 0:
            return False
        d = self.gcd
        if d == 0:
            return v == 0
        if v % d:
            return False
        r = v // d
        ap = self.apery
        return r >= ap[r % len(ap)]

    @cached_property
    def _suffixes(self):
        return [NumericalSemigroup(self.generators[i:]) for i in range(len(self.generators) + 1)]

    def factorization(self, v) -> Optional[tuple]:
        """Lexicographically smallest coefficient vector over ``generators``."""
        if not self.contains(v):
            return None
        coeffs = []
        rest = v
        sufs = self._suffixes
        for i, g in enumerate(self.generators):
            nxt = sufs[i + 1]
            for c in range(rest // g + 1):
                if nxt.contains(rest - c * g):
                    coeffs.append(c)
                    rest -= c * g
                    break
        return tuple(coeffs)

    def reduced_mask(self, size: int) -> np.ndarray:
        """Membership mask of the reduced semigroup on ``[0, size)``."""
        return kernels.membership_mask(np.asarray(self.reduced_generators, dtype=np.int64), size)

    # -- decision hooks ---------------------------------------------------
    def propto_decision(self, x, y) -> Optional[bool]:
        if x == 0:
            return True
        return y != 0

    def eventually_leq(self, x, base, inc) -> Optional[bool]:
        if inc == 0:
            return self.leq_bool(x, base)
        if self.order_mode is INDUCED:
            return True
        return (base - x) % self.gcd == 0

    def default_t_max(self, x, base, inc):
        if inc == 0:
            return 0
        return max(0, (self.horizon + x - base) // inc + 1)

    def saturate(self, s, x):
        if not self.generators:
            return s
        if self.order_mode is INDUCED:
            return min(s, x)
        cap = x + self.horizon
        if s < cap:
            return s
        return cap + (s - cap) % self.gcd

    def first_t_floor(self, x, base, inc):
        if inc == 0 or x <= base:
            return 0
        return -(-(x - base) // inc)

    def default_n_max(self, x, y):
        if y == 0:
            return 1
        return max(1, (self.horizon + x) // y + 1)

    def enumerate(self, bound):
        return [v for v in range(bound + 1) if self.contains(v)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSemigroup(SemigroupModel):
    """Submonoid of ``Z+^d`` generated by non-negative integer vectors."""

    dimension: int = 1
    generators: tuple = ()
    order_mode: OrderMode = ALGEBRAIC
    element_bound: int = DEFAULT_ELEMENT_BOUND
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    kind = "affine"

    def __post_init__(self):
        d = _to_int(self.dimension, "dimension")
        if d < 1:
            raise ParseError("dimension must be >= 1", "dimension")
        gens = set()
        for g in self.generators:
            vec = tuple(_to_int(c, "generators") for c in g)
            if len(vec) != d:
                raise ParseError(f"generator {vec} has length {len(vec)}, expected {d}", "generators")
            if any(c < 0 for c in vec):
                raise NegativeInput(f"negative generator coordinate in {vec}")
            if any(vec):
                gens.add(vec)
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "generators", tuple(sorted(gens)))
        object.__setattr__(self, "order_mode", OrderMode(self.order_mode))
        bound = _to_int(self.element_bound, "element_bound")
        if bound <= 0:
            raise ParseError("element_bound must be positive", "element_bound")
        object.__setattr__(self, "element_bound", bound)
        object.__setattr__(self, "_cache", {"lock": threading.Lock(), "grid": None, "shape": None})

    def describe(self):
        return "<" + ",".join("(" + ",".join(map(str, g)) + ")" for g in self.generators) + ">"

    @property
    def ambient_dim(self):
        return self.dimension

    @property
    def generator_elements(self):
        return self.generators

    @cached_property
    def zero(self):
        return (0,) * self.dimension

    @cached_property
    def horizon(self) -> int:
        # crude conductor proxy; only used to size default search limits
        return sum(sum(g) for g in self.generators)

    def normalize(self, value):
        if isinstance(value, (int, str)):
            raise ParseError(f"expected a vector of length {self.dimension}, got {value!r}")
        vec = tuple(_to_int(c) for c in value)
        if len(vec) != self.dimension:
            raise ParseError(f"expected a vector of length {self.dimension}, got {vec}")
        if any(c < 0 for c in vec):
            raise NegativeInput(f"negative coordinate in {vec}")
        return vec

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, n, x):
        if n < 0:
            raise NegativeInput("negative multiplier")
        return tuple(n * a for a in x)

    def sub(self, y, x):
        z = tuple(b - a for a, b in zip(x, y))
        return None if any(c < 0 for c in z) else z

    def size(self, x):
        return sum(x)

    def coords(self, x):
        return tuple(x)

    # -- membership -------------------------------------------------------
    def _grid_for(self, v):
        cache = self._cache
        shape = cache["shape"]
        if shape is not None and all(c < s for c, s in zip(v, shape)):
            return cache["grid"], shape
        with cache["lock"]:
            shape = cache["shape"]
            if shape is not None and all(c < s for c, s in zip(v, shape)):
                return cache["grid"], shape
            want = tuple(c + 1 for c in v)
            if shape is not None:
                grown = tuple(max(2 * s, w) for s, w in zip(shape, want))
                want = tuple(max(s, w) for s, w in zip(shape, want))
                if math.prod(grown) <= _MAX_GRID_CELLS:
                    want = grown
            else:
                padded = tuple(max(w, 16) for w in want)
                if math.prod(padded) <= _MAX_GRID_CELLS:
                    want = padded
            if math.prod(want) > _MAX_GRID_CELLS:
                raise ValueOutOfBound(f"membership table for {v} exceeds {_MAX_GRID_CELLS} cells")
            gens = np.asarray(self.generators, dtype=np.int64).reshape(-1, self.dimension)
            grid = kernels.grid_mask(gens, want).reshape(want)
            cache["grid"], cache["shape"] = grid, want
            return grid, want

    def contains(self, v) -> bool:
        if any(c < 0 for c in v):
            return False
        if not any(v):
            return True
        if not self.generators:
            return False
        grid, _ = self._grid_for(v)
        return bool(grid[tuple(v)])

    @cached_property
    def _suffixes(self):
        return [AffineSemigroup(self.dimension, self.generators[i:]) for i in range(len(self.generators) + 1)]

    def factorization(self, v) -> Optional[tuple]:
        if not self.contains(v):
            return None
        coeffs = []
        rest = tuple(v)
        sufs = self._suffixes
        for i, g in enumerate(self.generators):
            nxt = sufs[i + 1]
            cap = min(r // c for r, c in zip(rest, g) if c)
            for c in range(cap + 1):
                cand = tuple(r - c * a for r, a in zip(rest, g))
                if nxt.contains(cand):
                    coeffs.append(c)
                    rest = cand
                    break
        return tuple(coeffs)

    # -- decision hooks ---------------------------------------------------
    def propto_decision(self, x, y) -> Optional[bool]:
        if not any(x):
            return True
        if not self.support(x) <= self.support(y):
            return False
        if self.order_mode is INDUCED:
            return True
        # x ∝ y iff x lies in the smallest face of the cone that contains y:
        # n*y - x stays in the face's group and moves past its conductor
        return self._face(x) <= self._face(y)

    def _face(self, v) -> frozenset:
        """Indices of the generators spanning the smallest cone face containing ``v``."""
        cache = self._cache.setdefault("faces", {})
        if v not in cache:
            cache[v] = _face_support(self.generators, v)
        return cache[v]

    def eventually_leq(self, x, base, inc) -> Optional[bool]:
        if not any(inc):
            return self.leq_bool(x, base)
        if self.order_mode is INDUCED:
            return all(a <= b for a, b, i in zip(x, base, inc) if i == 0)
        if self.first_t(x, base, inc, AFFINE_SEARCH_LIMIT) is not None:
            return True
        if not self.support(x) <= (self.support(base) | self.support(inc)):
            return False
        excess = self.sub(x, base)
        if excess is not None and self.contains(excess):
            # x = base + d, so x <= base + t*inc iff d <= t*inc
            return self.propto_decision(excess, inc)
        return None

    def default_t_max(self, x, base, inc):
        if not any(inc):
            return 0
        return AFFINE_SEARCH_LIMIT

    def default_n_max(self, x, y):
        return AFFINE_SEARCH_LIMIT

    def enumerate(self, bound):
        out = []
        for total in range(bound + 1):
            for vec in _compositions(total, self.dimension):
                if self.contains(vec):
                    out.append(vec)
        return out


def _face_support(gens, v) -> frozenset:
    """Union of supports of the vertices of ``{mu >= 0 : sum mu_i g_i = v}``.

    The polytope is bounded (generators are non-negative and non-zero), so
    these supports cover every non-negative real representation of ``v``,
    which is exactly the generator set of the minimal face containing it.
    """
    d = len(v)
    found = set()
    for size in range(1, min(d, len(gens)) + 1):
        for subset in itertools.combinations(range(len(gens)), size):
            if set(subset) <= found:
                continue
            mu = _solve_exact([gens[i] for i in subset], v)
            if mu is not None and all(c > 0 for c in mu):
                found.update(subset)
    return frozenset(found)


def _solve_exact(columns, v):
    """Unique rational ``mu`` with ``sum mu_j columns_j = v``, else None."""
    n = len(columns)
    rows = [[Fraction(col[i]) for col in columns] + [Fraction(v[i])] for i in range(len(v))]
    pivot_row = 0
    for col in range(n):
        piv = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        lead = rows[pivot_row][col]
        rows[pivot_row] = [a / lead for a in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
    if any(row[n] != 0 for row in rows[n:]):
        return None
    return [rows[i][n] for i in range(n)]


def _compositions(total, parts):
    """All tuples of ``parts`` non-negative ints summing to ``total``, lex ascending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectSum(SemigroupModel):
    """Finite direct sum; the order is componentwise in the sum's order mode."""

    components: tuple = ()
    order_mode: OrderMode = ALGEBRAIC
    element_bound: int = DEFAULT_ELEMENT_BOUND

    kind = "direct_sum"

    def __post_init__(self):
        mode = OrderMode(self.order_mode)
        comps = []
        for c in self.components:
            if not isinstance(c, SemigroupModel):
                raise ParseError(f"component {c!r} is not a semigroup model", "components")
            comps.append(c if c.order_mode is mode else replace(c, order_mode=mode))
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "order_mode", mode)
        bound = _to_int(self.element_bound, "element_bound")
        if bound <= 0:
            raise ParseError("element_bound must be positive", "element_bound")
        object.__setattr__(self, "element_bound", bound)

    def describe(self):
        return "(" + " + ".join(c.describe() for c in self.components) + ")"

    zero = SumElem(())

    @cached_property
    def ambient_dim(self):
        return sum(c.ambient_dim for c in self.components)

    @cached_property
    def horizon(self):
        return max((c.horizon for c in self.components), default=0)

    @cached_property
    def generator_elements(self):
        return tuple(self.embed(i, g) for i, c in enumerate(self.components) for g in c.generator_elements)

    # -- element plumbing -------------------------------------------------
    def dense(self, x) -> list:
        out = [c.zero for c in self.components]
        for i, e in x.terms:
            out[i] = e
        return out

    def pack(self, dense) -> SumElem:
        return SumElem(tuple((i, e) for i, (c, e) in enumerate(zip(self.components, dense)) if not c.is_zero(e)))

    def saturate(self, s, x):
        return self.pack([c.saturate(a, b) for c, a, b in zip(self.components, self.dense(s), self.dense(x))])

    def embed(self, index, elem) -> SumElem:
        dense = [c.zero for c in self.components]
        dense[index] = elem
        return self.pack(dense)

    def component(self, x, index):
        for i, e in x.terms:
            if i == index:
                return e
        return self.components[index].zero

    def normalize(self, value):
        if isinstance(value, SumElem):
            dense = self.dense(value)
            return self.pack([c.normalize(e) for c, e in zip(self.components, dense)])
        if isinstance(value, dict):
            items = [(_to_int(k, "support index"), v) for k, v in value.items()]
        elif isinstance(value, (list, tuple)):
            items = []
            for pair in value:
                if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                    raise ParseError(f"direct-sum elements are lists of [index, element] pairs, got {pair!r}")
                items.append((_to_int(pair[0], "support index"), pair[1]))
        else:
            raise ParseError(f"cannot read a direct-sum element from {value!r}")
        dense = [c.zero for c in self.components]
        seen = set()
        for i, v in items:
            if not 0 <= i < len(self.components):
                raise ParseError(f"support index {i} out of range")
            if i in seen:
                raise ParseError(f"support index {i} repeated")
            seen.add(i)
            dense[i] = self.components[i].normalize(v)
        return self.pack(dense)

    def add(self, x, y):
        if not x.terms:
            return y
        if not y.terms:
            return x
        # a sum of non-zero elements is non-zero in a positive semigroup, so no packing is needed
        merged = dict(x.terms)
        for i, e in y.terms:
            merged[i] = self.components[i].add(merged[i], e) if i in merged else e
        return SumElem(tuple(sorted(merged.items())))

    def scale(self, n, x):
        if n < 0:
            raise NegativeInput("negative multiplier")
        if n == 0:
            return SumElem()
        return SumElem(tuple((i, self.components[i].scale(n, e)) for i, e in x.terms))

    def sub(self, y, x):
        out = []
        for c, a, b in zip(self.components, self.dense(x), self.dense(y)):
            z = c.sub(b, a)
            if z is None:
                return None
            out.append(z)
        return self.pack(out)

    def size(self, x):
        return sum(self.components[i].size(e) for i, e in x.terms)

    def coords(self, x):
        out = []
        for c, e in zip(self.components, self.dense(x)):
            out.extend(c.coords(e))
        return tuple(out)

    # -- membership -------------------------------------------------------
    def contains(self, x) -> bool:
        return all(self.components[i].contains(e) for i, e in x.terms)

    def factorization(self, x):
        out = []
        for c, e in zip(self.components, self.dense(x)):
            f = c.factorization(e)
            if f is None:
                return None
            out.extend(f)
        return tuple(out)

    def leq_cert(self, x, y):
        z = []
        for c, a, b in zip(self.components, self.dense(x), self.dense(y)):
            cert = c.leq_cert(a, b)
            if cert is None:
                return None
            z.append(cert.witness)
        witness = self.pack(z) if self.order_mode is ALGEBRAIC else None
        return OrderCertificate(x, y, witness, self.order_mode)

    # -- decision hooks ---------------------------------------------------
    def _combine(self, verdicts):
        verdicts = list(verdicts)
        if any(v is False for v in verdicts):
            return False
        if all(v is True for v in verdicts):
            return True
        return None

    def propto_decision(self, x, y):
        return self._combine(
            c.propto_decision(a, b) for c, a, b in zip(self.components, self.dense(x), self.dense(y))
        )

    def eventually_leq(self, x, base, inc):
        return self._combine(
            c.eventually_leq(a, b, i)
            for c, a, b, i in zip(self.components, self.dense(x), self.dense(base), self.dense(inc))
        )

    def default_t_max(self, x, base, inc):
        return max(
            (
                c.default_t_max(a, b, i)
                for c, a, b, i in zip(self.components, self.dense(x), self.dense(base), self.dense(inc))
            ),
            default=0,
        )

    def default_n_max(self, x, y):
        return max(
            (c.default_n_max(a, b) for c, a, b in zip(self.components, self.dense(x), self.dense(y))),
            default=1,
        )

    def enumerate(self, bound):
        per = [c.enumerate(bound) for c in self.components]
        out = []

        def rec(i, budget, acc):
            if i == len(per):
                out.append(self.pack(acc))
                return
            comp = self.components[i]
            for e in per[i]:
                s = comp.size(e)
                if s > budget:
                    continue
                rec(i + 1, budget - s, acc + [e])

        rec(0, bound, [])
        out.sort(key=self.sort_key)
        return out


# ---------------------------------------------------------------------------
# public operations


def member(model: SemigroupModel, value) -> Membership:
    """Decide membership and return the lexicographically smallest factorization."""
    v = model.normalize(value)
    if model.size(v) > model.element_bound:
        raise ValueOutOfBound(f"{value!r} exceeds element bound {model.element_bound}")
    if not model.contains(v):
        return Membership(False)
    return Membership(True, model.factorization(v))


def frobenius(model: SemigroupModel) -> Optional[int]:
    """Largest integer outside a numerical semigroup.

    Returns None when there is no such integer; ``model.gap_reason`` then
    says why (``"gcd"``: infinitely many gaps, ``"no_gaps"``: the semigroup
    is all of Z+, ``"trivial"``: no generators).
    """
    if not isinstance(model, NumericalSemigroup):
        raise WrongKind(f"frobenius needs a numerical model, got {model.kind}")
    if model.gap_reason is not None:
        return None
    return model.reduced_frobenius


def leq(model: SemigroupModel, x, y) -> Optional[OrderCertificate]:
    x = model.check_member(model.normalize(x), "x")
    y = model.check_member(model.normalize(y), "y")
    return model.leq_cert(x, y)


def propto(model: SemigroupModel, x, y, n_max: int) -> Optional[ProptoCertificate]:
    """Smallest ``n <= n_max`` with ``x <= n*y``; None means "not within n_max"."""
    if n_max < 1:
        raise OscompError("n_max must be positive")
    x = model.check_member(model.normalize(x), "x")
    y = model.check_member(model.normalize(y), "y")
    return model.propto_cert(x, y, n_max)


def enumerate_elements(model: SemigroupModel, bound: Optional[int] = None) -> list:
    """Members of size at most ``bound``, in graded lexicographic order."""
    if bound is None:
        bound = model.element_bound
    if bound > model.element_bound:
        raise ValueOutOfBound(f"bound {bound} exceeds element bound {model.element_bound}")
    if bound < 0:
        raise NegativeInput("negative bound")
    return model.enumerate(bound)


def add(model: SemigroupModel, x, y):
    return model.add(model.normalize(x), model.normalize(y))


def numerical(*generators, order_mode=ALGEBRAIC, element_bound=DEFAULT_ELEMENT_BOUND) -> NumericalSemigroup:
    return NumericalSemigroup(tuple(generators), order_mode, element_bound)

