"""Normalized states as an exact rational polyhedron.

For an algebraically ordered, finitely generated model every additive map
on the order ideal of ``y`` is the restriction of a linear functional, and
order preservation reduces to non-negativity on the generators of that
ideal. The states normalized at ``y`` are therefore

    { v : v.g >= 0 for every ideal generator g,  v.y = 1 }.

The functional is only determined on the span of the ideal, so the LP is
solved in coordinates of a basis of that span, where the polyhedron is
pointed and its maximum is attained at a vertex. Vertices are enumerated
exactly with :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import UnsupportedOrderMode, ZeroNormalizer
from .semigroup import ALGEBRAIC, SemigroupModel


def rref(rows):
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve_square(a, b) -> Optional[list]:
    """Unique solution of ``a w = b`` over Q, or None when singular."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        lead = m[col][col]
        m[col] = [v / lead for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [p - f * q for p, q in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def _dot(a, b):
    return sum(p * q for p, q in zip(a, b))


@dataclass(frozen=True)
class StateCone:
    """Exact description of S(W, y) restricted to the order ideal of ``y``.

    ``vertices`` are given in ambient coordinates (the canonical
    representative lying in the span of the ideal). ``complete`` is False
    when some generator could not be classified as inside or outside the
    ideal; the cone is then unusable for decisive verdicts.
    """

    model: SemigroupModel
    y: object
    ideal_generators: tuple
    excluded_generators: tuple
    unclassified_generators: tuple
    basis: tuple
    pivots: tuple
    reduced_vertices: tuple
    vertices: tuple
    empty: bool

    @property
    def dimension(self):
        return self.model.ambient_dim

    @property
    def complete(self):
        return not self.unclassified_generators

    def reduced(self, elem):
        """Coordinates of ``elem`` in the basis of the ideal's span, or None."""
        vec = self.model.coords(elem)
        c = [Fraction(vec[p]) for p in self.pivots]
        back = [sum(ci * row[j] for ci, row in zip(c, self.basis)) for j in range(len(vec))]
        if any(Fraction(v) != w for v, w in zip(vec, back)):
            return None
        return c

    def evaluate(self, vertex, elem) -> Fraction:
        return _dot(vertex, self.model.coords(elem))

    def maximize(self, elem):
        """Exact ``max f(elem)`` over the cone and a maximizing vertex.

        Returns ``(None, None)`` for an empty cone. Raises ValueError when
        ``elem`` is outside the span of the ideal (its state value is
        infinite).
        """
        if self.empty:
            return None, None
        c = self.reduced(elem)
        if c is None:
            raise ValueError(f"{elem!r} is outside the order ideal of {self.y!r}")
        best = None
        arg = None
        for w, v in zip(self.reduced_vertices, self.vertices):
            val = _dot(c, w)
            if best is None or val > best:
                best, arg = val, v
        return best, arg

    def contains(self, v) -> bool:
        if _dot(v, self.model.coords(self.y)) != 1:
            return False
        return all(_dot(v, self.model.coords(g)) >= 0 for g in self.ideal_generators)


def state_cone(model: SemigroupModel, y) -> StateCone:
    """Polyhedral cone of states normalized at ``y``."""
    if model.order_mode is not ALGEBRAIC:
        raise UnsupportedOrderMode("state cones are only available under the algebraic order")
    y = model.normalize(y)
    if model.is_zero(y):
        raise ZeroNormalizer("no state maps 0 to 1")

    inside, outside, unknown = [], [], []
    for g in model.generator_elements:
        verdict = model.propto_decision(g, y)
        (inside if verdict is True else outside if verdict is False else unknown).append(g)

    rows = [model.coords(g) for g in inside]
    basis, pivots = rref(rows) if rows else ([], [])
    r = len(basis)
    cone = StateCone(model, y, tuple(inside), tuple(outside), tuple(unknown), tuple(map(tuple, basis)),
                     tuple(pivots), (), (), True)
    cy = cone.reduced(y)
    if r == 0 or cy is None:
        return cone
    cg = [[Fraction(model.coords(g)[p]) for p in pivots] for g in inside]

    vertices = []
    for subset in itertools.combinations(range(len(cg)), r - 1):
        a = [cg[i] for i in subset] + [cy]
        b = [0] * (r - 1) + [1]
        w = solve_square(a, b)
        if w is None:
            continue
        if any(_dot(row, w) < 0 for row in cg):
            continue
        if w not in vertices:
            vertices.append(w)

    ambient = [_ambient(basis, w) for w in vertices]
    return StateCone(model, y, tuple(inside), tuple(outside), tuple(unknown), tuple(map(tuple, basis)),
                     tuple(pivots), tuple(map(tuple, vertices)), tuple(map(tuple, ambient)), not vertices)


def _ambient(basis, w):
    """The functional in span(basis) taking values ``w`` on the basis rows."""
    r = len(basis)
    gram = [[_dot(basis[i], basis[j]) for j in range(r)] for i in range(r)]
    t = solve_square(gram, w)
    d = len(basis[0])
    return [sum(t[i] * basis[i][j] for i in range(r)) for j in range(d)]
