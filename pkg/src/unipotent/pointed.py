"""Pointed maps between finite labelled sets and the data they index.

A pointed map ``alpha: P_* -> Q_*`` is stored as the images of the elements
of ``P``; ``None`` stands for the basepoint ``*`` (which itself always goes to
``*``).  Label order is significant wherever tensor factors are involved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterator, Mapping, Sequence

from . import matrices as mx
from .coeffs import QQ, CoeffField
from .jordan import galois_matrix, iterated_mult, monodromy_matrix

STAR = "*"


@dataclass(frozen=True)
class PointedMap:
    source: tuple
    target: tuple
    images: tuple  # images[i] is alpha(source[i]) or None for the basepoint

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        object.__setattr__(self, "images", tuple(self.images))
        if len(set(self.source)) != len(self.source) or len(set(self.target)) != len(self.target):
            raise ValueError("labels must be distinct")
        if len(self.images) != len(self.source):
            raise ValueError("one image per source label is required")
        targets = set(self.target)
        for p, q in zip(self.source, self.images):
            if q is not None and q not in targets:
                raise ValueError(f"{p!r} maps to {q!r}, which is not a target label")

    @classmethod
    def from_mapping(cls, source: Sequence, target: Sequence, mapping: Mapping) -> "PointedMap":
        imgs = []
        for p in source:
            q = mapping.get(p, STAR)
            imgs.append(None if q == STAR else q)
        return cls(tuple(source), tuple(target), tuple(imgs))

    @classmethod
    def identity(cls, labels: Sequence) -> "PointedMap":
        return cls(tuple(labels), tuple(labels), tuple(labels))

    def __call__(self, p: Hashable):
        return self.images[self.source.index(p)]

    def fiber(self, q) -> list:
        """Source labels over ``q`` (``None`` for the basepoint), in label order."""
        return [p for p, img in zip(self.source, self.images) if img == q]

    def image(self) -> set:
        return {q for q in self.images if q is not None}

    def is_surjective(self) -> bool:
        return self.image() == set(self.target)

    def is_injective(self) -> bool:
        return None not in self.images and len(set(self.images)) == len(self.images)

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def then(self, beta: "PointedMap") -> "PointedMap":
        """``beta o self``."""
        return compose(beta, self)

    def to_obj(self) -> dict:
        return {
            "P": list(self.source),
            "Q": list(self.target),
            "map": {str(p): (STAR if q is None else q) for p, q in zip(self.source, self.images)},
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "PointedMap":
        source, target = list(obj["P"]), list(obj["Q"])
        by_name = {str(q): q for q in target}
        raw = obj.get("map", {})
        imgs = []
        for p in source:
            q = raw.get(str(p), STAR)
            imgs.append(None if q == STAR else by_name.get(str(q), q))
        return cls(tuple(source), tuple(target), tuple(imgs))

    def __repr__(self):
        body = ", ".join(f"{p}->{STAR if q is None else q}" for p, q in zip(self.source, self.images))
        return f"PointedMap({body})"


def compose(beta: PointedMap, alpha: PointedMap) -> PointedMap:
    if alpha.target != beta.source:
        raise ValueError("maps are not composable")
    return PointedMap(alpha.source, beta.target, tuple(None if q is None else beta(q) for q in alpha.images))


def all_pointed_maps(source: Sequence, target: Sequence) -> Iterator[PointedMap]:
    for imgs in itertools.product([None, *target], repeat=len(source)):
        yield PointedMap(tuple(source), tuple(target), imgs)


def factorize(alpha: PointedMap) -> tuple[PointedMap, PointedMap]:
    """``alpha = alpha_2 o alpha_1`` through ``R = alpha(P) & Q``.

    ``alpha_1`` is surjective and ``alpha_2`` injective; ``R`` keeps the label
    order of ``Q``.
    """
    hit = alpha.image()
    r = tuple(q for q in alpha.target if q in hit)
    alpha1 = PointedMap(alpha.source, r, alpha.images)
    alpha2 = PointedMap(r, alpha.target, r)
    return alpha1, alpha2


def linear_map_matrix(alpha: PointedMap) -> list:
    """0/1 matrix of ``A^Q -> A^P``: ``y_p = x_{alpha(p)}`` or ``0``.

    Rows are indexed by ``P`` and columns by ``Q``.
    """
    col = {q: j for j, q in enumerate(alpha.target)}
    m = [[0] * len(alpha.target) for _ in alpha.source]
    for i, q in enumerate(alpha.images):
        if q is not None:
            m[i][col[q]] = 1
    return m


def degree_window(alpha: PointedMap) -> tuple[int, int]:
    """Perverse degrees outside of which the restricted pushforward vanishes."""
    q, p = len(alpha.target), len(alpha.source)
    return q - p, q - len(alpha.image())


def _as_values(a, alpha: PointedMap) -> tuple:
    if isinstance(a, Mapping):
        vals = tuple(a[p] for p in alpha.source)
    else:
        vals = tuple(a)
    if len(vals) != len(alpha.source):
        raise ValueError("one value per source label is required")
    bad = [v for v in vals if int(v) != v or v < 1]
    if bad:
        raise ValueError(f"values must be integers >= 1, got {bad}")
    return tuple(int(v) for v in vals)


def is_special(a, alpha: PointedMap) -> bool:
    """``a(p) == 1`` whenever ``alpha(p)`` is not the basepoint."""
    vals = _as_values(a, alpha)
    return all(v == 1 for v, q in zip(vals, alpha.images) if q is not None)


@dataclass(frozen=True)
class SpecialFunction:
    values: tuple
    alpha: PointedMap

    def __post_init__(self):
        object.__setattr__(self, "values", _as_values(self.values, self.alpha))

    @property
    def is_special(self) -> bool:
        return is_special(self.values, self.alpha)

    def __getitem__(self, p):
        return self.values[self.alpha.source.index(p)]


@dataclass(frozen=True)
class CompositionData:
    alpha: PointedMap
    beta: PointedMap
    c: tuple
    a: tuple
    b: tuple
    b_prime: tuple  # indexed by alpha.target

    def to_obj(self) -> dict:
        return {
            "alpha": self.alpha.to_obj(),
            "beta": self.beta.to_obj(),
            "c": dict(zip(map(str, self.alpha.source), self.c)),
            "a": dict(zip(map(str, self.alpha.source), self.a)),
            "b": dict(zip(map(str, self.alpha.source), self.b)),
            "b_prime": dict(zip(map(str, self.alpha.target), self.b_prime)),
        }


def push_forward(b: Sequence[int], alpha: PointedMap) -> tuple:
    """``b'(q) = 1 - |alpha^{-1}(q)| + sum over the fibre of b``."""
    by_label = dict(zip(alpha.source, b))
    out = []
    for q in alpha.target:
        fib = alpha.fiber(q)
        out.append(1 - len(fib) + sum(by_label[p] for p in fib))
    return tuple(out)


def compose_data(c, alpha: PointedMap, beta: PointedMap) -> CompositionData:
    """Split a ``beta o alpha``-special ``c`` into ``(a, b)`` and push ``b`` to ``Q``."""
    ba = compose(beta, alpha)
    c = _as_values(c, alpha)
    if not is_special(c, ba):
        raise ValueError(f"c = {c} is not special for the composite {ba!r}")
    a, b = [], []
    for cp, q in zip(c, alpha.images):
        if q is None:
            a.append(cp)
            b.append(1)
        elif beta(q) is None:
            a.append(1)
            b.append(cp)
        else:
            a.append(1)
            b.append(1)
    b_prime = push_forward(b, alpha)
    data = CompositionData(alpha, beta, c, tuple(a), tuple(b), b_prime)
    if not is_special(data.a, alpha):
        raise AssertionError("a is not alpha-special")
    if not is_special(data.b_prime, beta):
        raise AssertionError("b' is not beta-special")
    if any(x + y - 1 != z for x, y, z in zip(data.a, data.b, data.c)):
        raise AssertionError("c != a + b - 1")
    return data


# -- the pullback multiplication map ------------------------------------------


@dataclass(frozen=True)
class PullbackMap:
    """Fibrewise multiplication ``(x)_q (x)_{p over q} L_{b(p)} -> (x)_q L_{b'(q)}``.

    Source tensor factors are ordered by ``q`` (in ``Q`` order) and then by
    ``p`` within the fibre; labels over the basepoint do not appear.
    """

    alpha: PointedMap
    b: tuple
    b_prime: tuple
    field: CoeffField
    blocks: tuple  # one matrix per q
    matrix: list

    @property
    def source_dims(self) -> list[int]:
        by_label = dict(zip(self.alpha.source, self.b))
        return [by_label[p] for q in self.alpha.target for p in self.alpha.fiber(q)]

    @property
    def target_dims(self) -> list[int]:
        return list(self.b_prime)

    def _act(self, dims, one_factor):
        return mx.kron_all([one_factor(d) for d in dims], self.field.one)

    def source_monodromy(self, n) -> list:
        return self._act(self.source_dims, lambda d: monodromy_matrix(d, n, self.field))

    def target_monodromy(self, n) -> list:
        return self._act(self.target_dims, lambda d: monodromy_matrix(d, n, self.field))

    def source_galois(self, t) -> list:
        return self._act(self.source_dims, lambda d: galois_matrix(d, t, self.field))

    def target_galois(self, t) -> list:
        return self._act(self.target_dims, lambda d: galois_matrix(d, t, self.field))


def pullback_mult_matrix(alpha: PointedMap, b, field: CoeffField = QQ) -> PullbackMap:
    b = _as_values(b, alpha)
    by_label = dict(zip(alpha.source, b))
    blocks = []
    for q in alpha.target:
        dims = [by_label[p] for p in alpha.fiber(q)]
        if dims:
            blocks.append(iterated_mult(dims, field).matrix)
        else:
            blocks.append([[field.one]])  # unit k -> L_1
    matrix = mx.kron_all(blocks, field.one)
    return PullbackMap(alpha, b, push_forward(b, alpha), field, tuple(blocks), mx.convert(matrix, field))


def diagonal_equivariance_check(alpha: PointedMap, b, n, field: CoeffField = QQ) -> bool:
    """Does the pullback map intertwine the diagonal monodromy ``n g``?"""
    pb = pullback_mult_matrix(alpha, b, field)
    lhs = mx.matmul(pb.matrix, pb.source_monodromy(n))
    rhs = mx.matmul(pb.target_monodromy(n), pb.matrix)
    return mx.equal(lhs, rhs)


def galois_equivariance_check(alpha: PointedMap, b, t, field: CoeffField = QQ) -> bool:
    pb = pullback_mult_matrix(alpha, b, field)
    lhs = mx.matmul(pb.matrix, pb.source_galois(t))
    rhs = mx.matmul(pb.target_galois(t), pb.matrix)
    return mx.equal(lhs, rhs)
