"""Bounded cochain complexes of free abelian groups and their cohomology.

A complex lives in degrees ``lo..hi``; ``d(i)`` maps degree ``i`` to degree
``i + 1`` and is an ``r_{i+1} x r_i`` integer matrix.  Outside the stored
range every group is zero, so ``d(i)`` is always defined (possibly with an
empty shape).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .smith import (
    Certificate,
    int_identity,
    int_zeros,
    intmat,
    smith_decomposition,
    solve_integer,
)


class ChainMapError(ValueError):
    pass


def _mat(m, rows: int, cols: int) -> np.ndarray:
    if rows == 0 or cols == 0:
        return int_zeros(rows, cols)
    return intmat(m, (rows, cols))


@dataclass
class IntChainComplex:
    lo: int
    ranks: list
    diffs: list = field(default_factory=list)  # diffs[k] is d(lo + k)

    def __post_init__(self):
        self.ranks = [int(r) for r in self.ranks]
        if any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be non-negative")
        n = len(self.ranks)
        if not self.diffs:
            self.diffs = [int_zeros(self.ranks[k + 1], self.ranks[k]) for k in range(n - 1)]
        if len(self.diffs) != max(n - 1, 0):
            raise ValueError(f"expected {max(n - 1, 0)} differentials, got {len(self.diffs)}")
        self.diffs = [_mat(m, self.ranks[k + 1], self.ranks[k]) for k, m in enumerate(self.diffs)]
        for k in range(len(self.diffs) - 1):
            if (self.diffs[k + 1] @ self.diffs[k] != 0).any():
                raise ValueError(f"d o d != 0 at degree {self.lo + k}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def d(self, i: int) -> np.ndarray:
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return int_zeros(self.rank(i + 1), self.rank(i))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.ranks)

    def to_obj(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "ranks": list(self.ranks),
            "d": {str(self.lo + k): [[int(x) for x in row] for row in m.tolist()] for k, m in enumerate(self.diffs)},
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "IntChainComplex":
        lo, ranks = int(obj["lo"]), list(obj["ranks"])
        raw = obj.get("d", {})
        diffs = [raw.get(str(lo + k), []) for k in range(len(ranks) - 1)]
        return cls(lo, ranks, diffs)

    @classmethod
    def concentrated(cls, degree: int, rank: int) -> "IntChainComplex":
        return cls(degree, [rank])

    @classmethod
    def two_term(cls, degree: int, m) -> "IntChainComplex":
        """``Z^c --m--> Z^r`` sitting in degrees ``degree, degree + 1``."""
        m = np.asarray(m, dtype=object)
        if m.ndim == 0:
            m = intmat([[int(m)]])
        return cls(degree, [m.shape[1], m.shape[0]], [m])


def direct_sum(*cs: IntChainComplex) -> IntChainComplex:
    cs = [c for c in cs if c.ranks]
    if not cs:
        return IntChainComplex(0, [])
    lo, hi = min(c.lo for c in cs), max(c.hi for c in cs)
    ranks = [sum(c.rank(i) for c in cs) for i in range(lo, hi + 1)]
    diffs = [_block_diag([c.d(i) for c in cs]) for i in range(lo, hi)]
    return IntChainComplex(lo, ranks, diffs)


def _block_diag(blocks) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = int_zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


@dataclass
class ChainMap:
    source: IntChainComplex
    target: IntChainComplex
    maps: dict  # degree -> r^tgt_i x r^src_i matrix; missing degrees are zero

    def __post_init__(self):
        fixed = {}
        for i in self.degrees():
            m = self.maps.get(i)
            rows, cols = self.target.rank(i), self.source.rank(i)
            fixed[i] = int_zeros(rows, cols) if m is None else _mat(m, rows, cols)
        extra = [i for i in self.maps if i not in fixed and np.asarray(self.maps[i]).size]
        if extra:
            raise ChainMapError(f"components in degrees {extra} have no source or target")
        self.maps = fixed

    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def f(self, i: int) -> np.ndarray:
        if i in self.maps:
            return self.maps[i]
        return int_zeros(self.target.rank(i), self.source.rank(i))

    def defects(self) -> list[int]:
        """Degrees where ``d f != f d``."""
        bad = []
        for i in self.degrees():
            lhs = self.target.d(i) @ self.f(i)
            rhs = self.f(i + 1) @ self.source.d(i)
            if lhs.size and (lhs != rhs).any():
                bad.append(i)
        return bad

    def is_chain_map(self) -> bool:
        return not self.defects()

    def check(self) -> "ChainMap":
        bad = self.defects()
        if bad:
            raise ChainMapError(f"chain-map condition fails in degrees {bad}")
        return self

    def then(self, g: "ChainMap") -> "ChainMap":
        """``g o self``."""
        if g.source is not self.target and g.source.to_obj() != self.target.to_obj():
            raise ChainMapError("maps are not composable")
        degs = set(self.degrees()) | set(g.degrees())
        return ChainMap(self.source, g.target, {i: g.f(i) @ self.f(i) for i in degs})

    def to_obj(self) -> dict:
        return {
            "source": self.source.to_obj(),
            "target": self.target.to_obj(),
            "f": {str(i): [[int(x) for x in row] for row in m.tolist()] for i, m in self.maps.items() if m.size},
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "ChainMap":
        src = IntChainComplex.from_obj(obj["source"])
        tgt = IntChainComplex.from_obj(obj["target"])
        return cls(src, tgt, {int(k): v for k, v in obj.get("f", {}).items()})

    @classmethod
    def identity(cls, c: IntChainComplex) -> "ChainMap":
        return cls(c, c, {i: int_identity(c.rank(i)) for i in c.degrees()})

    @classmethod
    def scalar(cls, c: IntChainComplex, k: int) -> "ChainMap":
        return cls(c, c, {i: k * int_identity(c.rank(i)) for i in c.degrees()})

    @classmethod
    def zero(cls, source: IntChainComplex, target: IntChainComplex) -> "ChainMap":
        return cls(source, target, {})


def compose_all(maps) -> ChainMap:
    """``maps[-1] o ... o maps[0]``."""
    out = maps[0]
    for g in maps[1:]:
        out = out.then(g)
    return out


# -- cohomology ----------------------------------------------------------------


@dataclass
class CohomologyGroup:
    """``H^i`` as ``(+)_j Z/orders[j]`` with ``orders[j] == 0`` meaning ``Z``.

    ``generators`` has one cocycle per summand (as columns) and ``proj``
    sends a cocycle to its coordinates; coordinate ``j`` is only meaningful
    modulo ``orders[j]``.
    """

    degree: int
    orders: list
    generators: np.ndarray
    proj: np.ndarray

    @property
    def free_rank(self) -> int:
        return sum(1 for n in self.orders if n == 0)

    @property
    def torsion(self) -> list[int]:
        return sorted(n for n in self.orders if n != 0)

    def is_zero(self) -> bool:
        return not self.orders

    def reduce(self, coords) -> list[int]:
        return [int(x) % n if n else int(x) for x, n in zip(coords, self.orders)]

    def to_obj(self) -> dict:
        return {"degree": self.degree, "free_rank": self.free_rank, "torsion": self.torsion}


def cohomology(c: IntChainComplex, i: int) -> CohomologyGroup:
    r = c.rank(i)
    d_out, d_in = c.d(i), c.d(i - 1)
    if d_out.shape[0]:
        sf = smith_decomposition(d_out)
        ker = sf.V[:, sf.rank :]
        ker_coords = sf.V_inv[sf.rank :, :]
    else:
        ker, ker_coords = int_identity(r), int_identity(r)
    m = ker.shape[1]
    if m == 0:
        return CohomologyGroup(i, [], int_zeros(r, 0), int_zeros(0, r))
    x = ker_coords @ d_in if d_in.shape[1] else int_zeros(m, 0)
    sx = smith_decomposition(x)
    diag = sx.diagonal
    orders = [diag[j] if j < len(diag) else 0 for j in range(m)]
    keep = [j for j, n in enumerate(orders) if n != 1]
    gens = ker @ sx.U_inv[:, keep] if keep else int_zeros(r, 0)
    proj = (sx.U @ ker_coords)[keep, :] if keep else int_zeros(0, r)
    return CohomologyGroup(i, [orders[j] for j in keep], gens, proj)


def cohomology_range(c: IntChainComplex) -> dict:
    return {i: cohomology(c, i) for i in c.degrees()}


def induced_cohomology_map(
    f: ChainMap,
    i: int,
    h_src: Optional[CohomologyGroup] = None,
    h_tgt: Optional[CohomologyGroup] = None,
) -> np.ndarray:
    """Matrix of ``H^i(f)`` between the Smith presentations, reduced mod target orders."""
    f.check()
    h_src = h_src or cohomology(f.source, i)
    h_tgt = h_tgt or cohomology(f.target, i)
    rows, cols = len(h_tgt.orders), len(h_src.orders)
    if rows == 0 or cols == 0:
        return int_zeros(rows, cols)
    m = h_tgt.proj @ f.f(i) @ h_src.generators
    for r, n in enumerate(h_tgt.orders):
        if n:
            m[r] = np.array([int(x) % n for x in m[r]], dtype=object)
    return m


def is_cohomologically_zero(f: ChainMap) -> bool:
    return not cohomology_defects(f)


def cohomology_defects(f: ChainMap) -> list[int]:
    """Degrees where ``H^i(f) != 0``."""
    return [i for i in f.degrees() if (induced_cohomology_map(f, i) != 0).any()]


# -- null-homotopies -------------------------------------------------------------


@dataclass
class HomotopyResult:
    """Either ``h`` with ``d h + h d = f`` or a certificate that none exists."""

    chain_map: ChainMap
    homotopy: Optional[dict]  # degree i -> h_i : C^i -> D^{i-1}
    certificate: Optional[Certificate] = None
    system: Optional[tuple] = None  # (A, b) of the flattened equations

    @property
    def exists(self) -> bool:
        return self.homotopy is not None

    def verify(self) -> bool:
        if self.exists:
            return verify_homotopy(self.chain_map, self.homotopy)
        A, b = self.system
        return self.certificate.verify(A, b)

    def to_obj(self) -> dict:
        if self.exists:
            return {
                "null_homotopic": True,
                "h": {str(i): [[int(x) for x in row] for row in m.tolist()] for i, m in self.homotopy.items() if m.size},
            }
        return {
            "null_homotopic": False,
            "certificate": {"row": [int(x) for x in self.certificate.row], "modulus": self.certificate.modulus},
        }


def verify_homotopy(f: ChainMap, h: Mapping) -> bool:
    src, tgt = f.source, f.target

    def h_at(i):
        m = h.get(i)
        return int_zeros(tgt.rank(i - 1), src.rank(i)) if m is None else m

    for i in f.degrees():
        lhs = tgt.d(i - 1) @ h_at(i) + h_at(i + 1) @ src.d(i)
        if lhs.shape != f.f(i).shape or (lhs.size and (lhs != f.f(i)).any()):
            return False
    return True


def homotopy_system(f: ChainMap) -> tuple[np.ndarray, np.ndarray, list]:
    """Flatten ``d_D h_i + h_{i+1} d_C = f_i`` (all degrees) to ``A x = b``.

    Unknowns are the entries of each ``h_i`` in row-major order; the layout
    list records ``(degree, rows, cols, offset)`` for each block.
    """
    src, tgt = f.source, f.target
    degs = list(f.degrees())
    layout, off = [], 0
    for i in list(degs) + [degs[-1] + 1]:
        rows, cols = tgt.rank(i - 1), src.rank(i)
        if rows and cols:
            layout.append((i, rows, cols, off))
            off += rows * cols
    eq_layout, eoff = {}, 0
    for i in degs:
        rows, cols = tgt.rank(i), src.rank(i)
        if rows and cols:
            eq_layout[i] = eoff
            eoff += rows * cols
    A = int_zeros(eoff, off)
    b = np.zeros(eoff, dtype=object)
    for i, e0 in eq_layout.items():
        b[e0 : e0 + tgt.rank(i) * src.rank(i)] = f.f(i).reshape(-1)
    for i, rows, cols, u0 in layout:
        # h_i: C^i -> D^{i-1} enters equation i via d_D^{i-1} h_i ...
        if i in eq_layout:
            dD = tgt.d(i - 1)  # rank(i) x rows
            e0 = eq_layout[i]
            for p in range(rows):
                for q in range(cols):
                    for r in range(dD.shape[0]):
                        if dD[r, p]:
                            A[e0 + r * cols + q, u0 + p * cols + q] += dD[r, p]
        # ... and equation i-1 via h_i d_C^{i-1}
        if i - 1 in eq_layout:
            dC = src.d(i - 1)  # cols x rank_src(i-1)
            e0 = eq_layout[i - 1]
            width = src.rank(i - 1)
            for p in range(rows):
                for q in range(cols):
                    for s in range(width):
                        if dC[q, s]:
                            A[e0 + p * width + s, u0 + p * cols + q] += dC[q, s]
    return A, b, layout


def null_homotopy(f: ChainMap) -> HomotopyResult:
    f.check()
    A, b, layout = homotopy_system(f)
    if A.shape[0] == 0:
        return HomotopyResult(f, {}, None, (A, b))
    sol = solve_integer(A, b)
    if isinstance(sol, Certificate):
        return HomotopyResult(f, None, sol, (A, b))
    h = {i: sol[u0 : u0 + rows * cols].reshape(rows, cols) for i, rows, cols, u0 in layout}
    return HomotopyResult(f, h, None, (A, b))


def is_null_homotopic(f: ChainMap) -> bool:
    return null_homotopy(f).exists
