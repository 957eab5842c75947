"""Composites of cohomologically-zero maps between complexes with bounded cohomology.

If every object of a chain ``M_1 -> M_2 -> ...`` has cohomology in degrees
``[a, b]`` and every map is zero on cohomology, then any ``b - a + 1``
consecutive maps compose to zero in the derived category.  Over the integers
a single such map need not vanish (the Bockstein map below), so the bound is
sharp and the check is not vacuous.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .complexes import (
    ChainMap,
    ChainMapError,
    HomotopyResult,
    IntChainComplex,
    cohomology,
    compose_all,
    direct_sum,
    induced_cohomology_map,
    null_homotopy,
)
from .smith import int_identity, int_zeros, integer_kernel, smith_decomposition


@dataclass(frozen=True)
class TWindow:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"window needs a <= b, got ({self.a}, {self.b})")

    @property
    def length(self) -> int:
        """Number of maps the composite needs: ``b - a + 1``."""
        return self.b - self.a + 1

    def __contains__(self, i: int) -> bool:
        return self.a <= i <= self.b


@dataclass
class Violation:
    kind: str  # "support" (object) or "nonzero" (map)
    index: int  # 1-based position of the object or map
    degree: int
    detail: str

    def to_obj(self) -> dict:
        return {"kind": self.kind, "index": self.index, "degree": self.degree, "detail": self.detail}


@dataclass
class VancritVerdict:
    status: str  # vanishes | does-not-vanish | precondition-failed | refused
    window: TWindow
    violations: list = field(default_factory=list)
    homotopy: Optional[HomotopyResult] = None
    message: str = ""

    @property
    def vanishes(self) -> bool:
        return self.status == "vanishes"

    def to_obj(self) -> dict:
        out = {
            "status": self.status,
            "window": [self.window.a, self.window.b],
            "violations": [v.to_obj() for v in self.violations],
        }
        if self.message:
            out["message"] = self.message
        if self.homotopy is not None:
            out["witness"] = self.homotopy.to_obj()
        return out


def _objects(maps: Sequence[ChainMap]) -> list[IntChainComplex]:
    return [m.source for m in maps] + [maps[-1].target]


def check_preconditions(maps: Sequence[ChainMap], window: TWindow) -> list[Violation]:
    out = []
    for j, obj in enumerate(_objects(maps), start=1):
        for i in obj.degrees():
            if i in window:
                continue
            h = cohomology(obj, i)
            if not h.is_zero():
                out.append(Violation("support", j, i, f"H^{i} has orders {h.orders}"))
    for j, phi in enumerate(maps, start=1):
        bad = phi.defects()
        if bad:
            out.extend(Violation("not-a-chain-map", j, i, "d f != f d") for i in bad)
            continue
        for i in phi.degrees():
            m = induced_cohomology_map(phi, i)
            if m.size and (m != 0).any():
                out.append(Violation("nonzero", j, i, f"H^{i} map {m.tolist()}"))
    return out


def vancrit_check(maps: Sequence[ChainMap], window: TWindow) -> VancritVerdict:
    """Certify that the first ``b - a + 1`` maps compose to a null-homotopic map."""
    maps = list(maps)
    if len(maps) < window.length:
        return VancritVerdict(
            "refused", window, message=f"{len(maps)} maps given, the window needs {window.length}"
        )
    for j in range(len(maps) - 1):
        if maps[j].target.to_obj() != maps[j + 1].source.to_obj():
            raise ChainMapError(f"map {j + 1} does not compose with map {j + 2}")
    violations = check_preconditions(maps, window)
    if violations:
        return VancritVerdict("precondition-failed", window, violations)
    result = null_homotopy(compose_all(maps[: window.length]))
    status = "vanishes" if result.exists else "does-not-vanish"
    return VancritVerdict(status, window, [], result)


# -- instances -------------------------------------------------------------------


def bockstein_witness(k: int = 0, m: int = 2) -> ChainMap:
    """``(Z -m-> Z)`` in degrees ``k, k+1`` to ``(Z -m-> Z)`` in ``k-1, k``, by 1 in degree ``k``.

    Both complexes have ``H = Z/m`` (in degrees ``k+1`` and ``k``), the map is
    zero on cohomology, and ``2 h + 2 h' = 1`` has no integer solution.
    """
    src = IntChainComplex.two_term(k, m)
    tgt = IntChainComplex.two_term(k - 1, m)
    return ChainMap(src, tgt, {k: [[1]]}).check()


def _piece(kind: str, k: int, m: int = 1) -> IntChainComplex:
    if kind == "free":
        return IntChainComplex.concentrated(k, 1)
    if kind == "torsion":
        return IntChainComplex.two_term(k - 1, m)
    if kind == "contractible":
        return IntChainComplex.two_term(k - 1, 1)
    raise ValueError(kind)


def _random_unimodular(n: int, rng: random.Random) -> np.ndarray:
    u = int_identity(n)
    perm = list(range(n))
    rng.shuffle(perm)
    u = u[perm]
    for _ in range(n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            u[i] = u[i] + rng.choice((-1, 1)) * u[j]
    return u


def _random_complex(window: TWindow, rng: random.Random, forced=()) -> IntChainComplex:
    pieces = list(forced)
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(("free", "torsion", "torsion", "contractible"))
        k = rng.randint(window.a, window.b)
        pieces.append((kind, k, rng.choice((2, 3, 4))))
    lo, hi = window.a - 1, window.b
    base = direct_sum(IntChainComplex(lo, [0] * (hi - lo + 1)), *(_piece(*p) for p in pieces))
    # change of basis degree by degree keeps the complex isomorphic
    us = {i: _random_unimodular(base.rank(i), rng) for i in base.degrees()}
    diffs = []
    for i in range(base.lo, base.hi):
        u_next, u = us[i + 1], us[i]
        inv = _unimodular_inverse(u)
        diffs.append(u_next @ base.d(i) @ inv)
    return IntChainComplex(base.lo, base.ranks, diffs)


def _unimodular_inverse(u: np.ndarray) -> np.ndarray:
    if u.shape[0] == 0:
        return u
    sf = smith_decomposition(u)
    # U u V = I  =>  u^{-1} = V U
    return sf.V @ sf.U


def chain_map_lattice(src: IntChainComplex, tgt: IntChainComplex) -> tuple[np.ndarray, list]:
    """Integer basis (columns) of all chain maps, with the unknown layout."""
    degs = range(min(src.lo, tgt.lo), max(src.hi, tgt.hi) + 1)
    layout, off = [], 0
    for i in degs:
        rows, cols = tgt.rank(i), src.rank(i)
        if rows and cols:
            layout.append((i, rows, cols, off))
            off += rows * cols
    pos = {i: (rows, cols, o) for i, rows, cols, o in layout}
    eqs = []
    for i in degs:
        # d_D f_i - f_{i+1} d_C = 0, an r_D(i+1) x r_C(i) block
        R, S = tgt.rank(i + 1), src.rank(i)
        if not (R and S):
            continue
        block = int_zeros(R * S, off)
        if i in pos:
            rows, cols, o = pos[i]
            dD = tgt.d(i)
            for r in range(R):
                for p in range(rows):
                    if dD[r, p]:
                        for s in range(S):
                            block[r * S + s, o + p * cols + s] += dD[r, p]
        if i + 1 in pos:
            rows, cols, o = pos[i + 1]
            dC = src.d(i)
            for r in range(R):
                for q in range(cols):
                    for s in range(S):
                        if dC[q, s]:
                            block[r * S + s, o + r * cols + q] -= dC[q, s]
        eqs.append(block)
    A = np.vstack(eqs) if eqs else int_zeros(0, off)
    return integer_kernel(A), layout


def cohomologically_zero_lattice(src: IntChainComplex, tgt: IntChainComplex) -> tuple[np.ndarray, list]:
    """Generators (columns) of the chain maps inducing zero on every ``H^i``."""
    K, layout = chain_map_lattice(src, tgt)
    if K.shape[1] == 0:
        return K, layout
    rows_phi, mods = [], []
    for i, rows, cols, o in layout:
        hs, ht = cohomology(src, i), cohomology(tgt, i)
        for r, n in enumerate(ht.orders):
            for j in range(len(hs.orders)):
                row = np.zeros(K.shape[0], dtype=object)
                for p in range(rows):
                    if ht.proj[r, p]:
                        for q in range(cols):
                            row[o + p * cols + q] = ht.proj[r, p] * hs.generators[q, j]
                rows_phi.append(row)
                mods.append(n)
    if not rows_phi:
        return K, layout
    phi = np.vstack(rows_phi) @ K
    aug = np.hstack([phi, _diag(mods)])
    ker = integer_kernel(aug)
    gens = K @ ker[: K.shape[1], :]
    keep = [c for c in range(gens.shape[1]) if (gens[:, c] != 0).any()]
    return gens[:, keep], layout


def _diag(vals) -> np.ndarray:
    out = int_zeros(len(vals), len(vals))
    for i, v in enumerate(vals):
        out[i, i] = v
    return out


def _unflatten(vec, src, tgt, layout) -> ChainMap:
    maps = {i: vec[o : o + rows * cols].reshape(rows, cols) for i, rows, cols, o in layout}
    return ChainMap(src, tgt, maps)


def random_cohomologically_zero_map(src, tgt, rng: random.Random) -> ChainMap:
    gens, layout = cohomologically_zero_lattice(src, tgt)
    vec = np.zeros(gens.shape[0], dtype=object)
    for c in range(gens.shape[1]):
        vec = vec + rng.randint(-2, 2) * gens[:, c]
    return _unflatten(vec, src, tgt, layout).check()


@dataclass
class Instance:
    window: TWindow
    complexes: list
    maps: list
    seed: int

    def to_obj(self) -> dict:
        return {
            "window": [self.window.a, self.window.b],
            "seed": self.seed,
            "maps": [f.to_obj() for f in self.maps],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "Instance":
        maps = [ChainMap.from_obj(m) for m in obj["maps"]]
        complexes = [m.source for m in maps] + ([maps[-1].target] if maps else [])
        return cls(TWindow(*obj["window"]), complexes, maps, obj.get("seed"))


def generate_cohomologically_zero_instance(window: TWindow, seed: int, verify: bool = True) -> Instance:
    """Random ``M_1 -> ... -> M_{b-a+2}`` with cohomology in the window and zero-on-cohomology maps.

    Each ``M_j`` is a random direct sum of ``Z[k]``, ``Z -m-> Z`` and
    ``Z -1-> Z`` in a scrambled basis.  For a window of width at least two,
    half the seeds plant a torsion class one degree above a torsion or free
    class in the next object, which is where maps that are zero on
    cohomology but not null-homotopic live.
    """
    rng = random.Random(seed)
    n = window.length + 1
    forced = [[] for _ in range(n)]
    if window.b > window.a and rng.random() < 0.5:
        k = rng.randint(window.a, window.b - 1)
        j = rng.randrange(n - 1)
        m = rng.choice((2, 4))
        forced[j].append(("torsion", k + 1, m))
        forced[j + 1].append(rng.choice((("torsion", k, 2), ("free", k, 1))))
    complexes = [_random_complex(window, rng, forced[j]) for j in range(n)]
    maps = [random_cohomologically_zero_map(complexes[j], complexes[j + 1], rng) for j in range(n - 1)]
    if verify:
        bad = check_preconditions(maps, window)
        if bad:
            raise AssertionError(f"generated instance violates its own contract: {bad[0].to_obj()}")
    return Instance(window, complexes, maps, seed)


def sweep(window: TWindow, seeds: Sequence[int]) -> dict:
    """Run the composite check over many seeds; also counts single maps that are not null-homotopic."""
    failures, sharp = [], []
    for s in seeds:
        inst = generate_cohomologically_zero_instance(window, s)
        verdict = vancrit_check(inst.maps, window)
        if not verdict.vanishes or not verdict.homotopy.verify():
            failures.append(s)
        if not null_homotopy(inst.maps[0]).exists:
            sharp.append(s)
    return {"instances": len(seeds), "failures": failures, "single_map_not_null": sharp}
