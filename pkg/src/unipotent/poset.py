"""The refinement poset of chains of surjective pointed maps ``P_* -> ... -> {}_*``.

Every intermediate set of a chain is labelled canonically by the blocks of
``P`` that reach it: a level is a set of pairwise disjoint non-empty blocks
(elements of ``P`` missing from every block went to the basepoint), and a
surjective pointed map between consecutive levels means each block of the
next level is a union of blocks of the previous one.  The name of a label is
the smallest element of its block.  With this encoding chains compare by
plain equality.

Only the reduced skeleton (no isomorphism steps) is enumerated; it is finite
since level sizes strictly decrease.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .pointed import PointedMap

Block = frozenset
Level = frozenset  # frozenset of Blocks

MAX_GROUND_SET = 5


@dataclass(frozen=True)
class RefinementChain:
    ground: tuple
    levels: tuple  # levels[0] = singletons of ground, levels[-1] = empty

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(frozenset(frozenset(b) for b in lv) for lv in self.levels))
        if not self.levels or self.levels[0] != _singletons(self.ground):
            raise ValueError("a chain starts at the ground set")
        if self.levels[-1] or len(self.levels) < 2:
            raise ValueError("a chain ends at the empty set")
        for src, tgt in zip(self.levels, self.levels[1:]):
            if not _is_surjection(src, tgt):
                raise ValueError(f"step {_fmt_level(src)} -> {_fmt_level(tgt)} is not a surjective pointed map")

    @classmethod
    def minimal(cls, ground: Sequence) -> "RefinementChain":
        return cls(tuple(ground), (_singletons(ground), frozenset()))

    @property
    def length(self) -> int:
        """Number of maps in the chain."""
        return len(self.levels) - 1

    def maps(self) -> list[PointedMap]:
        """The chain as explicit pointed maps between canonically named sets."""
        out = []
        for src, tgt in zip(self.levels, self.levels[1:]):
            s_names = sorted(_name(b) for b in src)
            t_names = sorted(_name(b) for b in tgt)
            imgs = []
            for name in s_names:
                block = next(b for b in src if _name(b) == name)
                over = next((c for c in tgt if block <= c), None)
                imgs.append(None if over is None else _name(over))
            out.append(PointedMap(tuple(s_names), tuple(t_names), tuple(imgs)))
        return out

    def is_reduced(self) -> bool:
        return all(a != b for a, b in zip(self.levels, self.levels[1:]))

    def descriptor(self) -> list:
        return [[sorted(b, key=_sort_key) for b in sorted(lv, key=_block_key)] for lv in self.levels]

    def __str__(self):
        return " -> ".join(_fmt_level(lv) for lv in self.levels)


def _sort_key(x):
    return (str(type(x)), x)


def _block_key(b):
    return sorted(map(_sort_key, b))


def _name(block: Block):
    return min(block, key=_sort_key)


def _singletons(ground: Iterable) -> Level:
    return frozenset(frozenset([p]) for p in ground)


def _fmt_level(lv: Level) -> str:
    if not lv:
        return "{}"
    return "".join("{" + ",".join(map(str, sorted(b, key=_sort_key))) + "}" for b in sorted(lv, key=_block_key))


def _is_surjection(src: Level, tgt: Level) -> bool:
    """Each target block is a non-empty union of source blocks."""
    for c in tgt:
        inside = [b for b in src if b <= c]
        if not inside or frozenset().union(*inside) != c:
            return False
    for b in src:
        # a source block either sits inside one target block or goes to the basepoint
        if any(b & c and not b <= c for c in tgt):
            return False
    return True


def _set_partitions(items: Sequence) -> Iterable[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _intermediate_levels(src: Level, tgt: Level) -> Iterable[Level]:
    """All ``M`` with surjections ``src -> M -> tgt``.

    Each target block is split as a partition of the source blocks it
    contains; any leftover source blocks are partitioned among a subset that
    survives into ``M`` while the rest go to the basepoint.
    """
    src_list = sorted(src, key=_block_key)
    covered = [b for b in src_list if any(b <= c for c in tgt)]
    loose = [b for b in src_list if b not in covered]
    per_target = []
    for c in sorted(tgt, key=_block_key):
        inside = [b for b in covered if b <= c]
        per_target.append([[frozenset().union(*grp) for grp in part] for part in _set_partitions(inside)])
    loose_options = []
    for k in range(len(loose) + 1):
        for kept in itertools.combinations(loose, k):
            for part in _set_partitions(list(kept)):
                loose_options.append([frozenset().union(*grp) for grp in part])
    for choice in itertools.product(*per_target):
        base = [blk for blocks in choice for blk in blocks]
        for extra in loose_options:
            yield frozenset(base + extra)


def elementary_refinements(chain: RefinementChain, reduced: bool = True) -> list[RefinementChain]:
    """Chains obtained by factoring one step into two surjections.

    With ``reduced`` the factorisations through a set isomorphic to either end
    of the step are skipped.  Without it those appear too (each step can be
    padded by an identity).
    """
    out = []
    seen = set()
    for i, (src, tgt) in enumerate(zip(chain.levels, chain.levels[1:])):
        for mid in _intermediate_levels(src, tgt):
            if reduced and (mid == src or mid == tgt):
                continue
            levels = chain.levels[: i + 1] + (mid,) + chain.levels[i + 1 :]
            if levels in seen:
                continue
            seen.add(levels)
            out.append(RefinementChain(chain.ground, levels))
    return sorted(out, key=lambda c: json.dumps(c.descriptor(), default=str))


@dataclass
class PosetK:
    """Enumerated elements with the refinement order ``leq`` (pairs of indices)."""

    ground: tuple
    nodes: list
    leq: set = field(default_factory=set)
    hasse: list = field(default_factory=list)  # elementary-refinement edges
    max_length: int | None = None

    def index(self, node) -> int:
        return self.nodes.index(node)

    def precedes(self, x, y) -> bool:
        return (self.index(x), self.index(y)) in self.leq

    def minimal_elements(self) -> list:
        n = len(self.nodes)
        return [self.nodes[i] for i in range(n) if not any((j, i) in self.leq for j in range(n) if j != i)]

    def without(self, node) -> "PosetK":
        keep = [i for i, x in enumerate(self.nodes) if x != node]
        remap = {old: new for new, old in enumerate(keep)}
        return PosetK(
            self.ground,
            [self.nodes[i] for i in keep],
            {(remap[i], remap[j]) for i, j in self.leq if i in remap and j in remap},
            [(remap[i], remap[j]) for i, j in self.hasse if i in remap and j in remap],
            self.max_length,
        )

    def to_hasse_obj(self) -> dict:
        return {
            "nodes": [{"id": i, "chain": c.descriptor(), "label": str(c)} if isinstance(c, RefinementChain) else {"id": i, "label": str(c)} for i, c in enumerate(self.nodes)],
            "edges": [list(e) for e in sorted(self.hasse)],
        }

    def to_graphviz(self) -> str:
        lines = ["digraph K {"]
        for i, c in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{c}"];')
        for i, j in sorted(self.hasse):
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


def disjoint_union(k1: PosetK, k2: PosetK) -> PosetK:
    """Negative-control helper: two posets side by side, nodes tagged 0/1."""
    n1 = len(k1.nodes)
    nodes = [(0, x) for x in k1.nodes] + [(1, x) for x in k2.nodes]
    leq = set(k1.leq) | {(i + n1, j + n1) for i, j in k2.leq}
    hasse = list(k1.hasse) + [(i + n1, j + n1) for i, j in k2.hasse]
    return PosetK(k1.ground + k2.ground, nodes, leq, hasse)


def enumerate_poset(ground: Sequence, reduced: bool = True, max_length: int | None = None) -> PosetK:
    """Every reduced chain reachable from ``P_* -> {}_*`` by elementary refinements."""
    ground = tuple(ground)
    if len(ground) > MAX_GROUND_SET:
        raise ValueError(f"|P| = {len(ground)} exceeds the enumeration bound {MAX_GROUND_SET}")
    if not reduced:
        raise ValueError("only the reduced skeleton is finite")
    if max_length is not None and max_length < 1:
        raise ValueError("max_length must be >= 1")
    start = RefinementChain.minimal(ground)
    nodes = [start]
    index = {start: 0}
    hasse = []
    queue = deque([start])
    while queue:
        chain = queue.popleft()
        for ref in elementary_refinements(chain, reduced=True):
            if max_length is not None and ref.length > max_length:
                continue
            if ref not in index:
                index[ref] = len(nodes)
                nodes.append(ref)
                queue.append(ref)
            hasse.append((index[chain], index[ref]))
    leq = _reflexive_transitive_closure(len(nodes), hasse)
    return PosetK(ground, nodes, leq, sorted(set(hasse)), max_length)


def _reflexive_transitive_closure(n: int, edges: Iterable[tuple[int, int]]) -> set:
    succ = [[] for _ in range(n)]
    for i, j in edges:
        succ[i].append(j)
    closure = set()
    for s in range(n):
        stack, seen = [s], {s}
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        closure.update((s, t) for t in seen)
    return closure


def check_initiality(poset: PosetK) -> bool:
    """The one-step chain lies below everything, and nothing else does."""
    n = len(poset.nodes)
    bottoms = [i for i in range(n) if all((i, j) in poset.leq for j in range(n))]
    if len(bottoms) != 1:
        return False
    node = poset.nodes[bottoms[0]]
    return isinstance(node, RefinementChain) and node == RefinementChain.minimal(poset.ground)


def check_groupoid_connectivity(poset: PosetK) -> bool:
    """Connectedness of the comparability graph."""
    n = len(poset.nodes)
    if n == 0:
        return False
    adj = [set() for _ in range(n)]
    for i, j in poset.leq:
        if i != j:
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == n


def is_partial_order(poset: PosetK) -> bool:
    n = len(poset.nodes)
    leq = poset.leq
    if any((i, i) not in leq for i in range(n)):
        return False
    if any((j, i) in leq and i != j for i, j in leq):
        return False
    by_src: dict[int, set] = {}
    for i, j in leq:
        by_src.setdefault(i, set()).add(j)
    return all(by_src.get(j, set()) <= by_src[i] for i in by_src for j in by_src[i])


def brute_force_count(ground: Sequence) -> int:
    """Independent count of reduced chains: enumerate strictly shrinking level sequences."""
    ground = tuple(ground)
    all_levels = _all_levels(ground)
    start = _singletons(ground)

    def extend(level: Level) -> int:
        if not level:
            return 1
        total = 0
        for nxt in all_levels:
            if len(nxt) < len(level) and _is_surjection(level, nxt):
                total += extend(nxt)
        return total

    if not ground:
        return 1
    return extend(start)


def _all_levels(ground: tuple) -> list:
    out = []
    for k in range(len(ground) + 1):
        for kept in itertools.combinations(ground, k):
            for part in _set_partitions(list(kept)):
                out.append(frozenset(frozenset(b) for b in part))
    return out
