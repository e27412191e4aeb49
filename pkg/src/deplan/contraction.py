"""Bisimulation machinery: partition refinement, (bounded) bisimilarity tests,
standard contractions, and the brute-force recursion used as test oracle.

Splitting convention: a block B is split against a splitter block S for agent
i into the worlds of B that have an i-successor inside S and the rest. With
this convention the block of x in the h-th refined partition is exactly the
h-bisimulation class of x, which is the invariant all later signature-based
machinery relies on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .logic import EpistemicModel, EpistemicState


@dataclass(frozen=True)
class Partition:
    """A partition of the world set 0..n-1.

    Blocks are sorted tuples, ordered by their smallest world index so that
    block ids are deterministic. ``block_of[w]`` is the id of w's block.
    """

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @staticmethod
    def from_blocks(blocks: Iterable[Iterable[int]], num_worlds: int) -> "Partition":
        norm = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        block_of = [-1] * num_worlds
        for bid, block in enumerate(norm):
            if not block:
                raise ValueError("empty block")
            for w in block:
                if block_of[w] != -1:
                    raise ValueError(f"world {w} appears in two blocks")
                block_of[w] = bid
        if any(b == -1 for b in block_of):
            raise ValueError("blocks do not cover the world set")
        return Partition(tuple(norm), tuple(block_of))

    @staticmethod
    def by_labels(model: EpistemicModel) -> "Partition":
        groups: dict[int, list[int]] = {}
        for w, lab in enumerate(model.labels):
            groups.setdefault(lab, []).append(w)
        return Partition.from_blocks(groups.values(), model.num_worlds)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def same_block(self, w: int, v: int) -> bool:
        return self.block_of[w] == self.block_of[v]


def refine(partition: Partition, splitter: Iterable[int], model: EpistemicModel) -> Partition:
    """Refine ``partition`` against the splitter set, one agent at a time in
    declaration order. A block is split by whether its worlds can reach the
    splitter via that agent."""
    n = model.num_worlds
    splitter = set(splitter)
    blocks: list[tuple[int, ...]] = list(partition.blocks)
    for i in range(len(model.agents)):
        reaching: set[int] = set()
        for s in splitter:
            reaching.update(model.pred(i, s))
        if not reaching:
            continue
        new_blocks: list[tuple[int, ...]] = []
        for block in blocks:
            inside = tuple(w for w in block if w in reaching)
            if not inside or len(inside) == len(block):
                new_blocks.append(block)
            else:
                outside = tuple(w for w in block if w not in reaching)
                new_blocks.append(inside)
                new_blocks.append(outside)
        blocks = new_blocks
    return Partition.from_blocks(blocks, n)


def _refinement_round(partition: Partition, model: EpistemicModel) -> Partition:
    """Refine against every block of the (frozen) input partition."""
    current = partition
    for splitter in partition.blocks:
        current = refine(current, splitter, model)
    return current


def _as_model(s: EpistemicState | EpistemicModel) -> EpistemicModel:
    return s.model if isinstance(s, EpistemicState) else s


def bounded_partition_refinement(s: EpistemicState | EpistemicModel, b: int) -> list[Partition]:
    """Partitions [P_0 .. P_b]: P_0 groups by label, P_{h+1} refines P_h.

    The block of x in P_h is the h-bisimulation class of x. When a fixpoint
    is reached early, the stable partition is replicated up to index b.
    """
    if b < 0:
        raise ValueError("bound must be >= 0")
    model = _as_model(s)
    partitions = [Partition.by_labels(model)]
    h = 0
    stable = False
    while h < b and not stable:
        nxt = _refinement_round(partitions[h], model)
        stable = nxt.block_of == partitions[h].block_of
        partitions.append(nxt)
        h += 1
    while len(partitions) <= b:
        partitions.append(partitions[-1])
    return partitions


def full_partition_refinement(s: EpistemicState | EpistemicModel) -> Partition:
    """Refine to stability; blocks are the full bisimulation classes."""
    model = _as_model(s)
    current = Partition.by_labels(model)
    while True:
        nxt = _refinement_round(current, model)
        if nxt.block_of == current.block_of:
            return current
        current = nxt


# ---------------------------------------------------------------------------
# Two-state tests via disjoint union
# ---------------------------------------------------------------------------

def disjoint_union(s: EpistemicState, t: EpistemicState) -> tuple[EpistemicModel, int, int]:
    """One model holding both states; vocabularies merged by name.

    Returns (model, designated-of-s, designated-of-t); t's worlds are offset
    by s's world count.
    """
    ms, mt = s.model, t.model
    atoms = list(ms.atoms) + [a for a in mt.atoms if a not in ms.atom_index]
    agents = list(ms.agents) + [a for a in mt.agents if a not in ms.agent_index]
    atom_pos = {a: k for k, a in enumerate(atoms)}
    offset = ms.num_worlds

    def remap_label(model: EpistemicModel, lab: int) -> int:
        out = 0
        for k, a in enumerate(model.atoms):
            if lab >> k & 1:
                out |= 1 << atom_pos[a]
        return out

    labels = [remap_label(ms, lab) for lab in ms.labels]
    labels += [remap_label(mt, lab) for lab in mt.labels]
    relations: dict[str, set[tuple[int, int]]] = {a: set() for a in agents}
    for k, a in enumerate(ms.agents):
        relations[a] |= ms.relations[k]
    for k, a in enumerate(mt.agents):
        relations[a] |= {(u + offset, v + offset) for u, v in mt.relations[k]}
    model = EpistemicModel(atoms, agents, labels, relations)
    return model, s.designated, t.designated + offset


def b_bisimilar(s: EpistemicState, t: EpistemicState, b: int) -> bool:
    """True iff a b-bisimulation links the designated worlds."""
    model, ws, wt = disjoint_union(s, t)
    partitions = bounded_partition_refinement(model, b)
    return partitions[b].same_block(ws, wt)


def bisimilar(s: EpistemicState, t: EpistemicState) -> bool:
    """True iff the designated worlds are fully bisimilar."""
    model, ws, wt = disjoint_union(s, t)
    return full_partition_refinement(model).same_block(ws, wt)


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------

def quotient(state: EpistemicState, partition: Partition) -> EpistemicState:
    """Quotient structure: one world per block, edges lifted blockwise."""
    model = state.model
    labels = [model.labels[block[0]] for block in partition.blocks]
    relations = []
    for r in model.relations:
        relations.append({(partition.block_of[u], partition.block_of[v]) for u, v in r})
    qmodel = EpistemicModel(model.atoms, model.agents, labels, relations)
    return EpistemicState(qmodel, partition.block_of[state.designated])


def standard_contraction(s: EpistemicState) -> EpistemicState:
    """Quotient by full bisimilarity."""
    return quotient(s, full_partition_refinement(s))


def standard_b_contraction(s: EpistemicState, b: int) -> EpistemicState:
    """Quotient by b-bisimilarity. Not minimal in general; kept as a size
    yardstick and oracle."""
    partitions = bounded_partition_refinement(s, b)
    return quotient(s, partitions[b])


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def naive_h_bisimilar(s: EpistemicState | EpistemicModel, w: int, v: int, h: int,
                      _memo: dict | None = None) -> bool:
    """Direct recursion on the forth/back conditions. Test oracle only; kept
    deliberately independent of the partition-refinement path."""
    model = _as_model(s)
    if _memo is None:
        _memo = {}
    key = (w, v, h)
    cached = _memo.get(key)
    if cached is not None:
        return cached
    if model.labels[w] != model.labels[v]:
        _memo[key] = False
        return False
    if h == 0:
        _memo[key] = True
        return True
    result = True
    for i in range(len(model.agents)):
        sw, sv = model.succ(i, w), model.succ(i, v)
        for x in sw:
            if not any(naive_h_bisimilar(model, x, y, h - 1, _memo) for y in sv):
                result = False
                break
        if result:
            for y in sv:
                if not any(naive_h_bisimilar(model, x, y, h - 1, _memo) for x in sw):
                    result = False
                    break
        if not result:
            break
    _memo[key] = result
    return result
