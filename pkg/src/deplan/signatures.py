"""Depth-indexed signatures, canonical and rooted bounded contractions, and
the canonical byte encoding of contracted states.

The h-signature of a world is its label together with, per agent, the set of
(h-1)-signatures reachable from its h-bisimulation class. Signatures of
bounded-bisimilar worlds coincide, so they serve as naming-independent world
identities. Signatures are hash-consed: structurally equal values are the
same object, and each carries a canonical byte encoding whose bytewise
lexicographic order is the fixed total order used for tie-breaking.

Byte encoding of a signature (all integers 4-byte big-endian):

    [n = number of set atoms][n ascending atom indices]
    [m = number of agent entries]
    per entry, ascending agent index:
        [agent index][c = number of child signatures]
        [c child encodings, sorted ascending bytewise]

Agent entries exist only for agents with at least one successor. The
encoding is injective, so bytewise order is a strict total order.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field

from .contraction import Partition, bounded_partition_refinement
from .logic import EpistemicModel, EpistemicState, ModelError, depth_map, restrict_with_map


class ContractionError(RuntimeError):
    """Internal-consistency failure during contraction construction."""


_U32 = struct.Struct(">I")


class Signature:
    """Hash-consed signature value. Compare with ``is``/``==`` (identical) or
    by ``encoding`` for the total order."""

    __slots__ = ("label_atoms", "children", "encoding")

    def __init__(self, label_atoms: tuple[int, ...],
                 children: tuple[tuple[int, tuple["Signature", ...]], ...],
                 encoding: bytes):
        self.label_atoms = label_atoms
        self.children = children
        self.encoding = encoding

    def __repr__(self) -> str:
        return f"Signature({self.encoding.hex()})"


_intern: dict[bytes, Signature] = {}


def make_signature(label: int,
                   children: dict[int, set[Signature]] | None = None) -> Signature:
    """Intern the signature with the given label bitmask and per-agent child
    signature sets."""
    label_atoms = tuple(k for k in range(label.bit_length()) if label >> k & 1)
    norm: list[tuple[int, tuple[Signature, ...]]] = []
    if children:
        for agent in sorted(children):
            kids = children[agent]
            if kids:
                norm.append((agent, tuple(sorted(kids, key=lambda s: s.encoding))))
    parts = [_U32.pack(len(label_atoms))]
    parts += [_U32.pack(a) for a in label_atoms]
    parts.append(_U32.pack(len(norm)))
    for agent, kids in norm:
        parts.append(_U32.pack(agent))
        parts.append(_U32.pack(len(kids)))
        parts += [k.encoding for k in kids]
    encoding = b"".join(parts)
    sig = _intern.get(encoding)
    if sig is None:
        sig = Signature(label_atoms, tuple(norm), encoding)
        _intern[encoding] = sig
    return sig


def signature_order(x: Signature, y: Signature) -> int:
    """-1 / 0 / +1 comparison under the fixed total order (bytewise order of
    the canonical encodings)."""
    if x.encoding < y.encoding:
        return -1
    if x.encoding > y.encoding:
        return 1
    return 0


@dataclass
class SignatureTable:
    """Signatures, bounds and representatives of one state at bound b.

    Everything is computed on the depth-restricted state (worlds deeper than
    b, and unreachable worlds, are dropped up front); ``old_to_new`` records
    the re-indexing.
    """

    state: EpistemicState            # the restricted state
    bound: int
    old_to_new: dict[int, int]
    partitions: list[Partition]      # P_0 .. P_b of the restricted model
    depths: dict[int, int]
    world_bound: list[int]           # b(w) = b - d(w), all >= 0
    sig: list[dict[int, Signature]]  # sig[h][block-id of P_h]
    max_repr: list[int] = field(default_factory=list)
    repr_sig: dict[int, Signature] = field(default_factory=dict)

    def sig_of(self, w: int, h: int) -> Signature:
        return self.sig[h][self.partitions[h].block_of[w]]


def compute_signatures(s: EpistemicState, b: int) -> SignatureTable:
    """Build partitions, per-block signatures, world bounds, the maximal
    representatives and their representative signatures."""
    if b < 0:
        raise ValueError("bound must be >= 0")
    restricted, old_to_new = restrict_with_map(s, b)
    model = restricted.model
    partitions = bounded_partition_refinement(restricted, b)
    depths = depth_map(restricted)
    world_bound = [b - depths[w] for w in range(model.num_worlds)]

    # Per-block successor block sets: members of one P_h block reach the same
    # set of P_{h-1} blocks, but we take the union over members anyway.
    sig: list[dict[int, Signature]] = []
    level0 = {bid: make_signature(model.labels[block[0]])
              for bid, block in enumerate(partitions[0].blocks)}
    sig.append(level0)
    for h in range(1, b + 1):
        ph, ph1 = partitions[h], partitions[h - 1]
        level: dict[int, Signature] = {}
        for bid, block in enumerate(ph.blocks):
            children: dict[int, set[Signature]] = {}
            for i in range(len(model.agents)):
                kids: set[Signature] = set()
                for w in block:
                    for v in model.succ(i, w):
                        kids.add(sig[h - 1][ph1.block_of[v]])
                if kids:
                    children[i] = kids
            level[bid] = make_signature(model.labels[block[0]], children)
        sig.append(level)

    table = SignatureTable(restricted, b, old_to_new, partitions, depths,
                           world_bound, sig)

    # w is a maximal representative iff no world of its P_{b(w)} block has a
    # strictly larger bound.
    max_bound_in_block: list[dict[int, int]] = []
    for h in range(b + 1):
        per_block: dict[int, int] = {}
        for w in range(model.num_worlds):
            bid = partitions[h].block_of[w]
            wb = world_bound[w]
            if per_block.get(bid, -1) < wb:
                per_block[bid] = wb
        max_bound_in_block.append(per_block)
    for w in range(model.num_worlds):
        h = world_bound[w]
        bid = partitions[h].block_of[w]
        if max_bound_in_block[h][bid] <= h:
            table.max_repr.append(w)
            table.repr_sig[w] = table.sig_of(w, h)
    return table


def canonical_signature(table: SignatureTable, w: int, h: int) -> Signature:
    """Least representative signature among maximal representatives that are
    h-bisimilar to ``w``."""
    if not (0 <= h <= table.bound):
        raise ValueError(f"h={h} outside 0..{table.bound}")
    ph = table.partitions[h]
    target = ph.block_of[w]
    best: Signature | None = None
    for v in table.max_repr:
        if table.world_bound[v] >= h and ph.block_of[v] == target:
            cand = table.repr_sig[v]
            if best is None or cand.encoding < best.encoding:
                best = cand
    if best is None:
        raise ContractionError(
            f"no maximal representative {h}-bisimilar to world {w}")
    return best


def canonical_contraction(s: EpistemicState, b: int) -> EpistemicState:
    """The unique minimal state b-bisimilar to ``s``: worlds are representative
    signatures of maximal representatives, edges go to canonical signatures
    one depth level down. World names carry the signature encodings, so
    b-bisimilar inputs produce byte-identical outputs."""
    table = compute_signatures(s, b)
    model = table.state.model

    world_sigs = sorted({table.repr_sig[x] for x in table.max_repr},
                        key=lambda sig: sig.encoding)
    index_of = {sig: k for k, sig in enumerate(world_sigs)}

    labels = [0] * len(world_sigs)
    for x in table.max_repr:
        labels[index_of[table.repr_sig[x]]] = model.labels[x]

    relations: list[set[tuple[int, int]]] = [set() for _ in model.agents]
    for x in table.max_repr:
        bx = table.world_bound[x]
        if bx <= 0:
            continue
        src = index_of[table.repr_sig[x]]
        for i in range(len(model.agents)):
            for y in model.succ(i, x):
                dst = index_of[canonical_signature(table, y, bx - 1)]
                relations[i].add((src, dst))

    cmodel = EpistemicModel(model.atoms, model.agents, labels, relations,
                            world_names=[sig.encoding for sig in world_sigs])
    designated = index_of[table.repr_sig[table.old_to_new[s.designated]]]
    return EpistemicState(cmodel, designated)


def rooted_contraction(s: EpistemicState, b: int,
                       order: list[int] | None = None) -> EpistemicState:
    """Minimal b-bisimilar contraction whose edge targets are chosen by the
    least representative under a world total order (default: index order).
    Order-dependent; kept as a minimality cross-check.

    World names record the least member of each representative class under
    ``order`` (as ``"w{index}"`` over the input state's indices), which makes
    the order-dependence observable."""
    table = compute_signatures(s, b)
    model = table.state.model
    n = model.num_worlds

    if order is None:
        rank = list(range(n))
    else:
        new_to_old = {v: k for k, v in table.old_to_new.items()}
        rank = [0] * n
        pos = {w: p for p, w in enumerate(order)}
        for w in range(n):
            old = new_to_old[w]
            if old not in pos:
                raise ValueError(f"order does not cover world {old}")
            rank[w] = pos[old]

    def least_repr(y: int, h: int) -> int:
        ph = table.partitions[h]
        target = ph.block_of[y]
        best = -1
        for v in table.max_repr:
            if table.world_bound[v] >= h and ph.block_of[v] == target:
                if best == -1 or rank[v] < rank[best]:
                    best = v
        if best == -1:
            raise ContractionError(f"no maximal representative {h}-bisimilar to world {y}")
        return best

    # representative class of x: its P_{b(x)} block; dedupe by the class set
    def repr_class(x: int) -> tuple[int, ...]:
        return table.partitions[table.world_bound[x]].blocks[
            table.partitions[table.world_bound[x]].block_of[x]]

    classes: dict[tuple[int, ...], int] = {}
    class_members: list[tuple[int, ...]] = []
    class_rep: list[int] = []
    for x in sorted(table.max_repr, key=lambda w: rank[w]):
        cls = repr_class(x)
        if cls not in classes:
            classes[cls] = len(class_members)
            class_members.append(cls)
            class_rep.append(x)

    labels = [model.labels[class_rep[k]] for k in range(len(class_rep))]
    relations: list[set[tuple[int, int]]] = [set() for _ in model.agents]
    for x in table.max_repr:
        bx = table.world_bound[x]
        if bx <= 0:
            continue
        src = classes[repr_class(x)]
        for i in range(len(model.agents)):
            for y in model.succ(i, x):
                v = least_repr(y, bx - 1)
                relations[i].add((src, classes[repr_class(v)]))

    new_to_old = {v: k for k, v in table.old_to_new.items()}
    names = [f"w{new_to_old[class_rep[k]]}" for k in range(len(class_rep))]
    rmodel = EpistemicModel(model.atoms, model.agents, labels, relations, names)
    designated = classes[repr_class(table.old_to_new[s.designated])]
    return EpistemicState(rmodel, designated)


def encode_state(s: EpistemicState) -> bytes:
    """Deterministic injective serialization of a canonically contracted
    state. Equal byte strings <=> identical canonical contractions.

    Layout (integers 4-byte big-endian, world references are the worlds'
    signature encodings):

        [number of worlds][world encodings, sorted ascending]
        per agent in declaration order:
            [agent index][number of edges]
            [edges as (source encoding, target encoding), sorted ascending]
        [designated world encoding]
    """
    model = s.model
    if model.world_names is None or not all(isinstance(x, bytes) for x in model.world_names):
        raise ModelError("encode_state requires signature-named worlds "
                         "(canonical contraction output)")
    names = list(model.world_names)
    parts = [_U32.pack(model.num_worlds)]
    parts += sorted(names)
    for i in range(len(model.agents)):
        edges = sorted((names[u], names[v]) for u, v in model.relations[i])
        parts.append(_U32.pack(i))
        parts.append(_U32.pack(len(edges)))
        for a, bb in edges:
            parts.append(a)
            parts.append(bb)
    parts.append(names[s.designated])
    return b"".join(parts)
