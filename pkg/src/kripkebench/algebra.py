"""Finite modal-algebra computations: generated subalgebras, free-algebra
counting, layered block systems, and point-definability certificates.

A set algebra over n worlds is a family of masks containing the empty
and the full set and closed under complement, intersection, and the two
diamond preimages.  The layered block system of a model refines the
one-block partition by variable agreement and then, layer by layer, by
the sets of predecessor-layer blocks met by each world's successors;
its stabilised partition is the coarsest valuation-respecting
auto-bisimulation and coincides with the atom partition of the model's
generated subalgebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

from .errors import BudgetExceeded, CapExceeded, FormatError, NotDefinable, NotPretransitive
from .formulas import (And, Box, Dia, Formula, Imp, Not, Top, Var, box_star,
                       conj, disj, modal_depth)
from .frames import (Frame, bitstring, bitstring_key, compose_rows,
                     diagonal, generated_subframe, preimage, rt_closure,
                     union_rows, worlds_of)
from .semantics import DEFAULT_BUDGET, Model, eval_formula


@dataclass(frozen=True)
class SetAlgebra:
    """A verified set algebra with designated generators."""

    n: int
    elements: tuple[int, ...]        # sorted in bitstring order
    generators: tuple[int, ...]      # indices into elements

    def __post_init__(self):
        index = set(self.elements)
        full = (1 << self.n) - 1
        if 0 not in index or full not in index:
            raise FormatError("set algebra must contain the empty and full sets")

    def __len__(self) -> int:
        return len(self.elements)


def _close(frame: Frame, seeds: Sequence[int], cap: int) -> list[int]:
    """Least family containing the seeds and the full set, closed under
    complement, intersection, and both diamond preimages."""
    full = frame.full
    elements: list[int] = []
    seen: set[int] = set()

    def add(mask: int):
        if mask not in seen:
            seen.add(mask)
            elements.append(mask)
            if len(elements) > cap:
                raise CapExceeded(len(elements), cap)

    add(full)
    for s in seeds:
        add(s)
    queue = list(elements)
    while queue:
        u = queue.pop(0)
        before = len(elements)
        add(full ^ u)
        add(preimage(frame.r1, u))
        add(preimage(frame.r2, u))
        for v in list(elements):
            add(u & v)
        queue.extend(elements[before:])
    return elements


def generated_subalgebra(frame: Frame, gens: Sequence[int],
                         cap: int = 1_000_000) -> SetAlgebra:
    """Subalgebra of the frame's powerset algebra generated by ``gens``."""
    full = frame.full
    gens = [int(g) for g in gens]
    for g in gens:
        if g < 0 or g & ~full:
            raise FormatError("generator out of range")
    elements = _close(frame, gens, cap)
    ordered = sorted(elements, key=lambda m: bitstring_key(m, frame.n))
    pos = {m: i for i, m in enumerate(ordered)}
    return SetAlgebra(frame.n, tuple(ordered), tuple(pos[g] for g in gens))


def atoms_of(alg: SetAlgebra) -> tuple[int, ...]:
    """Minimal nonempty elements, sorted by least world."""
    nonempty = [m for m in alg.elements if m]
    atoms = [m for m in nonempty
             if not any(o and o != m and o & ~m == 0 for o in nonempty)]
    return tuple(sorted(atoms, key=lambda m: (m & -m).bit_length()))


# --- block systems --------------------------------------------------------

@dataclass(frozen=True)
class BlockSystem:
    """Layered partitions: layer i is the equivalence induced by all
    formulas of modal depth < i over the model's variables."""

    n: int
    layers: tuple[tuple[int, ...], ...]    # layer -> blocks (masks)
    tree: dict[int, tuple[int, ...]]       # block mask -> immediate sub-blocks
    depth_index: dict[int, int]            # block mask -> least layer
    stabilization: int | None              # first i with layer i+1 == layer i

    @property
    def stabilized(self) -> tuple[int, ...] | None:
        if self.stabilization is None:
            return None
        return self.layers[self.stabilization]


def _sorted_blocks(blocks) -> tuple[int, ...]:
    return tuple(sorted(blocks, key=lambda m: (m & -m).bit_length()))


def _refine(frame: Frame, valuation, blocks: tuple[int, ...] | None) -> tuple[int, ...]:
    """One layer step: split by variables and, when a previous layer is given,
    by the per-modality sets of its blocks met by each world's successors.
    The first step (blocks=None) uses variables alone: depth-0 formulas
    cannot see successors."""
    block_of = {}
    if blocks is not None:
        for i, b in enumerate(blocks):
            for w in worlds_of(b):
                block_of[w] = i
    groups: dict[tuple, int] = {}
    out: list[int] = []
    for w in range(frame.n):
        profile = tuple(valuation.get(v, 0) >> w & 1 for v in sorted(valuation))
        if blocks is None:
            key = (profile,)
        else:
            succ1 = frozenset(block_of[x] for x in worlds_of(frame.r1[w]))
            succ2 = frozenset(block_of[x] for x in worlds_of(frame.r2[w]))
            key = (profile, succ1, succ2)
        if key in groups:
            out[groups[key]] |= 1 << w
        else:
            groups[key] = len(out)
            out.append(1 << w)
    return _sorted_blocks(out)


def block_system(m: Model, max_layers: int | None = None) -> BlockSystem:
    """Layered block system, stopping at stabilization or ``max_layers``.

    Stationarity only follows from a fixpoint of the successor step, not
    from the variables-only first step: with no variables, layer 1 equals
    layer 0 even when layer 2 still splits successor-free worlds.
    """
    frame = m.kripke
    if frame.n < 1:
        raise FormatError("block systems need at least one world")
    layers: list[tuple[int, ...]] = [(frame.full,)]
    stabilization = None
    while max_layers is None or len(layers) <= max_layers:
        prev = layers[-1] if len(layers) > 1 else None
        nxt = _refine(frame, m.valuation, prev)
        if len(layers) > 1 and nxt == layers[-1]:
            # fixpoint of the successor step; earliest equal layer is the index
            stabilization = min(i for i, layer in enumerate(layers)
                                if layer == nxt)
            layers = layers[:stabilization + 1]
            break
        layers.append(nxt)
    depth_index: dict[int, int] = {}
    for i, layer in enumerate(layers):
        for b in layer:
            depth_index.setdefault(b, i)
    tree: dict[int, list[int]] = {b: [] for b in depth_index}
    for i in range(len(layers) - 1):
        for child in layers[i + 1]:
            if depth_index[child] != i + 1:
                continue
            parent = next(b for b in layers[i] if child & ~b == 0)
            tree[parent].append(child)
    return BlockSystem(frame.n, tuple(layers),
                       {b: tuple(c) for b, c in tree.items()},
                       depth_index, stabilization)


# --- free-algebra counting -------------------------------------------------

def _type_count(adj1: list[list[int]], adj2: list[list[int]],
                profiles: list[tuple]) -> int:
    """Number of classes of the coarsest profile-respecting bisimulation on a
    disjoint-union model given by adjacency lists."""
    n = len(profiles)
    seen: dict[tuple, int] = {}
    types = [0] * n
    for i, p in enumerate(profiles):
        types[i] = seen.setdefault(p, len(seen))
    while True:
        seen2: dict[tuple, int] = {}
        nxt = [0] * n
        for i in range(n):
            key = (types[i],
                   frozenset(types[j] for j in adj1[i]),
                   frozenset(types[j] for j in adj2[i]))
            nxt[i] = seen2.setdefault(key, len(seen2))
        if len(seen2) == len(set(types)):
            return len(seen2)
        types = nxt


def free_algebra_count(frames: Sequence[Frame], k: int,
                       cap: int = 1_000_000,
                       budget: int = DEFAULT_BUDGET) -> int:
    """Number of inequivalent k-formulas over the logic of ``frames``.

    Counted as the size of the subalgebra of the product algebra over all
    (frame, k-valuation) coordinates generated by the variable tuples.  That
    subalgebra is a finite Boolean algebra, so its size is 2 to the number
    of its atoms, and the atoms are exactly the bisimulation types of the
    disjoint union of all the valued models.  Raises CapExceeded carrying
    the exact count when it is larger than ``cap``.
    """
    if k < 0:
        raise FormatError("k must be nonnegative")
    total_coords = sum((1 << f.n) ** k for f in frames)
    if total_coords > budget:
        raise BudgetExceeded(total_coords, budget)
    adj1: list[list[int]] = []
    adj2: list[list[int]] = []
    profiles: list[tuple] = []
    for f in frames:
        succ1 = [worlds_of(row) for row in f.r1]
        succ2 = [worlds_of(row) for row in f.r2]
        for theta in iproduct(range(1 << f.n), repeat=k):
            base = len(profiles)
            for w in range(f.n):
                adj1.append([base + x for x in succ1[w]])
                adj2.append([base + x for x in succ2[w]])
                profiles.append(tuple(mask >> w & 1 for mask in theta))
    if not profiles:
        return 1  # the degenerate one-element algebra over no coordinates
    count = 1 << _type_count(adj1, adj2, profiles)
    if count > cap:
        raise CapExceeded(count, cap)
    return count


def naive_free_algebra_count(frames: Sequence[Frame], k: int,
                             cap: int = 1_000_000) -> int:
    """Independent oracle: literally close the generator tuples of the
    product algebra under the operations, and count."""
    coords: list[tuple[Frame, tuple[int, ...]]] = []
    for f in frames:
        for theta in iproduct(range(1 << f.n), repeat=k):
            coords.append((f, theta))
    if not coords:
        return 1
    fulls = tuple(f.full for f, _ in coords)
    gens = [tuple(theta[i] for _, theta in coords) for i in range(k)]
    elements: set[tuple[int, ...]] = set()
    queue: list[tuple[int, ...]] = []

    def add(t: tuple[int, ...]):
        if t not in elements:
            elements.add(t)
            queue.append(t)
            if len(elements) > cap:
                raise CapExceeded(len(elements), cap)

    add(fulls)
    for g in gens:
        add(tuple(g))
    while queue:
        u = queue.pop()
        add(tuple(f ^ x for f, x in zip(fulls, u)))
        add(tuple(preimage(fr.r1, x) for (fr, _), x in zip(coords, u)))
        add(tuple(preimage(fr.r2, x) for (fr, _), x in zip(coords, u)))
        for v in list(elements):
            add(tuple(x & y for x, y in zip(u, v)))
    return len(elements)


# --- definable points -------------------------------------------------------

@dataclass(frozen=True)
class DefinabilityCertificate:
    """A formula true at exactly one point, with its building blocks and a
    verification transcript."""

    world: int
    alpha: dict[int, Formula]     # submodel world (source numbering) -> definer
    gamma: Formula
    beta: Formula
    depth: int
    transcript: tuple[str, ...]


def _two_transitive(frame: Frame) -> bool:
    union = frame.union()
    two = union_rows(union_rows(diagonal(frame.n), union),
                     compose_rows(union, union))
    return two == rt_closure(union, frame.n)


def beta_formula(m: Model, r: int) -> DefinabilityCertificate:
    """Point-definability formula for world ``r``.

    Requires the frame to be 2-transitive for r1 | r2 (so the syntactic
    box-star expresses reachability) and the block system of the subframe
    generated by r to stabilise at singletons.  The certificate's formula
    evaluates to exactly {r} in the source model; a world elsewhere in the
    model that is modally indistinguishable from a generated-subframe world
    makes the target undefinable.
    """
    frame = m.kripke
    if not 0 <= r < frame.n:
        raise FormatError(f"world {r} out of range")
    if not _two_transitive(frame):
        raise NotPretransitive(
            "frame is not 2-transitive for the union relation")
    sub, reach = generated_subframe(frame, 1 << r)
    keep = worlds_of(reach)
    back = {i: w for i, w in enumerate(keep)}
    local_val = {}
    for v, mask in m.valuation.items():
        acc = 0
        for i, w in enumerate(keep):
            if mask >> w & 1:
                acc |= 1 << i
        local_val[v] = acc
    sub_model = Model(sub, local_val)
    system = block_system(sub_model)
    stable = system.stabilized
    for b in stable:
        if b & (b - 1):
            raise NotDefinable(back[(b & -b).bit_length() - 1],
                               "block system does not stabilise at singletons")

    variables_sorted = sorted(m.valuation)

    def literals(w: int) -> list[Formula]:
        return [Var(v) if local_val[v] >> w & 1 else Not(Var(v))
                for v in variables_sorted]

    # characteristic formula of each block, built layer by layer: layer 1
    # blocks are variable classes (literals alone); from layer 2 on, a
    # block's successor-met sets over the previous layer are uniform across
    # the block, so the representative's sets describe every member
    char: dict[int, Formula] = {sub.full: Top()}
    for i in range(1, len(system.layers)):
        prev = system.layers[i - 1]
        prev_of = {}
        for idx, b in enumerate(prev):
            for w in worlds_of(b):
                prev_of[w] = idx
        nxt: dict[int, Formula] = {}
        for b in system.layers[i]:
            w = (b & -b).bit_length() - 1
            parts: list[Formula] = literals(w)
            if i > 1:
                for mod, rows in ((1, sub.r1), (2, sub.r2)):
                    met = sorted({prev_of[x] for x in worlds_of(rows[w])})
                    parts.extend(Dia(mod, char[prev[j]]) for j in met)
                    parts.append(Box(mod, disj([char[prev[j]] for j in met])))
            nxt[b] = conj(parts)
        char.update(nxt)

    # stabilised blocks are singletons, so indexing definers by world is total
    final = system.layers[system.stabilization]
    alpha_local = {}
    for b in final:
        w = (b & -b).bit_length() - 1
        alpha_local[w] = And(conj(literals(w)), char[b])

    edge_parts: list[Formula] = []
    non_edge_parts: list[Formula] = []
    for mod, rows in ((1, sub.r1), (2, sub.r2)):
        for b1 in range(sub.n):
            for b2 in range(sub.n):
                if rows[b1] >> b2 & 1:
                    edge_parts.append(
                        Imp(alpha_local[b1], Dia(mod, alpha_local[b2])))
                else:
                    non_edge_parts.append(
                        Imp(alpha_local[b1], Not(Dia(mod, alpha_local[b2]))))
    gamma = conj([
        box_star(conj(edge_parts)),
        box_star(conj(non_edge_parts)),
        box_star(disj([alpha_local[w] for w in range(sub.n)])),
    ])
    local_r = keep.index(r)
    beta = And(alpha_local[local_r], gamma)

    extension = eval_formula(m, beta)
    if extension != 1 << r:
        stray = worlds_of(extension ^ (1 << r))
        raise NotDefinable(stray[0],
                           f"worlds {stray} are indistinguishable from {r}")
    alpha_source = {back[w]: f for w, f in alpha_local.items()}
    transcript = (
        f"generated subframe has {sub.n} worlds: {keep}",
        f"block system stabilises at layer {system.stabilization}",
        f"beta({r}) has modal depth {modal_depth(beta)}",
        f"extension {bitstring(extension, frame.n)} equals {{{r}}}",
    )
    return DefinabilityCertificate(r, alpha_source, gamma, beta,
                                   modal_depth(beta), transcript)
