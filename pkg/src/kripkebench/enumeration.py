"""Frame enumeration with isomorphism rejection, and seeded samplers.

Preorders are generated as (poset of clusters, cluster sizes): posets on
k points are produced by the add-a-maximal-element recursion (which
covers every isomorphism type), sizes run over all compositions, and
duplicates are removed by canonical-form hashing.  Bimodal frames are
enumerated exhaustively for n <= 2; beyond that the samplers provide
seeded pseudorandom corpora.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product as iproduct
from random import Random

from .frames import Frame, UniFrame, rt_closure, transpose_rows, worlds_of


def _apply_perm(rows: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(rows)
    out = [0] * n
    for i in range(n):
        acc = 0
        row = rows[i]
        for j in range(n):
            if row >> j & 1:
                acc |= 1 << perm[j]
        out[perm[i]] = acc
    return tuple(out)


def _color_classes(relations: tuple[tuple[int, ...], ...], n: int) -> list[list[int]]:
    """Worlds grouped by an iterated degree/loop invariant, classes ordered by
    the (relabelling-invariant) color values.  Any isomorphism maps class i of
    one frame onto class i of the other, so the canonical permutation search
    only needs to assign each class's worlds to that class's index block."""
    transposes = [transpose_rows(rows, n) for rows in relations]
    colors: list = [
        tuple((rows[w] >> w & 1, rows[w].bit_count(), t[w].bit_count())
              for rows, t in zip(relations, transposes))
        for w in range(n)
    ]
    for _ in range(n):
        nxt = [
            (colors[w],
             tuple((tuple(sorted(colors[x] for x in worlds_of(rows[w]))),
                    tuple(sorted(colors[x] for x in worlds_of(t[w]))))
                   for rows, t in zip(relations, transposes)))
            for w in range(n)
        ]
        if len(set(nxt)) == len(set(colors)):
            break
        colors = nxt
    classes: dict = {}
    for w in range(n):
        classes.setdefault(colors[w], []).append(w)
    return [classes[c] for c in sorted(classes)]


def canonical_key(relations: tuple[tuple[int, ...], ...], n: int) -> tuple:
    """Minimum relabelling of the relation tuple; equal keys mean isomorphic."""
    classes = _color_classes(relations, n)
    starts = []
    total = 0
    for c in classes:
        starts.append(total)
        total += len(c)
    best = None
    for parts in iproduct(*(permutations(range(len(c))) for c in classes)):
        perm = [0] * n
        for cls, start, part in zip(classes, starts, parts):
            for member, slot in zip(cls, part):
                perm[member] = start + slot
        candidate = tuple(_apply_perm(rows, tuple(perm)) for rows in relations)
        if best is None or candidate < best:
            best = candidate
    return (n, best)


def frame_key(f: Frame) -> tuple:
    return canonical_key((f.r1, f.r2), f.n)


def uniframe_key(u: UniFrame) -> tuple:
    return canonical_key((u.rows,), u.n)


def iso_distinct(frames, key=frame_key):
    seen = set()
    out = []
    for f in frames:
        k = key(f)
        if k not in seen:
            seen.add(k)
            out.append(f)
    return out


@lru_cache(maxsize=None)
def _posets(k: int) -> tuple[tuple[int, ...], ...]:
    """Reflexive-transitive-antisymmetric relations on k points, one per
    isomorphism type, each with the identity as a linear extension."""
    if k == 0:
        return ((),)
    out: list[tuple[int, ...]] = []
    seen: set[tuple] = set()

    def down_closed(rows: tuple[int, ...], subset: int) -> bool:
        for w in worlds_of(subset):
            below = 0
            for v in range(len(rows)):
                if rows[v] >> w & 1:
                    below |= 1 << v
            if below & ~subset:
                return False
        return True

    def extend(rows: tuple[int, ...]):
        i = len(rows)
        if i == k:
            key = canonical_key((rows,), k)
            if key not in seen:
                seen.add(key)
                out.append(rows)
            return
        for subset in range(1 << i):
            if not down_closed(rows, subset):
                continue
            new_rows = tuple(row | (1 << i if subset >> j & 1 else 0)
                             for j, row in enumerate(rows))
            extend(new_rows + (1 << i,))

    extend(())
    return tuple(out)


def _preorder_from(poset: tuple[int, ...], sizes: tuple[int, ...]) -> UniFrame:
    k = len(poset)
    offsets = [0] * k
    total = 0
    for i in range(k):
        offsets[i] = total
        total += sizes[i]
    block = [(( (1 << sizes[i]) - 1) << offsets[i]) for i in range(k)]
    rows = []
    for i in range(k):
        row = 0
        for j in range(k):
            if poset[i] >> j & 1:
                row |= block[j]
        rows.extend([row] * sizes[i])
    return UniFrame(total, tuple(rows))


def _compositions(n: int, k: int):
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def all_preorders(n: int) -> tuple[UniFrame, ...]:
    """All preorders on n worlds, one per isomorphism class."""
    if n < 1:
        raise ValueError("need at least one world")
    seen: set[tuple] = set()
    out: list[UniFrame] = []
    for k in range(1, n + 1):
        for poset in _posets(k):
            for sizes in _compositions(n, k):
                u = _preorder_from(poset, sizes)
                key = uniframe_key(u)
                if key not in seen:
                    seen.add(key)
                    out.append(u)
    return tuple(out)


@lru_cache(maxsize=None)
def linear_preorders(n: int) -> tuple[UniFrame, ...]:
    """Linear preorders (chains of clusters) on n worlds, up to isomorphism:
    one per composition of n."""
    out = []
    for k in range(1, n + 1):
        for sizes in _compositions(n, k):
            chain_poset = tuple(((1 << k) - 1 >> i) << i for i in range(k))
            out.append(_preorder_from(chain_poset, sizes))
    return tuple(out)


@lru_cache(maxsize=None)
def all_bimodal_frames(n: int) -> tuple[Frame, ...]:
    """All bimodal frames on n worlds up to isomorphism (n <= 2 only; the
    labelled space grows as 2^(2 n^2))."""
    if not 1 <= n <= 2:
        raise ValueError("exhaustive bimodal enumeration is provided for n <= 2")
    seen: set[tuple] = set()
    out: list[Frame] = []
    for bits1 in range(1 << (n * n)):
        r1 = tuple((bits1 >> (i * n)) & ((1 << n) - 1) for i in range(n))
        for bits2 in range(1 << (n * n)):
            r2 = tuple((bits2 >> (i * n)) & ((1 << n) - 1) for i in range(n))
            key = canonical_key((r1, r2), n)
            if key not in seen:
                seen.add(key)
                out.append(Frame(n, r1, r2))
    return tuple(out)


# --- seeded samplers -------------------------------------------------------

def random_relation(rng: Random, n: int, density: float = 0.4) -> tuple[int, ...]:
    return tuple(
        sum(1 << j for j in range(n) if rng.random() < density)
        for _ in range(n))


def random_frame(rng: Random, n: int) -> Frame:
    return Frame(n, random_relation(rng, n), random_relation(rng, n))


def random_preorder(rng: Random, n: int) -> UniFrame:
    """Reflexive-transitive closure of a sparse random digraph."""
    rows = random_relation(rng, n, density=0.3)
    return UniFrame(n, rt_closure(rows, n))


def random_valuation(rng: Random, n: int, k: int) -> dict[int, int]:
    return {v: rng.randrange(1 << n) for v in range(k)}
