"""Finite bimodal Kripke frames and general frames.

Worlds are 0..n-1.  A relation is stored as a tuple of n row masks:
bit j of row i is set iff world i relates to world j.  World-sets are
plain int masks; their text form is a bitstring with index 0 leftmost,
so mask 0b01 on two worlds prints as "10".
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import EmptyRestriction, FormatError, UnknownProperty

log = logging.getLogger(__name__)


# --- world-set and relation plumbing -----------------------------------

def bits_of(s: str) -> int:
    """Bitstring to mask, index 0 leftmost."""
    mask = 0
    for i, c in enumerate(s):
        if c == "1":
            mask |= 1 << i
        elif c != "0":
            raise FormatError(f"non-binary digit {c!r} in bitstring {s!r}")
    return mask


def bitstring(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def mask_of(worlds: Iterable[int]) -> int:
    mask = 0
    for w in worlds:
        mask |= 1 << w
    return mask


def worlds_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def bitstring_key(mask: int, n: int) -> tuple[int, ...]:
    """Sort key realising lexicographic bitstring order."""
    return tuple(mask >> i & 1 for i in range(n))


def diagonal(n: int) -> tuple[int, ...]:
    return tuple(1 << i for i in range(n))


def full_rows(n: int) -> tuple[int, ...]:
    full = (1 << n) - 1
    return tuple(full for _ in range(n))


def transpose_rows(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = [0] * n
    for i, row in enumerate(rows):
        for j in worlds_of(row):
            out[j] |= 1 << i
    return tuple(out)


def compose_rows(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(i,k) in a∘b iff i -a-> j -b-> k for some j."""
    out = []
    for row in a:
        acc = 0
        m = row
        while m:
            low = m & -m
            acc |= b[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return tuple(out)


def union_rows(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x | y for x, y in zip(a, b))


def rt_closure(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Reflexive-transitive closure by iterated squaring."""
    cur = tuple(row | (1 << i) for i, row in enumerate(rows))
    while True:
        nxt = tuple(x | y for x, y in zip(cur, compose_rows(cur, cur)))
        if nxt == cur:
            return cur
        cur = nxt


def preimage(rows: tuple[int, ...], mask: int) -> int:
    """Worlds with some successor in ``mask`` (the diamond of a set)."""
    out = 0
    for i, row in enumerate(rows):
        if row & mask:
            out |= 1 << i
    return out


def is_subrelation(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x & ~y == 0 for x, y in zip(a, b))


# --- frames -------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class FrameSpec:
    """Provenance tag: constructor name plus its parameters."""

    name: str
    params: tuple = ()


@dataclass(frozen=True, slots=True)
class Frame:
    n: int
    r1: tuple[int, ...]
    r2: tuple[int, ...]
    spec: FrameSpec | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise FormatError("world count must be nonnegative")
        full = (1 << self.n) - 1
        for name, rows in (("r1", self.r1), ("r2", self.r2)):
            if len(rows) != self.n:
                raise FormatError(f"{name} has {len(rows)} rows, expected {self.n}")
            for i, row in enumerate(rows):
                if row & ~full:
                    raise FormatError(f"{name} row {i} mentions worlds beyond {self.n}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def relation(self, mod: int) -> tuple[int, ...]:
        return self.r1 if mod == 1 else self.r2

    def union(self) -> tuple[int, ...]:
        return union_rows(self.r1, self.r2)


class UniFrame(NamedTuple):
    """Unimodal frame: world count plus one relation's rows."""

    n: int
    rows: tuple[int, ...]


def uniframe(n: int, rows) -> UniFrame:
    return UniFrame(n, _parse_rows(rows, n, "rows"))


def _parse_rows(rows, n: int, what: str) -> tuple[int, ...]:
    out = []
    if len(rows) != n:
        raise FormatError(f"{what} has {len(rows)} rows, expected {n}")
    for i, row in enumerate(rows):
        if isinstance(row, str):
            if len(row) != n:
                raise FormatError(f"{what} row {i} has length {len(row)}, expected {n}")
            out.append(bits_of(row))
        else:
            mask = int(row)
            if mask < 0 or mask >> n:
                raise FormatError(f"{what} row {i} out of range for {n} worlds")
            out.append(mask)
    return tuple(out)


def lift_unimodal(n: int, rows) -> Frame:
    """Embed a unimodal frame as (X, R, diagonal)."""
    return Frame(n, _parse_rows(rows, n, "r1"), diagonal(n),
                 spec=FrameSpec("lift_unimodal", (n,)))


@dataclass(frozen=True, slots=True)
class GeneralFrame:
    """Frame plus an admissible set algebra, verified at construction."""

    frame: Frame
    algebra: tuple[int, ...]

    def __post_init__(self):
        n = self.frame.n
        full = self.frame.full
        sets = list(self.algebra)
        if not sets:
            raise FormatError("algebra must be nonempty")
        index = set()
        for s in sets:
            if s < 0 or s & ~full:
                raise FormatError(f"algebra set {s} out of range for {n} worlds")
            if s in index:
                raise FormatError(f"algebra set {bitstring(s, n)} listed twice")
            index.add(s)
        for s in sets:
            if (full ^ s) not in index:
                raise FormatError("algebra not closed under complement: "
                                  f"~{bitstring(s, n)} = {bitstring(full ^ s, n)} missing")
        for which, rows in (("<1>", self.frame.r1), ("<2>", self.frame.r2)):
            for s in sets:
                pre = preimage(rows, s)
                if pre not in index:
                    raise FormatError(
                        f"algebra not closed under {which}-preimage of "
                        f"{bitstring(s, n)}: {bitstring(pre, n)} missing")
        for i, s in enumerate(sets):
            for t in sets[i + 1:]:
                if (s & t) not in index:
                    raise FormatError(
                        "algebra not closed under intersection: "
                        f"{bitstring(s, n)} & {bitstring(t, n)} = "
                        f"{bitstring(s & t, n)} missing")
        if 0 not in index or full not in index:
            raise FormatError("algebra must contain the empty and the full set")
        object.__setattr__(self, "algebra",
                           tuple(sorted(index, key=lambda m: bitstring_key(m, n))))

    @property
    def n(self) -> int:
        return self.frame.n


def full_algebra(n: int) -> tuple[int, ...]:
    if n > 16:
        raise FormatError("full powerset algebra only materialised for n <= 16")
    return tuple(sorted(range(1 << n), key=lambda m: bitstring_key(m, n)))


def as_general(f: Frame) -> GeneralFrame:
    """A Kripke frame seen as the general frame over its full powerset."""
    return GeneralFrame(f, full_algebra(f.n))


def kripke_of(g: Frame | GeneralFrame) -> Frame:
    return g.frame if isinstance(g, GeneralFrame) else g


# --- serialization ------------------------------------------------------

def load_frame(data) -> Frame | GeneralFrame:
    """Frame JSON: {"n": int, "r1": [row-bitstrings], "r2": [...],
    "algebra": optional [set-bitstrings]}.  Absent algebra means the full
    powerset (a plain Kripke frame is returned)."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise FormatError("frame JSON must be an object")
    try:
        n = int(data["n"])
    except (KeyError, TypeError, ValueError):
        raise FormatError("frame JSON needs an integer field 'n'") from None
    if n < 0:
        raise FormatError("world count must be nonnegative")
    for key in ("r1", "r2"):
        if key not in data or not isinstance(data[key], list):
            raise FormatError(f"frame JSON needs a list field {key!r}")
    frame = Frame(n, _parse_rows(data["r1"], n, "r1"), _parse_rows(data["r2"], n, "r2"))
    if "algebra" not in data:
        return frame
    alg = data["algebra"]
    if not isinstance(alg, list):
        raise FormatError("algebra must be a list of set-bitstrings")
    sets = []
    for s in alg:
        if isinstance(s, str):
            if len(s) != n:
                raise FormatError(f"algebra set {s!r} has length {len(s)}, expected {n}")
            sets.append(bits_of(s))
        else:
            sets.append(int(s))
    return GeneralFrame(frame, tuple(sets))


def store_frame(f: Frame | GeneralFrame) -> bytes:
    if isinstance(f, GeneralFrame):
        frame, algebra = f.frame, f.algebra
    else:
        frame, algebra = f, None
    doc = {
        "n": frame.n,
        "r1": [bitstring(row, frame.n) for row in frame.r1],
        "r2": [bitstring(row, frame.n) for row in frame.r2],
    }
    if algebra is not None:
        doc["algebra"] = [bitstring(s, frame.n) for s in algebra]
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


# --- structural analysis -------------------------------------------------

@dataclass(frozen=True, slots=True)
class SkeletonInfo:
    """Clusters, the induced order on them, height, and per-world depth."""

    cluster_index: tuple[int, ...]   # world -> cluster id
    clusters: tuple[int, ...]        # cluster id -> member mask
    order: tuple[int, ...]           # cluster id -> mask of clusters above or equal
    height: int
    depth: tuple[int, ...]           # world -> height of its generated subframe

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)


def analyze(f: Frame) -> SkeletonInfo:
    if f.n < 1:
        raise FormatError("analysis needs at least one world")
    reach = rt_closure(f.union(), f.n)
    inv = transpose_rows(reach, f.n)
    cluster_index = [-1] * f.n
    clusters: list[int] = []
    for w in range(f.n):
        if cluster_index[w] >= 0:
            continue
        members = reach[w] & inv[w]
        cid = len(clusters)
        clusters.append(members)
        for v in worlds_of(members):
            cluster_index[v] = cid
    reps = [worlds_of(m)[0] for m in clusters]
    k = len(clusters)
    order = []
    for c in range(k):
        above = 0
        for d in range(k):
            if reach[reps[c]] >> reps[d] & 1:
                above |= 1 << d
        order.append(above)
    chain_len = [0] * k
    def up_len(c: int) -> int:
        if chain_len[c]:
            return chain_len[c]
        best = 0
        strict = order[c] & ~(1 << c)
        for d in worlds_of(strict):
            best = max(best, up_len(d))
        chain_len[c] = 1 + best
        return chain_len[c]
    for c in range(k):
        up_len(c)
    depth = tuple(chain_len[cluster_index[w]] for w in range(f.n))
    return SkeletonInfo(tuple(cluster_index), tuple(clusters), tuple(order),
                        max(chain_len), depth)


def _is_reflexive(rows, n) -> bool:
    return all(rows[i] >> i & 1 for i in range(n))


def _is_transitive(rows) -> bool:
    return is_subrelation(compose_rows(rows, rows), rows)


def _is_symmetric(rows, n) -> bool:
    return rows == transpose_rows(rows, n)


def frame_property(f: Frame, prop: str, params=()) -> bool:
    """Exact first-order check of a named frame condition by enumeration."""
    params = tuple(params)
    if prop == "com":
        return compose_rows(f.r1, f.r2) == compose_rows(f.r2, f.r1)
    if prop == "cr":
        for x in range(f.n):
            for y in worlds_of(f.r1[x]):
                for z in worlds_of(f.r2[x]):
                    if not (f.r2[y] & f.r1[z]):
                        return False
        return True
    if prop == "rp":
        if len(params) != 1:
            raise UnknownProperty("rp needs the chain length parameter m")
        m = int(params[0])
        rows = f.union()

        def chain_ok(chain: tuple[int, ...]) -> bool:
            if len(set(chain)) < len(chain):
                return True
            for i in range(m + 1):
                for j in range(i + 1, m + 1):
                    if rows[chain[i]] >> chain[j + 1] & 1:
                        return True
            return False

        def extend(chain: tuple[int, ...]) -> bool:
            if len(chain) == m + 2:
                return chain_ok(chain)
            return all(extend(chain + (y,)) for y in worlds_of(rows[chain[-1]]))

        return all(extend((x,)) for x in range(f.n))
    if prop == "tense":
        return f.r1 == transpose_rows(f.r2, f.n)
    if prop in ("preorder", "equivalence", "linear", "poset", "universal"):
        if len(params) != 1 or params[0] not in (1, 2):
            raise UnknownProperty(f"{prop} needs a modality parameter in {{1, 2}}")
        rows = f.relation(params[0])
        if prop == "universal":
            return all(row == f.full for row in rows)
        if not (_is_reflexive(rows, f.n) and _is_transitive(rows)):
            return False
        if prop == "preorder":
            return True
        if prop == "equivalence":
            return _is_symmetric(rows, f.n)
        if prop == "linear":
            return all(rows[a] >> b & 1 or rows[b] >> a & 1
                       for a in range(f.n) for b in range(f.n))
        # poset: antisymmetric preorder
        return all(not (rows[a] >> b & 1 and rows[b] >> a & 1)
                   for a in range(f.n) for b in range(f.n) if a != b)
    if prop == "prenoetherian":
        log.info("prenoetherian holds for every finite frame: the skeleton of a "
                 "finite frame has no infinite ascending chains")
        return True
    raise UnknownProperty(f"unknown frame property {prop!r}")


# --- restriction and generated subframes ---------------------------------

def _as_mask(Y, n: int) -> int:
    if isinstance(Y, int):
        mask = Y
    elif isinstance(Y, str):
        mask = bits_of(Y)
    else:
        mask = mask_of(Y)
    if mask < 0 or mask >> n:
        raise FormatError(f"world-set out of range for {n} worlds")
    return mask


def restrict_frame(f: Frame, mask: int) -> tuple[Frame, list[int]]:
    """Frame induced on ``mask``, worlds renumbered ascending.  Also returns
    the old-world list (new index -> old index)."""
    keep = worlds_of(mask)
    pos = {w: i for i, w in enumerate(keep)}

    def shrink(rows):
        out = []
        for w in keep:
            acc = 0
            for v in worlds_of(rows[w] & mask):
                acc |= 1 << pos[v]
            out.append(acc)
        return tuple(out)

    return Frame(len(keep), shrink(f.r1), shrink(f.r2)), keep


def _restrict_general(g: GeneralFrame, mask: int) -> GeneralFrame:
    sub, keep = restrict_frame(g.frame, mask)
    pos = {w: i for i, w in enumerate(keep)}
    seen = set()
    sets = []
    for u in g.algebra:
        acc = 0
        for v in worlds_of(u & mask):
            acc |= 1 << pos[v]
        if acc not in seen:
            seen.add(acc)
            sets.append(acc)
    return GeneralFrame(sub, tuple(sets))


def restriction(g: GeneralFrame, Y) -> GeneralFrame:
    """Restrict a general frame to a world-set.  When Y is not admissible the
    result is not guaranteed to be a general frame; a warning is logged and
    closure is re-verified by construction."""
    mask = _as_mask(Y, g.n)
    if mask == 0:
        raise EmptyRestriction("cannot restrict to the empty set")
    if mask not in set(g.algebra):
        log.warning("restriction set %s is not admissible; re-verifying closure",
                    bitstring(mask, g.n))
    return _restrict_general(g, mask)


def generated_subframe(g: Frame | GeneralFrame, Y):
    """Restriction to the (r1|r2)-reachability image of Y.  Returns the
    subframe (same kind as the input) and the reachable set as a mask over
    the original worlds."""
    frame = kripke_of(g)
    mask = _as_mask(Y, frame.n)
    if mask == 0:
        raise EmptyRestriction("cannot generate from the empty set")
    reach_rows = rt_closure(frame.union(), frame.n)
    reach = 0
    for b in worlds_of(mask):
        reach |= reach_rows[b]
    if isinstance(g, GeneralFrame):
        # A reachability-closed restriction is always a general frame, so no
        # admissibility warning applies; closure is still re-verified.
        return _restrict_general(g, reach), reach
    sub, _ = restrict_frame(frame, reach)
    return sub, reach
