"""p-morphism verification and search, plus sum combinations.

A world map is a plain tuple: entry a is the target world of source
world a.  Maps must be surjective; forth/back are checked for both
modalities and admissibility against the target's singletons plus its
algebra (preimages must be admissible in the source).
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import cluster, product, tack, tack_pre
from .errors import BudgetExceeded, FormatError
from .frames import (Frame, GeneralFrame, analyze, bitstring, kripke_of,
                     worlds_of)

WorldMap = tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    """A failed p-morphism clause: which clause, for which modality (None for
    surjectivity/admissibility), and the witnessing worlds."""

    clause: str
    modality: int | None
    worlds: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        mod = f" modality {self.modality}" if self.modality else ""
        return f"{self.clause}{mod}: {self.detail}"


def _fibers(f: WorldMap, nt: int) -> list[int]:
    out = [0] * nt
    for a, d in enumerate(f):
        out[d] |= 1 << a
    return out


def check_pmorphism(g: Frame | GeneralFrame, h: Frame | GeneralFrame,
                    f: WorldMap) -> Violation | None:
    """None when ``f`` is a p-morphism from g onto h; otherwise the first
    violated clause in the order surjective, forth, back, admissibility."""
    src, tgt = kripke_of(g), kripke_of(h)
    f = tuple(f)
    if len(f) != src.n:
        raise FormatError(f"map has {len(f)} entries, source has {src.n} worlds")
    for a, d in enumerate(f):
        if not 0 <= d < tgt.n:
            raise FormatError(f"map sends world {a} to {d}, outside the target")
    fibers = _fibers(f, tgt.n)
    for d in range(tgt.n):
        if not fibers[d]:
            return Violation("surjective", None, (d,),
                             f"target world {d} has no preimage")
    for mod in (1, 2):
        sr, tr = src.relation(mod), tgt.relation(mod)
        for a in range(src.n):
            for b in worlds_of(sr[a]):
                if not tr[f[a]] >> f[b] & 1:
                    return Violation(
                        "forth", mod, (a, b),
                        f"{a}->{b} in source but {f[a]}->{f[b]} not in target")
        for a in range(src.n):
            for d in worlds_of(tr[f[a]]):
                if not sr[a] & fibers[d]:
                    return Violation(
                        "back", mod, (a, d),
                        f"target sees {d} from {f[a]} = f({a}), "
                        f"but no successor of {a} maps there")
    if isinstance(g, GeneralFrame):
        admissible = set(g.algebra)
        wanted = [1 << d for d in range(tgt.n)]
        if isinstance(h, GeneralFrame):
            wanted += [u for u in h.algebra]
        for u in wanted:
            pre = 0
            for d in worlds_of(u):
                pre |= fibers[d]
            if pre not in admissible:
                return Violation(
                    "admissibility", None, tuple(worlds_of(u)),
                    f"preimage {bitstring(pre, src.n)} of target set "
                    f"{bitstring(u, tgt.n)} is not admissible")
    return None


def find_pmorphism(g: Frame | GeneralFrame, h: Frame | GeneralFrame,
                   budget: int = 1 << 20) -> WorldMap | None:
    """First p-morphism in lexicographic assignment order, or None after an
    exhaustive backtracking search.  The raw candidate space |h| ** |g| must
    fit the budget."""
    src, tgt = kripke_of(g), kripke_of(h)
    ns, nt = src.n, tgt.n
    if ns == 0 or nt == 0:
        return None
    if nt ** ns > budget:
        raise BudgetExceeded(nt ** ns, budget)
    src_info = analyze(src)
    tgt_info = analyze(tgt)
    assign = [-1] * ns
    # back can only be refuted once every successor of a world is assigned
    max_succ = [max((max(worlds_of(src.r1[a]), default=a),
                     max(worlds_of(src.r2[a]), default=a))) for a in range(ns)]

    def consistent(a: int) -> bool:
        ta = assign[a]
        for mod in (1, 2):
            sr, tr = src.relation(mod), tgt.relation(mod)
            for b in range(a + 1):
                tb = assign[b]
                if sr[a] >> b & 1 and not tr[ta] >> tb & 1:
                    return False
                if sr[b] >> a & 1 and not tr[tb] >> ta & 1:
                    return False
        for b in range(a):
            if (src_info.cluster_index[a] == src_info.cluster_index[b]
                    and tgt_info.cluster_index[ta]
                    != tgt_info.cluster_index[assign[b]]):
                return False
        for x in range(a + 1):
            if max_succ[x] > a:
                continue
            tx = assign[x]
            for mod in (1, 2):
                sr, tr = src.relation(mod), tgt.relation(mod)
                for d in worlds_of(tr[tx]):
                    if not any(assign[b] == d for b in worlds_of(sr[x])):
                        return False
        covered = len(set(assign[:a + 1]))
        if covered + (ns - a - 1) < nt:
            return False
        return True

    def extend(a: int) -> WorldMap | None:
        if a == ns:
            candidate = tuple(assign)
            if check_pmorphism(g, h, candidate) is None:
                return candidate
            return None
        for t in range(nt):
            assign[a] = t
            if consistent(a):
                found = extend(a + 1)
                if found is not None:
                    return found
        assign[a] = -1
        return None

    return extend(0)


def union_pmorphism(f1: WorldMap, f2: WorldMap, kind="both") -> WorldMap:
    """Combine p-morphisms of the summands into a map on the renumbered sum.
    The combined map is the same for every sum kind (both, 1, 2) and for the
    tense sum; ``kind`` is accepted for documentation of the intended sum.
    Inputs are assumed surjective, so target sizes are max + 1."""
    if kind not in ("both", "1", "2", 1, 2, "tense"):
        raise FormatError(f"unknown sum kind {kind!r}")
    offset = max(f1) + 1
    return tuple(f1) + tuple(offset + d for d in f2)


def tack_collapse(kind, m: int, mprime: int | None = None
                  ) -> tuple[Frame, Frame, WorldMap]:
    """The collapse map onto a tack frame, with its source and target.

    kind "both": product(tack_pre(m), tack_pre(m)) onto tack(both, m');
    kind "1":    product(tack_pre(m), cluster(m))  onto tack(1, m');
    kind "2":    product(cluster(m), tack_pre(m))  onto tack(2, m').

    Cluster excess collapses onto rectangle points; the top rows/columns and
    the top point collapse onto the target top.
    """
    kind = str(kind)
    if kind not in ("both", "1", "2"):
        raise FormatError(f"tack kind must be both, 1 or 2, got {kind!r}")
    mp = m if mprime is None else mprime
    if not 1 <= mp <= m:
        raise FormatError("target size must satisfy 1 <= m' <= m")
    if kind == "both":
        left, right = tack_pre(m), tack_pre(m)
    elif kind == "1":
        left, right = tack_pre(m), cluster(m)
    else:
        left, right = cluster(m), tack_pre(m)
    src = product(left, right)
    tgt = tack(kind, mp)
    top = mp * mp
    mapping = []
    for a in range(left.n):
        for b in range(right.n):
            a_top = kind in ("both", "1") and a == m
            b_top = kind in ("both", "2") and b == m
            if a_top or b_top:
                mapping.append(top)
            else:
                mapping.append(min(a, mp - 1) * mp + min(b, mp - 1))
    return src, tgt, tuple(mapping)


def load_worldmap(data) -> WorldMap:
    """Map JSON: an integer array indexed by source world."""
    import json

    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid JSON: {e}") from None
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise FormatError("world map JSON must be an array of integers")
    return tuple(data)


def store_worldmap(f: WorldMap) -> bytes:
    import json

    return json.dumps(list(f)).encode("utf-8")


def blow_up(h: Frame, sizes: tuple[int, ...]) -> tuple[Frame, WorldMap]:
    """Replace each world w of ``h`` by ``sizes[w]`` bisimilar copies; the
    collapse back onto ``h`` is a p-morphism.  Used to produce valid
    p-morphism inputs in tests and examples."""
    if len(sizes) != h.n or any(s < 1 for s in sizes):
        raise FormatError("need a positive multiplicity per world")
    index = []
    mapping = []
    for w in range(h.n):
        for _ in range(sizes[w]):
            index.append(w)
            mapping.append(w)
    n = len(index)

    def expand(rows):
        out = []
        for a in range(n):
            acc = 0
            for b in range(n):
                if rows[index[a]] >> index[b] & 1:
                    acc |= 1 << b
            out.append(acc)
        return tuple(out)

    return Frame(n, expand(h.r1), expand(h.r2)), tuple(mapping)
