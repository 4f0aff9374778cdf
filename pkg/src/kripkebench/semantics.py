"""Formula evaluation on models, validity over (general) frames, and
refutation-witness search.

Validity is brute force over valuations, enumerated only over the
variables occurring in the formula.  Candidate sets are every subset of
the worlds for a Kripke frame and the admissible algebra for a general
frame, always in bitstring order; assignments are ordered with the
lowest variable index as the most significant position.  This fixes the
witness returned by ``refutes_witness`` as the lexicographically least
one.  Large enumerations run through a vectorised (numpy) evaluator in
chunks; the order, and hence every answer, is the same on both paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Mapping

import numpy as np

from .errors import BudgetExceeded, FormatError
from .formulas import (And, Bot, Box, Dia, Formula, Iff, Imp, Not, Or,
                       ReachDia, Top, Var, variables)
from .frames import (Frame, GeneralFrame, bitstring_key, kripke_of, preimage,
                     rt_closure)

DEFAULT_BUDGET = 1 << 20

_VEC_MIN_ASSIGNMENTS = 512
_VEC_MAX_WORLDS = 16
_CHUNK = 1 << 15


@dataclass(frozen=True)
class Model:
    """A frame together with a valuation (variable index -> world mask).

    For general frames every valuation set must be admissible.
    """

    frame: Frame | GeneralFrame
    valuation: Mapping[int, int]

    def __post_init__(self):
        full = kripke_of(self.frame).full
        for v, mask in self.valuation.items():
            if v < 0:
                raise FormatError(f"variable index {v} is negative")
            if mask < 0 or mask & ~full:
                raise FormatError(f"valuation of p{v} is out of range")
        if isinstance(self.frame, GeneralFrame):
            admissible = set(self.frame.algebra)
            for v, mask in self.valuation.items():
                if mask not in admissible:
                    raise FormatError(f"valuation of p{v} is not admissible")

    @property
    def kripke(self) -> Frame:
        return kripke_of(self.frame)


def _eval_mask(frame: Frame, valuation: Mapping[int, int], f: Formula) -> int:
    full = frame.full
    closure = None
    memo: dict[int, int] = {}

    def go(g: Formula) -> int:
        r = memo.get(id(g))
        if r is not None:
            return r
        if isinstance(g, Var):
            r = valuation.get(g.index, 0)
        elif isinstance(g, Bot):
            r = 0
        elif isinstance(g, Top):
            r = full
        elif isinstance(g, Not):
            r = full ^ go(g.child)
        elif isinstance(g, And):
            r = go(g.left) & go(g.right)
        elif isinstance(g, Or):
            r = go(g.left) | go(g.right)
        elif isinstance(g, Imp):
            r = (full ^ go(g.left)) | go(g.right)
        elif isinstance(g, Iff):
            r = full ^ (go(g.left) ^ go(g.right))
        elif isinstance(g, Dia):
            r = preimage(frame.relation(g.mod), go(g.child))
        elif isinstance(g, Box):
            r = full ^ preimage(frame.relation(g.mod), full ^ go(g.child))
        else:
            nonlocal closure
            if closure is None:
                closure = rt_closure(frame.union(), frame.n)
            if isinstance(g, ReachDia):
                r = preimage(closure, go(g.child))
            else:
                r = full ^ preimage(closure, full ^ go(g.child))
        memo[id(g)] = r
        return r

    return go(f)


def eval_formula(m: Model, f: Formula) -> int:
    """Extension of ``f`` in the model, as a world mask.  Variables absent
    from the valuation evaluate to the empty set."""
    return _eval_mask(m.kripke, m.valuation, f)


def reach_modality_eval(m: Model, f: Formula) -> int:
    """Like ``eval_formula`` for formulas carrying the frame-level
    reachability operators ReachDia/ReachBox, which are read through the
    reflexive-transitive closure of r1 | r2."""
    return _eval_mask(m.kripke, m.valuation, f)


@dataclass(frozen=True)
class Witness:
    """A falsifying valuation together with the least falsified world."""

    valuation: tuple[tuple[int, int], ...]
    world: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.valuation)


@lru_cache(maxsize=64)
def _powerset_candidates(n: int) -> tuple[int, ...]:
    return tuple(sorted(range(1 << n), key=lambda m: bitstring_key(m, n)))


def _candidates(g: Frame | GeneralFrame) -> tuple[int, ...]:
    if isinstance(g, GeneralFrame):
        return g.algebra  # already in bitstring order
    if g.n > 24:
        raise FormatError("powerset valuation space only supported for n <= 24")
    return _powerset_candidates(g.n)


@lru_cache(maxsize=256)
def _np_preimage_table(rows: tuple[int, ...], n: int) -> np.ndarray:
    table = np.zeros(1 << n, dtype=np.uint32)
    masks = np.arange(1 << n, dtype=np.uint32)
    for i, row in enumerate(rows):
        table |= np.where(masks & np.uint32(row), np.uint32(1 << i), np.uint32(0))
    return table


def _vec_eval(f: Formula, arrs: dict[int, np.ndarray], frame: Frame,
              length: int, memo: dict[int, np.ndarray]) -> np.ndarray:
    r = memo.get(id(f))
    if r is not None:
        return r
    full = np.uint32(frame.full)
    if isinstance(f, Var):
        r = arrs.get(f.index)
        if r is None:
            r = np.zeros(length, dtype=np.uint32)
    elif isinstance(f, Bot):
        r = np.zeros(length, dtype=np.uint32)
    elif isinstance(f, Top):
        r = np.full(length, full, dtype=np.uint32)
    elif isinstance(f, Not):
        r = full ^ _vec_eval(f.child, arrs, frame, length, memo)
    elif isinstance(f, And):
        r = (_vec_eval(f.left, arrs, frame, length, memo)
             & _vec_eval(f.right, arrs, frame, length, memo))
    elif isinstance(f, Or):
        r = (_vec_eval(f.left, arrs, frame, length, memo)
             | _vec_eval(f.right, arrs, frame, length, memo))
    elif isinstance(f, Imp):
        r = ((full ^ _vec_eval(f.left, arrs, frame, length, memo))
             | _vec_eval(f.right, arrs, frame, length, memo))
    elif isinstance(f, Iff):
        r = full ^ (_vec_eval(f.left, arrs, frame, length, memo)
                    ^ _vec_eval(f.right, arrs, frame, length, memo))
    elif isinstance(f, Dia):
        table = _np_preimage_table(frame.relation(f.mod), frame.n)
        r = table[_vec_eval(f.child, arrs, frame, length, memo)]
    elif isinstance(f, Box):
        table = _np_preimage_table(frame.relation(f.mod), frame.n)
        r = full ^ table[full ^ _vec_eval(f.child, arrs, frame, length, memo)]
    elif isinstance(f, ReachDia):
        table = _np_preimage_table(rt_closure(frame.union(), frame.n), frame.n)
        r = table[_vec_eval(f.child, arrs, frame, length, memo)]
    else:
        table = _np_preimage_table(rt_closure(frame.union(), frame.n), frame.n)
        r = full ^ table[full ^ _vec_eval(f.child, arrs, frame, length, memo)]
    memo[id(f)] = r
    return r


def _least_missing_world(mask: int, full: int) -> int:
    missing = full & ~mask
    return (missing & -missing).bit_length() - 1


def _search_refutation(g: Frame | GeneralFrame, f: Formula,
                       budget: int) -> Witness | None:
    frame = kripke_of(g)
    if frame.n == 0:
        return None  # everything holds vacuously on the empty frame
    occurring = sorted(variables(f))
    k = len(occurring)
    cands = _candidates(g)
    total = len(cands) ** k
    if total * max(frame.n, 1) > budget:
        raise BudgetExceeded(total, budget)
    full = frame.full

    if total >= _VEC_MIN_ASSIGNMENTS and frame.n <= _VEC_MAX_WORLDS:
        cand_arr = np.array(cands, dtype=np.uint32)
        c = len(cands)
        weights = [c ** (k - 1 - j) for j in range(k)]
        for lo in range(0, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            t = np.arange(lo, hi, dtype=np.int64)
            arrs = {v: cand_arr[(t // weights[j]) % c]
                    for j, v in enumerate(occurring)}
            res = _vec_eval(f, arrs, frame, hi - lo, {})
            bad = np.nonzero(res != np.uint32(full))[0]
            if bad.size:
                b = int(bad[0])
                index = lo + b
                assignment = tuple(
                    (v, cands[(index // weights[j]) % c])
                    for j, v in enumerate(occurring))
                world = _least_missing_world(int(res[b]), full)
                return Witness(assignment, world)
        return None

    for combo in iproduct(cands, repeat=k):
        valuation = dict(zip(occurring, combo))
        res = _eval_mask(frame, valuation, f)
        if res != full:
            return Witness(tuple(sorted(valuation.items())),
                           _least_missing_world(res, full))
    return None


def valid(g: Frame | GeneralFrame, f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff ``f`` evaluates to the full set under every valuation drawing
    values from the frame's algebra (full powerset for Kripke frames)."""
    return _search_refutation(g, f, budget) is None


def refutes_witness(g: Frame | GeneralFrame, f: Formula,
                    budget: int = DEFAULT_BUDGET) -> Witness | None:
    """The lexicographically least falsifying (valuation, world) pair, or
    None when the formula is valid."""
    return _search_refutation(g, f, budget)
