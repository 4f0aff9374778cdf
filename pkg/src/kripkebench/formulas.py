"""Bimodal formula ASTs, text grammar, and the named-formula registry.

Formulas are immutable trees over the node kinds Var, Bot, Top, Not,
And, Or, Imp, Iff, Dia(modality), Box(modality).  The derived
connectives are expanded eagerly at construction time:

    dia_v(f)    =  <1>f | <2>f
    dia_star(f) =  f | dia_v(f) | dia_v(dia_v(f))
    box_v(f)    =  ~dia_v(~f)
    box_star(f) =  ~dia_star(~f)

so after construction only the listed node kinds occur.  ReachDia and
ReachBox are frame-level reachability operators used by the semantics
module; they are constructible programmatically but are not part of the
text grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import ArityMismatch, FormulaSyntaxError, UnknownName


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"variable index must be nonnegative, got {self.index}")


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Dia(Formula):
    mod: int
    child: Formula

    def __post_init__(self):
        if self.mod not in (1, 2):
            raise ValueError(f"modality must be 1 or 2, got {self.mod}")


@dataclass(frozen=True, slots=True)
class Box(Formula):
    mod: int
    child: Formula

    def __post_init__(self):
        if self.mod not in (1, 2):
            raise ValueError(f"modality must be 1 or 2, got {self.mod}")


@dataclass(frozen=True, slots=True)
class ReachDia(Formula):
    """Diamond over the reflexive-transitive closure of r1 | r2."""

    child: Formula


@dataclass(frozen=True, slots=True)
class ReachBox(Formula):
    child: Formula


_BINARY = {And: "&", Or: "|", Imp: "->", Iff: "<->"}


def dia_v(f: Formula) -> Formula:
    return Or(Dia(1, f), Dia(2, f))


def box_v(f: Formula) -> Formula:
    return Not(dia_v(Not(f)))


def dia_star(f: Formula) -> Formula:
    dv = dia_v(f)
    return Or(f, Or(dv, dia_v(dv)))


def box_star(f: Formula) -> Formula:
    return Not(dia_star(Not(f)))


def conj(parts) -> Formula:
    """Left-folded conjunction; empty input gives true."""
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts) -> Formula:
    """Left-folded disjunction; empty input gives false."""
    parts = list(parts)
    if not parts:
        return Bot()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    """All nodes of ``f``, shared subtrees visited once."""
    seen: set[int] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        yield g
        if isinstance(g, (Not, Dia, Box, ReachDia, ReachBox)):
            stack.append(g.child)
        elif isinstance(g, (And, Or, Imp, Iff)):
            stack.append(g.left)
            stack.append(g.right)


def variables(f: Formula) -> frozenset[int]:
    return frozenset(g.index for g in subformulas(f) if isinstance(g, Var))


def modal_depth(f: Formula) -> int:
    memo: dict[int, int] = {}

    def go(g: Formula) -> int:
        r = memo.get(id(g))
        if r is not None:
            return r
        if isinstance(g, (Var, Bot, Top)):
            r = 0
        elif isinstance(g, Not):
            r = go(g.child)
        elif isinstance(g, (And, Or, Imp, Iff)):
            r = max(go(g.left), go(g.right))
        else:
            r = 1 + go(g.child)
        memo[id(g)] = r
        return r

    return go(f)


def substitute(f: Formula, mapping: Mapping[int, Formula]) -> Formula:
    """Simultaneous substitution; variables absent from the map are kept."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        if isinstance(g, Var):
            r = mapping.get(g.index, g)
        elif isinstance(g, (Bot, Top)):
            r = g
        elif isinstance(g, Not):
            r = Not(go(g.child))
        elif isinstance(g, And):
            r = And(go(g.left), go(g.right))
        elif isinstance(g, Or):
            r = Or(go(g.left), go(g.right))
        elif isinstance(g, Imp):
            r = Imp(go(g.left), go(g.right))
        elif isinstance(g, Iff):
            r = Iff(go(g.left), go(g.right))
        elif isinstance(g, Dia):
            r = Dia(g.mod, go(g.child))
        elif isinstance(g, Box):
            r = Box(g.mod, go(g.child))
        elif isinstance(g, ReachDia):
            r = ReachDia(go(g.child))
        else:
            r = ReachBox(go(g.child))
        memo[id(g)] = r
        return r

    return go(f)


def swap_modalities(f: Formula) -> Formula:
    """Exchange the two modalities throughout the formula."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(id(g))
        if r is not None:
            return r
        if isinstance(g, (Var, Bot, Top)):
            r = g
        elif isinstance(g, Not):
            r = Not(go(g.child))
        elif isinstance(g, And):
            r = And(go(g.left), go(g.right))
        elif isinstance(g, Or):
            r = Or(go(g.left), go(g.right))
        elif isinstance(g, Imp):
            r = Imp(go(g.left), go(g.right))
        elif isinstance(g, Iff):
            r = Iff(go(g.left), go(g.right))
        elif isinstance(g, Dia):
            r = Dia(3 - g.mod, go(g.child))
        elif isinstance(g, Box):
            r = Box(3 - g.mod, go(g.child))
        elif isinstance(g, ReachDia):
            r = ReachDia(go(g.child))
        else:
            r = ReachBox(go(g.child))
        memo[id(g)] = r
        return r

    return go(f)


def print_formula(f: Formula) -> str:
    """Canonical fully-parenthesised text; parse(print(f)) == f."""
    if isinstance(f, Var):
        return f"p{f.index}"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Not):
        return "~" + print_formula(f.child)
    if isinstance(f, Dia):
        return f"<{f.mod}>" + print_formula(f.child)
    if isinstance(f, Box):
        return f"[{f.mod}]" + print_formula(f.child)
    if isinstance(f, ReachDia):
        return "<+>" + print_formula(f.child)
    if isinstance(f, ReachBox):
        return "[+]" + print_formula(f.child)
    op = _BINARY[type(f)]
    return f"({print_formula(f.left)} {op} {print_formula(f.right)})"


# --- parser -----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<iff><->)
      | (?P<imp>->)
      | (?P<and>&)
      | (?P<or>\|)
      | (?P<not>~)
      | (?P<dia><(?P<diatok>1|2|v|\*)>)
      | (?P<box>\[(?P<boxtok>1|2|v|\*)\])
      | (?P<lpar>\()
      | (?P<rpar>\))
      | (?P<false>false)
      | (?P<true>true)
      | (?P<var>p[0-9]+)
    """,
    re.VERBOSE,
)

_ATOM_EXPECTED = frozenset({"false", "true", "var", "~", "<i>", "[i]", "("})
_INFIX_EXPECTED = frozenset({"&", "|", "->", "<->", ")", "end"})


def _byte_offset(text: str, char_pos: int) -> int:
    return len(text[:char_pos].encode("utf-8"))


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(
                "unrecognised input", _byte_offset(text, pos),
                _ATOM_EXPECTED | _INFIX_EXPECTED, text[pos])
        kind = m.lastgroup if m.lastgroup not in ("diatok", "boxtok") else None
        if kind is None:  # lastgroup was the inner token group
            kind = "dia" if m.group("dia") else "box"
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: frozenset[str]):
        kind, text, pos = self.peek()
        raise FormulaSyntaxError(
            "unexpected token", _byte_offset(self.text, pos), expected,
            text if text else "end of input")

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek()[0] != "end":
            self.fail(_INFIX_EXPECTED - {")"})
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek()[0] == "iff":
            self.advance()
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek()[0] == "imp":
            self.advance()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "or":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "and":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, text, _ = self.peek()
        if kind == "not":
            self.advance()
            return Not(self.unary())
        if kind == "dia":
            self.advance()
            tok = text[1:-1]
            child = self.unary()
            if tok == "v":
                return dia_v(child)
            if tok == "*":
                return dia_star(child)
            return Dia(int(tok), child)
        if kind == "box":
            self.advance()
            tok = text[1:-1]
            child = self.unary()
            if tok == "v":
                return box_v(child)
            if tok == "*":
                return box_star(child)
            return Box(int(tok), child)
        return self.atom()

    def atom(self) -> Formula:
        kind, text, _ = self.peek()
        if kind == "false":
            self.advance()
            return Bot()
        if kind == "true":
            self.advance()
            return Top()
        if kind == "var":
            self.advance()
            return Var(int(text[1:]))
        if kind == "lpar":
            self.advance()
            f = self.iff()
            if self.peek()[0] != "rpar":
                self.fail(frozenset({")"}) | _INFIX_EXPECTED - {"end", ")"})
            self.advance()
            return f
        self.fail(_ATOM_EXPECTED)


def parse(text: str) -> Formula:
    """Parse formula text.  Precedence ~/modal > & > | > -> > <->;
    implication and equivalence associate to the right."""
    return _Parser(text).parse()


# --- named formulas ----------------------------------------------------

P = Var(0)
Q = Var(1)

MODALITY_TOKENS = (1, 2, "v", "*")


def _token(value) -> int | str:
    if value in (1, 2):
        return value
    if value in ("1", "2"):
        return int(value)
    if value in ("v", "*"):
        return value
    raise ArityMismatch(f"modality token must be one of 1, 2, v, *; got {value!r}")


def _dia_at(tok, f: Formula) -> Formula:
    if tok == "v":
        return dia_v(f)
    if tok == "*":
        return dia_star(f)
    return Dia(tok, f)


def _box_at(tok, f: Formula) -> Formula:
    if tok == "v":
        return box_v(f)
    if tok == "*":
        return box_star(f)
    return Box(tok, f)


def _mod_param(params, i) -> int:
    m = params[i]
    if m in ("1", "2"):
        m = int(m)
    if m not in (1, 2):
        raise ArityMismatch(f"modality must be 1 or 2, got {params[i]!r}")
    return m


def _need(params, n, name):
    if len(params) != n:
        raise ArityMismatch(f"{name} takes {n} parameter(s), got {len(params)}")


def _bh(params):
    _need(params, 2, "bh")
    n = int(params[0])
    if n < 0:
        raise ArityMismatch("bh height must be nonnegative")
    tok = _token(params[1])
    f: Formula = Bot()
    for i in range(1, n + 1):
        f = Imp(Var(i), _box_at(tok, Or(_dia_at(tok, Var(i)), f)))
    return f


def _rp(params):
    _need(params, 2, "rp")
    m = int(params[0])
    if m < 0:
        raise ArityMismatch("rp index must be nonnegative")
    tok = _token(params[1])

    def iterated(times: int, f: Formula) -> Formula:
        for _ in range(times):
            f = _dia_at(tok, f)
        return f

    core: Formula = Var(m + 1)
    for i in range(m, 0, -1):
        core = And(Var(i), _dia_at(tok, core))
    antecedent = And(Var(0), _dia_at(tok, core))
    parts = [iterated(i, And(Var(i), Var(j)))
             for i in range(m + 2) for j in range(i + 1, m + 2)]
    parts += [iterated(i, And(Var(i), _dia_at(tok, Var(j + 1))))
              for i in range(m + 1) for j in range(i + 1, m + 1)]
    return Imp(antecedent, disj(parts))


def _presym_one(i: int) -> Formula:
    return Imp(Q, dia_star(And(Q, box_star(Imp(P, Box(i, Imp(Q, Dia(i, P))))))))


def _presym(params):
    if len(params) == 0:
        return And(_presym_one(1), _presym_one(2))
    _need(params, 1, "presym")
    return _presym_one(_mod_param(params, 0))


def _mck(params):
    _need(params, 1, "mck")
    tok = _token(params[0])
    return Imp(_box_at(tok, _dia_at(tok, P)), _dia_at(tok, _box_at(tok, P)))


def _dot3(params):
    _need(params, 1, "dot3")
    i = _mod_param(params, 0)
    return Imp(And(Dia(i, P), Dia(i, Q)),
               Or(Dia(i, And(P, Dia(i, Q))), Dia(i, And(Q, Dia(i, P)))))


def _triv(params):
    _need(params, 1, "triv_ax")
    i = _mod_param(params, 0)
    return Iff(P, Dia(i, P))


def _s4(params):
    _need(params, 1, "s4_ax")
    i = _mod_param(params, 0)
    return And(Imp(P, Dia(i, P)), Imp(Dia(i, Dia(i, P)), Dia(i, P)))


def _s5(params):
    _need(params, 1, "s5_ax")
    i = _mod_param(params, 0)
    return And(_s4([i]), Imp(P, Box(i, Dia(i, P))))


def _fixed(builder):
    def build(params):
        _need(params, 0, "this formula")
        return builder()
    return build


NAMED_FORMULAS: dict[str, tuple[str, object]] = {
    "bh": ("bh(n, tok): height axiom at a modality token", _bh),
    "rp": ("rp(m, tok): chain-collapse axiom at a modality token", _rp),
    "com": ("com: the two diamonds commute", _fixed(
        lambda: Iff(Dia(1, Dia(2, P)), Dia(2, Dia(1, P))))),
    "chr": ("chr: confluence (Church-Rosser) axiom", _fixed(
        lambda: Imp(Dia(1, Box(2, P)), Box(2, Dia(1, P))))),
    "presym": ("presym([i]): presymmetry axiom(s)", _presym),
    "conv": ("conv: converse axioms for tense frames", _fixed(
        lambda: And(Imp(Dia(1, Box(2, P)), P), Imp(Dia(2, Box(1, P)), P)))),
    "dd": ("dd: downward directedness of the second diamond", _fixed(
        lambda: Imp(And(Dia(2, P), Dia(2, Q)), Dia(2, And(Dia(1, P), Dia(1, Q)))))),
    "mck": ("mck(tok): McKinsey axiom at a modality token", _mck),
    "dot3": ("dot3(i): linearity axiom at a modality", _dot3),
    "sym2": ("sym2: symmetry axiom for the second modality", _fixed(
        lambda: Imp(P, Box(2, Dia(2, P))))),
    "match2_ax": ("match2_ax: first-diamond steps stay in second-diamond clusters",
                  _fixed(lambda: Imp(And(P, Dia(1, Q)), Dia(2, And(Q, Dia(2, P)))))),
    "match12_ax": ("match12_ax: second-diamond steps split into first-diamond or cluster",
                   _fixed(lambda: Imp(And(P, Dia(2, Q)),
                                      Or(Dia(1, Q), Dia(2, And(Q, Dia(2, P))))))),
    "cas": ("cas: chained-box collapse axiom", _fixed(
        lambda: Imp(box_star(Imp(Box(1, Imp(Box(1, P), box_star(P))), box_star(P))),
                    box_star(P)))),
    "u_incl": ("u_incl: first diamond included in the second", _fixed(
        lambda: Imp(Dia(1, P), Dia(2, P)))),
    "triv_ax": ("triv_ax(i): diamond is the identity", _triv),
    "s4_ax": ("s4_ax(i): reflexivity and transitivity", _s4),
    "s5_ax": ("s5_ax(i): reflexivity, transitivity, symmetry", _s5),
}


def named_formula(name: str, params=()) -> Formula:
    """Instantiate a registry formula.  Template variables are p = p0, q = p1."""
    entry = NAMED_FORMULAS.get(name)
    if entry is None:
        raise UnknownName(f"unknown formula name {name!r}")
    return entry[1](list(params))


def registry_names() -> tuple[str, ...]:
    return tuple(NAMED_FORMULAS)
