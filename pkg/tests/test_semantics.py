import pytest
from hypothesis import given, settings

from kripkebench.constructions import (chain, cluster, lift, product, rect,
                                       singleton, univ_chain)
from kripkebench.enumeration import all_bimodal_frames
from kripkebench.errors import BudgetExceeded, FormatError
from kripkebench.formulas import (Bot, Dia, Or, ReachDia, Var, dia_star,
                                  named_formula, parse, variables)
from kripkebench.frames import (Frame, GeneralFrame, frame_property,
                                generated_subframe)
from kripkebench.semantics import (Model, eval_formula, reach_modality_eval,
                                   refutes_witness, valid)

from conftest import formulas, frames


def test_eval_examples():
    m = Model(univ_chain(2), {0: 0b10})
    assert eval_formula(m, parse("<1>p0")) == 0b11
    assert eval_formula(m, parse("true")) == 0b11
    assert eval_formula(m, parse("p7")) == 0  # absent variable is empty

    witness_model = Model(univ_chain(2), {0: 0b01, 1: 0b11})
    ext = eval_formula(witness_model, named_formula("presym", [1]))
    assert not ext >> 0 & 1


def test_model_admissibility():
    g = GeneralFrame(lift(chain(2)), (0b00, 0b11))
    with pytest.raises(FormatError, match="admissible"):
        Model(g, {0: 0b01})
    Model(g, {0: 0b11})  # fine


def test_valid_examples():
    assert not valid(univ_chain(2), named_formula("presym", [1]))
    presym = named_formula("presym")
    for a in (chain(2), cluster(2), chain(3)):
        for b in (chain(2), cluster(3)):
            assert valid(product(a, b), presym, budget=1 << 23)
    for n in range(1, 5):
        F = lift(chain(n))
        for k in range(5):
            assert valid(F, named_formula("bh", [k, 1]), budget=1 << 22) == (k >= n)


def test_valid_on_general_frame_uses_algebra():
    # on the two-chain with only the trivial algebra, p0 -> <1>... everything
    # admissible is constant, so even p0 -> [1]p0 becomes valid
    frame = lift(chain(2))
    g = GeneralFrame(frame, (0b00, 0b11))
    assert not valid(frame, parse("p0 -> [1]p0"))
    assert valid(g, parse("p0 -> [1]p0"))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as e:
        valid(rect(3, 3), named_formula("presym"), budget=100)
    assert e.value.needed == (1 << 9) ** 2


def test_refutes_witness_examples():
    w = refutes_witness(univ_chain(2), named_formula("presym", [1]))
    assert w is not None
    model = Model(univ_chain(2), w.as_dict())
    assert not eval_formula(model, named_formula("presym", [1])) >> w.world & 1

    assert refutes_witness(singleton(), parse("p0 -> <1>p0")) is None

    w = refutes_witness(lift(chain(3)), named_formula("bh", [1, 1]))
    assert w is not None
    model = Model(lift(chain(3)), w.as_dict())
    assert not eval_formula(model, named_formula("bh", [1, 1])) >> w.world & 1


def test_witness_is_lexicographically_least():
    # reference: enumerate assignments in bitstring-order by hand
    f = parse("p0 -> [1]p0")
    g = lift(chain(2))
    w = refutes_witness(g, f)
    cands = sorted(range(4), key=lambda m: (m & 1, m >> 1 & 1))
    best = None
    for mask in cands:
        ext = eval_formula(Model(g, {0: mask}), f)
        if ext != 0b11:
            missing = [i for i in range(2) if not ext >> i & 1]
            best = ({0: mask}, missing[0])
            break
    assert w.as_dict() == best[0] and w.world == best[1]


def test_vectorized_and_scalar_paths_agree():
    # same frame and formula, budgets chosen so both paths run
    f = named_formula("presym", [1])
    g = univ_chain(3)
    w = refutes_witness(g, f, budget=1 << 22)
    import kripkebench.semantics as S
    old = S._VEC_MIN_ASSIGNMENTS
    S._VEC_MIN_ASSIGNMENTS = 1 << 60  # force the scalar path
    try:
        w2 = refutes_witness(g, f, budget=1 << 22)
    finally:
        S._VEC_MIN_ASSIGNMENTS = old
    assert w == w2


def test_witness_beyond_first_chunk():
    # 16 variables on the reflexive singleton give 2^16 assignments; the only
    # refutation is the very last one in enumeration order, past the chunk
    # boundary of the vectorized path
    from kripkebench.formulas import And, Not, Var
    f = Var(0)
    for v in range(1, 16):
        f = And(f, Var(v))
    f = Not(f)
    g = singleton()
    w = refutes_witness(g, f, budget=1 << 20)
    assert w is not None
    assert w.valuation == tuple((v, 1) for v in range(16))
    assert w.world == 0
    import kripkebench.semantics as S
    old = S._VEC_MIN_ASSIGNMENTS
    S._VEC_MIN_ASSIGNMENTS = 1 << 60
    try:
        assert refutes_witness(g, f, budget=1 << 20) == w
    finally:
        S._VEC_MIN_ASSIGNMENTS = old


def test_reach_modality():
    pr = product(chain(2), chain(2))
    for mask in range(1 << 4):
        m = Model(pr, {0: mask})
        assert eval_formula(m, dia_star(Var(0))) == \
            reach_modality_eval(m, ReachDia(Var(0)))

    chain4 = lift(chain(4))
    m = Model(chain4, {0: 0b1000})
    assert reach_modality_eval(m, ReachDia(Var(0))) == \
        eval_formula(m, dia_star(Var(0))) == 0b1111

    cover4 = Frame(4, (0b0010, 0b0100, 0b1000, 0b0000), (0, 0, 0, 0))
    m = Model(cover4, {0: 0b1000})
    assert eval_formula(m, dia_star(Var(0))) != \
        reach_modality_eval(m, ReachDia(Var(0)))


def test_reach_vs_star_separation_needs_four_worlds():
    # brute force: on every frame with at most 3 worlds they agree
    for n in (1, 2, 3):
        for bits1 in range(1 << (n * n)):
            r1 = tuple((bits1 >> (i * n)) & ((1 << n) - 1) for i in range(n))
            F = Frame(n, r1, (0,) * n)
            for mask in range(1 << n):
                m = Model(F, {0: mask})
                assert eval_formula(m, dia_star(Var(0))) == \
                    reach_modality_eval(m, ReachDia(Var(0)))


@settings(max_examples=80, deadline=None, derandomize=True)
@given(frames(max_n=4), formulas(max_depth=4, max_vars=2),
       formulas(max_depth=4, max_vars=2))
def test_kripke_clauses(f, a, b):
    rows_needed = max(variables(a) | variables(b) | {0}) + 1
    val = {v: (0b0101 >> v & 1) * ((1 << f.n) - 1) for v in range(rows_needed)}
    m = Model(f, val)
    assert eval_formula(m, Or(a, b)) == eval_formula(m, a) | eval_formula(m, b)
    assert eval_formula(m, Dia(1, Bot())) == 0
    assert eval_formula(m, Dia(2, Bot())) == 0


@settings(max_examples=60, deadline=None, derandomize=True)
@given(frames(max_n=4), formulas(max_depth=4, max_vars=2))
def test_generated_subframe_preserves_truth(f, phi):
    val = {0: 0b0110 & f.full, 1: 0b1010 & f.full}
    m = Model(f, val)
    ext = eval_formula(m, phi)
    for a in range(f.n):
        sub, reach = generated_subframe(f, 1 << a)
        keep = [w for w in range(f.n) if reach >> w & 1]
        pos = keep.index(a)
        sub_val = {v: sum(1 << i for i, w in enumerate(keep) if mask >> w & 1)
                   for v, mask in val.items()}
        sub_ext = eval_formula(Model(sub, sub_val), phi)
        assert (ext >> a & 1) == (sub_ext >> pos & 1)


def test_correspondence_small_exhaustive():
    for F in all_bimodal_frames(2):
        assert valid(F, named_formula("com")) == frame_property(F, "com")
        assert valid(F, named_formula("chr")) == frame_property(F, "cr")
        assert valid(F, named_formula("conv")) == frame_property(F, "tense")
        for m in (0, 1):
            assert valid(F, named_formula("rp", [m, "v"]), budget=1 << 22) == \
                frame_property(F, "rp", (m,))
