from random import Random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from kripkebench.algebra import (SetAlgebra, atoms_of, beta_formula,
                                 block_system, free_algebra_count,
                                 generated_subalgebra,
                                 naive_free_algebra_count)
from kripkebench.constructions import (chain, cluster, lift, lintgrz, rect,
                                       singleton, tack, univ_chain)
from kripkebench.enumeration import random_frame, random_valuation
from kripkebench.errors import (BudgetExceeded, CapExceeded, NotDefinable,
                                NotPretransitive)
from kripkebench.formulas import modal_depth
from kripkebench.frames import Frame, preimage, worlds_of
from kripkebench.semantics import Model, eval_formula

from conftest import frames


def naive_closure(frame, gens):
    """Independent re-closure oracle for generated_subalgebra."""
    sets = {0, frame.full} | set(gens)
    while True:
        new = set()
        for u in sets:
            new.add(frame.full ^ u)
            new.add(preimage(frame.r1, u))
            new.add(preimage(frame.r2, u))
            for v in sets:
                new.add(u & v)
        if new <= sets:
            return sets
        sets |= new


def test_generated_subalgebra_examples():
    assert len(generated_subalgebra(singleton(), [])) == 2
    assert len(generated_subalgebra(univ_chain(2), [0b01])) == 4
    alg = generated_subalgebra(rect(2, 2), [0b0011])  # one row
    assert set(alg.elements) == naive_closure(rect(2, 2), [0b0011])
    assert [alg.elements[i] for i in alg.generators] == [0b0011]


def test_generated_subalgebra_cap():
    with pytest.raises(CapExceeded):
        generated_subalgebra(rect(2, 2), [0b0001, 0b0110], cap=3)


@settings(max_examples=50, deadline=None, derandomize=True)
@given(frames(max_n=4), st.lists(st.integers(0, 15), max_size=2))
def test_generated_subalgebra_matches_naive_closure(f, gens):
    gens = [g & f.full for g in gens]
    alg = generated_subalgebra(f, gens)
    assert set(alg.elements) == naive_closure(f, gens)


def test_free_algebra_count_examples():
    assert free_algebra_count([singleton()], 0) == 2
    assert free_algebra_count([singleton()], 1) == 4
    assert naive_free_algebra_count([singleton()], 0) == 2
    assert naive_free_algebra_count([singleton()], 1) == 4
    counts = [free_algebra_count([tack("both", m)], 1, cap=1 << 200)
              for m in (1, 2, 3)]
    assert counts[0] < counts[1] < counts[2]


def test_free_algebra_count_against_naive_oracle():
    cases = [([singleton()], 0), ([singleton()], 1),
             ([lift(chain(2))], 1), ([lift(cluster(2))], 1),
             ([singleton(), lift(chain(2))], 1), ([lintgrz(2)], 1)]
    for fs, k in cases:
        assert free_algebra_count(fs, k) == naive_free_algebra_count(fs, k)


def test_free_algebra_count_monotone():
    base = [lift(chain(2))]
    assert free_algebra_count(base, 0) <= free_algebra_count(base, 1)
    assert free_algebra_count(base, 1) <= \
        free_algebra_count(base + [lift(cluster(2))], 1)


def test_free_algebra_count_guards():
    with pytest.raises(BudgetExceeded):
        free_algebra_count([rect(3, 3)], 3, budget=1 << 10)
    with pytest.raises(CapExceeded) as e:
        free_algebra_count([tack("both", 2)], 1, cap=100)
    assert e.value.last_size == 1 << 32


def test_block_system_examples():
    bs = block_system(Model(lift(chain(2)), {0: 0}))
    assert bs.layers == ((0b11,),)
    assert bs.stabilization == 0

    bs = block_system(Model(lift(chain(2)), {0: 0b10}))
    assert bs.stabilization == 1
    assert bs.stabilized == (0b01, 0b10)
    assert bs.layers[0] == (0b11,)

    bs = block_system(Model(lift(chain(2)), {0: 0b10}), max_layers=0)
    assert bs.layers == ((0b11,),) and bs.stabilization is None


def test_block_layer_one_ignores_successors():
    # depth-0 formulas cannot see successors: a dead-end world separates from
    # a live one only at layer 2
    F = Frame(2, (0b10, 0b00), (0b00, 0b00))
    bs = block_system(Model(F, {}))
    assert bs.layers[1] == (0b11,)
    assert bs.stabilized == (0b01, 0b10)
    assert bs.stabilization == 2


def test_beta_on_irreflexive_dead_end_models():
    F = Frame(2, (0b10, 0b00), (0b01, 0b00))
    m = Model(F, {})
    for r in (0, 1):
        cert = beta_formula(m, r)
        assert eval_formula(m, cert.beta) == 1 << r
    F3 = Frame(3, (0b010, 0b100, 0b000), (0b001, 0b000, 0b100))
    m3 = Model(F3, {0: 0b001})
    for r in range(3):
        cert = beta_formula(m3, r)
        assert eval_formula(m3, cert.beta) == 1 << r


def test_block_tree():
    bs = block_system(Model(univ_chain(3), {0: 0b001, 1: 0b010}))
    assert bs.stabilized == (0b001, 0b010, 0b100)
    root = 0b111
    assert set(bs.tree[root]) == {0b001, 0b010, 0b100}
    assert bs.depth_index[root] == 0
    for b in (0b001, 0b010, 0b100):
        assert bs.depth_index[b] == 1


def coarsest_bisimulation(frame, valuation):
    """Independent oracle: refine pairs until stable."""
    n = frame.n
    def same_profile(a, b):
        return all((mask >> a & 1) == (mask >> b & 1)
                   for mask in valuation.values())
    related = {(a, b) for a in range(n) for b in range(n) if same_profile(a, b)}
    changed = True
    while changed:
        changed = False
        for (a, b) in sorted(related):
            ok = True
            for rows in (frame.r1, frame.r2):
                for x in worlds_of(rows[a]):
                    if not any((x, y) in related for y in worlds_of(rows[b])):
                        ok = False
                if ok:
                    for y in worlds_of(rows[b]):
                        if not any((x, y) in related for x in worlds_of(rows[a])):
                            ok = False
            if not ok:
                related.discard((a, b))
                related.discard((b, a))
                changed = True
    blocks = []
    seen = set()
    for a in range(n):
        if a in seen:
            continue
        members = {b for b in range(n) if (a, b) in related}
        seen |= members
        blocks.append(sum(1 << b for b in members))
    return tuple(sorted(blocks, key=lambda m: (m & -m).bit_length()))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(frames(max_n=5))
def test_block_layer_invariants(f):
    val = {0: 0b10101 & f.full}
    bs = block_system(Model(f, val))
    assert bs.layers[0] == (f.full,)
    for earlier, later in zip(bs.layers, bs.layers[1:]):
        # each later block sits inside one earlier block
        for b in later:
            assert sum(1 for p in earlier if b & ~p == 0) == 1
        # and the later layer partitions the worlds
        assert sum(b.bit_count() for b in later) == f.n
    for block, children in bs.tree.items():
        for c in children:
            assert c & ~block == 0 and c != block


def test_blocks_equal_bisimulation_and_atoms():
    rng = Random(1729)
    for _ in range(50):
        n = rng.randint(1, 5)
        F = random_frame(rng, n)
        val = random_valuation(rng, n, rng.randint(0, 2))
        bs = block_system(Model(F, val))
        assert bs.stabilized == coarsest_bisimulation(F, val)
        alg = generated_subalgebra(F, list(val.values()))
        assert set(bs.stabilized) == set(atoms_of(alg))


def test_beta_examples():
    m = Model(lift(chain(2)), {0: 0b10})
    cert = beta_formula(m, 0)
    assert eval_formula(m, cert.beta) == 0b01
    assert cert.depth == modal_depth(cert.beta)

    m2 = Model(rect(2, 2), {0: 0b0001})
    for r in range(4):
        cert = beta_formula(m2, r)
        assert eval_formula(m2, cert.beta) == 1 << r

    with pytest.raises(NotDefinable):
        beta_formula(Model(rect(2, 2), {0: 0}), 1)


def test_beta_alpha_defines_each_point():
    m = Model(tack("both", 2), {0: 0b00001})
    cert = beta_formula(m, 4)
    sub_worlds = sorted(cert.alpha)
    for w, alpha in cert.alpha.items():
        ext = eval_formula(m, alpha)
        # alpha defines its point within the generated submodel
        assert ext >> w & 1
        for other in sub_worlds:
            if other != w:
                assert not ext >> other & 1


def test_beta_not_pretransitive():
    cover4 = Frame(4, (0b0010, 0b0100, 0b1000, 0b0000), (0, 0, 0, 0))
    with pytest.raises(NotPretransitive):
        beta_formula(Model(cover4, {}), 0)


def test_beta_rejects_outside_duplicates():
    # two isolated reflexive points with identical valuations are modally
    # indistinguishable: the generated subframe looks fine but the source
    # model refutes definability
    F = Frame(2, (0b01, 0b10), (0b01, 0b10))
    with pytest.raises(NotDefinable):
        beta_formula(Model(F, {}), 0)


def test_set_algebra_type():
    alg = generated_subalgebra(lift(chain(2)), [0b10])
    assert isinstance(alg, SetAlgebra)
    assert alg.elements[0] == 0 and alg.elements[-1]
    assert len(atoms_of(alg)) == 2
