"""Bracket engine: structure constants, realization, axiom sweeps, closures."""

import random
from fractions import Fraction

import pytest

from blocklie.algebra import (
    BLOCK_B,
    BLOCK_BBAR,
    VIRASORO,
    W_1INF,
    W_INF,
    AlgebraElement,
    BasisKey,
    KeyWindow,
    LaurentOp,
    associated_graded_check,
    bracket,
    bracket_terms,
    central,
    gen,
    generation_closure,
    laurent_bracket,
    parse_variant,
    quotient,
    verify_algebra_axioms,
    vir_consistency,
    window_keys,
)


def test_block_bracket_examples():
    assert bracket(gen(BLOCK_B, 1, 0), gen(BLOCK_B, -1, 0)) == gen(BLOCK_B, 0, 0, -2)
    assert bracket(gen(BLOCK_B, 2, 0), gen(BLOCK_B, -2, 0)) == gen(BLOCK_B, 0, 0, -4) + central(BLOCK_B)
    assert bracket(gen(BLOCK_B, 0, 1), gen(BLOCK_B, 0, 2)).is_zero()
    assert bracket(gen(BLOCK_B, 1, 1), gen(BLOCK_B, 2, 0)) == gen(BLOCK_B, 3, 1, 3)


def test_virasoro_bracket_example():
    assert bracket(gen(VIRASORO, 2), gen(VIRASORO, -2)) == gen(VIRASORO, 0, 0, -4) + central(VIRASORO, Fraction(1, 2))


def test_w_bracket_examples():
    assert bracket(gen(W_1INF, 1, 1), gen(W_1INF, -1, 1)) == gen(W_1INF, 0, 1, -2)
    assert bracket(gen(W_1INF, 2, 1), gen(W_1INF, -2, 1)) == gen(W_1INF, 0, 1, -4) + central(W_1INF, -1)


def test_bbar_central_term():
    # at level -1 on both sides the leading coefficient vanishes and only
    # the central pairing a * delta_{a+b,0} delta_{i+j,-2} survives
    result = bracket(gen(BLOCK_BBAR, 3, -1), gen(BLOCK_BBAR, -3, -1))
    assert result == central(BLOCK_BBAR, 3)
    assert bracket(gen(BLOCK_BBAR, 1, 0), gen(BLOCK_BBAR, -1, -1)).terms == {BasisKey(0, -1): Fraction(-1)}


def test_mixed_variant_rejected():
    with pytest.raises(ValueError):
        bracket(gen(BLOCK_B, 1, 0), gen(VIRASORO, 1))


def test_quotient_projection():
    q = quotient(0, 1)
    result = bracket(gen(q, 1, 1), gen(q, 2, 1))
    assert result.is_zero()  # level 2 leaves the band
    kept = bracket(gen(q, 1, 0), gen(q, 2, 1))
    assert kept == gen(q, 3, 1, Fraction((0 + 1) * 2 - (1 + 1) * 1))


def test_quotient_key_validation():
    q = quotient(1, 2)
    with pytest.raises(ValueError):
        gen(q, 1, 0)
    with pytest.raises(ValueError):
        central(q)


def test_laurent_bracket_examples():
    a = LaurentOp.monomial(1, 1)
    b = LaurentOp.monomial(-1, 1)
    assert laurent_bracket(a, b).to_element() == gen(BLOCK_B, 0, 0, -2)
    c = LaurentOp.monomial(2, 1)
    d = LaurentOp.monomial(-2, 1)
    assert laurent_bracket(c, d).to_element() == gen(BLOCK_B, 0, 0, -4) + central(BLOCK_B)
    e = LaurentOp.monomial(0, 2)
    f = LaurentOp.monomial(0, 3)
    assert laurent_bracket(e, f).to_element().is_zero()


def test_laurent_matches_abstract_bracket():
    for a in range(-3, 4):
        for b in range(-3, 4):
            for i in range(3):
                for j in range(3):
                    realized = laurent_bracket(LaurentOp.monomial(a, i + 1), LaurentOp.monomial(b, j + 1))
                    abstract = bracket(gen(BLOCK_B, a, i), gen(BLOCK_B, b, j))
                    assert realized.to_element() == abstract


def test_laurent_rejects_constant_term():
    with pytest.raises(ValueError):
        LaurentOp(1, {0: Fraction(1)})


def test_axiom_sweeps_clean():
    assert verify_algebra_axioms(BLOCK_B, 4, 3) == []
    assert verify_algebra_axioms(VIRASORO, 8) == []
    assert verify_algebra_axioms(quotient(0, 2), 3, 2) == []
    assert verify_algebra_axioms(quotient(1, 3), 3, 3) == []
    assert verify_algebra_axioms(W_INF, 3, 3) == []


def test_axiom_sweep_detects_corruption():
    def corrupted(variant, x, y):
        terms, c = bracket_terms(variant, x, y)
        if x == BasisKey(1, 0) and y == BasisKey(2, 0):
            c = c + 1  # break the cocycle
        return terms, c

    violations = verify_algebra_axioms(BLOCK_B, 2, 1, bracket_fn=corrupted)
    assert violations


def test_gradation_property():
    rng = random.Random(31)
    keys = window_keys(BLOCK_B, 4, 2)
    for _ in range(80):
        x = rng.choice(keys)
        y = rng.choice(keys)
        terms, _ = bracket_terms(BLOCK_B, x, y)
        for key in terms:
            assert key.alpha == x.alpha + y.alpha


def test_centrality():
    for key in window_keys(BLOCK_B, 3, 2):
        assert bracket(central(BLOCK_B), gen(BLOCK_B, key.alpha, key.level)).is_zero()


def test_vir_consistency_sweep():
    report = vir_consistency(10)
    assert report["homomorphism"] is True
    assert report["c0"] == "1/2"
    assert report["quotient_matches"] is True
    # the rescaling does not depend on the sweep size
    assert vir_consistency(2)["c0"] == "1/2"


def test_associated_graded():
    assert associated_graded_check(3, 2) == []
    # spot values behind the sweep
    top = bracket(gen(W_INF, 1, 2), gen(W_INF, 2, 2))
    assert top.terms.get(BasisKey(3, 3)) == Fraction(2)
    low = bracket(gen(W_INF, 1, 1), gen(W_INF, -1, 1))
    assert low.terms.get(BasisKey(0, 1)) == Fraction(-2)


def test_generation_closure_positive_window():
    window = KeyWindow(1, 4, 0, 2)
    reached = generation_closure([BasisKey(1, 0), BasisKey(1, 1)], BLOCK_B, window)
    assert BasisKey(2, 1) in reached
    assert BasisKey(2, 0) not in reached


def test_generation_closure_full_positive_part():
    window = KeyWindow(1, 5, 0, 2)
    seeds = [BasisKey(1, i) for i in range(3)] + [BasisKey(2, 0)]
    reached = generation_closure(seeds, BLOCK_B, window)
    assert reached == set(window.keys(BLOCK_B))


def test_generation_closure_level_ideal():
    # the ideal generated by the degree-1 level-2 generator is the level >= 2 part
    window = KeyWindow(-3, 3, 0, 3)
    reached = generation_closure([BasisKey(1, 2)], BLOCK_B, window)
    assert reached == {BasisKey(a, i) for a in range(-3, 4) for i in (2, 3)}


def test_quotient_soundness():
    # bracketing in B then discarding high levels equals bracketing in the quotient
    rng = random.Random(32)
    for m, n in ((0, 1), (0, 3), (1, 2)):
        q = quotient(m, n)
        for _ in range(60):
            x = BasisKey(rng.randint(-4, 4), rng.randint(m, n))
            y = BasisKey(rng.randint(-4, 4), rng.randint(m, n))
            full_terms, full_central = bracket_terms(BLOCK_B, x, y)
            q_terms, q_central = bracket_terms(q, x, y)
            projected = {k: v for k, v in full_terms.items() if k.level <= n}
            assert q_terms == projected
            assert q_central == full_central  # central arises only at level sum zero


def test_element_json_roundtrip():
    elem = gen(BLOCK_B, 2, 1, Fraction(-3, 4)) + central(BLOCK_B, Fraction(1, 6))
    assert AlgebraElement.from_json(elem.to_json()) == elem
    assert parse_variant(str(quotient(1, 2))) == quotient(1, 2)


def test_element_repr():
    assert repr(bracket(gen(BLOCK_B, 2, 0), gen(BLOCK_B, -2, 0))) == "-4*L_{0,0} + C"
    assert repr(gen(VIRASORO, 3)) == "L_{3}"
    assert repr(gen(W_1INF, 2, 1)) == "x^2*D^1"
