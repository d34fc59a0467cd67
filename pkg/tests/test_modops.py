import random

import pytest

from gpfkit.errors import RingMismatchError
from gpfkit.modops import (
    Ideal,
    QuotientModule,
    Submodule,
    SubquotientView,
    colon_ideal,
    colon_module,
    ideal_power,
    ideal_product,
    intersect,
    module_scale,
    module_sum,
    partial_products,
    saturate,
)

from helpers import (
    counterexample_module,
    ideal_sub,
    random_monomial_sub,
    twisted_setup,
    xy_ring,
)


def test_ideal_canonical_gens_sorted_and_reduced():
    ring, x, y = xy_ring()
    ideal = Ideal(ring, [y, x, x + y])
    assert [str(g) for g in ideal.canonical_gens()] == ["x", "y"]


def test_ideal_contains_and_equals():
    ring, x, y = xy_ring()
    a = Ideal(ring, [x * x, x * y])
    assert a.contains(x * x * y)
    assert not a.contains(x)
    b = Ideal(ring, [x * y, x * x, x * x + x * y])
    assert a.equals(b)


def test_colon_module_chain_values():
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x * x,), (x * y,)))
    m = Ideal(ring, [x, y])
    K1 = colon_module(N, m, M)
    assert K1.equals(ideal_sub(ring, x))
    K2 = colon_module(K1, Ideal(ring, [x]), M)
    assert K2.equals(M.full())


def test_colon_module_two_lines():
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x * y,),))
    assert colon_module(N, Ideal(ring, [x]), M).equals(ideal_sub(ring, y))
    assert colon_module(N, Ideal(ring, [y]), M).equals(ideal_sub(ring, x))


def test_colon_by_zero_ideal_gives_everything():
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x,),))
    assert colon_module(N, Ideal(ring, []), M).equals(M.full())


def test_colon_ideal_values():
    ring, x, y = xy_ring()
    N = ideal_sub(ring, x * x, x * y)
    P = ideal_sub(ring, x)
    got = colon_ideal(N, P)
    assert got.equals(Ideal(ring, [x, y]))
    assert colon_ideal(N, N).equals(Ideal(ring, [ring.one()]))


def test_colon_ideal_unit_iff_equal():
    """Ann(A/B) is the unit ideal exactly when A/B is zero."""
    ring, x, y = xy_ring()
    rng = random.Random(3)
    M = QuotientModule.of_ring(ring)
    one = Ideal(ring, [ring.one()])
    for _ in range(25):
        B = random_monomial_sub(rng, M)
        A = module_sum(B, random_monomial_sub(rng, M))
        unit = colon_ideal(B, A).equals(one)
        assert unit == B.contains_module(A)


def test_twisted_colon_is_maximal_ideal():
    ring, p, m, _ = twisted_setup()
    M = QuotientModule.of_ring(ring)
    p2 = ideal_power(p.ideal, 2)
    N = M.span([(g,) for g in p2.gens])
    got = colon_module(N, p.ideal, M)
    assert got.equals(M.span([(g,) for g in m.gens]))


def test_twisted_annihilator_of_prime():
    ring, p, m, _ = twisted_setup()
    x, y, z = ring.gen(0), ring.gen(1), ring.gen(2)
    zero = Submodule(ring, 1, [])
    psub = ideal_sub(ring, x, z)
    ann = colon_ideal(zero, psub)
    assert ann.equals(Ideal(ring, [y * y - x * z]))


def test_counterexample_first_colon():
    ring, M, N = counterexample_module()
    x, y = ring.gen(0), ring.gen(1)
    K1 = colon_module(N, Ideal(ring, [x, y]), M)
    want = M.span(((ring.one(), ring.zero()),))
    assert K1.equals(want)
    K2 = colon_module(K1, Ideal(ring, [x]), M)
    assert K2.equals(M.full())


def test_saturation_reaches_stable_colon():
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x * x,), (x * y,)))
    sat = saturate(N, y, M)
    assert sat.equals(ideal_sub(ring, x))
    assert sat.contains_module(N)
    again = saturate(sat, y, M)
    assert again.equals(sat)


def test_intersection_and_sum():
    ring, x, y = xy_ring()
    A = ideal_sub(ring, x)
    B = ideal_sub(ring, y)
    assert intersect(A, B).equals(ideal_sub(ring, x * y))
    assert module_sum(A, B).equals(ideal_sub(ring, x, y))


def test_module_scale():
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    m = Ideal(ring, [x, y])
    out = module_scale(m, M)
    assert out.equals(ideal_sub(ring, x, y))
    twice = module_scale(m, M.module_of(out))
    assert twice.equals(ideal_sub(ring, x * x, x * y, y * y))


def test_ideal_product_and_power():
    ring, x, y = xy_ring()
    a = Ideal(ring, [x])
    b = Ideal(ring, [x, y])
    ab = ideal_product(a, b)
    ba = ideal_product(b, a)
    assert ab.equals(ba)
    assert ideal_power(b, 2).equals(ideal_product(b, b))
    sq = ideal_power(b, 2)
    assert sq.contains(x * y) and not sq.contains(x)


def test_partial_products_accumulate():
    ring, x, y = xy_ring()
    a = Ideal(ring, [x, y])
    b = Ideal(ring, [x])
    prods = partial_products([a, b])
    assert len(prods) == 3
    assert prods[0].equals(Ideal(ring, [ring.one()]))
    assert prods[1].equals(a)
    assert prods[2].equals(ideal_product(a, b))


def test_colon_law_product_equals_iterated():
    """(N : IJ) = ((N : I) : J) on a random monomial battery."""
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    rng = random.Random(11)
    for _ in range(20):
        N = random_monomial_sub(rng, M)
        I = random_monomial_sub(rng, M).as_ideal()
        J = random_monomial_sub(rng, M).as_ideal()
        direct = colon_module(N, ideal_product(I, J), M)
        stepwise = colon_module(colon_module(N, I, M), J, M)
        assert direct.equals(stepwise)


def test_colon_antitone_in_ideal():
    ring, x, y = xy_ring()
    M = QuotientModule.of_ring(ring)
    rng = random.Random(13)
    for _ in range(15):
        N = random_monomial_sub(rng, M)
        I = random_monomial_sub(rng, M).as_ideal()
        J = ideal_product(I, random_monomial_sub(rng, M).as_ideal())
        bigger = colon_module(N, J, M)
        smaller = colon_module(N, I, M)
        assert bigger.contains_module(smaller)


def test_quotient_module_basics():
    ring, M, N = counterexample_module()
    x, y = ring.gen(0), ring.gen(1)
    assert M.ann().equals(Ideal(ring, [x]))
    assert not M.is_zero()
    assert M.with_denominator(M.full()).is_zero()
    view = SubquotientView(M.full(), N)
    assert not view.is_zero()


def test_rank_mismatch_rejected():
    ring, x, y = xy_ring()
    with pytest.raises(RingMismatchError):
        Submodule(ring, 2, [(x,)])
