import pytest

from gpfkit.errors import HypothesisError
from gpfkit.gpf import (
    FactorizationTarget,
    PrimeMultiset,
    check_iff_criterion,
    check_necessary_conditions,
    check_supp_conditions,
    construct_general,
    construct_incomparable,
    construct_prime_power,
    exists_incomparable,
    gpf,
)
from gpfkit.modops import QuotientModule, ideal_power, module_scale
from gpfkit.primes import PrimeIdeal

from helpers import counterexample_module, ideal_sub, twisted_setup, xy_ring


def _xy_primes():
    ring, x, y = xy_ring()
    return (
        ring,
        x,
        y,
        PrimeIdeal(ring, [x]),
        PrimeIdeal(ring, [y]),
        PrimeIdeal(ring, [x, y]),
    )


def test_multiset_merges_and_prints():
    ring, x, y, px, py, m = _xy_primes()
    ms = PrimeMultiset([(m, 1), (px, 1), (m, 1)])
    assert ms.multiplicity(m) == 2
    assert ms.multiplicity(px) == 1
    assert ms.multiplicity(py) == 0
    assert ms.total() == 3
    assert len(ms) == 2
    assert str(ms) == "(x) * (x, y)^2"
    assert ms.equals(PrimeMultiset([(px, 1), (m, 2)]))
    assert not ms.equals(PrimeMultiset.from_primes([px, m]))
    with pytest.raises(ValueError):
        PrimeMultiset([(px, 0)])


def test_target_validation():
    ring, x, y, px, py, m = _xy_primes()
    with pytest.raises(ValueError):
        FactorizationTarget([])
    with pytest.raises(ValueError):
        FactorizationTarget([(px, 0)])
    with pytest.raises(ValueError):
        FactorizationTarget([(px, 1), (px, 2)])
    with pytest.raises(ValueError):
        FactorizationTarget([(px, 1), (m, 1)])
    with pytest.raises(ValueError):
        FactorizationTarget([(px, 1), (m, 1)], mode="incomparable")
    tgt = FactorizationTarget([(m, 1), (px, 1)])
    assert str(tgt) == "(x, y) * (x)"
    inc = FactorizationTarget([(px, 1), (py, 2)], mode="incomparable")
    assert str(inc) == "(x) * (y)^2"


def test_target_reordered_puts_large_primes_first():
    ring, x, y, px, py, m = _xy_primes()
    tgt = FactorizationTarget.reordered([(px, 2), (m, 1)])
    assert [str(p) for p in tgt.primes()] == ["(x, y)", "(x)"]
    assert str(tgt) == "(x, y) * (x)^2"
    ties = FactorizationTarget.reordered([(py, 1), (px, 1)])
    assert [str(p) for p in ties.primes()] == ["(x)", "(y)"]


def test_target_products():
    ring, x, y, px, py, m = _xy_primes()
    tgt = FactorizationTarget([(m, 1), (px, 1)])
    assert tgt.product_ideal().equals(
        ideal_sub(ring, x * x, x * y).as_ideal()
    )
    partials = tgt.partial_ideals()
    assert len(partials) == 3
    assert partials[0].contains(ring.one())
    assert [str(p) for p in tgt.expanded()] == ["(x, y)", "(x)"]
    assert tgt.multiset().equals(PrimeMultiset.from_primes([m, px]))


def test_gpf_monomial_chain_both_tie_breaks():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x * x,), (x * y,)))
    want = PrimeMultiset.from_primes([m, px])
    for tb in ("lex", "revlex"):
        got = gpf(N, M, tie_break=tb)
        assert got.equals(want)
        assert str(got) == "(x) * (x, y)"


def test_gpf_counterexample_module():
    ring, M, N = counterexample_module()
    got = gpf(N, M)
    assert sorted(str(p) for p in got.primes()) == ["(x)", "(x, y)"]
    assert got.total() == 2


def test_supp_conditions_fail_on_counterexample():
    """The product (x, y) * (x) exists nowhere in the counterexample
    module: already the first telescoping condition dies because the
    scaled module (x) * M is zero."""
    ring, M, N = counterexample_module()
    x, y = ring.gen(0), ring.gen(1)
    m = PrimeIdeal(ring, [x, y])
    px = PrimeIdeal(ring, [x])
    target = FactorizationTarget([(m, 1), (px, 1)])
    report = check_supp_conditions(target, M)
    assert not report.all_hold
    bad = report.first_failure()
    assert bad.index == 1
    assert bad.module_is_zero
    assert "scaled module is zero" in bad.describe()


def test_supp_conditions_hold_on_ring():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    target = FactorizationTarget([(m, 2), (px, 1)])
    report = check_supp_conditions(target, M)
    assert report.all_hold
    assert [c.index for c in report.conditions] == [1, 2]


def test_exists_incomparable_true_with_witness():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    report = exists_incomparable([px, py], M)
    assert report.verdict
    assert report.witness is not None
    assert report.witness.equals(ideal_sub(ring, x * y))
    assert report.factors.equals(PrimeMultiset.from_primes([px, py]))
    assert all(c.holds for c in report.conditions)


def test_exists_incomparable_false_outside_support():
    ring, M, N = counterexample_module()
    y = ring.gen(1)
    py = PrimeIdeal(ring, [y])
    report = exists_incomparable([py], M)
    assert not report.verdict
    assert report.witness is None
    assert not report.conditions[0].holds


def test_exists_incomparable_rejects_comparable_input():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    with pytest.raises(ValueError):
        exists_incomparable([px, m], M)


def test_construct_incomparable_from_given_base():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    N0 = M.span(((x * x,), (x * y,)))
    K = construct_incomparable([px], M, N0=N0)
    assert K.equals(ideal_sub(ring, x))


def test_construct_incomparable_rejects_embedded_target():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    N0 = M.span(((x * x,), (x * y,)))
    with pytest.raises(HypothesisError):
        construct_incomparable([m], M, N0=N0)


def test_construct_prime_power_square_of_maximal():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    N = construct_prime_power(m, 2, M)
    assert N.equals(ideal_sub(ring, x * x, x * y, y * y))
    assert gpf(N, M).equals(PrimeMultiset([(m, 2)]))
    with pytest.raises(ValueError):
        construct_prime_power(m, 0, M)


def test_construct_prime_power_needs_association():
    """In the twisted ring p = (x, z) is not associated to pM/p^2M, so
    the p^2 construction refuses with the failed hypothesis."""
    ring, p, m, registry = twisted_setup()
    M = QuotientModule.of_ring(ring)
    with pytest.raises(HypothesisError) as err:
        construct_prime_power(p, 2, M, source=registry)
    assert "not associated" in str(err.value)


def test_construct_general_descending_product():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    target = FactorizationTarget([(m, 1), (px, 1)])
    N = construct_general(target, M)
    assert N.equals(ideal_sub(ring, x * x, x * y))
    assert gpf(N, M).equals(target.multiset())


def test_construct_general_fails_support_precheck():
    ring, p, m, registry = twisted_setup()
    M = QuotientModule.of_ring(ring)
    target = FactorizationTarget([(p, 2)])
    with pytest.raises(HypothesisError) as err:
        construct_general(target, M, source=registry)
    assert err.value.index == 1
    assert "support condition" in str(err.value)


def test_necessary_conditions_applicable_antichain():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x * y,),))
    report = check_necessary_conditions(N, M)
    assert report.applicable
    assert report.factors.equals(PrimeMultiset.from_primes([px, py]))
    assert report.all_hold
    assert len(report.conditions) == 2


def test_necessary_conditions_skip_embedded_prime():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    N = M.span(((x * x,), (x * y,)))
    report = check_necessary_conditions(N, M)
    assert not report.applicable
    assert "minimality" in report.reason
    assert report.factors.equals(PrimeMultiset.from_primes([m, px]))


def test_check_iff_true_on_monomial_product():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    target = FactorizationTarget([(m, 1), (px, 1)])
    report = check_iff_criterion(target, M)
    assert report.verdict
    assert [s.ok for s in report.segments] == [True, True]
    assert report.filtration is not None
    mods = report.filtration.modules()
    assert mods[0].equals(ideal_sub(ring, x * x, x * y))
    assert mods[1].equals(ideal_sub(ring, x))
    assert mods[2].equals(M.full())
    assert gpf(mods[0], M).equals(target.multiset())


def test_check_iff_true_on_prime_square():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    report = check_iff_criterion(FactorizationTarget([(m, 2)]), M)
    assert report.verdict
    assert len(report.segments) == 1
    assert len(report.filtration.steps) == 2


def test_check_iff_false_on_twisted_prime_square():
    """p^2 R is not a product of the p's: the first segment shows both
    p and the maximal ideal as associated primes."""
    ring, p, m, registry = twisted_setup()
    M = QuotientModule.of_ring(ring)
    report = check_iff_criterion(
        FactorizationTarget([(p, 2)]), M, source=registry
    )
    assert not report.verdict
    assert report.failed_index == 1
    found = sorted(str(q) for q in report.segments[0].found)
    assert found == ["(x, y, z)", "(x, z)"]
    assert report.filtration is None


def test_check_iff_matches_gpf_of_product():
    ring, x, y, px, py, m = _xy_primes()
    M = QuotientModule.of_ring(ring)
    for pairs in ([(m, 1), (px, 1)], [(px, 1), (py, 1)], [(m, 2)]):
        mode = (
            "incomparable"
            if all(len(p.ideal.canonical_gens()) == 1 for p, _ in pairs)
            else "descending"
        )
        target = FactorizationTarget(pairs, mode=mode)
        report = check_iff_criterion(target, M)
        aM = module_scale(target.product_ideal(), M)
        same = gpf(aM, M).equals(target.multiset())
        assert report.verdict == same
