import random

from gpfkit.arith import PolyRing
from gpfkit.fields import QQ
from gpfkit.groebner import buchberger, eliminate, member, normal_form

from helpers import twisted_ring, xy_ring


def test_membership_classic():
    ring, x, y = xy_ring()
    gens = [(x - y,), (x * x,)]
    assert member((y * y,), gens, ring=ring, rank=1)
    assert member((x * y,), gens, ring=ring, rank=1)
    assert not member((y,), gens, ring=ring, rank=1)


def test_normal_form_is_idempotent():
    ring, x, y = xy_ring()
    gb = buchberger([(x * x - y,), (x * y - x,)], ring=ring, rank=1)
    v = (x * x * x + y * y,)
    nf = gb.normal_form(v)
    assert gb.normal_form(nf) == nf


def test_basis_key_independent_of_generator_order():
    ring, x, y = xy_ring()
    gens = [(x * x - y,), (x * y,), (y * y - y,), (x * y + y * y,)]
    base = buchberger(gens, ring=ring, rank=1).key()
    rng = random.Random(7)
    for _ in range(10):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert buchberger(shuffled, ring=ring, rank=1).key() == base


def test_quotient_relations_enter_the_basis():
    pure, px, _ = xy_ring()
    ring = PolyRing(QQ, ("x", "y"), relations=(px * px,))
    x, y = ring.gen(0), ring.gen(1)
    assert member((x * x * y,), [(x * y,)], ring=ring, rank=1)
    assert member((x * x,), [(x * y,)], ring=ring, rank=1)


def test_eliminate_keeps_subring_part():
    ring, x, y = xy_ring()
    gens = [(x - y,), (y * y,)]
    kept = eliminate(gens, [1], ring=ring, rank=1)
    polys = [v[0] for v in kept]
    assert polys
    assert all(m[0] == 0 for p in polys for m in p.monomials())
    assert member((y * y,), kept, ring=ring, rank=1)
    assert not member((y,), kept, ring=ring, rank=1)


def test_vector_membership_rank_two():
    ring, x, y = xy_ring()
    gens = [(x, ring.zero()), (ring.zero(), y)]
    assert member((x * y, y * y), gens, ring=ring, rank=2)
    assert not member((y, ring.zero()), gens, ring=ring, rank=2)


def test_twisted_ring_membership():
    ring = twisted_ring()
    x, y, z = ring.gen(0), ring.gen(1), ring.gen(2)
    gens = [(x * x,), (x * z,), (z * z,)]
    assert member((x * y,), gens, ring=ring, rank=1)
    assert member((y * z,), gens, ring=ring, rank=1)
    assert not member((y * y,), gens, ring=ring, rank=1)
