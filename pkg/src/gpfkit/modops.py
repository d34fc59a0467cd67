"""Ideals, submodules of free modules, subquotients, and colon operations.

A `Submodule` is a generator list inside a fixed free module R^k.  A
`QuotientModule` presents a subquotient top/denominator of R^k; every
submodule of it is represented by generators in R^k with the denominator
generators adjoined, and each operation taking the quotient as context
adds the denominator before computing.  Over quotient rings the relation
ideal is adjoined automatically by the basis layer, except inside tag
variable splittings where the relations are placed on both sides by hand.

Colon by an ideal is computed generator by generator, each single colon
as a tag-variable intersection with the scaled module followed by exact
division, and the results intersected.  The transporter ideal of a pair
of modules comes from a kernel computation in rank k + 1.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from .arith import GREVLEX, Polynomial
from .errors import RingMismatchError
from .groebner import (
    GroebnerBasis,
    TermOrder,
    buchberger,
    relation_vectors,
    tag_ring,
    vector_key,
)

log = logging.getLogger("gpfkit")


def _dedup_vectors(vectors):
    seen = set()
    out = []
    for v in vectors:
        if all(p.is_zero() for p in v):
            continue
        k = vector_key(v)
        if k not in seen:
            seen.add(k)
            out.append(tuple(v))
    return tuple(out)


def _sort_polys(polys):
    return tuple(
        sorted(
            polys,
            key=lambda p: (GREVLEX.mono_key(p.leading_term()[0]), p.key()),
            reverse=True,
        )
    )


class Ideal:
    """A finitely generated ideal of a polynomial or quotient ring."""

    def __init__(self, ring, gens):
        self.ring = ring
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("ideal generator over a different ring")
        seen = set()
        uniq = []
        for g in gens:
            if g.key() not in seen:
                seen.add(g.key())
                uniq.append(g)
        self.gens = tuple(uniq)
        self._gb = None
        self._canonical = None

    def groebner(self):
        if self._gb is None:
            self._gb = buchberger(
                [(g,) for g in self.gens], ring=self.ring, rank=1
            )
        return self._gb

    def canonical_gens(self):
        """Reduced basis elements that are nonzero modulo the relations."""
        if self._canonical is None:
            polys = [v[0] for v in reversed(self.groebner().vectors)]
            polys = [p for p in polys if not self.ring.reduce(p).is_zero()]
            self._canonical = tuple(polys)
        return self._canonical

    def key(self):
        return tuple(p.key() for p in self.canonical_gens())

    def contains(self, f):
        return self.groebner().contains((f,))

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def equals(self, other):
        return self.ring == other.ring and self.key() == other.key()

    def strictly_contains(self, other):
        return self.contains_ideal(other) and not other.contains_ideal(self)

    def is_zero(self):
        return not self.canonical_gens()

    def is_unit(self):
        return self.contains(self.ring.one())

    def product(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("ideal product across rings")
        gens = [a * b for a in self.gens for b in other.gens]
        return Ideal(self.ring, _sort_polys(_dedup_polys(gens)))

    def power(self, r):
        if not isinstance(r, int) or r < 0:
            raise ValueError("ideal power wants a nonnegative int")
        out = unit_ideal(self.ring)
        for _ in range(r):
            out = out.product(self)
        return out

    def as_submodule(self):
        return Submodule(self.ring, 1, [(g,) for g in self.gens])

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(%s)" % ", ".join(str(g) for g in self.gens)

    def __repr__(self):
        return "Ideal%s" % self


def _dedup_polys(polys):
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        if p.key() not in seen:
            seen.add(p.key())
            out.append(p)
    return out


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def zero_ideal(ring):
    return Ideal(ring, [])


def ideal_product(a, b):
    return a.product(b)


def ideal_power(a, r):
    return a.power(r)


def partial_products(primes):
    """[(1), p1, p1*p2, ...] for a sequence of ideals."""
    if not primes:
        raise ValueError("need at least one ideal")
    ring = primes[0].ring
    out = [unit_ideal(ring)]
    for p in primes:
        out.append(out[-1].product(p))
    return out


def ideal_intersection(a, b):
    if a.ring != b.ring:
        raise RingMismatchError("ideal intersection across rings")
    got = _tag_split(
        a.ring, 1, [(g,) for g in a.gens], [(g,) for g in b.gens]
    )
    return Ideal(a.ring, _sort_polys([v[0] for v in got])) if got else Ideal(a.ring, [])


class Submodule:
    """A generator list inside the free module ring^rank."""

    def __init__(self, ring, rank, gens):
        self.ring = ring
        self.rank = rank
        checked = []
        for v in gens:
            v = tuple(v)
            if len(v) != rank:
                raise RingMismatchError("generator of wrong rank")
            for p in v:
                if p.ring != ring:
                    raise RingMismatchError("generator over a different ring")
            checked.append(v)
        self.gens = _dedup_vectors(checked)
        self._gb = None
        self._canonical = None

    @classmethod
    def zero(cls, ring, rank):
        return cls(ring, rank, [])

    @classmethod
    def free(cls, ring, rank):
        zero = ring.zero()
        one = ring.one()
        gens = []
        for i in range(rank):
            v = [zero] * rank
            v[i] = one
            gens.append(tuple(v))
        return cls(ring, rank, gens)

    def groebner(self):
        if self._gb is None:
            self._gb = buchberger(self.gens, ring=self.ring, rank=self.rank)
        return self._gb

    def canonical(self):
        """Reduced basis vectors that are nonzero modulo the relations."""
        if self._canonical is None:
            vecs = []
            for v in reversed(self.groebner().vectors):
                if any(not self.ring.reduce(p).is_zero() for p in v):
                    vecs.append(v)
            self._canonical = tuple(vecs)
        return self._canonical

    def key(self):
        return tuple(vector_key(v) for v in self.canonical())

    def contains(self, v):
        return self.groebner().contains(tuple(v))

    def contains_module(self, other):
        self._compat(other)
        return all(self.contains(v) for v in other.gens)

    def equals(self, other):
        self._compat(other)
        return self.key() == other.key()

    def is_zero(self):
        return not self.canonical()

    def plus(self, other):
        self._compat(other)
        return Submodule(self.ring, self.rank, self.gens + other.gens)

    def _compat(self, other):
        if self.ring != other.ring or self.rank != other.rank:
            raise RingMismatchError("submodules in different ambients")

    def as_ideal(self):
        if self.rank != 1:
            raise ValueError("only rank 1 submodules are ideals")
        return Ideal(self.ring, [v[0] for v in self.gens])

    def __str__(self):
        if not self.gens:
            return "(0)"
        if self.rank == 1:
            return "(%s)" % ", ".join(str(v[0]) for v in self.gens)
        return "(%s)" % ", ".join(
            "(%s)" % ", ".join(str(p) for p in v) for v in self.gens
        )

    def __repr__(self):
        return "Submodule%s" % self


class QuotientModule:
    """A subquotient top/denominator of a free module R^k."""

    def __init__(self, top, denom=None, check=True):
        if denom is None:
            denom = Submodule.zero(top.ring, top.rank)
        top._compat(denom)
        self.ring = top.ring
        self.rank = top.rank
        self.top = top
        self.denom = denom
        if check and not top.contains_module(denom):
            raise ValueError("denominator does not sit inside the top module")
        self._ann = None

    @classmethod
    def of_ring(cls, ring):
        return cls(Submodule(ring, 1, [(ring.one(),)]))

    @classmethod
    def free(cls, ring, rank, denom_gens=()):
        top = Submodule.free(ring, rank)
        denom = Submodule(ring, rank, denom_gens)
        return cls(top, denom)

    def span(self, vectors):
        """The submodule of this quotient the vectors generate, as a
        generator list in the free ambient with the denominator adjoined."""
        return Submodule(self.ring, self.rank, tuple(vectors) + self.denom.gens)

    def full(self):
        return self.span(self.top.gens)

    def module_of(self, sub):
        """A submodule of this quotient viewed as a module in its own right."""
        return QuotientModule(sub, self.denom, check=False)

    def with_denominator(self, sub):
        """The quotient of this module by the given submodule."""
        return QuotientModule(self.top, sub, check=False)

    def contains_submodule(self, sub):
        return self.full().contains_module(sub)

    def is_zero(self):
        return self.span(()).contains_module(self.top)

    def ann(self):
        if self._ann is None:
            self._ann = colon_ideal(self.denom, self.full())
        return self._ann

    def key(self):
        return (self.top.key(), self.denom.key())

    def __str__(self):
        if self.denom.gens:
            return "%s / %s" % (self.top, self.denom)
        return str(self.top)


class SubquotientView:
    """A pair bottom <= top of submodules, for support and annihilator
    questions about top/bottom."""

    def __init__(self, top, bottom, check=True):
        top._compat(bottom)
        if check and not top.contains_module(bottom):
            raise ValueError("bottom does not sit inside top")
        self.top = top
        self.bottom = bottom
        self._ann = None

    def ann(self):
        if self._ann is None:
            self._ann = colon_ideal(self.bottom, self.top.plus(self.bottom))
        return self._ann

    def is_zero(self):
        return self.bottom.contains_module(self.top)


# ---------------------------------------------------------------------------
# tag variable machinery


def _tag_split(ring, rank, gens_a, gens_b):
    """Generators of (A + rel) intersect (B + rel) via one tag variable."""
    ext, lift, lower = tag_ring(ring)
    t = ext.gen(0)
    omt = ext.one() - t
    rel = relation_vectors(ring, rank)
    work = []
    for v in tuple(gens_a) + tuple(rel):
        work.append(tuple(t * lift(p) for p in v))
    for v in tuple(gens_b) + tuple(rel):
        work.append(tuple(omt * lift(p) for p in v))
    order = TermOrder.elimination((0,))
    gb = buchberger(work, ring=ext, rank=rank, order=order, include_relations=False)
    out = []
    for v in gb.vectors:
        if all(all(m[0] == 0 for m in p.monomials()) for p in v):
            out.append(tuple(lower(p) for p in v))
    return out


def _colon_by_element(gens_n, gens_m, f, ring, rank):
    """Generators of {x in M : f x in N}, both sides taken mod relations."""
    ext, lift, lower = tag_ring(ring)
    t = ext.gen(0)
    omt = ext.one() - t
    rel = relation_vectors(ring, rank)
    lf = lift(f)
    work = []
    for v in tuple(gens_n) + tuple(rel):
        work.append(tuple(t * lift(p) for p in v))
    for v in tuple(gens_m) + tuple(rel):
        work.append(tuple(omt * lf * lift(p) for p in v))
    order = TermOrder.elimination((0,))
    gb = buchberger(work, ring=ext, rank=rank, order=order, include_relations=False)
    out = []
    for v in gb.vectors:
        if all(all(m[0] == 0 for m in p.monomials()) for p in v):
            out.append(tuple(lower(p).exact_div(f) for p in v))
    return out


def _transporter_by_vector(gens_b, a, ring, rank):
    """Generators of the ideal {r : r a in B}, via a rank + 1 kernel."""
    one = ring.one()
    zero = ring.zero()
    work = [tuple(a) + (one,)]
    for v in gens_b:
        work.append(tuple(v) + (zero,))
    gb = buchberger(work, ring=ring, rank=rank + 1)
    out = []
    for v in gb.vectors:
        if all(p.is_zero() for p in v[:rank]):
            out.append(v[rank])
    return out


# ---------------------------------------------------------------------------
# public operations


def module_scale(ideal, M):
    """The submodule ideal * M of the quotient M, with denominator adjoined."""
    if ideal.ring != M.ring:
        raise RingMismatchError("scaling by an ideal over a different ring")
    gens = []
    for g in ideal.gens:
        for v in M.top.gens:
            gens.append(tuple(g * p for p in v))
    return M.span(gens)


def colon_module(N, ideal, M):
    """The colon (N : ideal) inside the quotient module M.

    Returns the submodule {x in M : ideal * x in N}, with the denominator
    of M added to N before computing.  A zero ideal returns all of M and
    logs a diagnostic.
    """
    if N.ring != M.ring or N.rank != M.rank:
        raise RingMismatchError("colon arguments in different ambients")
    if not M.contains_submodule(N):
        raise ValueError("N is not a submodule of M")
    fs = []
    for g in ideal.gens:
        r = M.ring.reduce(g)
        if not r.is_zero():
            fs.append(r)
    seen = set()
    fs = [f for f in fs if not (f.key() in seen or seen.add(f.key()))]
    if not fs:
        log.debug("colon by the zero ideal returns the whole module")
        return Submodule(M.ring, M.rank, M.full().canonical())
    gens_n = tuple(N.gens) + tuple(M.denom.gens)
    gens_m = tuple(M.top.gens) + tuple(M.denom.gens)
    acc = None
    for f in fs:
        part = _colon_by_element(gens_n, gens_m, f, M.ring, M.rank)
        if acc is None:
            acc = part
        else:
            acc = _tag_split(M.ring, M.rank, acc, part)
    return Submodule(M.ring, M.rank, Submodule(M.ring, M.rank, acc).canonical())


def colon_ideal(B, A):
    """The transporter ideal {r : r A <= B}, the annihilator of A/B."""
    B._compat(A)
    ring = B.ring
    if not A.contains_module(B):
        raise ValueError("transporter wants B inside A")
    bgb = B.groebner()
    parts = []
    for a in A.gens:
        if bgb.contains(a):
            continue
        gens = _transporter_by_vector(B.gens, a, ring, B.rank)
        parts.append(Ideal(ring, gens))
    if not parts:
        return unit_ideal(ring)
    acc = parts[0]
    for p in parts[1:]:
        acc = ideal_intersection(acc, p)
    return Ideal(ring, _sort_polys(acc.canonical_gens()) or [])


def saturate(N, f, M, max_steps=500):
    """Stable value of the chain N : f, (N : f) : f, ... inside M."""
    if f.is_zero() or M.ring.reduce(f).is_zero():
        log.debug("saturation by zero returns the whole module")
        return Submodule(M.ring, M.rank, M.full().canonical())
    ideal = Ideal(M.ring, [f])
    cur = M.span(N.gens)
    for _ in range(max_steps):
        nxt = colon_module(cur, ideal, M)
        if nxt.key() == cur.key():
            return nxt
        cur = nxt
    raise RuntimeError("saturation did not stabilize within %d steps" % max_steps)


def intersect(N1, N2):
    N1._compat(N2)
    got = _tag_split(N1.ring, N1.rank, N1.gens, N2.gens)
    sub = Submodule(N1.ring, N1.rank, got)
    return Submodule(N1.ring, N1.rank, sub.canonical())


def module_sum(N1, N2):
    return N1.plus(N2)


def contains(N1, N2):
    """Whether N1 contains N2 (both taken modulo the ring relations)."""
    return N1.contains_module(N2)


def equals(N1, N2):
    return N1.equals(N2)
