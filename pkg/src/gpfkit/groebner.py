"""Buchberger computation of reduced bases for submodules of R^k.

Ideals are the k = 1 case.  Vectors are tuples of polynomials; internally a
vector is flattened to a map from (component, monomial) terms to
coefficients and all reductions run on those maps.  Pair selection uses the
normal strategy (smallest lcm first) and pairs are discarded by the two
classical criteria:

  * coprime leading monomials, applied only when both vectors are
    supported on the single shared component (the unrestricted form is
    not valid for module vectors);
  * the chain criterion, when a third leading term divides the pair lcm
    and both mixed pairs are no longer pending.

Reduced bases are canonical for a given submodule and order, so results
are cached by ring, rank, order, and generator set.  For quotient rings
the relation ideal times each unit vector is adjoined to every generating
set unless the caller opts out and places the relations manually.
"""

from __future__ import annotations

from .arith import (
    GREVLEX,
    Polynomial,
    PolyRing,
    TermOrder,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_is_one,
    mono_lcm,
    mono_mul,
)
from .errors import RingMismatchError

Vector = tuple


def vector_key(v):
    return tuple(p.key() for p in v)


def _flatten(v, ring, rank):
    if len(v) != rank:
        raise RingMismatchError("vector of length %d in rank %d" % (len(v), rank))
    out = {}
    for comp, p in enumerate(v):
        if p.ring != ring:
            raise RingMismatchError("vector component over a different ring")
        for m, c in p.terms():
            out[(comp, m)] = c
    return out

def _unflatten(d, ring, rank):
    comps = [{} for _ in range(rank)]
    for (comp, m), c in d.items():
        comps[comp][m] = c
    return tuple(Polynomial(ring, t) for t in comps)


def _monic(d, field):
    lt = max(d)  # placeholder, real callers pass explicit order
    raise RuntimeError("unused")


def _scale_inplace(d, c, field):
    for t in list(d):
        d[t] = field.mul(d[t], c)


def _nf(f, entries, order, field):
    """Full normal form of term-map f against monic (lt, map) entries."""
    zero = field.zero
    rem = dict(f)
    out = {}
    while rem:
        t = max(rem, key=order.term_key)
        c = rem.pop(t)
        hit = None
        for lt, g, _ in entries:
            if lt[0] == t[0] and mono_divides(lt[1], t[1]):
                hit = (lt, g)
                break
        if hit is None:
            out[t] = c
            continue
        shift = mono_div(t[1], hit[0][1])
        for (gc, gm), gco in hit[1].items():
            tt = (gc, mono_mul(gm, shift))
            if tt == t:
                continue
            s = field.sub(rem.get(tt, zero), field.mul(c, gco))
            if s == zero:
                rem.pop(tt, None)
            else:
                rem[tt] = s
    return out


def _spair(e1, e2, field):
    (comp, m1), f, _ = e1
    (_, m2), g, _ = e2
    L = mono_lcm(m1, m2)
    a = mono_div(L, m1)
    b = mono_div(L, m2)
    zero = field.zero
    out = {}
    for (c, m), co in f.items():
        out[(c, mono_mul(m, a))] = co
    for (c, m), co in g.items():
        t = (c, mono_mul(m, b))
        s = field.sub(out.get(t, zero), co)
        if s == zero:
            out.pop(t, None)
        else:
            out[t] = s
    return out


class GroebnerBasis:
    """A reduced basis with its ring, rank, and order."""

    __slots__ = ("ring", "rank", "order", "vectors", "reduced", "_entries")

    def __init__(self, ring, rank, order, vectors):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.vectors = tuple(vectors)
        self.reduced = True
        self._entries = []
        for v in self.vectors:
            d = _flatten(v, ring, rank)
            lt = max(d, key=order.term_key)
            self._entries.append((lt, d, frozenset(c for c, _ in d)))

    def leading_terms(self):
        return tuple(e[0] for e in self._entries)

    def normal_form(self, v):
        d = _flatten(v, self.ring, self.rank)
        return _unflatten(_nf(d, self._entries, self.order, self.ring.field), self.ring, self.rank)

    def contains(self, v):
        d = _flatten(v, self.ring, self.rank)
        return not _nf(d, self._entries, self.order, self.ring.field)

    def contains_all(self, vectors):
        return all(self.contains(v) for v in vectors)

    def is_zero(self):
        return not self.vectors

    def key(self):
        return tuple(vector_key(v) for v in self.vectors)


def relation_vectors(ring, rank):
    """The relation ideal times each unit vector, as rank-length vectors."""
    out = []
    zero = ring.zero()
    for r in ring.relation_basis():
        for comp in range(rank):
            vec = [zero] * rank
            vec[comp] = r
            out.append(tuple(vec))
    return out


_GB_CACHE = {}


def buchberger(gens, *, ring, rank, order=None, include_relations=True):
    """Reduced basis of the submodule of ring^rank the vectors generate."""
    order = order or GREVLEX
    gens = [tuple(v) for v in gens]
    if include_relations and ring.is_quotient:
        gens = gens + relation_vectors(ring, rank)
    flat = []
    for v in gens:
        d = _flatten(v, ring, rank)
        if d:
            flat.append(d)
    ckey = (
        ring.key(),
        rank,
        order.key(),
        frozenset(tuple(sorted(d.items())) for d in flat),
    )
    hit = _GB_CACHE.get(ckey)
    if hit is not None:
        return hit

    field = ring.field
    entries = []
    for d in flat:
        lt = max(d, key=order.term_key)
        inv = field.invert(d[lt])
        dd = {t: field.mul(inv, c) for t, c in d.items()}
        entries.append((lt, dd, frozenset(c for c, _ in dd)))

    pairs = {}

    def add_pairs(j):
        ltj = entries[j][0]
        for i in range(j):
            lti = entries[i][0]
            if lti[0] == ltj[0]:
                t = (lti[0], mono_lcm(lti[1], ltj[1]))
                pairs[(i, j)] = (order.term_key(t), t)

    for j in range(len(entries)):
        add_pairs(j)

    while pairs:
        (i, j) = min(pairs, key=lambda k: (pairs[k][0], k))
        lcm_term = pairs.pop((i, j))[1]
        ei, ej = entries[i], entries[j]
        # coprime criterion, safe only in the single-component case
        if (
            len(ei[2]) == 1
            and ei[2] == ej[2]
            and mono_is_one(mono_gcd(ei[0][1], ej[0][1]))
        ):
            continue
        # chain criterion
        skip = False
        for k in range(len(entries)):
            if k in (i, j):
                continue
            ltk = entries[k][0]
            if ltk[0] == lcm_term[0] and mono_divides(ltk[1], lcm_term[1]):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spair(ei, ej, field)
        h = _nf(s, entries, order, field)
        if h:
            lt = max(h, key=order.term_key)
            inv = field.invert(h[lt])
            hh = {t: field.mul(inv, c) for t, c in h.items()}
            entries.append((lt, hh, frozenset(c for c, _ in hh)))
            add_pairs(len(entries) - 1)

    # minimalize: drop entries whose leading term another one divides
    entries.sort(key=lambda e: order.term_key(e[0]))
    kept = []
    for e in entries:
        lt = e[0]
        if any(
            k[0][0] == lt[0] and mono_divides(k[0][1], lt[1]) for k in kept
        ):
            continue
        kept.append(e)
    # tail-reduce each survivor against the others
    final = []
    for idx, e in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        h = _nf(e[1], others, order, field)
        final.append(h)
    final.sort(key=lambda d: order.term_key(max(d, key=order.term_key)))
    vectors = tuple(_unflatten(d, ring, rank) for d in final)
    gb = GroebnerBasis(ring, rank, order, vectors)
    _GB_CACHE[ckey] = gb
    return gb


def normal_form(v, gb):
    return gb.normal_form(v)


def member(v, gens, *, ring, rank, include_relations=True):
    gb = buchberger(gens, ring=ring, rank=rank, include_relations=include_relations)
    return gb.contains(tuple(v))


def reduce_by_polys(f, polys):
    """Full normal form of a ring element against a list of ring elements."""
    ring = f.ring
    field = ring.field
    entries = []
    for p in polys:
        if p.is_zero():
            continue
        d = {(0, m): c for m, c in p.terms()}
        lt = max(d, key=GREVLEX.term_key)
        inv = field.invert(d[lt])
        dd = {t: field.mul(inv, c) for t, c in d.items()}
        entries.append((lt, dd, frozenset((0,))))
    d = {(0, m): c for m, c in f.terms()}
    out = _nf(d, entries, GREVLEX, field)
    return Polynomial(ring, {m: c for (_, m), c in out.items()})


def eliminate(gens, keep, *, ring, rank, include_relations=True):
    """Generators of N intersected with the span of the kept variables.

    keep is an iterable of variable indices; the rest form the elimination
    block.  Works for quotient rings too, where the result generates the
    contraction of N to the subring the kept variables generate.
    """
    keep = set(keep)
    block = tuple(i for i in range(ring.nvars) if i not in keep)
    if not block:
        gb = buchberger(gens, ring=ring, rank=rank, include_relations=include_relations)
        return list(gb.vectors)
    order = TermOrder.elimination(block)
    gb = buchberger(
        gens, ring=ring, rank=rank, order=order, include_relations=include_relations
    )
    out = []
    for v in gb.vectors:
        free = True
        for p in v:
            for m in p.monomials():
                if any(m[i] for i in block):
                    free = False
                    break
            if not free:
                break
        if free:
            out.append(v)
    return out


def tag_ring(ring, name="@t"):
    """A pure ring with one extra leading variable, plus lift and lower maps.

    The extension is always relation-free; callers computing modulo a
    quotient place the lifted relation vectors on each side of a tag split
    themselves, which keeps divisibility arguments valid.
    """
    ext = PolyRing(ring.field, (name,) + ring.names)

    def lift(p, tpow=0):
        return Polynomial(ext, {(tpow,) + m: c for m, c in p.terms()})

    def lower(p):
        out = {}
        for m, c in p.terms():
            if m[0] != 0:
                raise ValueError("polynomial still involves the tag variable")
            out[m[1:]] = c
        return Polynomial(ring, out)

    return ext, lift, lower
