"""Brute-force ground truth on finite models over small prime fields.

A finite model truncates a polynomial (or graded quotient) ring by a power
of each variable, turning every module in play into a finite-dimensional
vector space over F_q.  Inside the model, membership is linear algebra,
colons are kernel scans, and associated primes come from the definition:
a prime is associated when it is the annihilator of a single element.

Truncation is only faithful below the truncation degree: a product u*v is
trusted when deg(u) + deg(v) stays under the least variable cap, because
the defining relations of the true ring are graded and the extra
truncation relations only touch higher degrees.  All scans here stay
inside that trusted window.  An element witnesses an associated prime p
when every generator of p multiplies it into N and no trusted ring
element outside p does; both tests use only trusted products, so they
agree with the true ring whenever the ideals involved are generated
inside the window.  Each bundled fixture records the witness degree it
needs and is built so that everything it compares is generated and
detected inside its window.

Candidate primes are the nonzero variable-generated ideals, the only
primes that can be associated to monomial subquotients; each accepted
candidate is additionally confirmed prime by an exhaustive trusted-pair
product scan.  The zero ideal is never a candidate: in a truncated model
every element is torsion, so any witness for it is a truncation
artifact, and the scans refuse the one case (a free module over the
zero submodule) where the zero ideal would genuinely be associated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .arith import GREVLEX, Polynomial, PolyRing, mono_degree, mono_divides
from .errors import BudgetError, VerificationError
from .fields import GF
from .modops import QuotientModule, colon_ideal, colon_module, ideal_power
from .primes import MONOMIAL, PrimeIdeal, ass_enumerate
from .gpf import gpf

DEFAULT_BUDGET = 4096


class Subspace:
    """An F_q subspace kept in reduced row echelon form."""

    def __init__(self, field, width):
        self.field = field
        self.width = width
        self.rows = []
        self.pivots = []

    def reduce(self, vec):
        F = self.field
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def insert(self, vec):
        """Add a vector; returns True when the dimension grew."""
        F = self.field
        r = self.reduce(vec)
        piv = next((i for i, c in enumerate(r) if c), None)
        if piv is None:
            return False
        inv = F.invert(r[piv])
        r = tuple(F.mul(inv, c) for c in r)
        rows = []
        for row in self.rows:
            c = row[piv]
            if c:
                row = tuple(F.sub(a, F.mul(c, b)) for a, b in zip(row, r))
            rows.append(row)
        self.rows = rows
        at = next(
            (k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots)
        )
        self.rows.insert(at, r)
        self.pivots.insert(at, piv)
        return True

    def contains(self, vec):
        return not any(self.reduce(vec))

    def contains_space(self, other):
        return all(self.contains(row) for row in other.rows)

    @property
    def dim(self):
        return len(self.rows)

    def key(self):
        return tuple(self.rows)

    def equals(self, other):
        return self.key() == other.key()


class FiniteRing:
    """A truncation of a graded ring to a finite F_q algebra.

    Built from a symbolic ring over a prime field (its relations must be
    homogeneous) and a cap per variable; the model ring adds x_i^cap_i to
    the relations.  Elements are coefficient tuples over the standard
    monomial basis.  Products of elements whose degrees sum to less than
    the least cap agree with the true ring.
    """

    def __init__(self, sym_ring, caps, budget=DEFAULT_BUDGET):
        if sym_ring.field.char == 0:
            raise ValueError("finite models need a finite coefficient field")
        for rel in sym_ring.relations:
            degs = {mono_degree(m) for m in rel.monomials()}
            if len(degs) > 1:
                raise ValueError(
                    "truncation is only degree-faithful for homogeneous "
                    "relations"
                )
        names = sym_ring.names
        if isinstance(caps, int):
            caps = {n: caps for n in names}
        self.caps = tuple(caps[n] for n in names)
        self.trusted_degree = min(self.caps)
        self.sym = sym_ring
        self.field = sym_ring.field
        self.q = self.field.char
        self.budget = budget
        rels = [dict(r.terms()) for r in sym_ring.relations]
        for i, c in enumerate(self.caps):
            mono = tuple(c if j == i else 0 for j in range(len(names)))
            rels.append({mono: self.field.one})
        self.model = PolyRing(self.field, names, relations=tuple(rels))
        lts = [
            g.leading_term(GREVLEX)[0]
            for g in self.model.relation_basis()
            if not g.is_zero()
        ]
        basis = []
        for exps in itertools.product(*(range(c) for c in self.caps)):
            if not any(mono_divides(lt, exps) for lt in lts):
                basis.append(exps)
        basis.sort(key=lambda m: (mono_degree(m), GREVLEX.mono_key(m)))
        self.basis = tuple(basis)
        self.dim = len(basis)
        self.index = {m: i for i, m in enumerate(basis)}
        self.cardinality = self.q ** self.dim
        self._table = {}
        self._windows = {}
        self._zero = (self.field.zero,) * self.dim
        self._one = self.from_poly(self.model.one())

    def from_poly(self, f):
        """The model element of a polynomial over the symbolic or model ring."""
        if isinstance(f, Polynomial):
            f = dict(f.terms())
        g = self.model.reduce(Polynomial(self.model, dict(f)))
        out = [self.field.zero] * self.dim
        for mono, c in g.terms():
            out[self.index[mono]] = c
        return tuple(out)

    def to_poly(self, u):
        terms = {m: c for m, c in zip(self.basis, u) if c}
        return Polynomial(self.model, terms)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def var(self, i):
        return self.from_poly(self.model.gen(i))

    def deg(self, u):
        out = -1
        for m, c in zip(self.basis, u):
            if c:
                out = max(out, mono_degree(m))
        return out

    def add(self, u, v):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(u, v))

    def scale(self, c, u):
        F = self.field
        return tuple(F.mul(c, a) for a in u)

    def _pair(self, i, j):
        if i > j:
            i, j = j, i
        hit = self._table.get((i, j))
        if hit is None:
            prod = self.model.monomial(self.basis[i]) * self.model.monomial(
                self.basis[j]
            )
            hit = self.from_poly(prod)
            self._table[(i, j)] = hit
        return hit

    def mul(self, u, v):
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = F.mul(a, b)
                row = self._pair(i, j)
                for k, r in enumerate(row):
                    if r:
                        out[k] = F.add(out[k], F.mul(c, r))
        return tuple(out)

    def window(self, max_deg):
        """Every element supported in total degree <= max_deg."""
        if max_deg in self._windows:
            return self._windows[max_deg]
        idxs = [
            i for i, m in enumerate(self.basis) if mono_degree(m) <= max_deg
        ]
        count = self.q ** len(idxs)
        if count > self.budget:
            raise BudgetError(
                "degree window holds %d elements, over the budget %d"
                % (count, self.budget)
            )
        out = []
        for combo in itertools.product(range(self.q), repeat=len(idxs)):
            vec = [self.field.zero] * self.dim
            for i, c in zip(idxs, combo):
                vec[i] = c
            out.append(tuple(vec))
        self._windows[max_deg] = out
        return out

    def is_prime_restricted(self, space):
        """Exhaustive trusted-window primality: no product of two trusted
        elements outside the ideal lands inside it, and 1 stays outside."""
        if space.contains(self.one()):
            return False
        W = [w for w in self.window(self.trusted_degree - 1) if any(w)]
        outside = [(w, self.deg(w)) for w in W if not space.contains(w)]
        for a, da in outside:
            for b, db in outside:
                if da + db >= self.trusted_degree:
                    continue
                if space.contains(self.mul(a, b)):
                    return False
        return True


class FiniteModule:
    """The free module R^k over a finite model, modulo a denominator
    submodule; vectors are flattened coefficient tuples."""

    def __init__(self, ring, rank, denom=()):
        self.ring = ring
        self.rank = rank
        self.width = rank * ring.dim
        self.denom = self._close(denom, include_denom=False)
        free_dim = self.width - self.denom.dim
        self.cardinality = ring.q ** free_dim

    def zero_vec(self):
        return (self.ring.field.zero,) * self.width

    def unit_vec(self, comp):
        parts = [self.ring.zero()] * self.rank
        parts[comp] = self.ring.one()
        return self.flatten(parts)

    def flatten(self, parts):
        out = []
        for p in parts:
            out.extend(p)
        return tuple(out)

    def components(self, vec):
        d = self.ring.dim
        return [tuple(vec[i * d : (i + 1) * d]) for i in range(self.rank)]

    def act(self, relem, vec):
        return self.flatten(
            [self.ring.mul(relem, c) for c in self.components(vec)]
        )

    def vdeg(self, vec):
        return max(self.ring.deg(c) for c in self.components(vec))

    def _close(self, vecs, include_denom=True):
        sp = Subspace(self.ring.field, self.width)
        queue = list(vecs)
        if include_denom:
            queue.extend(self.denom.rows)
        gens = [self.ring.var(i) for i in range(len(self.ring.model.names))]
        while queue:
            v = queue.pop()
            if sp.insert(v):
                for g in gens:
                    queue.append(self.act(g, v))
        return sp

    def closure(self, vecs):
        """The submodule the vectors generate, with the denominator inside."""
        return self._close(vecs)

    def full_space(self):
        return self._close([self.unit_vec(i) for i in range(self.rank)])

    def window(self, max_deg):
        """Every vector whose components live in degree <= max_deg."""
        ring = self.ring
        idxs = [
            i
            for i, m in enumerate(ring.basis)
            if mono_degree(m) <= max_deg
        ]
        slots = len(idxs) * self.rank
        count = ring.q ** slots
        if count > ring.budget:
            raise BudgetError(
                "degree window holds %d vectors, over the budget %d"
                % (count, ring.budget)
            )
        out = []
        for combo in itertools.product(range(ring.q), repeat=slots):
            vec = [ring.field.zero] * self.width
            for s, c in enumerate(combo):
                comp, pos = divmod(s, len(idxs))
                vec[comp * ring.dim + idxs[pos]] = c
            out.append(tuple(vec))
        return out


def colon_bruteforce(N, gens, M, deg_bound=None):
    """{x in M : g x in N for each g}, scanned over the trusted window and
    closed up under the ring action."""
    ring = M.ring
    gens = [g for g in gens if any(g)]
    if not gens:
        return M.full_space()
    gdeg = max(ring.deg(g) for g in gens)
    if deg_bound is None:
        deg_bound = ring.trusted_degree - 1 - gdeg
    if deg_bound < 0:
        raise BudgetError(
            "colon generators exceed the trusted degree window"
        )
    kernel = [
        v
        for v in M.window(deg_bound)
        if all(N.contains(M.act(g, v)) for g in gens)
    ]
    return M.closure(kernel)


def _prime_space(ring, varset, cache):
    if varset not in cache:
        mod = FiniteModule(ring, 1)
        cache[varset] = mod.closure(
            [mod.flatten([ring.var(i)]) for i in varset]
        )
    return cache[varset]


def ass_bruteforce(N, M, z_max=1, budget=None, check_primality=True):
    """The variable-subset primes associated to M/N, by definition.

    A subset S is accepted when some trusted witness z outside N has
    every variable of S multiplying z into N while no trusted ring
    element outside (S) does.  Returns sorted tuples of variable indices.
    """
    ring = M.ring
    if budget is None:
        budget = ring.budget
    if M.cardinality > budget:
        raise BudgetError(
            "module holds %d elements, over the budget %d"
            % (M.cardinality, budget)
        )
    if z_max > ring.trusted_degree - 2:
        raise BudgetError(
            "witness degree %d leaves no trusted room for products" % z_max
        )
    if N.dim == 0:
        raise VerificationError(
            "the zero submodule of a free module has no monomial "
            "associated prime; the oracle cannot certify the zero ideal"
        )
    nvars = len(ring.model.names)
    subsets = [
        tuple(s)
        for size in range(1, nvars + 1)
        for s in itertools.combinations(range(nvars), size)
    ]
    pcache = {}
    varelems = [ring.var(i) for i in range(nvars)]
    found = set()
    kernels = []
    for z in M.window(z_max):
        if N.contains(z):
            continue
        bound = ring.trusted_degree - 1 - max(M.vdeg(z), 0)
        kern = [
            a
            for a in ring.window(bound)
            if any(a) and N.contains(M.act(a, z))
        ]
        kernels.append((z, kern))
    for S in subsets:
        pspace = _prime_space(ring, S, pcache)
        hit = False
        for z, kern in kernels:
            if not all(N.contains(M.act(varelems[i], z)) for i in S):
                continue
            if all(pspace.contains(a) for a in kern):
                hit = True
                break
        if not hit:
            continue
        if check_primality and not ring.is_prime_restricted(pspace):
            continue
        found.add(S)
    return sorted(found)


def rpe_bruteforce(N, M, tie_break="lex", z_max=1, max_steps=32):
    """Filtration primes by repeated maximal-prime colon scans."""
    ring = M.ring
    names = ring.model.names
    full = M.full_space()
    cur = N
    out = []
    while not cur.equals(full):
        if len(out) >= max_steps:
            raise BudgetError("oracle filtration exceeded %d steps" % max_steps)
        ass = ass_bruteforce(cur, M, z_max=z_max)
        if not ass:
            raise VerificationError(
                "oracle found no associated prime for a proper submodule"
            )
        maximal = [
            S for S in ass if not any(set(S) < set(T) for T in ass)
        ]
        maximal.sort(key=lambda S: tuple(names[i] for i in S))
        if tie_break == "revlex":
            maximal.reverse()
        elif tie_break != "lex":
            raise ValueError("tie_break must be 'lex' or 'revlex'")
        S = maximal[0]
        nxt = colon_bruteforce(cur, [ring.var(i) for i in S], M)
        if nxt.dim == cur.dim:
            raise VerificationError("oracle colon step did not grow")
        out.append(S)
        cur = nxt
    return out


# ---------------------------------------------------------------------------
# bundled fixtures


@dataclass
class Fixture:
    name: str
    description: str
    build: object
    checks: list = dc_field(default_factory=list)


def _image_vec(M, polys):
    return M.flatten([M.ring.from_poly(p) for p in polys])


def _image_submodule(M, sub):
    return M.closure([_image_vec(M, v) for v in sub.gens])


def _varset_of(prime):
    """Variable indices of a monomial prime over its symbolic ring."""
    names = prime.ring.names
    out = []
    for g in prime.ideal.canonical_gens():
        mono = next(iter(g.monomials()))
        (i,) = [k for k, e in enumerate(mono) if e]
        out.append(i)
    return tuple(sorted(out))


def _gpf_counter(ms):
    return {tuple(_varset_of(p)): r for p, r in ms.entries()}


def _rpe_counter(varsets):
    out = {}
    for S in varsets:
        out[S] = out.get(S, 0) + 1
    return out


def _membership_check(samples):
    def run(ctx):
        M, Nsp, Nsym = ctx["module"], ctx["Nspace"], ctx["Nsym"]
        for vec in samples:
            sym_in = Nsym.contains(vec)
            model_in = Nsp.contains(_image_vec(M, vec))
            if sym_in != model_in:
                return False
        return True

    return run


def _monomial_fixture():
    sym = PolyRing(GF(2), ("x", "y"))
    x, y = sym.gen(0), sym.gen(1)
    fr = FiniteRing(sym, 3)
    RM = QuotientModule.of_ring(sym)
    M = FiniteModule(fr, 1)
    N = RM.span(((x * x,), (x * y,)))
    return {
        "sym": sym,
        "ring": fr,
        "module": M,
        "ambient": RM,
        "Nsym": N,
        "Nspace": M.closure([_image_vec(M, v) for v in ((x * x,), (x * y,))]),
        "x": x,
        "y": y,
    }


def _colon_check(gens_of, expected_of):
    def run(ctx):
        M = ctx["module"]
        gens = [M.ring.from_poly(g) for g in gens_of(ctx)]
        got = colon_bruteforce(ctx["Nspace"], gens, M)
        want = _image_submodule(M, expected_of(ctx))
        return got.equals(want)

    return run


def _ass_check(ctx):
    M = ctx["module"]
    sym_ass = ass_enumerate(ctx["ambient"].with_denominator(ctx["Nsym"]))
    want = sorted(_varset_of(p) for p in sym_ass)
    got = ass_bruteforce(ctx["Nspace"], M)
    return got == want


def _gpf_check(ctx):
    M = ctx["module"]
    sym = _gpf_counter(gpf(ctx["Nsym"], ctx["ambient"]))
    lex = _rpe_counter(rpe_bruteforce(ctx["Nspace"], M, tie_break="lex"))
    rev = _rpe_counter(rpe_bruteforce(ctx["Nspace"], M, tie_break="revlex"))
    return sym == lex == rev


def _fixture_monomial_chain():
    def build():
        ctx = _monomial_fixture()
        return ctx

    def colon_one(ctx):
        M = ctx["module"]
        got = colon_bruteforce(ctx["Nspace"], [M.ring.one()], M)
        return got.equals(ctx["Nspace"])

    def empty_ass(ctx):
        M = ctx["module"]
        return ass_bruteforce(M.full_space(), M) == []

    def membership(ctx):
        x, y = ctx["x"], ctx["y"]
        return _membership_check(
            (
                (x * x,),
                (x * y,),
                (y * y,),
                (y,),
                (x * x + x * y,),
                (x,),
            )
        )(ctx)

    return Fixture(
        name="monomial-chain",
        description="(x^2, xy) in F2[x,y] truncated at degree 3",
        build=build,
        checks=[
            ("membership agrees on degree-2 samples", membership),
            (
                "colon by the maximal ideal is (x)",
                _colon_check(
                    lambda ctx: [ctx["x"], ctx["y"]],
                    lambda ctx: ctx["ambient"].span(((ctx["x"],),)),
                ),
            ),
            (
                "colon by (x) is the maximal ideal",
                _colon_check(
                    lambda ctx: [ctx["x"]],
                    lambda ctx: ctx["ambient"].span(
                        ((ctx["x"],), (ctx["y"],))
                    ),
                ),
            ),
            ("colon by the unit returns the submodule", colon_one),
            ("associated primes are {(x), (x,y)}", _ass_check),
            ("filtration multiset matches under both tie-breaks", _gpf_check),
            ("no associated prime when the submodule is everything", empty_ass),
        ],
    )


def _fixture_maximal_square():
    def build():
        ctx = _monomial_fixture()
        x, y = ctx["x"], ctx["y"]
        gens = ((x * x,), (x * y,), (y * y,))
        ctx["Nsym"] = ctx["ambient"].span(gens)
        ctx["Nspace"] = ctx["module"].closure(
            [_image_vec(ctx["module"], v) for v in gens]
        )
        return ctx

    return Fixture(
        name="maximal-square",
        description="the square of (x,y) in F2[x,y] truncated at degree 3",
        build=build,
        checks=[
            (
                "membership agrees on degree-2 samples",
                lambda ctx: _membership_check(
                    (
                        (ctx["x"] * ctx["x"],),
                        (ctx["y"] * ctx["y"],),
                        (ctx["x"],),
                        (ctx["x"] * ctx["y"] + ctx["y"] * ctx["y"],),
                    )
                )(ctx),
            ),
            (
                "colon by the maximal ideal is the maximal ideal",
                _colon_check(
                    lambda ctx: [ctx["x"], ctx["y"]],
                    lambda ctx: ctx["ambient"].span(
                        ((ctx["x"],), (ctx["y"],))
                    ),
                ),
            ),
            ("the only associated prime is (x,y)", _ass_check),
            ("filtration multiset is (x,y) twice", _gpf_check),
        ],
    )


def _fixture_two_lines():
    def build():
        ctx = _monomial_fixture()
        x, y = ctx["x"], ctx["y"]
        gens = ((x * y,),)
        ctx["Nsym"] = ctx["ambient"].span(gens)
        ctx["Nspace"] = ctx["module"].closure(
            [_image_vec(ctx["module"], v) for v in gens]
        )
        return ctx

    return Fixture(
        name="two-lines",
        description="(xy) in F2[x,y] truncated at degree 3",
        build=build,
        checks=[
            (
                "colon by (x) is (y)",
                _colon_check(
                    lambda ctx: [ctx["x"]],
                    lambda ctx: ctx["ambient"].span(((ctx["y"],),)),
                ),
            ),
            (
                "colon by (y) is (x)",
                _colon_check(
                    lambda ctx: [ctx["y"]],
                    lambda ctx: ctx["ambient"].span(((ctx["x"],),)),
                ),
            ),
            ("associated primes are {(x), (y)}", _ass_check),
            ("filtration multiset is (x)(y) either way", _gpf_check),
        ],
    )


def _fixture_counterexample_module():
    def build():
        sym = PolyRing(GF(2), ("x", "y"))
        x, y = sym.gen(0), sym.gen(1)
        zero = sym.zero()
        fr = FiniteRing(sym, 3)
        RM = QuotientModule.free(sym, 2, ((x, zero), (zero, x)))
        M = FiniteModule(
            fr, 2, ([_image_vec_raw(fr, (x, zero)), _image_vec_raw(fr, (zero, x))])
        )
        N = RM.span(((y, zero),))
        return {
            "sym": sym,
            "ring": fr,
            "module": M,
            "ambient": RM,
            "Nsym": N,
            "Nspace": M.closure([_image_vec(M, ((y, zero)))]),
            "x": x,
            "y": y,
            "zero": zero,
        }

    def first_step(ctx):
        M, x, y, zero = ctx["module"], ctx["x"], ctx["y"], ctx["zero"]
        got = colon_bruteforce(
            ctx["Nspace"], [M.ring.from_poly(x), M.ring.from_poly(y)], M
        )
        one = ctx["sym"].one()
        want = _image_submodule(M, ctx["ambient"].span(((one, zero),)))
        return got.equals(want)

    return Fixture(
        name="free-counterexample",
        description="the span of (y,0) in (F2[x,y]/(x))^2, truncated",
        build=build,
        checks=[
            (
                "membership agrees on low-degree samples",
                lambda ctx: _membership_check(
                    (
                        (ctx["y"], ctx["zero"]),
                        (ctx["zero"], ctx["y"]),
                        (ctx["x"], ctx["zero"]),
                        (ctx["sym"].one(), ctx["zero"]),
                    )
                )(ctx),
            ),
            ("colon by the maximal ideal adds the first unit vector", first_step),
            ("associated primes are {(x), (x,y)}", _ass_check),
            ("filtration multiset matches the symbolic engine", _gpf_check),
        ],
    )


def _fixture_residue_field():
    def build():
        sym = PolyRing(GF(2), ("x", "y"))
        x, y = sym.gen(0), sym.gen(1)
        fr = FiniteRing(sym, 3)
        RM = QuotientModule.free(sym, 1, ((x,), (y,)))
        M = FiniteModule(
            fr, 1, [_image_vec_raw(fr, (x,)), _image_vec_raw(fr, (y,))]
        )
        return {
            "sym": sym,
            "ring": fr,
            "module": M,
            "ambient": RM,
            "Nsym": RM.span(()),
            "Nspace": M.closure([]),
            "x": x,
            "y": y,
        }

    return Fixture(
        name="residue-field",
        description="the zero submodule of F2[x,y]/(x,y)",
        build=build,
        checks=[
            ("the maximal ideal is the only associated prime", _ass_check),
            ("filtration multiset is a single (x,y)", _gpf_check),
        ],
    )


def _fixture_binomial_quotient():
    def build():
        sym0 = PolyRing(GF(2), ("x", "y", "z"))
        x0, y0, z0 = sym0.gen(0), sym0.gen(1), sym0.gen(2)
        sym = PolyRing(
            GF(2),
            ("x", "y", "z"),
            relations=(x0 * y0 + z0 * z0, x0 * x0 + y0 * z0),
        )
        x, y, z = sym.gen(0), sym.gen(1), sym.gen(2)
        fr = FiniteRing(sym, 4)
        RM = QuotientModule.of_ring(sym)
        M = FiniteModule(fr, 1)
        p = PrimeIdeal(sym, [x, z])
        gens = [(g,) for g in ideal_power(p.ideal, 2).gens]
        Nsym = RM.span(gens)
        return {
            "sym": sym,
            "ring": fr,
            "module": M,
            "ambient": RM,
            "Nsym": Nsym,
            "Nspace": M.closure([_image_vec(M, v) for v in gens]),
            "p": p,
            "x": x,
            "y": y,
            "z": z,
        }

    def ann_of_prime(ctx):
        M = ctx["module"]
        zero_space = M.closure([])
        gens = [M.ring.from_poly(ctx["x"]), M.ring.from_poly(ctx["z"])]
        got = colon_bruteforce(zero_space, gens, M)
        ann = colon_ideal(
            ctx["ambient"].span(()),
            ctx["ambient"].span(((ctx["x"],), (ctx["z"],))),
        )
        want = _image_submodule(M, ann.as_submodule())
        return got.equals(want)

    def colon_matches(ctx):
        M = ctx["module"]
        gens = [M.ring.from_poly(ctx["x"]), M.ring.from_poly(ctx["z"])]
        got = colon_bruteforce(ctx["Nspace"], gens, M)
        sym_colon = colon_module(ctx["Nsym"], ctx["p"].ideal, ctx["ambient"])
        if not got.equals(_image_submodule(M, sym_colon)):
            return False
        want_max = _image_submodule(
            M,
            ctx["ambient"].span(((ctx["x"],), (ctx["y"],), (ctx["z"],))),
        )
        return got.equals(want_max)

    return Fixture(
        name="binomial-quotient",
        description="p = (x,z) in F2[x,y,z]/(xy+z^2, x^2+yz), truncated at 4",
        build=build,
        checks=[
            (
                "membership agrees through the defining relations",
                lambda ctx: _membership_check(
                    (
                        (ctx["x"] * ctx["x"],),
                        (ctx["x"] * ctx["y"],),
                        (ctx["y"] * ctx["z"],),
                        (ctx["y"] * ctx["y"],),
                        (ctx["y"],),
                        (ctx["z"],),
                    )
                )(ctx),
            ),
            ("(p^2 : p) is the maximal ideal, both engines", colon_matches),
            ("the annihilator of p is principal, both engines", ann_of_prime),
        ],
    )


def _image_vec_raw(fr, polys):
    out = []
    for p in polys:
        out.extend(fr.from_poly(p))
    return tuple(out)


def bundled_fixtures():
    return [
        _fixture_monomial_chain(),
        _fixture_maximal_square(),
        _fixture_two_lines(),
        _fixture_counterexample_module(),
        _fixture_residue_field(),
        _fixture_binomial_quotient(),
    ]


def run_fixture_checks(names=None):
    """Run every bundled fixture's checks; returns a nested report."""
    report = {"ok": True, "fixtures": []}
    fixtures = bundled_fixtures()
    if names is not None:
        known = {fx.name for fx in fixtures}
        missing = [n for n in names if n not in known]
        if missing:
            raise ValueError("unknown fixtures: %s" % ", ".join(missing))
    for fx in fixtures:
        if names is not None and fx.name not in names:
            continue
        ctx = fx.build()
        entry = {"name": fx.name, "ok": True, "checks": []}
        for desc, fn in fx.checks:
            ok = bool(fn(ctx))
            entry["checks"].append({"check": desc, "ok": ok})
            if not ok:
                entry["ok"] = False
                report["ok"] = False
        report["fixtures"].append(entry)
    return report
