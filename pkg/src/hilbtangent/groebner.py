"""Independent Buchberger oracle: normal forms, membership, colength, intersections.

Deliberately plain Buchberger (normal pair selection, coprimality and chain
criteria only) so it stays a trustworthy cross-check for the marked-basis
engine rather than a competing implementation of it.
"""

from __future__ import annotations

from itertools import product as iproduct

from .errors import NotZeroDimensionalError
from .monomials import (
    TermOrder,
    degrevlex,
    elimination_block,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    one_monomial,
)
from .monomial_ideals import MonomialIdeal, OrderIdeal
from .polynomials import Ambient, Polynomial, translate


def leading_monomial(p: Polynomial, order: TermOrder):
    return order.max(p.terms.keys())


def monic(p: Polynomial, order: TermOrder) -> Polynomial:
    ring = p.ambient.ring
    lm = leading_monomial(p, order)
    c = p.terms[lm]
    if c == ring.one():
        return p
    return p.scale(ring.inv(c))


def normal_form(g: Polynomial, basis, order: TermOrder) -> Polynomial:
    """Full remainder of g on division by the basis (deterministic)."""
    ring = g.ambient.ring
    lms = [leading_monomial(b, order) for b in basis]
    result = g.ambient.zero()
    work = g
    while work.terms:
        t = order.max(work.terms.keys())
        c = work.terms[t]
        for lm, b in zip(lms, basis):
            if mono_divides(lm, t):
                factor = ring.mul(c, ring.inv(b.terms[lm]))
                work = work - b.mul_term(mono_div(t, lm), factor)
                break
        else:
            result = result + g.ambient.monomial(t, c)
            work = work - g.ambient.monomial(t, c)
    return result


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    lcm = mono_lcm(lf, lg)
    ring = f.ambient.ring
    a = f.mul_term(mono_div(lcm, lf), ring.inv(f.terms[lf]))
    b = g.mul_term(mono_div(lcm, lg), ring.inv(g.terms[lg]))
    return a - b


class GroebnerBasis:
    def __init__(self, generators, order: TermOrder):
        self.generators = list(generators)
        self.order = order
        self.reduced = True
        self.leading = [leading_monomial(g, order) for g in self.generators]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def initial_ideal(self) -> MonomialIdeal:
        nv = self.generators[0].ambient.n if self.generators else 0
        return MonomialIdeal(self.leading, nv)

    def normal_form(self, g: Polynomial) -> Polynomial:
        return normal_form(g, self.generators, self.order)


def buchberger(gens, order: TermOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis over a field, deterministic."""
    order = order or degrevlex()
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    amb = gens[0].ambient
    if not amb.ring.is_field:
        raise ValueError("the oracle requires field coefficients")

    G: list[Polynomial] = []
    lms: list = []
    for g in sorted(gens, key=lambda p: order.key(leading_monomial(p, order))):
        r = normal_form(g, G, order)
        if not r.is_zero():
            G.append(monic(r, order))
            lms.append(leading_monomial(r, order))

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    while pairs:
        # normal selection: smallest lcm in the term order
        i, j = min(
            pairs, key=lambda p: (order.key(mono_lcm(lms[p[0]], lms[p[1]])), p)
        )
        pairs.discard((i, j))
        lcm_ij = mono_lcm(lms[i], lms[j])
        # first criterion: coprime leading monomials
        if lcm_ij == mono_mul(lms[i], lms[j]):
            continue
        # chain criterion: some k with lm_k | lcm and both pairs already handled
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(lms[k], lcm_ij):
                continue
            if (min(i, k), max(i, k)) not in pairs and (
                min(j, k),
                max(j, k),
            ) not in pairs:
                skip = True
                break
        if skip:
            continue
        r = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if r.is_zero():
            continue
        G.append(monic(r, order))
        lms.append(leading_monomial(r, order))
        new = len(G) - 1
        pairs |= {(k, new) for k in range(new)}

    # minimalize
    keep = []
    for idx in sorted(range(len(G)), key=lambda k: order.key(lms[k])):
        if not any(mono_divides(lms[k], lms[idx]) for k in keep):
            keep.append(idx)
    minimal = [G[k] for k in keep]
    # interreduce
    reduced = []
    for idx in range(len(minimal)):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = normal_form(minimal[idx], others, order)
        reduced.append(monic(r, order))
    reduced.sort(key=lambda p: order.key(leading_monomial(p, order)), reverse=True)
    return GroebnerBasis(reduced, order)


def staircase(gb: GroebnerBasis):
    """Standard monomials of the initial ideal, or None when infinite."""
    init = gb.initial_ideal()
    if not init.has_finite_colength():
        return None
    return init.complement()


def oracle_colength(gens, order: TermOrder | None = None):
    """Number of standard monomials; float('inf') when unbounded."""
    gb = buchberger(gens, order)
    N = staircase(gb)
    return float("inf") if N is None else len(N)


def membership(g: Polynomial, gens, gb: GroebnerBasis | None = None) -> bool:
    gb = gb or buchberger(gens)
    return gb.normal_form(g).is_zero()


def ideal_equal(gens1, gens2) -> bool:
    gb1 = buchberger(gens1)
    gb2 = buchberger(gens2)
    return all(gb1.normal_form(g).is_zero() for g in gens2) and all(
        gb2.normal_form(g).is_zero() for g in gens1
    )


def _extend_ambient(amb: Ambient, name: str = "_w") -> Ambient:
    return Ambient((name,) + amb.names, amb.ring)


def _embed(p: Polynomial, ext: Ambient, shift: int = 1) -> Polynomial:
    return Polynomial(
        ext, {(0,) * shift + m: c for m, c in p.terms.items()}, _normalized=True
    )


def _project(p: Polynomial, amb: Ambient, shift: int = 1) -> Polynomial:
    return Polynomial(
        amb, {m[shift:]: c for m, c in p.terms.items()}, _normalized=True
    )


def intersect(gens1, gens2) -> list:
    """Generators of the intersection, by single-variable elimination.

    Computes ((w) * I + (1 - w) * J) eliminating w, then sanity-checks each
    returned generator for membership in both inputs.
    """
    amb = gens1[0].ambient
    ext = _extend_ambient(amb)
    w = ext.variable("_w")
    one_minus_w = ext.one() - w
    mixed = [w * _embed(g, ext) for g in gens1]
    mixed += [one_minus_w * _embed(g, ext) for g in gens2]
    gb = buchberger(mixed, elimination_block(1))
    result = [
        _project(g, amb) for g in gb if all(m[0] == 0 for m in g.terms)
    ]
    gb1, gb2 = buchberger(gens1), buchberger(gens2)
    for g in result:
        assert gb1.normal_form(g).is_zero() and gb2.normal_form(g).is_zero(), (
            "intersection generator escaped an input ideal"
        )
    if not result:
        raise ValueError("intersection came out empty; inputs were units?")
    return result


def intersect_many(ideals) -> list:
    out = list(ideals[0])
    for gens in ideals[1:]:
        out = intersect(out, gens)
    return out


def is_comaximal(gens1, gens2) -> bool:
    """True iff the two ideals sum to the unit ideal."""
    gb = buchberger(list(gens1) + list(gens2))
    return any(
        lm == one_monomial(g.ambient.n)
        for g, lm in zip(gb.generators, gb.leading)
    )


def support_check(gens, point, bound: int | None = None) -> bool:
    """True iff the zero-dimensional ideal is supported exactly at the point.

    Translates the point to the origin and checks that the bound-th power of
    the maximal ideal is contained in the ideal; the default bound is the
    colength (the length always bounds the socle degree + 1).
    """
    amb = gens[0].ambient
    translated = [translate(g, list(point)) for g in gens]
    gb = buchberger(translated)
    N = staircase(gb)
    if N is None:
        raise NotZeroDimensionalError("support_check needs a zero-dimensional ideal")
    if bound is None:
        bound = len(N)
    for expo in iproduct(*(range(bound + 1) for _ in range(amb.n))):
        if sum(expo) != bound:
            continue
        if not gb.normal_form(amb.monomial(expo)).is_zero():
            return False
    return True
