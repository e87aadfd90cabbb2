"""Marked sets over exact rings, the reduction relation, and the basis criterion.

A marked set fixes an order ideal N, the Pommaret basis P of its complement
ideal, and one monic polynomial per Pommaret generator whose tail is supported
on N.  Reduction rewrites any polynomial into the span of N; the effective
criterion (reduce x_i * f to zero for every variable above the head's minimum)
decides whether the marked set generates a complement of <N>, over any of the
supported coefficient rings.  Over dual numbers that verdict certifies a
first-order deformation, over k[t] a flat family on the affine line.
"""

from __future__ import annotations

from .errors import (
    AmbientMismatchError,
    HeadMismatchError,
    NonTerminationError,
    NotABasisError,
    TailOutsideNError,
)
from .monomials import grevlex_key, min_var_index, mono_div, var_monomial
from .monomial_ideals import (
    MonomialIdeal,
    OrderIdeal,
    PommaretBasis,
    complement_ideal,
    pommaret_basis,
)
from .polynomials import Ambient, Polynomial


class MarkedSet:
    """A J-marked set: heads = Pommaret basis of J_N, tails supported on N."""

    def __init__(self, ambient: Ambient, N: OrderIdeal, tails: dict):
        if N.nvars != ambient.n:
            raise AmbientMismatchError("order ideal does not match the ambient")
        self.ambient = ambient
        self.ring = ambient.ring
        self.N = N
        self.J: MonomialIdeal = complement_ideal(N)
        self.P: PommaretBasis = pommaret_basis(self.J)
        self.heads = self.P.sorted_desc()
        head_set = set(self.heads)
        self.tails = {}
        for head, tail in tails.items():
            head = tuple(head)
            if head not in head_set:
                raise HeadMismatchError(f"{head} is not a Pommaret generator")
            if not isinstance(tail, Polynomial) or tail.ambient != ambient:
                raise AmbientMismatchError("tail in a different ambient")
            for m in tail.terms:
                if m not in N:
                    raise TailOutsideNError(
                        f"tail monomial {m} of head {head} lies outside N"
                    )
            self.tails[head] = tail
        for head in self.heads:
            self.tails.setdefault(head, ambient.zero())
        self._cone_cache: dict = {}
        self._basis_verdict: tuple | None = None

    # -- structure ----------------------------------------------------------

    def marked_polynomial(self, head) -> Polynomial:
        head = tuple(head)
        return self.ambient.monomial(head) + self.tails[head]

    def polynomials(self) -> list:
        return [self.marked_polynomial(h) for h in self.heads]

    def colength_candidate(self) -> int:
        return len(self.N)

    def cone_head(self, m):
        """The unique Pommaret generator whose cone contains m (m outside N)."""
        try:
            return self._cone_cache[m]
        except KeyError:
            head = self.P.cone_of(m)
            self._cone_cache[m] = head
            return head

    def criterion_pairs(self) -> list:
        """All (variable index, head) pairs the basis criterion must check."""
        pairs = []
        for head in self.heads:
            k = min_var_index(head)
            for i in range(k):
                pairs.append((i, head))
        return pairs

    def __eq__(self, other):
        return (
            isinstance(other, MarkedSet)
            and other.ambient == self.ambient
            and other.N == self.N
            and other.tails == self.tails
        )

    def __repr__(self):
        polys = ", ".join(p.canonical_str() for p in self.polynomials())
        return f"MarkedSet[{self.ambient}]({polys})"

    def to_json(self) -> dict:
        return {
            "order_ideal": self.N.to_json(),
            "tails": {
                self.ambient.monomial_str(h): self.tails[h].canonical_str()
                for h in self.heads
            },
        }

    # -- reduction ----------------------------------------------------------

    def _budget(self, g: Polynomial) -> int:
        maxdeg = max(g.degree(), self.N.max_degree(), self.J.max_degree(), 1)
        return max(1, g.num_terms()) * max(1, len(self.N)) * maxdeg * maxdeg * 100

    def reduce(self, g: Polynomial, record_quotients: bool = False):
        """Normal form of g: rewrite every monomial outside N using the marked set.

        The strategy is deterministic: always rewrite the degrevlex-largest
        reducible term.  Every monomial outside N lies in exactly one Pommaret
        cone, so the rewriting polynomial is canonical.  Returns the normal
        form, or (normal form, quotients) with quotients mapping each head to
        the polynomial multiplier consumed during the reduction.
        """
        if g.ambient != self.ambient:
            raise AmbientMismatchError("polynomial in a different ambient")
        ring = self.ring
        N = self.N
        work = dict(g.terms)
        quotients: dict = {h: {} for h in self.heads} if record_quotients else None
        budget = self._budget(g)
        steps = 0
        while True:
            target = None
            for m in work:
                if m not in N and (target is None or grevlex_key(m) > grevlex_key(target)):
                    target = m
            if target is None:
                break
            steps += 1
            if steps > budget:
                raise NonTerminationError(
                    f"reduction exceeded {budget} steps; this is a bug"
                )
            c = work.pop(target)
            head = self.cone_head(target)
            beta = mono_div(target, head)
            if record_quotients:
                q = quotients[head]
                q[beta] = ring.add(q.get(beta, ring.zero()), c)
            tail = self.tails[head]
            if tail.terms:
                for m, v in tail.terms.items():
                    mm = tuple(a + b for a, b in zip(m, beta))
                    p = ring.mul(c, v)
                    if mm in work:
                        s = ring.sub(work[mm], p)
                        if ring.is_zero(s):
                            del work[mm]
                        else:
                            work[mm] = s
                    else:
                        if not ring.is_zero(p):
                            work[mm] = ring.neg(p)
        nf = Polynomial(self.ambient, work, _normalized=True)
        if record_quotients:
            qpolys = {
                h: Polynomial(self.ambient, q, _normalized=True)
                for h, q in quotients.items()
                if q
            }
            return nf, qpolys
        return nf

    # -- the effective criterion ---------------------------------------------

    def is_marked_basis(self, with_witness: bool = False):
        """Criterion check: x_i * f_head reduces to 0 for every x_i > min(head)."""
        if self._basis_verdict is None:
            verdict: tuple = (True, None)
            for i, head in self.criterion_pairs():
                prod = self.marked_polynomial(head).mul_term(
                    var_monomial(self.ambient.n, i), self.ring.one()
                )
                nf = self.reduce(prod)
                if not nf.is_zero():
                    verdict = (False, (self.ambient.names[i], head, nf))
                    break
            self._basis_verdict = verdict
        ok, witness = self._basis_verdict
        return (ok, witness) if with_witness else ok

    def require_basis(self):
        ok, witness = self.is_marked_basis(with_witness=True)
        if not ok:
            var, head, nf = witness
            raise NotABasisError(
                f"{var} * f_{head} has nonzero normal form {nf.canonical_str()}"
            )


def make_marked_set(N: OrderIdeal, tails: dict, ambient: Ambient) -> MarkedSet:
    """Validated marked set from an order ideal and a head -> tail map."""
    return MarkedSet(ambient, N, tails)


def monomial_marked_set(N: OrderIdeal, ambient: Ambient) -> MarkedSet:
    """The marked set of the monomial ideal itself (all tails zero)."""
    return MarkedSet(ambient, N, {})


def reduce(g: Polynomial, F: MarkedSet) -> Polynomial:
    return F.reduce(g)


def is_marked_basis(F: MarkedSet, with_witness: bool = False):
    return F.is_marked_basis(with_witness=with_witness)


def colength(F: MarkedSet) -> int:
    """Length of the scheme cut out by a marked basis."""
    F.require_basis()
    return len(F.N)


class QuotientAlgebra:
    """Multiplication matrices of the quotient by a marked basis, in basis N."""

    def __init__(self, F: MarkedSet):
        F.require_basis()
        self.F = F
        self.basis = F.N.sorted_desc()
        self.index = {m: i for i, m in enumerate(self.basis)}
        ring = F.ring
        n = F.ambient.n
        d = len(self.basis)
        self.matrices = []
        for i in range(n):
            rows = [[ring.zero()] * d for _ in range(d)]
            for j, m in enumerate(self.basis):
                prod = F.ambient.monomial(m).mul_term(var_monomial(n, i), ring.one())
                nf = F.reduce(prod)
                for mm, c in nf.terms.items():
                    rows[self.index[mm]][j] = c
            self.matrices.append(rows)

    def matrix(self, var_index: int):
        return self.matrices[var_index]

    def vector_of(self, p: Polynomial):
        """Coordinates of the normal form of p in the basis N."""
        nf = self.F.reduce(p)
        ring = self.F.ring
        vec = [ring.zero()] * len(self.basis)
        for m, c in nf.terms.items():
            vec[self.index[m]] = c
        return vec

    def matrices_commute(self) -> bool:
        ring = self.F.ring
        for i in range(len(self.matrices)):
            for j in range(i + 1, len(self.matrices)):
                if _mat_mul(self.matrices[i], self.matrices[j], ring) != _mat_mul(
                    self.matrices[j], self.matrices[i], ring
                ):
                    return False
        return True


def quotient_algebra(F: MarkedSet) -> QuotientAlgebra:
    return QuotientAlgebra(F)


def _mat_mul(A, B, ring):
    n = len(A)
    m = len(B[0]) if B else 0
    k = len(B)
    out = [[ring.zero()] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for kk in range(k):
            a = Ai[kk]
            if ring.is_zero(a):
                continue
            Bk = B[kk]
            row = out[i]
            for j in range(m):
                b = Bk[j]
                if not ring.is_zero(b):
                    row[j] = ring.add(row[j], ring.mul(a, b))
    return out
