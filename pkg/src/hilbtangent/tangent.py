"""First-order deformations: the tangent linear system, dimension, parity.

For a marked basis F over a field k, a tangent vector assigns an eps-tail
sum_gamma T_{head,gamma} eps x^gamma to every marked polynomial so that the
deformed set stays a marked basis over k[eps].  The criterion reductions are
linear in T, which lets the system matrix be assembled by superposition: one
quotient-recording reduction per criterion product plus multiplication
matrices of the quotient algebra.  Column (head, gamma) of the block for a
product x_i * f_beta is the normal form of (delta_{head,beta} x_i - q_head)
* x^gamma, where q_head is the recorded reduction quotient; stacking those
normal forms over the monomial basis N gives the rows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BaseMismatchError,
    CoefficientError,
    ModularDisagreementError,
    NotFlatError,
)
from .linalg import kernel_basis_field, rank_mod_p, rank_rational, rref_field
from .marked import MarkedSet, QuotientAlgebra, quotient_algebra
from .monomials import mono_mul, one_monomial, var_monomial
from .polynomials import Ambient, Polynomial
from .rings import QQ, DualNumbers, PrimeField, is_probable_prime

EXACT_RANK_MAX_COLS = 300
MODULAR_PRIME_BITS = 21
DEFAULT_SEED = 20231208


@dataclass
class TangentSystem:
    """The linear system S T = 0 cutting out first-order deformations."""

    unknowns: list
    rows: list
    row_labels: list
    ring: object
    heads: list
    basis: list

    @property
    def num_unknowns(self) -> int:
        return len(self.unknowns)

    @property
    def num_equations(self) -> int:
        return len(self.rows)

    def column_index(self, head, gamma) -> int:
        return self.unknowns.index((tuple(head), tuple(gamma)))


@dataclass
class TangentReport:
    d: int
    dim: int
    parity: str
    rank_method: str
    char: int
    rank: int
    cols: int
    rows: int
    primes: list | None = None

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "dim": self.dim,
            "parity": self.parity,
            "rank_method": self.rank_method,
            "char": self.char,
            "rank": self.rank,
            "system": {"rows": self.rows, "cols": self.cols},
        }
        if self.primes is not None:
            out["primes"] = list(self.primes)
        return out


def _parity(dim: int, d: int) -> str:
    return "holds" if (dim - d) % 2 == 0 else "fails"


def _criterion_quotients(F: MarkedSet):
    """One quotient-recording reduction per criterion product; all must vanish."""
    out = []
    for i, head in F.criterion_pairs():
        prod = F.marked_polynomial(head).mul_term(
            var_monomial(F.ambient.n, i), F.ring.one()
        )
        nf, quotients = F.reduce(prod, record_quotients=True)
        if not nf.is_zero():
            from .errors import NotABasisError

            raise NotABasisError(
                f"{F.ambient.names[i]} * f_{head} does not reduce to zero"
            )
        out.append((i, head, quotients))
    return out


class _MonomialMatrices:
    """Multiplication-by-monomial matrices on the quotient, memoized."""

    def __init__(self, QA: QuotientAlgebra):
        self.QA = QA
        self.ring = QA.F.ring
        d = len(QA.basis)
        one = [
            [self.ring.one() if i == j else self.ring.zero() for j in range(d)]
            for i in range(d)
        ]
        self.cache = {one_monomial(QA.F.ambient.n): one}

    def get(self, m):
        try:
            return self.cache[m]
        except KeyError:
            pass
        i = next(k for k, e in enumerate(m) if e > 0)
        prev = self.get(tuple(e - (1 if k == i else 0) for k, e in enumerate(m)))
        from .marked import _mat_mul

        result = _mat_mul(self.QA.matrices[i], prev, self.ring)
        self.cache[m] = result
        return result


def build_tangent_system(F: MarkedSet) -> TangentSystem:
    """Assemble S over the base field; rows with all-zero coefficients are dropped."""
    F.require_basis()
    ring = F.ring
    if isinstance(ring, PrimeField) and ring.p < 2**26:
        return _build_system_modp(F)
    QA = quotient_algebra(F)
    mono_mats = _MonomialMatrices(QA)
    basis = QA.basis
    d = len(basis)
    heads = F.heads
    head_pos = {h: k for k, h in enumerate(heads)}
    unknowns = [(h, g) for h in heads for g in basis]
    rows = []
    labels = []
    for i, beta, quotients in _criterion_quotients(F):
        # block[alpha] = delta_{alpha,beta} M_{x_i} - M_{q_alpha}
        blocks = {}
        for alpha, q in quotients.items():
            acc = [[ring.zero()] * d for _ in range(d)]
            for m, c in q.terms.items():
                mat = mono_mats.get(m)
                for r in range(d):
                    row_acc = acc[r]
                    mat_r = mat[r]
                    for cidx in range(d):
                        v = mat_r[cidx]
                        if not ring.is_zero(v):
                            row_acc[cidx] = ring.add(row_acc[cidx], ring.mul(c, v))
            blocks[alpha] = [[ring.neg(v) for v in r] for r in acc]
        xi_mat = mono_mats.get(var_monomial(F.ambient.n, i))
        if beta in blocks:
            blk = blocks[beta]
            for r in range(d):
                for cidx in range(d):
                    blk[r][cidx] = ring.add(blk[r][cidx], xi_mat[r][cidx])
        else:
            blocks[beta] = [list(r) for r in xi_mat]
        for r in range(d):
            row = [ring.zero()] * (len(heads) * d)
            nonzero = False
            for alpha, blk in blocks.items():
                base = head_pos[alpha] * d
                blk_r = blk[r]
                for cidx in range(d):
                    v = blk_r[cidx]
                    if not ring.is_zero(v):
                        row[base + cidx] = v
                        nonzero = True
            if nonzero:
                rows.append(row)
                labels.append((F.ambient.names[i], beta, basis[r]))
    return TangentSystem(unknowns, rows, labels, ring, list(heads), list(basis))


def _build_system_modp(F: MarkedSet) -> TangentSystem:
    """numpy-accelerated assembly over a small prime field."""
    ring: PrimeField = F.ring
    p = ring.p
    QA = quotient_algebra(F)
    basis = QA.basis
    d = len(basis)
    heads = F.heads
    head_pos = {h: k for k, h in enumerate(heads)}
    var_mats = [np.array(M, dtype=np.int64) % p for M in QA.matrices]
    cache = {one_monomial(F.ambient.n): np.eye(d, dtype=np.int64)}

    def mono_mat(m):
        if m in cache:
            return cache[m]
        i = next(k for k, e in enumerate(m) if e > 0)
        prev = mono_mat(tuple(e - (1 if k == i else 0) for k, e in enumerate(m)))
        out = var_mats[i] @ prev % p
        cache[m] = out
        return out

    unknowns = [(h, g) for h in heads for g in basis]
    all_rows = []
    labels = []
    for i, beta, quotients in _criterion_quotients(F):
        stripe = np.zeros((d, len(heads) * d), dtype=np.int64)
        for alpha, q in quotients.items():
            mats = np.stack([mono_mat(m) for m in q.terms])
            coeffs = np.array([c for c in q.terms.values()], dtype=np.int64)
            acc = np.tensordot(coeffs, mats, axes=(0, 0)) % p
            base = head_pos[alpha] * d
            stripe[:, base : base + d] = (stripe[:, base : base + d] - acc) % p
        base = head_pos[beta] * d
        stripe[:, base : base + d] = (stripe[:, base : base + d] + var_mats[i]) % p
        for r in range(d):
            if stripe[r].any():
                all_rows.append([int(v) for v in stripe[r]])
                labels.append((F.ambient.names[i], beta, basis[r]))
    return TangentSystem(unknowns, all_rows, labels, ring, list(heads), list(basis))


# -- rank and dimension --------------------------------------------------------


def random_primes(count: int, seed: int, bits: int = MODULAR_PRIME_BITS) -> list:
    rng = random.Random(seed)
    primes: list = []
    while len(primes) < count:
        cand = rng.randrange(2 ** bits, 2 ** (bits + 2)) | 1
        if cand not in primes and is_probable_prime(cand):
            primes.append(cand)
    return primes


class BadPrimeError(CoefficientError):
    """A tail denominator vanishes modulo the chosen prime."""


def marked_set_mod_p(F: MarkedSet, p: int) -> MarkedSet:
    """Reduce a rational marked set modulo p; raises BadPrimeError on bad primes."""
    gf = PrimeField(p)
    amb = Ambient(F.ambient.names, gf)

    def conv(c):
        num, den = int(c.numerator), int(c.denominator)
        if den % p == 0:
            raise BadPrimeError(f"denominator divisible by {p}")
        return num * pow(den, -1, p) % p

    tails = {
        h: t.map_coefficients(conv, gf, amb) for h, t in F.tails.items()
    }
    return MarkedSet(amb, F.N, tails)


def _modular_rank(F: MarkedSet, primes: list):
    ranks, rows = [], 0
    for p in primes:
        Fp = marked_set_mod_p(F, p)
        system = build_tangent_system(Fp)
        rows = system.num_equations
        ranks.append(rank_mod_p(system.rows, p))
    return ranks, rows


def tangent_dimension(
    F: MarkedSet,
    primes: list | None = None,
    seed: int = DEFAULT_SEED,
    system: TangentSystem | None = None,
) -> TangentReport:
    """Tangent dimension |P| * |N| - rank(S) with an honest rank method record.

    Over the rationals the rank is exact (fraction-free elimination) up to
    EXACT_RANK_MAX_COLS columns; larger systems use agreement of modular ranks
    at three random primes above 2^20 (widened once on disagreement).  Over a
    prime field the rank is exact in that field.
    """
    d = len(F.N)
    ring = F.ring
    if isinstance(ring, PrimeField):
        sys_ = system or build_tangent_system(F)
        cols = sys_.num_unknowns
        rank = rank_mod_p(sys_.rows, ring.p)
        dim = cols - rank
        return TangentReport(
            d, dim, _parity(dim, d), "prime-field", ring.p, rank, cols,
            sys_.num_equations,
        )
    if ring != QQ:
        raise CoefficientError("tangent_dimension expects a field (QQ or GF(p))")
    cols = len(F.heads) * d
    if cols <= EXACT_RANK_MAX_COLS and primes is None:
        sys_ = system or build_tangent_system(F)
        rank = rank_rational(sys_.rows)
        dim = cols - rank
        return TangentReport(
            d, dim, _parity(dim, d), "exact-rational", 0, rank, cols,
            sys_.num_equations,
        )
    # modular consensus
    chosen = list(primes) if primes else random_primes(3, seed)
    seed_bump = 1
    while True:
        try:
            ranks, rows = _modular_rank(F, chosen)
            break
        except BadPrimeError:
            chosen = random_primes(len(chosen), seed + seed_bump)
            seed_bump += 1
    if len(set(ranks)) == 1:
        rank = ranks[0]
    else:
        extra = [p for p in random_primes(4, seed + 7919) if p not in chosen]
        more, rows = _modular_rank(F, extra)
        ranks += more
        chosen += extra
        best = max(set(ranks), key=ranks.count)
        if ranks.count(best) < 3:
            raise ModularDisagreementError(f"ranks {ranks} at primes {chosen}")
        rank = best
    dim = cols - rank
    return TangentReport(
        d, dim, _parity(dim, d), "modular-consensus", 0, rank, cols, rows,
        primes=chosen,
    )


def tangent_basis(F: MarkedSet, system: TangentSystem | None = None):
    """Basis of ker S as dense vectors aligned with system.unknowns."""
    system = system or build_tangent_system(F)
    return system, kernel_basis_field(system.rows, system.num_unknowns, F.ring)


def deform(F: MarkedSet, system: TangentSystem, vector) -> MarkedSet:
    """Instantiate a tangent vector as a marked set over the dual numbers."""
    dual = DualNumbers(F.ring)
    amb = Ambient(F.ambient.names, dual)
    tails = {}
    by_head: dict = {h: {} for h in F.heads}
    for (h, g), value in zip(system.unknowns, vector):
        if not F.ring.is_zero(value):
            by_head[h][g] = value
    for h in F.heads:
        terms = {}
        for m, c in F.tails[h].terms.items():
            terms[m] = (c, F.ring.zero())
        for g, v in by_head[h].items():
            a, b = terms.get(g, (F.ring.zero(), F.ring.zero()))
            terms[g] = (a, F.ring.add(b, v))
        tails[h] = Polynomial(amb, terms)
    return MarkedSet(amb, F.N, tails)


def eps_parts(G: MarkedSet):
    """Split a dual-number marked set into (base MarkedSet, eps-tail map)."""
    dual: DualNumbers = G.ring
    base_ring = dual.base
    amb0 = Ambient(G.ambient.names, base_ring)
    base_tails = {}
    eps_tails = {}
    for h, t in G.tails.items():
        t0, t1 = {}, {}
        for m, (a, b) in t.terms.items():
            if not base_ring.is_zero(a):
                t0[m] = a
            if not base_ring.is_zero(b):
                t1[m] = b
        base_tails[h] = Polynomial(amb0, t0, _normalized=True)
        eps_tails[h] = Polynomial(amb0, t1, _normalized=True)
    return MarkedSet(amb0, G.N, base_tails), eps_tails


def tangent_vectors_rank(deformed_sets) -> int:
    """Rank of the eps-parts of dual-number marked sets over a common base."""
    sets = list(deformed_sets)
    if not sets:
        return 0
    base0, _ = eps_parts(sets[0])
    vectors = []
    for G in sets:
        if not isinstance(G.ring, DualNumbers):
            raise BaseMismatchError("inputs must be marked sets over dual numbers")
        base, eps = eps_parts(G)
        if base != base0:
            raise BaseMismatchError("eps^0 parts differ between inputs")
        if not G.is_marked_basis():
            raise NotFlatError("input fails the criterion over the dual numbers")
        ring = base.ring
        basis = base.N.sorted_desc()
        vec = []
        for h in base.heads:
            t = eps[h]
            vec.extend(t.terms.get(g, ring.zero()) for g in basis)
        vectors.append(vec)
    ring = base0.ring
    _, pivots = rref_field(vectors, ring)
    return len(pivots)


def in_kernel(system: TangentSystem, vector) -> bool:
    ring = system.ring
    for row in system.rows:
        acc = ring.zero()
        for a, b in zip(row, vector):
            if not ring.is_zero(a) and not ring.is_zero(b):
                acc = ring.add(acc, ring.mul(a, b))
        if not ring.is_zero(acc):
            return False
    return True


# -- scanning -------------------------------------------------------------------


@dataclass
class ScanResult:
    reports: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(1 for _, r in self.reports if r.parity == "fails")

    def summary(self) -> dict:
        return {
            "items": len(self.reports) + len(self.errors),
            "violations": self.violations,
            "errors": len(self.errors),
        }


def parity_scan(marked_sets, primes=None, seed: int = DEFAULT_SEED) -> ScanResult:
    """Run tangent_dimension over a stream of (label, MarkedSet) pairs.

    Per-item failures are collected, never raised, so a long scan survives
    bad samples.
    """
    result = ScanResult()
    for label, F in marked_sets:
        try:
            report = tangent_dimension(F, primes=primes, seed=seed)
            result.reports.append((label, report))
        except Exception as exc:  # noqa: BLE001 - per-item isolation is the point
            result.errors.append((label, f"{type(exc).__name__}: {exc}"))
    return result
