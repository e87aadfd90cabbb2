"""Order ideals, complement monomial ideals, Pommaret cones and bases."""

from __future__ import annotations

from itertools import product as iproduct

from .errors import InfiniteColengthError, NotOrderIdealError, NotQuasiStableError
from .monomials import (
    grevlex_key,
    min_var_index,
    mono_degree,
    mono_div,
    mono_divides,
    mono_mul,
    one_monomial,
    var_monomial,
)


def is_order_ideal(monomials) -> bool:
    """True iff the finite monomial set is closed under division."""
    mset = {tuple(m) for m in monomials}
    for m in mset:
        for i, e in enumerate(m):
            if e > 0:
                if mono_div(m, var_monomial(len(m), i)) not in mset:
                    return False
    return True


class OrderIdeal:
    """A finite division-closed set of monomials."""

    def __init__(self, monomials, nvars: int | None = None):
        mset = frozenset(tuple(m) for m in monomials)
        if mset:
            nv = len(next(iter(mset)))
            if any(len(m) != nv for m in mset):
                raise NotOrderIdealError("mixed exponent lengths")
            if nvars is not None and nvars != nv:
                raise NotOrderIdealError("nvars does not match the monomials")
            nvars = nv
        if nvars is None:
            raise NotOrderIdealError("empty order ideal needs an explicit nvars")
        if mset and not is_order_ideal(mset):
            raise NotOrderIdealError(f"not closed under division: {sorted(mset)}")
        self.monomials = mset
        self.nvars = nvars

    def __len__(self):
        return len(self.monomials)

    def __contains__(self, m):
        return tuple(m) in self.monomials

    def __eq__(self, other):
        return isinstance(other, OrderIdeal) and other.monomials == self.monomials

    def __hash__(self):
        return hash(self.monomials)

    def __repr__(self):
        return f"OrderIdeal({self.sorted_desc()})"

    def sorted_desc(self) -> list:
        return sorted(self.monomials, key=grevlex_key, reverse=True)

    def max_degree(self) -> int:
        return max((mono_degree(m) for m in self.monomials), default=-1)

    def to_json(self) -> list:
        """Sorted list of exponent vectors (ascending, deterministic)."""
        return [list(m) for m in sorted(self.monomials, key=grevlex_key)]

    @classmethod
    def from_json(cls, data) -> "OrderIdeal":
        return cls([tuple(m) for m in data])


class MonomialIdeal:
    """A monomial ideal given by its minimal generators (an antichain)."""

    def __init__(self, generators, nvars: int | None = None):
        gens = {tuple(g) for g in generators}
        if gens:
            nv = len(next(iter(gens)))
            if any(len(g) != nv for g in gens):
                raise ValueError("mixed exponent lengths")
            nvars = nv
        if nvars is None:
            raise ValueError("empty ideal needs explicit nvars")
        minimal = {
            g
            for g in gens
            if not any(h != g and mono_divides(h, g) for h in gens)
        }
        self.generators = frozenset(minimal)
        self.nvars = nvars

    def __contains__(self, m) -> bool:
        m = tuple(m)
        return any(mono_divides(g, m) for g in self.generators)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and other.generators == self.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"MonomialIdeal({self.sorted_desc()})"

    def sorted_desc(self) -> list:
        return sorted(self.generators, key=grevlex_key, reverse=True)

    def max_degree(self) -> int:
        return max((mono_degree(g) for g in self.generators), default=-1)

    def has_finite_colength(self) -> bool:
        """Finite complement iff some pure power of every variable is present."""
        for i in range(self.nvars):
            if not any(
                g[i] > 0 and all(g[j] == 0 for j in range(self.nvars) if j != i)
                for g in self.generators
            ):
                return False
        return bool(self.generators)

    def complement(self) -> OrderIdeal:
        """The order ideal of monomials outside the ideal."""
        if not self.has_finite_colength():
            raise InfiniteColengthError(f"{self!r} has infinite colength")
        bounds = []
        for i in range(self.nvars):
            bound = min(
                g[i]
                for g in self.generators
                if g[i] > 0 and all(g[j] == 0 for j in range(self.nvars) if j != i)
            )
            bounds.append(bound)
        outside = [
            m for m in iproduct(*(range(b) for b in bounds)) if m not in self
        ]
        return OrderIdeal(outside, self.nvars)

    def monomials_of_degree(self, d: int) -> list:
        """All degree-d monomials in the ideal (direct enumeration)."""
        out = []
        for m in _monomials_of_degree(self.nvars, d):
            if m in self:
                out.append(m)
        return out


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for e in range(d + 1):
        for rest in _monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def complement_ideal(N: OrderIdeal) -> MonomialIdeal:
    """The monomial ideal generated by all monomials outside N."""
    nv = N.nvars
    candidates = set()
    for m in N.monomials:
        for i in range(nv):
            candidates.add(mono_mul(m, var_monomial(nv, i)))
    if one_monomial(nv) not in N.monomials:
        candidates.add(one_monomial(nv))
    gens = set()
    for c in candidates:
        if c in N:
            continue
        if all(
            mono_div(c, var_monomial(nv, i)) in N
            for i in range(nv)
            if c[i] > 0
        ):
            gens.add(c)
    return MonomialIdeal(gens, nv)


def pommaret_cone(m) -> tuple:
    """Pommaret cone of m, returned as (m, multiplier variable indices).

    The cone is {m * u : every variable of u is <= the minimal variable of m},
    i.e. u may only use indices >= min_var_index(m).
    """
    m = tuple(m)
    k = min_var_index(m)
    if k is None:
        raise ValueError("the Pommaret cone of 1 is not defined")
    return m, tuple(range(k, len(m)))


def in_pommaret_cone(t, m) -> bool:
    """True iff monomial t lies in the Pommaret cone of m."""
    t, m = tuple(t), tuple(m)
    if not mono_divides(m, t):
        return False
    k = min_var_index(m)
    if k is None:
        return False
    return all(t[j] == m[j] for j in range(k))


class PommaretBasis:
    """Generators of a quasi-stable ideal whose cones partition its monomials."""

    def __init__(self, generators, parent: MonomialIdeal):
        self.generators = frozenset(tuple(g) for g in generators)
        self.parent = parent
        self.nvars = parent.nvars

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, PommaretBasis) and other.generators == self.generators

    def __repr__(self):
        return f"PommaretBasis({self.sorted_desc()})"

    def sorted_desc(self) -> list:
        return sorted(self.generators, key=grevlex_key, reverse=True)

    def cone_of(self, t) -> tuple | None:
        """The unique generator whose cone contains t, or None."""
        t = tuple(t)
        for g in self.generators:
            if in_pommaret_cone(t, g):
                return g
        return None

    def cones_partition(self, bound: int | None = None) -> bool:
        """Check that the cones are disjoint and cover the ideal up to degree bound."""
        if bound is None:
            bound = self.parent.max_degree() + self.nvars
        for d in range(bound + 1):
            for m in _monomials_of_degree(self.nvars, d):
                hits = sum(1 for g in self.generators if in_pommaret_cone(m, g))
                if m in self.parent:
                    if hits != 1:
                        return False
                elif hits != 0:
                    return False
        return True


def pommaret_basis(J: MonomialIdeal, degree_bound: int | None = None) -> PommaretBasis:
    """Pommaret basis by completion.

    Starting from the minimal generators, repeatedly multiply by non-multiplier
    variables and add products covered by no existing cone.  Raises
    NotQuasiStableError when the completion escapes the degree bound
    (max generator degree + number of variables by default).
    """
    nv = J.nvars
    if degree_bound is None:
        degree_bound = J.max_degree() + nv
    basis = set(J.generators)
    queue = sorted(basis, key=grevlex_key)
    while queue:
        g = queue.pop(0)
        k = min_var_index(g)
        for i in range(k):
            h = mono_mul(g, var_monomial(nv, i))
            if any(in_pommaret_cone(h, b) for b in basis):
                continue
            if mono_degree(h) > degree_bound:
                raise NotQuasiStableError(
                    f"completion escaped degree {degree_bound}: {h}"
                )
            basis.add(h)
            queue.append(h)
    return PommaretBasis(basis, J)


def is_quasi_stable(J: MonomialIdeal) -> bool:
    """True iff J admits a finite Pommaret basis."""
    try:
        pommaret_basis(J)
        return True
    except NotQuasiStableError:
        return False
