"""Exponent-vector helpers and term orders.

Monomials are tuples of nonnegative ints, one entry per variable.  Variable
names are ranked largest first: names[0] > names[1] > ... > names[-1], so the
minimal variable dividing a monomial is the one with the largest index.
"""

from __future__ import annotations

from typing import Iterable


Monomial = tuple


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def one_monomial(n: int) -> Monomial:
    return (0,) * n


def var_monomial(n: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(n))


def min_var_index(m: Monomial) -> int | None:
    """Index of the smallest variable dividing m (largest index), None for 1."""
    for i in range(len(m) - 1, -1, -1):
        if m[i] > 0:
            return i
    return None


def max_var_index(m: Monomial) -> int | None:
    """Index of the largest variable dividing m (smallest index), None for 1."""
    for i in range(len(m)):
        if m[i] > 0:
            return i
    return None


def grevlex_key(m: Monomial):
    """Sort key: bigger key = bigger monomial in degrevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


class TermOrder:
    """Total order on monomials, compatible with multiplication, 1 minimal."""

    def __init__(self, kind: str, key):
        self.kind = kind
        self.key = key

    def max(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def sorted_desc(self, monomials: Iterable[Monomial]) -> list:
        return sorted(monomials, key=self.key, reverse=True)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def __repr__(self):
        return f"TermOrder({self.kind})"


def degrevlex() -> TermOrder:
    return TermOrder("degrevlex", grevlex_key)


def lex() -> TermOrder:
    return TermOrder("lex", lex_key)


def elimination_block(block_size: int = 1) -> TermOrder:
    """Eliminate the first (largest) block_size variables; degrevlex inside."""

    def key(m):
        return (m[:block_size], grevlex_key(m[block_size:]))

    return TermOrder(f"elim({block_size})", key)
