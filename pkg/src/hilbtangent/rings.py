"""Exact coefficient rings.

Four concrete rings are supported: the rationals, prime fields F_p, dual
numbers k[eps]/(eps^2) over a field k, and univariate polynomials k[t].
Elements are plain hashable Python values (gmpy2.mpq / int / tuple); the
ring object supplies the arithmetic, so hot loops avoid wrapper objects.
"""

from __future__ import annotations

from .errors import CoefficientError

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq


def rational(num, den=1):
    """Exact rational number (arbitrary precision)."""
    return _mpq(num, den)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Abstract exact commutative ring with identity."""

    char = 0
    is_field = False
    name = "ring"
    # name -> element map for coefficient-level generators (eps, t)
    param_elements: dict = {}

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero()

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def from_rational(self, num: int, den: int = 1):
        if den == 1:
            return self.from_int(num)
        return self.mul(self.from_int(num), self.inv(self.from_int(den)))

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.name


class RationalField(Ring):
    char = 0
    is_field = True
    name = "QQ"

    def zero(self):
        return _mpq(0)

    def one(self):
        return _mpq(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise CoefficientError("division by zero in QQ")
        return 1 / a

    def from_int(self, n):
        return _mpq(n)

    def from_rational(self, num, den=1):
        return _mpq(num, den)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Ring):
    """F_p for a prime p < 2**62; elements are ints in [0, p)."""

    is_field = True

    def __init__(self, p: int):
        if not (2 <= p < 2**62) or not is_probable_prime(p):
            raise CoefficientError(f"not a supported prime: {p}")
        self.p = p
        self.char = p
        self.name = f"GF({p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        if a % self.p == 0:
            raise CoefficientError(f"division by zero in {self.name}")
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class DualNumbers(Ring):
    """k[eps]/(eps^2) over a base field k; elements are pairs (a, b) = a + b*eps."""

    def __init__(self, base: Ring):
        if not base.is_field:
            raise CoefficientError("dual numbers need a base field")
        self.base = base
        self.char = base.char
        self.name = f"{base.name}[eps]"
        self.param_elements = {"eps": (base.zero(), base.one())}

    def eps(self):
        return self.param_elements["eps"]

    def zero(self):
        return (self.base.zero(), self.base.zero())

    def one(self):
        return (self.base.one(), self.base.zero())

    def add(self, a, b):
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def sub(self, a, b):
        return (self.base.sub(a[0], b[0]), self.base.sub(a[1], b[1]))

    def mul(self, a, b):
        # eps^2 = 0
        return (
            self.base.mul(a[0], b[0]),
            self.base.add(self.base.mul(a[0], b[1]), self.base.mul(a[1], b[0])),
        )

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def is_unit(self, a):
        return self.base.is_unit(a[0])

    def inv(self, a):
        ia = self.base.inv(a[0])
        return (ia, self.base.neg(self.base.mul(self.base.mul(ia, a[1]), ia)))

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero())

    def embed(self, a):
        """Base-field element -> dual number."""
        return (a, self.base.zero())

    def parts(self, a):
        """Dual number -> (eps^0 part, eps^1 part)."""
        return a

    def to_str(self, a):
        a0, a1 = a
        if self.base.is_zero(a1):
            return self.base.to_str(a0)
        eps_term = "eps" if a1 == self.base.one() else f"{self.base.to_str(a1)}*eps"
        if self.base.is_zero(a0):
            return eps_term
        return f"{self.base.to_str(a0)} + {eps_term}"

    def __eq__(self, other):
        return isinstance(other, DualNumbers) and other.base == self.base

    def __hash__(self):
        return hash(("dual", self.base))


class UnivariatePolynomials(Ring):
    """k[t] over a base field; elements are coefficient tuples, low degree first.

    The zero element is the empty tuple; tuples never carry a trailing zero.
    """

    def __init__(self, base: Ring, var: str = "t"):
        if not base.is_field:
            raise CoefficientError("univariate polynomial ring needs a base field")
        self.base = base
        self.var = var
        self.char = base.char
        self.name = f"{base.name}[{var}]"
        self.param_elements = {var: (base.zero(), base.one())}

    def gen(self):
        return self.param_elements[self.var]

    def _trim(self, cs):
        n = len(cs)
        while n and self.base.is_zero(cs[n - 1]):
            n -= 1
        return tuple(cs[:n])

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.base.add(out[i], c)
        return self._trim(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [self.base.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if self.base.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = self.base.add(out[i + j], self.base.mul(ca, cb))
        return self._trim(out)

    def is_zero(self, a):
        return a == ()

    def is_unit(self, a):
        return len(a) == 1 and self.base.is_unit(a[0])

    def inv(self, a):
        if not self.is_unit(a):
            raise CoefficientError(f"non-unit in {self.name}: {a}")
        return (self.base.inv(a[0]),)

    def from_int(self, n):
        c = self.base.from_int(n)
        return (c,) if not self.base.is_zero(c) else ()

    def embed(self, a):
        return (a,) if not self.base.is_zero(a) else ()

    def evaluate(self, a, value):
        """Evaluate at a base-field value (Horner)."""
        acc = self.base.zero()
        for c in reversed(a):
            acc = self.base.add(self.base.mul(acc, value), c)
        return acc

    def to_str(self, a):
        if not a:
            return "0"
        parts = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            if i == 0:
                parts.append(self.base.to_str(c))
            else:
                tpow = self.var if i == 1 else f"{self.var}^{i}"
                if c == self.base.one():
                    parts.append(tpow)
                else:
                    parts.append(f"{self.base.to_str(c)}*{tpow}")
        return " + ".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, UnivariatePolynomials)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("poly1", self.base, self.var))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
