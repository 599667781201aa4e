"""Exact arithmetic in cyclotomic fields Q(zeta_n) and polynomials over them.

A ``Cyclo`` is a residue modulo the n-th cyclotomic polynomial Phi_n, stored as
a coefficient vector of length phi(n) over ``fractions.Fraction``.  Order 1
embeds the rationals exactly.  A ``CycloPoly`` is a univariate polynomial over
one such field, optionally truncated at a fixed degree, in which case it is a
power series known exactly up to that degree.
"""
from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd

Rational = Fraction


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def moebius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _int_poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (dense, ascending), assuming monic divisor."""
    num = list(num)
    quo = [0] * max(len(num) - len(den) + 1, 0)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        quo[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return quo, num


@functools.lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending, computed by dividing x^n - 1
    by the cyclotomic polynomials of the proper divisors of n."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _int_poly_divmod(poly, list(cyclotomic_coeffs(d)))
            assert not rem
    return tuple(poly)


class Cyclo:
    """An element of Q(zeta_n), reduced modulo Phi_n."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        vec = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(vec) > phi:
            vec = _reduce_mod_phi(order, vec)
        elif len(vec) < phi:
            vec = vec + [Fraction(0)] * (phi - len(vec))
        self.order = order
        self.coeffs = tuple(vec)

    @staticmethod
    def rational(value, order: int = 1) -> Cyclo:
        return Cyclo(order, [Fraction(value)])

    @staticmethod
    def zeta(order: int, power: int = 1) -> Cyclo:
        power %= order
        vec = [Fraction(0)] * (power + 1)
        vec[power] = Fraction(1)
        return Cyclo(order, vec)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def coerce(self, order: int) -> Cyclo:
        """Embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        vec = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            vec[k * step] = c
        return Cyclo(order, vec)

    def _pair(self, other) -> tuple[Cyclo, Cyclo]:
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(other, 1)
        if not isinstance(other, Cyclo):
            return NotImplemented, NotImplemented
        if self.order == other.order:
            return self, other
        n = lcm(self.order, other.order)
        return self.coerce(n), other.coerce(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyclo(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyclo(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> Cyclo:
        return Cyclo(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a.coeffs) == 1:
            return Cyclo(a.order, [a.coeffs[0] * b.coeffs[0]])
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclo(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> Cyclo:
        """Multiplicative inverse via extended gcd with Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if len(self.coeffs) == 1:
            return Cyclo(self.order, [1 / self.coeffs[0]])
        mod = [Fraction(c) for c in cyclotomic_coeffs(self.order)]
        r0, r1 = mod, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            quo, rem = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(quo, s1))
        # r0 is the gcd; Phi_n irreducible so it is a nonzero constant
        while r0 and r0[-1] == 0:
            r0.pop()
        if len(r0) != 1:
            raise ArithmeticError("gcd with cyclotomic modulus not constant")
        inv_c = 1 / r0[0]
        return Cyclo(self.order, [c * inv_c for c in s0])

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __eq__(self, other) -> bool:
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclo({self.order}, {self.coeffs[0]})"
        return f"Cyclo({self.order}, {list(self.coeffs)})"

    def to_json(self):
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data) -> Cyclo:
        if isinstance(data, dict):
            return Cyclo(data["order"], [Fraction(c) for c in data["coeffs"]])
        # plain int or "p/q" string denotes a rational
        return Cyclo.rational(Fraction(data))


def _reduce_mod_phi(order: int, vec: list[Fraction]) -> list[Fraction]:
    """Fold a coefficient vector modulo the monic Phi_n, top degree first."""
    phi = euler_phi(order)
    mod = cyclotomic_coeffs(order)
    out = list(vec)
    for k in range(len(out) - 1, phi - 1, -1):
        c = out[k]
        if c:
            # x^k == -sum_i mod[i] x^(k - phi + i)
            for i in range(phi):
                if mod[i]:
                    out[k - phi + i] -= c * mod[i]
        out.pop()
    return out


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] / lead
        quo[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = num[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def _frac_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _frac_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return out


def cyclo_mul(a: Cyclo, b: Cyclo) -> Cyclo:
    """Exact product in Q(zeta_n); both operands must share the order."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    return a * b


class CycloPoly:
    """Polynomial (or degree-truncated power series) over Q(zeta_n).

    ``truncation`` of N means the value is known exactly up to degree N and
    all arithmetic silently discards higher terms.  Mixing a truncated and an
    exact operand coerces the result to the (smaller) truncation.
    """

    __slots__ = ("order", "coeffs", "truncation")

    def __init__(self, order: int, coeffs, truncation: int | None = None):
        vec = [c if isinstance(c, Cyclo) else Cyclo.rational(c, order) for c in coeffs]
        vec = [c.coerce(order) if c.order != order else c for c in vec]
        if truncation is not None:
            if truncation < 0:
                raise ValueError("truncation degree must be >= 0")
            vec = vec[: truncation + 1]
            zero = Cyclo.rational(0, order)
            vec += [zero] * (truncation + 1 - len(vec))
        else:
            while vec and vec[-1].is_zero():
                vec.pop()
        self.order = order
        self.coeffs = tuple(vec)
        self.truncation = truncation

    @staticmethod
    def from_ints(values, order: int = 1, truncation: int | None = None) -> CycloPoly:
        return CycloPoly(order, [Fraction(v) for v in values], truncation)

    @staticmethod
    def zero(order: int = 1) -> CycloPoly:
        return CycloPoly(order, [])

    @staticmethod
    def one(order: int = 1) -> CycloPoly:
        return CycloPoly(order, [Fraction(1)])

    @staticmethod
    def monomial(coeff, degree: int, order: int = 1) -> CycloPoly:
        vec = [Fraction(0)] * degree + [coeff]
        return CycloPoly(order, vec)

    def degree(self) -> int:
        """Degree of the highest nonzero coefficient (-1 for zero)."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    def is_zero(self) -> bool:
        return self.degree() == -1

    def is_one(self) -> bool:
        return self.degree() == 0 and self.coeffs[0] == Cyclo.rational(1)

    def coefficient(self, k: int) -> Cyclo:
        if k < len(self.coeffs):
            return self.coeffs[k]
        return Cyclo.rational(0, self.order)

    def coerce(self, order: int) -> CycloPoly:
        if order == self.order:
            return self
        return CycloPoly(order, [c.coerce(order) for c in self.coeffs], self.truncation)

    def truncate(self, n: int) -> CycloPoly:
        return CycloPoly(self.order, self.coeffs, n)

    def _pair(self, other) -> tuple[CycloPoly, CycloPoly, int | None]:
        if isinstance(other, (int, Fraction)):
            other = CycloPoly(self.order, [Fraction(other)])
        elif isinstance(other, Cyclo):
            other = CycloPoly(other.order, [other])
        if not isinstance(other, CycloPoly):
            return NotImplemented, NotImplemented, None
        order = lcm(self.order, other.order)
        trunc = None
        if self.truncation is not None and other.truncation is not None:
            trunc = min(self.truncation, other.truncation)
        elif self.truncation is not None:
            trunc = self.truncation
        elif other.truncation is not None:
            trunc = other.truncation
        return self.coerce(order), other.coerce(order), trunc

    def __add__(self, other):
        a, b, trunc = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        vec = [a.coefficient(k) + b.coefficient(k) for k in range(n)]
        return CycloPoly(a.order, vec, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, trunc = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        vec = [a.coefficient(k) - b.coefficient(k) for k in range(n)]
        return CycloPoly(a.order, vec, trunc)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> CycloPoly:
        return CycloPoly(self.order, [-c for c in self.coeffs], self.truncation)

    def __mul__(self, other):
        a, b, trunc = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        if a.is_zero() or b.is_zero():
            return CycloPoly(a.order, [], trunc)
        limit = len(a.coeffs) + len(b.coeffs) - 1
        if trunc is not None:
            limit = min(limit, trunc + 1)
        vec = [Cyclo.rational(0, a.order) for _ in range(limit)]
        for i, x in enumerate(a.coeffs):
            if x.is_zero() or i >= limit:
                continue
            for j, y in enumerate(b.coeffs):
                if i + j >= limit:
                    break
                if not y.is_zero():
                    vec[i + j] = vec[i + j] + x * y
        return CycloPoly(a.order, vec, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycloPoly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = CycloPoly.one(self.order)
        if self.truncation is not None:
            result = result.truncate(self.truncation)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        a, b, _ = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        n = max(len(a.coeffs), len(b.coeffs))
        return all(a.coefficient(k) == b.coefficient(k) for k in range(n))

    def __hash__(self):
        return hash((self.order, self.coeffs, self.truncation))

    def __repr__(self) -> str:
        if self.is_zero():
            body = "0"
        else:
            parts = []
            for k, c in enumerate(self.coeffs):
                if c.is_zero():
                    continue
                cs = str(c.as_fraction()) if c.is_rational() else f"({list(c.coeffs)})"
                parts.append(cs if k == 0 else f"{cs}*u^{k}")
            body = " + ".join(parts)
        tail = f" + O(u^{self.truncation + 1})" if self.truncation is not None else ""
        return f"CycloPoly[{body}{tail}]"

    def divmod(self, other: CycloPoly) -> tuple[CycloPoly, CycloPoly]:
        """Euclidean division; both operands must be exact polynomials."""
        a, b, trunc = self._pair(other)
        if trunc is not None:
            raise ValueError("division requires exact polynomials")
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db = b.degree()
        lead_inv = b.coeffs[db].inverse()
        rem = list(a.coeffs)
        quo = [Cyclo.rational(0, a.order)] * max(len(rem) - db, 0)
        for k in range(len(rem) - db - 1, -1, -1):
            c = rem[k + db] * lead_inv
            quo[k] = c
            if not c.is_zero():
                for i in range(db + 1):
                    rem[k + i] = rem[k + i] - c * b.coeffs[i]
        return CycloPoly(a.order, quo), CycloPoly(a.order, rem[:db])

    def exact_div(self, other: CycloPoly) -> CycloPoly:
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise ValueError("inexact polynomial division")
        return quo

    def substitute_square(self) -> CycloPoly:
        """Return p(u^2)."""
        vec = []
        for c in self.coeffs:
            vec.append(c)
            vec.append(Cyclo.rational(0, self.order))
        trunc = None if self.truncation is None else 2 * self.truncation + 1
        return CycloPoly(self.order, vec[:-1] if vec else [], trunc)

    def evaluate(self, point: Cyclo) -> Cyclo:
        acc = Cyclo.rational(0, self.order)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def to_json(self):
        out = []
        for c in self.coeffs:
            if c.is_rational():
                frac = c.as_fraction()
                out.append(int(frac) if frac.denominator == 1 else str(frac))
            else:
                out.append(c.to_json())
        return out

    @staticmethod
    def from_json(data, order: int = 1, truncation: int | None = None) -> CycloPoly:
        coeffs = [Cyclo.from_json(c) for c in data]
        n = order
        for c in coeffs:
            n = lcm(n, c.order)
        return CycloPoly(n, [c.coerce(n) for c in coeffs], truncation)


def series_inverse(p: CycloPoly, n_target: int) -> CycloPoly:
    """Truncated power series q with p*q = 1 up to degree n_target."""
    c0 = p.coefficient(0)
    if c0.is_zero():
        raise ValueError("zero constant term: series inverse undefined")
    inv0 = c0.inverse()
    out = [inv0]
    for k in range(1, n_target + 1):
        acc = Cyclo.rational(0, p.order)
        for i in range(1, k + 1):
            ci = p.coefficient(i)
            if not ci.is_zero():
                acc = acc + ci * out[k - i]
        out.append(-inv0 * acc)
    return CycloPoly(p.order, out, n_target)


def sqrt_substitute(p: CycloPoly) -> CycloPoly:
    """Halve all exponents: return q with q(u^2) = p(u).

    Fails if any odd-degree coefficient is nonzero, which signals an input
    that did not come from a bipartite graph.
    """
    for k, c in enumerate(p.coeffs):
        if k % 2 == 1 and not c.is_zero():
            raise ValueError(f"nonzero odd coefficient at degree {k}")
    vec = [p.coefficient(2 * k) for k in range((len(p.coeffs) + 1) // 2)]
    trunc = None if p.truncation is None else p.truncation // 2
    return CycloPoly(p.order, vec, trunc)
