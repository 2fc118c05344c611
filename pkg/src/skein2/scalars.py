"""
Exact scalars: rational functions in two Laurent variables over the rationals.

A LaurentPoly2 is a sparse map from exponent pairs (e1, e2) to Fraction
coefficients; the two variables are called q1 and q2 by default (the braiding
layer reuses the same field with variables read as s1, s2).

A RatFunc2 is an unreduced quotient num / product-of-factors.  There is no
multivariate gcd: equality is decided by cross-multiplication.  Growth is
bounded by keeping the denominator in factored form (factors stay small, and
additions only ever multiply numerators by the few missing factors) together
with a cheap exact-division pass that cancels a denominator factor when it
happens to divide the numerator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Exponents = tuple[int, int]


class LaurentPoly2:
    """Sparse Laurent polynomial in two variables with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[Exponents, Fraction] | None = None):
        self.terms: dict[Exponents, Fraction] = {}
        self._hash = None
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    self.terms[exps] = Fraction(coeff)

    @classmethod
    def _raw(cls, terms: dict[Exponents, Fraction]) -> LaurentPoly2:
        out = cls.__new__(cls)
        out.terms = terms
        out._hash = None
        return out

    @classmethod
    def const(cls, value) -> LaurentPoly2:
        value = Fraction(value)
        return cls._raw({(0, 0): value} if value else {})

    @classmethod
    def var(cls, which: int, power: int = 1) -> LaurentPoly2:
        assert which in (1, 2)
        exps = (power, 0) if which == 1 else (0, power)
        return cls._raw({exps: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        """Return the Fraction value if this polynomial is a constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and (0, 0) in self.terms:
            return self.terms[(0, 0)]
        return None

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: LaurentPoly2) -> LaurentPoly2:
        result = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = result.get(exps, 0) + coeff
            if new:
                result[exps] = new
            else:
                result.pop(exps, None)
        return LaurentPoly2._raw(result)

    def __neg__(self) -> LaurentPoly2:
        return LaurentPoly2._raw({exps: -c for exps, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly2) -> LaurentPoly2:
        return self + (-other)

    def __mul__(self, other: LaurentPoly2) -> LaurentPoly2:
        result: dict[Exponents, Fraction] = {}
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                exps = (a1 + b1, a2 + b2)
                new = result.get(exps, 0) + ca * cb
                if new:
                    result[exps] = new
                else:
                    result.pop(exps, None)
        return LaurentPoly2._raw(result)

    def scaled(self, factor: Fraction) -> LaurentPoly2:
        if not factor:
            return LaurentPoly2._raw({})
        return LaurentPoly2._raw({exps: c * factor for exps, c in self.terms.items()})

    def shifted(self, d1: int, d2: int) -> LaurentPoly2:
        """Multiply by the monomial q1^d1 * q2^d2."""
        if not (d1 or d2):
            return self
        return LaurentPoly2._raw({(e1 + d1, e2 + d2): c for (e1, e2), c in self.terms.items()})

    def __pow__(self, n: int) -> LaurentPoly2:
        assert n >= 0
        result = LaurentPoly2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverted_vars(self, which: int | None = None) -> LaurentPoly2:
        """The involution q_i -> q_i^-1 (negate exponents; both variables if which is None)."""
        if which == 1:
            terms = {(-e1, e2): c for (e1, e2), c in self.terms.items()}
        elif which == 2:
            terms = {(e1, -e2): c for (e1, e2), c in self.terms.items()}
        else:
            terms = {(-e1, -e2): c for (e1, e2), c in self.terms.items()}
        return LaurentPoly2._raw(terms)

    def exponent_box(self) -> tuple[int, int, int, int]:
        """(min_e1, max_e1, min_e2, max_e2) of the support."""
        assert self.terms
        e1s = [e1 for e1, _ in self.terms]
        e2s = [e2 for _, e2 in self.terms]
        return min(e1s), max(e1s), min(e2s), max(e2s)

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        assert self.terms
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = gcd(num_gcd, abs(coeff.numerator))
            den_lcm = den_lcm * coeff.denominator // gcd(den_lcm, coeff.denominator)
        return Fraction(num_gcd, den_lcm)

    def leading_sign(self) -> int:
        """Sign of the coefficient on the lexicographically largest exponent pair."""
        assert self.terms
        return 1 if self.terms[max(self.terms)] > 0 else -1

    def evaluate(self, z1: complex, z2: complex) -> complex:
        total = 0j
        for (e1, e2), coeff in self.terms.items():
            total += complex(coeff) * z1**e1 * z2**e2
        return total

    def magnitude_at(self, z1: complex, z2: complex) -> float:
        """Sum of term magnitudes; the cancellation-free scale of evaluate."""
        total = 0.0
        for (e1, e2), coeff in self.terms.items():
            total += abs(complex(coeff)) * abs(z1) ** e1 * abs(z2) ** e2
        return total

    def render(self, names: tuple[str, str] = ("q1", "q2")) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (e1, e2) in sorted(self.terms, reverse=True):
            coeff = self.terms[(e1, e2)]
            factors = []
            for name, e in ((names[0], e1), (names[1], e2)):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly2({self.render()})"


def exact_divide(num: LaurentPoly2, f: LaurentPoly2) -> LaurentPoly2 | None:
    """Quotient num/f if f divides num exactly as a Laurent polynomial, else None."""
    if num.is_zero():
        return num
    key = (num, f)
    if key in _divide_cache:
        return _divide_cache[key]
    result = _exact_divide_uncached(num, f)
    if len(_divide_cache) > 1 << 16:
        _divide_cache.clear()
    _divide_cache[key] = result
    return result


_divide_cache: dict = {}


def _exact_divide_uncached(num: LaurentPoly2, f: LaurentPoly2) -> LaurentPoly2 | None:
    assert not f.is_zero()
    lo1n, hi1n, lo2n, hi2n = num.exponent_box()
    lo1f, hi1f, lo2f, hi2f = f.exponent_box()
    # any exact quotient has support inside this box
    qbox = (lo1n - lo1f, hi1n - hi1f, lo2n - lo2f, hi2n - hi2f)
    if qbox[0] > qbox[1] or qbox[2] > qbox[3]:
        return None
    lead = max(f.terms)
    lead_coeff = f.terms[lead]
    remainder = dict(num.terms)
    quotient: dict[Exponents, Fraction] = {}
    while remainder:
        t1, t2 = max(remainder)
        qe = (t1 - lead[0], t2 - lead[1])
        if not (qbox[0] <= qe[0] <= qbox[1] and qbox[2] <= qe[1] <= qbox[3]):
            return None
        qc = remainder[(t1, t2)] / lead_coeff
        quotient[qe] = qc
        for (f1, f2), fc in f.terms.items():
            exps = (qe[0] + f1, qe[1] + f2)
            new = remainder.get(exps, 0) - qc * fc
            if new:
                remainder[exps] = new
            else:
                remainder.pop(exps, None)
    return LaurentPoly2._raw(quotient)


_ONE_POLY = LaurentPoly2.const(1)

FactorList = tuple[tuple[LaurentPoly2, int], ...]


class VanishingDenominator(ZeroDivisionError):
    """Raised when a specialization point (numerically) kills the denominator."""


def _normalize_factor(poly: LaurentPoly2) -> tuple[LaurentPoly2, Fraction, tuple[int, int]]:
    """Center, content-normalize and sign-normalize; return (factor, scale, shift)
    with poly == scale * q^shift * factor."""
    assert not poly.is_zero()
    lo1, hi1, lo2, hi2 = poly.exponent_box()
    d1, d2 = -((lo1 + hi1) // 2), -((lo2 + hi2) // 2)
    shifted = poly.shifted(d1, d2)
    scale = shifted.content() * shifted.leading_sign()
    return shifted.scaled(1 / scale), scale, (-d1, -d2)


def _factor_sort_key(item: tuple[LaurentPoly2, int]):
    poly, mult = item
    return (len(poly.terms), sorted(poly.terms.items()), mult)


class RatFunc2:
    """Quotient of Laurent polynomials with a factored denominator."""

    __slots__ = ("num", "factors", "_den_cache")

    def __init__(self, num: LaurentPoly2, den: LaurentPoly2 | None = None):
        if den is not None and den.is_zero():
            raise ZeroDivisionError("zero denominator")
        built = _build(num, {den: 1} if den is not None else {})
        self.num = built.num
        self.factors = built.factors
        self._den_cache = built._den_cache

    @classmethod
    def _raw(cls, num: LaurentPoly2, factors: FactorList) -> RatFunc2:
        out = cls.__new__(cls)
        out.num = num
        out.factors = factors
        out._den_cache = None
        return out

    @classmethod
    def const(cls, value) -> RatFunc2:
        return cls._raw(LaurentPoly2.const(value), ())

    @classmethod
    def var(cls, which: int, power: int = 1) -> RatFunc2:
        return cls._raw(LaurentPoly2.var(which, power), ())

    @property
    def den(self) -> LaurentPoly2:
        """The denominator, expanded."""
        if self._den_cache is None:
            poly = _ONE_POLY
            for factor, mult in self.factors:
                poly = poly * factor**mult
            self._den_cache = poly
        return self._den_cache

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self == ONE

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatFunc2.const(other)
        if not isinstance(other, RatFunc2):
            return NotImplemented
        if self.factors == other.factors:
            return self.num == other.num
        mine = dict(self.factors)
        theirs = dict(other.factors)
        lhs, rhs = self.num, other.num
        for factor in set(mine) | set(theirs):
            a, b = mine.get(factor, 0), theirs.get(factor, 0)
            common = min(a, b)
            if a - common:
                rhs = rhs * factor ** (a - common)
            if b - common:
                lhs = lhs * factor ** (b - common)
        return lhs == rhs

    __hash__ = None  # cross-multiplied equality is not hash-compatible

    def __add__(self, other: RatFunc2) -> RatFunc2:
        if isinstance(other, int):
            other = RatFunc2.const(other)
        if self.factors == other.factors:
            return _build(self.num + other.num, dict(self.factors))
        mine = dict(self.factors)
        theirs = dict(other.factors)
        merged: dict[LaurentPoly2, int] = {}
        lhs, rhs = self.num, other.num
        for factor in set(mine) | set(theirs):
            a, b = mine.get(factor, 0), theirs.get(factor, 0)
            top = max(a, b)
            merged[factor] = top
            if top - a:
                lhs = lhs * factor ** (top - a)
            if top - b:
                rhs = rhs * factor ** (top - b)
        return _build(lhs + rhs, merged)

    __radd__ = __add__

    def __neg__(self) -> RatFunc2:
        return RatFunc2._raw(-self.num, self.factors)

    def __sub__(self, other: RatFunc2) -> RatFunc2:
        if isinstance(other, int):
            other = RatFunc2.const(other)
        return self + (-other)

    def __mul__(self, other: RatFunc2) -> RatFunc2:
        if isinstance(other, int):
            return _build(self.num.scaled(Fraction(other)), dict(self.factors))
        merged = dict(self.factors)
        for factor, mult in other.factors:
            merged[factor] = merged.get(factor, 0) + mult
        return _build(self.num * other.num, merged)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFunc2) -> RatFunc2:
        if isinstance(other, int):
            other = RatFunc2.const(other)
        return self * other.inv()

    def inv(self) -> RatFunc2:
        if self.is_zero():
            raise ZeroDivisionError("inverting zero rational function")
        num = self.den
        return _build(num, {self.num: 1})

    def __pow__(self, n: int) -> RatFunc2:
        if n < 0:
            return self.inv() ** (-n)
        result = RatFunc2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverted_vars(self, which: int | None = None) -> RatFunc2:
        return _build(
            self.num.inverted_vars(which),
            {f.inverted_vars(which): m for f, m in self.factors},
        )

    def substituted(self, map1: tuple[int, int], map2: tuple[int, int]) -> RatFunc2:
        """Apply the monomial substitution q1 -> sgn1*q1^a1, q2 -> sgn2*q2^a2.

        map_i = (a_i, sgn_i) with a_i in {1, -1} and sgn_i in {1, -1}; this is a
        field automorphism, used for enumerating braiding classes.
        """
        (a1, s1), (a2, s2) = map1, map2

        def apply(poly: LaurentPoly2) -> LaurentPoly2:
            terms = {}
            for (e1, e2), c in poly.terms.items():
                sign = (s1 ** (e1 & 1)) * (s2 ** (e2 & 1))
                terms[(a1 * e1, a2 * e2)] = c * sign
            return LaurentPoly2._raw(terms)

        return _build(apply(self.num), {apply(f): m for f, m in self.factors})

    def specialize(self, z1: complex, z2: complex, tol: float = 1e-12) -> complex:
        """Numeric value at (z1, z2); error if the denominator vanishes there."""
        den_val = 1 + 0j
        for factor, mult in self.factors:
            value = factor.evaluate(z1, z2)
            scale = factor.magnitude_at(z1, z2)
            if abs(value) <= tol * scale:
                raise VanishingDenominator(
                    f"denominator factor {factor.render()} vanishes at q1={z1}, q2={z2}"
                )
            den_val *= value**mult
        return self.num.evaluate(z1, z2) / den_val

    def render(self, names: tuple[str, str] = ("q1", "q2")) -> str:
        den = self.den
        num = self.num
        if den == _ONE_POLY:
            return num.render(names)
        # display with the denominator centered (shift both parts)
        lo1, hi1, lo2, hi2 = den.exponent_box()
        d1, d2 = -((lo1 + hi1) // 2), -((lo2 + hi2) // 2)
        return f"({num.shifted(d1, d2).render(names)})/({den.shifted(d1, d2).render(names)})"

    def __repr__(self):
        return f"RatFunc2({self.render()})"


def _build(num: LaurentPoly2, factor_counts: dict[LaurentPoly2, int]) -> RatFunc2:
    """Normalize a numerator and denominator-factor multiset into a RatFunc2."""
    if num.is_zero():
        return RatFunc2._raw(num, ())
    scale = Fraction(1)
    shift1 = shift2 = 0
    normalized: dict[LaurentPoly2, int] = {}
    for poly, mult in factor_counts.items():
        if mult == 0:
            continue
        assert mult > 0 and not poly.is_zero()
        if poly.is_monomial():
            ((e1, e2), coeff), = poly.terms.items()
            scale *= coeff**mult
            shift1 += e1 * mult
            shift2 += e2 * mult
            continue
        factor, fscale, (s1, s2) = _normalize_factor(poly)
        scale *= fscale**mult
        shift1 += s1 * mult
        shift2 += s2 * mult
        normalized[factor] = normalized.get(factor, 0) + mult
    if scale != 1:
        num = num.scaled(1 / scale)
    if shift1 or shift2:
        num = num.shifted(-shift1, -shift2)
    # cancellation pass: cancel factors that exactly divide the numerator
    for factor in list(normalized):
        while normalized[factor] > 0:
            quotient = exact_divide(num, factor)
            if quotient is None:
                break
            num = quotient
            normalized[factor] -= 1
        if normalized[factor] == 0:
            del normalized[factor]
    factors = tuple(sorted(normalized.items(), key=_factor_sort_key))
    return RatFunc2._raw(num, factors)


def ratfunc_sum(values: list[RatFunc2]) -> RatFunc2:
    """Sum many RatFunc2 with one common-denominator pass."""
    if not values:
        return RatFunc2.const(0)
    if len(values) == 1:
        return values[0]
    common: dict[LaurentPoly2, int] = {}
    for v in values:
        for f, m in v.factors:
            if common.get(f, 0) < m:
                common[f] = m
    power_cache: dict[tuple[int, int], LaurentPoly2] = {}

    def power(f: LaurentPoly2, k: int) -> LaurentPoly2:
        key = (id(f), k)
        out = power_cache.get(key)
        if out is None:
            out = f**k
            power_cache[key] = out
        return out

    total = LaurentPoly2.const(0)
    for v in values:
        scaled = v.num
        have = dict(v.factors)
        for f, m in common.items():
            need = m - have.get(f, 0)
            if need:
                scaled = scaled * power(f, need)
        total = total + scaled
    return _build(total, common)


ZERO = RatFunc2.const(0)
ONE = RatFunc2.const(1)


def qint_poly(n: int, which: int) -> LaurentPoly2:
    """Balanced quantum integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("quantum integers need n >= 0")
    assert which in (1, 2)
    terms: dict[Exponents, Fraction] = {}
    for j in range(n):
        e = n - 1 - 2 * j
        exps = (e, 0) if which == 1 else (0, e)
        terms[exps] = Fraction(1)
    return LaurentPoly2(terms)


def qint(n: int, which: int) -> RatFunc2:
    """The quantum integer [n]_{q_which} as an exact rational function."""
    return RatFunc2(qint_poly(n, which))


# --- text grammar -----------------------------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := '-'* atom ('^' ('-'? int))?
#   atom   := int | name | '(' expr ')'


class _Parser:
    def __init__(self, text: str, names: tuple[str, str]):
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.names = names

    @staticmethod
    def _tokenize(text: str) -> list[str]:
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*/^()":
                tokens.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                tokens.append(text[i:j])
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                tokens.append(text[i:j])
                i = j
            else:
                raise ValueError(f"unexpected character {ch!r} in scalar expression")
        return tokens

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ValueError("unexpected end of scalar expression")
        self.pos += 1
        return token

    def parse(self) -> RatFunc2:
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at token {self.peek()!r}")
        return value

    def expr(self) -> RatFunc2:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc2:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> RatFunc2:
        sign = 1
        while self.peek() == "-":
            self.take()
            sign = -sign
        value = self.atom()
        if self.peek() == "^":
            self.take()
            exp_sign = 1
            if self.peek() == "-":
                self.take()
                exp_sign = -1
            token = self.take()
            if not token.isdigit():
                raise ValueError(f"bad exponent {token!r}")
            value = value ** (exp_sign * int(token))
        return value if sign == 1 else -value

    def atom(self) -> RatFunc2:
        token = self.take()
        if token == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parenthesis")
            return value
        if token.isdigit():
            return RatFunc2.const(int(token))
        if token == self.names[0]:
            return RatFunc2.var(1)
        if token == self.names[1]:
            return RatFunc2.var(2)
        raise ValueError(f"unknown token {token!r}")


def parse_scalar(text: str, names: tuple[str, str] = ("q1", "q2")) -> RatFunc2:
    """Parse the textual rendering of a rational function back to a RatFunc2."""
    return _Parser(text, names).parse()
