"""
Exact arithmetic kernel: rational scalars and polynomials for every degree formula.

- Rational:    fractions.Fraction (always reduced, denominator >= 1)
- UniPoly:     dense coefficients in one variable t, index = power
- MultiPoly:   sparse {exponent tuple: coefficient} over a fixed variable count
- LaurentPoly: same sparse layout, negative exponents allowed

No float ever enters these types; strings like "3/4" or "1.5" are parsed
exactly. Every value is immutable after construction, so polynomials can be
shared freely between worker processes.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Fraction
Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction, str]


class AlgebraError(ArithmeticError):
    """Base class for exact-arithmetic contract violations."""


class VariableCountError(AlgebraError):
    """Two polynomials (or a polynomial and a point) disagree on the variable count."""


class NotDivisibleError(AlgebraError):
    """An exact division left a nonzero remainder."""


def to_rational(value: Scalar) -> Fraction:
    """Coerce int / Fraction / numeric string to an exact Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not an exact rational: {value!r}") from e
    if hasattr(value, "__index__"):
        return Fraction(int(value))
    raise TypeError(f"cannot treat {value!r} as an exact rational (floats are not allowed)")


def format_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def as_integer(value: Fraction) -> Optional[int]:
    """The value as an int when it is integral, else None."""
    return value.numerator if value.denominator == 1 else None


# ---------------- univariate ----------------

class UniPoly:
    """Dense polynomial in a single variable t. The zero polynomial has degree None."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def t(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls((c,))

    @classmethod
    def linear(cls, slope: Scalar, intercept: Scalar) -> "UniPoly":
        """slope*t + intercept"""
        return cls((intercept, slope))

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> Optional[int]:
        return len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.constant(other)

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return UniPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self._coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise AlgebraError("negative powers are not polynomials")
        result, base = UniPoly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        return isinstance(other, UniPoly) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("UniPoly", self._coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self._coeffs]})"

    def divmod(self, den: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self._coeffs)
        dd = den.degree
        lead = den.leading()
        if self.is_zero() or self.degree < dd:
            return UniPoly(), self
        quot = [Fraction(0)] * (self.degree - dd + 1)
        for shift in range(self.degree - dd, -1, -1):
            c = rem[shift + dd] / lead
            if not c:
                continue
            quot[shift] = c
            for j, d in enumerate(den._coeffs):
                rem[shift + j] -= c * d
        return UniPoly(quot), UniPoly(rem[:dd])


def uni_coeff(f: UniPoly, i: int) -> Fraction:
    """[f]_{t^i}; zero outside 0..deg f."""
    return f.coeff(i)


def uni_divmod(num: UniPoly, den: UniPoly) -> Tuple[UniPoly, UniPoly]:
    return num.divmod(den)


def uni_exact_divide(num: UniPoly, den: UniPoly) -> UniPoly:
    quot, rem = num.divmod(den)
    if not rem.is_zero():
        raise NotDivisibleError(f"{num!r} is not divisible by {den!r} (remainder {rem!r})")
    return quot


# ---------------- sparse multivariate ----------------

def _grlex_key(exp: Exponent) -> Tuple[int, Exponent]:
    return (sum(exp), exp)


class _SparsePoly:
    """Shared storage and ring operations for MultiPoly and LaurentPoly."""

    __slots__ = ("_nvars", "_terms")
    _allow_negative = False

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        if nvars < 0:
            raise AlgebraError("variable count must be non-negative")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise VariableCountError(f"exponent {exp} does not have {nvars} slots")
            if not self._allow_negative and any(e < 0 for e in exp):
                raise AlgebraError(f"negative exponent {exp} in a polynomial")
            c = to_rational(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self._nvars = nvars
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Fraction]):
        obj = cls.__new__(cls)
        obj._nvars = nvars
        obj._terms = {e: c for e, c in terms.items() if c}
        return obj

    @classmethod
    def zero(cls, nvars: int):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar):
        return cls._raw(nvars, {(0,) * nvars: to_rational(c)})

    @classmethod
    def variable(cls, nvars: int, i: int):
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Scalar = 1):
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar], constant: Scalar = 0):
        """sum_i coeffs[i]*L_i + constant"""
        n = len(coeffs)
        terms: Dict[Exponent, Fraction] = {(0,) * n: to_rational(constant)}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = to_rational(c)
        return cls._raw(n, terms)

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    @property
    def total_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other._nvars != self._nvars:
            raise VariableCountError(f"{self._nvars} variables vs {other._nvars}")

    def _coerce(self, other):
        if isinstance(other, _SparsePoly):
            self._check(other)
            return other
        return type(self).constant(self._nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return type(self)._raw(self._nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self._nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: Scalar):
        c = to_rational(c)
        return type(self)._raw(self._nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _SparsePoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return type(self)._raw(self._nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("use LaurentPoly monomials for negative powers")
        result, base = type(self).constant(self._nvars, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(self._nvars, other)
        return type(other) is type(self) and other._nvars == self._nvars and other._terms == self._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._nvars, frozenset(self._terms.items())))

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self._nvars:
            raise VariableCountError(f"point has {len(point)} coordinates, polynomial has {self._nvars} variables")
        pt = [to_rational(p) for p in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(pt, exp):
                if e:
                    term *= x ** e
            total += term
        return total

    def permute(self, perm: Sequence[int]):
        """Substitute L_i -> L_{perm[i]}: the exponent of slot i moves to slot perm[i]."""
        if len(perm) != self._nvars:
            raise VariableCountError("permutation length must equal the variable count")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            new = [0] * self._nvars
            for i, e in enumerate(exp):
                new[perm[i]] = e
            out[tuple(new)] = c
        return type(self)._raw(self._nvars, out)

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms by descending total degree, then descending lexicographic exponent."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        names = list(names or [f"L{i + 1}" for i in range(self._nvars)])
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = format_rational(abs(c))
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_string()})"


class MultiPoly(_SparsePoly):
    """Polynomial with rational coefficients in a fixed number of variables."""

    __slots__ = ()

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise AlgebraError("the zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    def exact_divide(self, den: "MultiPoly") -> "MultiPoly":
        """Quotient by iterated leading-term elimination (graded lex); any remainder is an error."""
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exp, lead_c = den.leading_term()
        rem = dict(self._terms)
        quot: Dict[Exponent, Fraction] = {}
        while rem:
            exp = max(rem, key=_grlex_key)
            if any(a < b for a, b in zip(exp, lead_exp)):
                raise NotDivisibleError(f"leading monomial {exp} of the remainder is not divisible by {lead_exp}")
            q_exp = tuple(a - b for a, b in zip(exp, lead_exp))
            q_c = rem[exp] / lead_c
            quot[q_exp] = quot.get(q_exp, Fraction(0)) + q_c
            for d_exp, d_c in den._terms.items():
                e = tuple(a + b for a, b in zip(q_exp, d_exp))
                v = rem.get(e, Fraction(0)) - q_c * d_c
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
        return MultiPoly._raw(self._nvars, quot)

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute variable i by subs[i] (all subs share one target variable count)."""
        if len(subs) != self._nvars:
            raise VariableCountError("need one substitution per variable")
        if not subs:
            return self
        target = subs[0].nvars
        for s in subs:
            if s.nvars != target:
                raise VariableCountError("substitutions disagree on the variable count")
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            if (i, e) not in powers:
                powers[(i, e)] = subs[i] ** e
            return powers[(i, e)]

        total = MultiPoly.zero(target)
        for exp, c in self._terms.items():
            term = MultiPoly.constant(target, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def coefficient_of(self, var: int, power: int) -> "MultiPoly":
        """The part of self multiplying var^power, with that variable set to exponent 0."""
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            if exp[var] == power:
                e = list(exp)
                e[var] = 0
                out[tuple(e)] = c
        return MultiPoly._raw(self._nvars, out)

    def to_laurent(self) -> "LaurentPoly":
        return LaurentPoly._raw(self._nvars, dict(self._terms))


class LaurentPoly(_SparsePoly):
    """Laurent polynomial: exponents may be negative."""

    __slots__ = ()
    _allow_negative = True

    def conjugate(self) -> "LaurentPoly":
        """L_i -> 1/L_i"""
        return LaurentPoly._raw(self._nvars, {tuple(-e for e in exp): c for exp, c in self._terms.items()})

    def constant_term_of_product(self, other: "LaurentPoly") -> Fraction:
        """[self * other]_1 without materializing the product."""
        self._check(other)
        total = Fraction(0)
        for exp, c in self._terms.items():
            d = other._terms.get(tuple(-e for e in exp))
            if d:
                total += c * d
        return total


# ---------------- module-level operations ----------------

def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def poly_eval(f: MultiPoly, point: Sequence[Scalar]) -> Fraction:
    return f.evaluate(point)


def poly_exact_divide(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    return num.exact_divide(den)


def poly_compose(f: MultiPoly, subs: Sequence[MultiPoly]) -> MultiPoly:
    return f.compose(subs)


def poly_permute(f: MultiPoly, perm: Sequence[int]) -> MultiPoly:
    return f.permute(perm)


def laurent_constant_term(f: LaurentPoly) -> Fraction:
    return f.constant_term()


def laurent_conjugate(f: LaurentPoly) -> LaurentPoly:
    return f.conjugate()


def product(polys: Iterable[_SparsePoly], nvars: int, cls=MultiPoly):
    """Product of a sequence of polynomials (1 for an empty sequence)."""
    acc = cls.constant(nvars, 1)
    for p in polys:
        acc = acc * p
    return acc
