"""Exact arithmetic in the number field Q(i, sqrt(d)).

A ``Scalar`` is ``c0 + c1*i + c2*sqrt(d) + c3*i*sqrt(d)`` with rational
coefficients stored as :class:`fractions.Fraction` (always in lowest terms
with positive denominator).  ``d`` is a square-free integer >= 2, fixed per
computation context; the default ``d = 2`` covers every value this toolkit
ships with.  Values are immutable and safe to share between tasks.

``Poly`` is a sparse multivariate polynomial over the same field, used to
carry unknown linear-map coefficients through the curvature machinery.  The
unknowns always range over real numbers, which is what makes coefficient-wise
conjugation of a ``Poly`` meaningful.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction, str]

__all__ = [
    "Scalar",
    "Poly",
    "FieldError",
    "PolyEvalError",
    "ZERO",
    "ONE",
    "I",
    "SQRT_D",
]


class FieldError(ArithmeticError):
    """Raised on invalid field operations (division by zero, tower mixing)."""


class PolyEvalError(KeyError):
    """Raised when a polynomial is evaluated with an unbound unknown."""


def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Scalar:
    """An element of Q(i, sqrt(d)) in canonical coefficient form."""

    __slots__ = ("c0", "c1", "c2", "c3", "d")

    def __init__(
        self,
        c0: RationalLike = 0,
        c1: RationalLike = 0,
        c2: RationalLike = 0,
        c3: RationalLike = 0,
        d: int = 2,
    ) -> None:
        if not _is_squarefree(d):
            raise FieldError(f"d must be a square-free integer >= 2, got {d}")
        object.__setattr__(self, "c0", _frac(c0))
        object.__setattr__(self, "c1", _frac(c1))
        object.__setattr__(self, "c2", _frac(c2))
        object.__setattr__(self, "c3", _frac(c3))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, x: RationalLike, d: int = 2) -> Scalar:
        return cls(_frac(x), 0, 0, 0, d=d)

    @classmethod
    def i(cls, d: int = 2) -> Scalar:
        return cls(0, 1, 0, 0, d=d)

    @classmethod
    def sqrt_d(cls, d: int = 2) -> Scalar:
        return cls(0, 0, 1, 0, d=d)

    # -- structure ---------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2, self.c3)

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2 or self.c3)

    def is_real(self) -> bool:
        return not (self.c1 or self.c3)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def has_surd(self) -> bool:
        return bool(self.c2 or self.c3)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return self.c0

    def real(self) -> Scalar:
        """Real part, as an element of the real subfield Q(sqrt(d))."""
        return Scalar(self.c0, 0, self.c2, 0, d=self.d)

    def imag(self) -> Scalar:
        """Imaginary part (real scalar): z = real() + i*imag()."""
        return Scalar(self.c1, 0, self.c3, 0, d=self.d)

    def conj(self) -> Scalar:
        """Complex conjugation; fixes the real subfield Q(sqrt(d))."""
        return Scalar(self.c0, -self.c1, self.c2, -self.c3, d=self.d)

    def real_sign(self) -> int:
        """Sign (-1, 0, 1) of a real scalar c0 + c2*sqrt(d)."""
        if not self.is_real():
            raise FieldError(f"sign of non-real scalar {self}")
        a, b = self.c0, self.c2
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare magnitudes of a and b*sqrt(d) exactly
        t = a * a - self.d * b * b
        sign_t = (t > 0) - (t < 0)
        return sign_t if a > 0 else -sign_t

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other, d=self.d)
        return None

    def _merged_d(self, other: Scalar) -> int:
        if self.d == other.d:
            return self.d
        if not self.has_surd():
            return other.d
        if not other.has_surd():
            return self.d
        raise FieldError(f"cannot mix sqrt({self.d}) and sqrt({other.d}) values")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._merged_d(o)
        return Scalar(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3, d=d)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.c0, -self.c1, -self.c2, -self.c3, d=self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._merged_d(o)
        # (g + h*s)(g' + h'*s) with Gaussian parts g = c0 + c1 i, h = c2 + c3 i
        a0, a1, a2, a3 = self.coefficients
        b0, b1, b2, b3 = o.coefficients
        # Gaussian products: gg', hh', gh', hg'
        gg0 = a0 * b0 - a1 * b1
        gg1 = a0 * b1 + a1 * b0
        hh0 = a2 * b2 - a3 * b3
        hh1 = a2 * b3 + a3 * b2
        gh0 = a0 * b2 - a1 * b3
        gh1 = a0 * b3 + a1 * b2
        hg0 = a2 * b0 - a3 * b1
        hg1 = a2 * b1 + a3 * b0
        return Scalar(gg0 + d * hh0, gg1 + d * hh1, gh0 + hg0, gh1 + hg1, d=d)

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        """Exact multiplicative inverse; raises FieldError on zero."""
        if self.is_zero():
            raise FieldError("division by zero in Q(i, sqrt(d))")
        d = self.d
        # z = g + h*s; z * (g - h*s) = g^2 - d h^2 is Gaussian rational
        g0, g1, h0, h1 = self.c0, self.c1, self.c2, self.c3
        w0 = g0 * g0 - g1 * g1 - d * (h0 * h0 - h1 * h1)
        w1 = 2 * g0 * g1 - d * 2 * h0 * h1
        nw = w0 * w0 + w1 * w1
        # 1/w = conj(w)/|w|^2
        iw0, iw1 = w0 / nw, w1 / nw
        tilde = Scalar(g0, g1, -h0, -h1, d=d)
        return tilde * Scalar(iw0, -iw1, 0, 0, d=d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(other, d=self.d)
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.coefficients != other.coefficients:
            return False
        return self.d == other.d or not self.has_surd()

    def __hash__(self) -> int:
        if self.has_surd():
            return hash((self.coefficients, self.d))
        return hash(self.coefficients)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Scalar({self.c0!r}, {self.c1!r}, {self.c2!r}, {self.c3!r}, d={self.d})"

    def __str__(self) -> str:
        parts = []
        for coeff, sym in zip(self.coefficients, ("", "i", f"r{self.d}", f"i*r{self.d}")):
            if coeff == 0:
                continue
            if sym and abs(coeff) == 1:
                term = sym if coeff > 0 else f"-{sym}"
            else:
                term = f"{coeff}{'*' + sym if sym else ''}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for term in parts[1:]:
            out += f" + {term}" if not term.startswith("-") else f" - {term[1:]}"
        return out


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar.i()
SQRT_D = Scalar.sqrt_d()


# ---------------------------------------------------------------------------
# Sparse polynomials
# ---------------------------------------------------------------------------

Monomial = tuple[tuple[str, int], ...]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    powers: dict[str, int] = {}
    for name, exp in m1 + m2:
        powers[name] = powers.get(name, 0) + exp
    return tuple(sorted((n, e) for n, e in powers.items() if e))


class Poly:
    """Sparse polynomial in named unknowns with Scalar coefficients.

    Zero coefficients are never stored.  The unknowns represent real
    quantities, so :meth:`conj` conjugates coefficients only.
    """

    __slots__ = ("terms", "d")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None, d: int = 2):
        clean: dict[Monomial, Scalar] = {}
        if terms:
            for mono, coeff in terms.items():
                if not isinstance(coeff, Scalar):
                    coeff = Scalar.rational(coeff, d=d)
                if coeff.is_zero():
                    continue
                clean[tuple(sorted(mono))] = coeff
                if coeff.has_surd():
                    d = coeff.d
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Poly is immutable")

    @classmethod
    def var(cls, name: str, d: int = 2) -> Poly:
        return cls({((name, 1),): Scalar.rational(1, d=d)}, d=d)

    @classmethod
    def const(cls, value: Scalar | RationalLike, d: int = 2) -> Poly:
        if not isinstance(value, Scalar):
            value = Scalar.rational(value, d=d)
        return cls({(): value}, d=value.d)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_part(self) -> Scalar:
        return self.terms.get((), Scalar.rational(0, d=self.d))

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    def as_affine(self) -> "tuple[Scalar, dict[str, Scalar]] | None":
        """Return (constant, {unknown: coefficient}) if degree <= 1, else None."""
        const = Scalar.rational(0, d=self.d)
        lin: dict[str, Scalar] = {}
        for mono, coeff in self.terms.items():
            if mono == ():
                const = coeff
            elif len(mono) == 1 and mono[0][1] == 1:
                lin[mono[0][0]] = coeff
            else:
                return None
        return const, lin

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, Scalar):
            return Poly.const(other, d=self.d)
        if isinstance(other, (int, Fraction)):
            return Poly.const(Scalar.rational(other, d=self.d), d=self.d)
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in o.terms.items():
            cur = terms.get(mono)
            new = coeff if cur is None else cur + coeff
            if new.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = new
        return Poly(terms, d=self.d)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()}, d=self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = _mono_mul(m1, m2)
                coeff = c1 * c2
                cur = prod.get(mono)
                new = coeff if cur is None else cur + coeff
                if new.is_zero():
                    prod.pop(mono, None)
                else:
                    prod[mono] = new
        return Poly(prod, d=self.d)

    __rmul__ = __mul__

    def conj(self) -> Poly:
        """Coefficient-wise conjugation (valid: unknowns range over reals)."""
        return Poly({m: c.conj() for m, c in self.terms.items()}, d=self.d)

    def real(self) -> Poly:
        return Poly({m: c.real() for m, c in self.terms.items()}, d=self.d)

    def imag(self) -> Poly:
        return Poly({m: c.imag() for m, c in self.terms.items()}, d=self.d)

    # -- evaluation --------------------------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Scalar:
        """Full evaluation; every unknown occurring in the poly must be bound."""
        missing = self.variables() - set(assignment)
        if missing:
            raise PolyEvalError(f"unbound unknown {sorted(missing)[0]!r}")
        total = Scalar.rational(0, d=self.d)
        for mono, coeff in self.terms.items():
            val = coeff
            for name, exp in mono:
                for _ in range(exp):
                    val = val * assignment[name]
            total = total + val
        return total

    def substitute(self, assignment: Mapping[str, Scalar]) -> Poly:
        """Partial substitution; unknowns absent from the mapping survive."""
        out = Poly({}, d=self.d)
        for mono, coeff in self.terms.items():
            factor = Poly.const(coeff, d=self.d)
            for name, exp in mono:
                if name in assignment:
                    val = assignment[name]
                    for _ in range(exp):
                        factor = factor * val
                else:
                    for _ in range(exp):
                        factor = factor * Poly.var(name, d=self.d)
            out = out + factor
        return out

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Scalar)):
            o = self._coerce(other)
            return o is not None and self.terms == o.terms
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly(0)"
        bits = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            mono_s = "*".join(f"{n}^{e}" if e > 1 else n for n, e in mono)
            bits.append(f"({coeff})" + (f"*{mono_s}" if mono_s else ""))
        return "Poly[" + " + ".join(bits) + "]"


Entry = Union[Scalar, Poly]


def entry_conj(x: Entry) -> Entry:
    """Conjugation usable on both entry kinds (Poly: real-unknown contract)."""
    return x.conj()


def entry_is_zero(x: Entry) -> bool:
    return x.is_zero()


def as_entry(x, d: int = 2) -> Entry:
    if isinstance(x, (Scalar, Poly)):
        return x
    return Scalar.rational(x, d=d)
