"""Exact multivariate Laurent polynomials with integer coefficients.

A :class:`LaurentPoly` is stored as ``x^shift * P`` where ``P`` is an
ordinary integer polynomial (a FLINT ``fmpz_mpoly`` in lex order) that is
not divisible by any variable.  That normal form is unique, so equality is
structural.  Values are immutable; every operation returns a new polynomial.

Division is only ever exact: :func:`lp_exact_div` raises
:class:`InexactDivisionError` instead of producing a rational function.
"""

from __future__ import annotations

import json
from functools import lru_cache
from operator import add, sub
from typing import Iterable, Mapping

import flint
from flint.utils.flint_exceptions import DomainError


class DimensionError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class InexactDivisionError(ArithmeticError):
    """A division left a nonzero remainder."""

    def __init__(self, message: str, remainder: "LaurentPoly | None" = None):
        super().__init__(message)
        self.remainder = remainder


@lru_cache(maxsize=None)
def _ctx(nvars: int):
    return flint.fmpz_mpoly_ctx.get(("x", nvars), "lex")


def _normalize(nvars: int, shift: tuple, p):
    """Pull every monomial factor of ``p`` into ``shift``."""
    if p.is_zero():
        return (0,) * nvars, p
    if nvars == 0:
        return shift, p
    m = tuple(int(e) for e in p.term_content().monoms()[0])
    if any(m):
        p = p / _ctx(nvars).term(exp_vec=m)
        shift = tuple(map(add, shift, m))
    return shift, p


class LaurentPoly:
    __slots__ = ("nvars", "_shift", "_p", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int] | None = None):
        clean = {}
        if terms:
            for exp, coef in terms.items():
                coef = int(coef)
                if coef:
                    exp = tuple(int(e) for e in exp)
                    if len(exp) != nvars:
                        raise DimensionError(
                            f"exponent {exp} has length {len(exp)}, expected {nvars}")
                    clean[exp] = coef
        ctx = _ctx(nvars)
        if clean:
            low = tuple(min(col) for col in zip(*clean)) if nvars else ()
            p = ctx.from_dict({tuple(map(sub, e, low)): c for e, c in clean.items()})
            shift, p = _normalize(nvars, low, p)
        else:
            shift, p = (0,) * nvars, ctx.from_dict({})
        self.nvars = nvars
        self._shift = shift
        self._p = p
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, shift: tuple, p) -> "LaurentPoly":
        # trusted constructor: (shift, p) already in normal form
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._shift = shift
        obj._p = p
        obj._hash = None
        return obj

    @classmethod
    def _build(cls, nvars: int, shift: tuple, p) -> "LaurentPoly":
        shift, p = _normalize(nvars, shift, p)
        return cls._raw(nvars, shift, p)

    def __reduce__(self):
        state = {tuple(int(e) for e in m): int(c)
                 for m, c in zip(self._p.monoms(), self._p.coeffs())}
        return (_restore, (self.nvars, self._shift, state))

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, (0,) * nvars, _ctx(nvars).from_dict({}))

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls._raw(nvars, (0,) * nvars, _ctx(nvars).constant(int(c)))

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = power
        return cls._raw(nvars, tuple(exp), _ctx(nvars).constant(1))

    @classmethod
    def monomial(cls, exp: Iterable[int], coef: int = 1) -> "LaurentPoly":
        exp = tuple(exp)
        n = len(exp)
        if not coef:
            return cls.zero(n)
        return cls._raw(n, exp, _ctx(n).constant(int(coef)))

    @classmethod
    def gens(cls, nvars: int) -> list["LaurentPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # container protocol

    @property
    def terms(self) -> dict:
        return dict(self.items())

    def items(self):
        """Terms in canonical (lexicographic) exponent order."""
        p, s = self._p, self._shift
        # lex context lists monomials in descending order
        pairs = zip(p.monoms(), p.coeffs())
        return [(tuple(int(e) + d for e, d in zip(m, s)), int(c))
                for m, c in reversed(list(pairs))]

    def __len__(self) -> int:
        return len(self._p)

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_monomial(self) -> bool:
        return len(self._p) == 1

    def coefficients(self) -> list[int]:
        return [c for _, c in self.items()]

    def has_positive_coefficients(self) -> bool:
        return not self._p.is_zero() and all(c > 0 for c in self._p.coeffs())

    def min_exponents(self) -> tuple:
        # the normal form has a term free of each variable
        return self._shift

    # equality / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self._shift == other._shift
                and self._p == other._p)

    def __hash__(self) -> int:
        if self._hash is None:
            p = self._p
            lead = int(p.leading_coefficient()) if not p.is_zero() else 0
            self._hash = hash((self.nvars, self._shift, len(p), lead,
                               tuple(int(d) for d in p.degrees()) if self.nvars else ()))
        return self._hash

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def _lifted(self, low: tuple):
        # P * x^(shift - low) for a componentwise lower bound ``low``
        d = tuple(map(sub, self._shift, low))
        if any(d):
            return self._p * _ctx(self.nvars).term(exp_vec=d)
        return self._p

    def __add__(self, other):
        other = self._coerce(other)
        if other._p.is_zero():
            return self
        if self._p.is_zero():
            return other
        if self._shift == other._shift:
            return LaurentPoly._build(self.nvars, self._shift, self._p + other._p)
        low = tuple(map(min, self._shift, other._shift))
        return LaurentPoly._build(self.nvars, low, self._lifted(low) + other._lifted(low))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, self._shift, -self._p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self._p.is_zero() or other._p.is_zero():
            return LaurentPoly.zero(self.nvars)
        # a product of polynomials coprime to every variable stays coprime
        return LaurentPoly._raw(self.nvars, tuple(map(add, self._shift, other._shift)),
                                self._p * other._p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise InexactDivisionError("negative power of a non-monomial")
            c = int(self._p.leading_coefficient())
            if c not in (1, -1):
                raise InexactDivisionError("negative power of a non-unit monomial")
            return LaurentPoly.monomial([e * k for e in self._shift], c ** (-k))
        return LaurentPoly._raw(self.nvars, tuple(e * k for e in self._shift), self._p ** k)

    def shift(self, exp: Iterable[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exp``."""
        if self._p.is_zero():
            return self
        return LaurentPoly._raw(self.nvars, tuple(map(add, self._shift, exp)), self._p)

    def exact_div(self, den: "LaurentPoly") -> "LaurentPoly":
        return lp_exact_div(self, den)

    def eval_units(self) -> int:
        if self._p.is_zero():
            return 0
        return int(self._p(*([1] * self.nvars))) if self.nvars else int(self._p.leading_coefficient())

    def evaluate(self, point) -> object:
        """Evaluate at ``point`` (a sequence of numbers, e.g. Fractions)."""
        total = 0
        for exp, c in self.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    term = term * v ** e
            total += term
        return total

    # display

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self})"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, names: list[str] | None = None) -> str:
        if self._p.is_zero():
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp, c in reversed(self.items()):
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # serialization

    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.items()],
        }

    def serialize(self) -> str:
        return lp_serialize(self)


def _restore(nvars: int, shift: tuple, state: dict) -> LaurentPoly:
    return LaurentPoly._raw(nvars, shift, _ctx(nvars).from_dict(state))


def _check_dims(a: LaurentPoly, b: LaurentPoly) -> None:
    if a.nvars != b.nvars:
        raise DimensionError(f"nvars mismatch: {a.nvars} vs {b.nvars}")


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_dims(a, b)
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _check_dims(a, b)
    return a * b


def lp_exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num``.

    In normal form both polynomial parts are coprime to every variable, so a
    Laurent quotient exists exactly when the polynomial parts divide.  That
    division is FLINT's lex leading-term elimination; a nonzero remainder is
    reported back as an :class:`InexactDivisionError`.
    """
    _check_dims(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = num.nvars
    if num.is_zero():
        return LaurentPoly.zero(n)
    shift = tuple(map(sub, num._shift, den._shift))
    a, b = num._p, den._p
    if len(b) == 1:
        c = int(b.leading_coefficient())
        if c in (1, -1):
            return LaurentPoly._raw(n, shift, a if c == 1 else -a)
    try:
        quotient = a / b
    except DomainError:
        _, r = divmod(a, b)
        raise InexactDivisionError(
            "polynomial division is not exact",
            remainder=LaurentPoly._build(n, num._shift, r)) from None
    return LaurentPoly._raw(n, shift, quotient)


def lp_eval_units(a: LaurentPoly) -> int:
    return a.eval_units()


def lp_serialize(a: LaurentPoly) -> str:
    return json.dumps(a.to_json_obj(), separators=(",", ":"))


def lp_from_json_obj(obj) -> LaurentPoly:
    try:
        nvars = obj["nvars"]
        terms = obj["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial object: {exc}") from None
    if not isinstance(nvars, int) or nvars < 0 or not isinstance(terms, list):
        raise ValueError("malformed polynomial object")
    out = {}
    for t in terms:
        try:
            exp = tuple(t["exp"])
            coef = int(t["coef"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed term {t!r}") from exc
        if len(exp) != nvars or not all(isinstance(e, int) for e in exp):
            raise ValueError(f"bad exponent vector {exp!r}")
        if exp in out:
            raise ValueError(f"duplicate exponent {exp!r}")
        out[exp] = coef
    return LaurentPoly(nvars, out)


def lp_parse(text: str) -> LaurentPoly:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    return lp_from_json_obj(obj)
