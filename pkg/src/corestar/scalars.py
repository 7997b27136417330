"""Exact scalars over the three supported involutive fields.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
and prime-field residues get small immutable classes below.  Every scalar
type implements ``conjugate()``; that method *is* the field involution
(identity on Q and GF(p), complex conjugation on Q(i)).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Union


class CorestarError(ValueError):
    """Base class for every error raised by this package."""


class ScalarParseError(CorestarError):
    pass


class FieldMismatchError(CorestarError):
    pass


class GaussianRational:
    """An element ``(a + b*i) / d`` of Q(i).

    Stored as integers with ``d > 0`` and ``gcd(a, b, d) == 1``, which makes
    the representation canonical.  ``re`` and ``im`` expose the parts as
    Fractions.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int):
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        self.a, self.b, self.d = a, b, d

    @classmethod
    def _make(cls, a: int, b: int, d: int) -> GaussianRational:
        obj = object.__new__(cls)
        obj._set(a, b, d)
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    @staticmethod
    def _triple(other):
        if isinstance(other, GaussianRational):
            return other.a, other.b, other.d
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Fraction):
            return other.numerator, 0, other.denominator
        return None

    def __add__(self, other):
        t = self._triple(other)
        if t is None:
            return NotImplemented
        a, b, d = t
        if d == self.d:
            return self._make(self.a + a, self.b + b, d)
        return self._make(self.a * d + a * self.d, self.b * d + b * self.d, self.d * d)

    __radd__ = __add__

    def __sub__(self, other):
        t = self._triple(other)
        if t is None:
            return NotImplemented
        a, b, d = t
        if d == self.d:
            return self._make(self.a - a, self.b - b, d)
        return self._make(self.a * d - a * self.d, self.b * d - b * self.d, self.d * d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        t = self._triple(other)
        if t is None:
            return NotImplemented
        a, b, d = t
        return self._make(self.a * a - self.b * b, self.a * b + self.b * a, self.d * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = self._triple(other)
        if t is None:
            return NotImplemented
        a, b, d = t
        norm = a * a + b * b
        if not norm:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (x/dx) / (y/d) = d * x * conj(y) / (dx * |y|^2)
        return self._make(
            d * (self.a * a + self.b * b), d * (self.b * a - self.a * b), self.d * norm
        )

    def __rtruediv__(self, other):
        t = self._triple(other)
        if t is None:
            return NotImplemented
        return self._make(*t) / self

    def __neg__(self):
        return self._make(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        t = self._triple(other)
        if t is None:
            return NotImplemented
        if isinstance(other, GaussianRational):
            return self.a == other.a and self.b == other.b and self.d == other.d
        return not self.b and Fraction(self.a, self.d) == Fraction(t[0], t[2])

    def __hash__(self):
        if not self.b:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def conjugate(self) -> GaussianRational:
        return self._make(self.a, -self.b, self.d)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"


class Residue:
    """An element of GF(p), stored as its canonical representative in [0, p)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _other(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"GF({self.modulus}) and GF({other.modulus}) scalars do not mix"
                )
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        if v % self.modulus == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.modulus})")
        return Residue(self.value * pow(v, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Residue(v, self.modulus) / self

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def conjugate(self) -> Residue:
        return self

    def __repr__(self):
        return f"Residue({self.value}, {self.modulus})"


Scalar = Union[Fraction, GaussianRational, Residue]


class FieldKind(enum.Enum):
    RATIONALS = "Q"
    GAUSSIAN_RATIONALS = "Qi"
    PRIME_FIELD = "GF"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


_RATIONAL = r"\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^[+-]?{_RATIONAL}$")
_GAUSS_RE = re.compile(rf"^(?P<re>[+-]?{_RATIONAL})(?:(?P<im>[+-](?:{_RATIONAL})?)i)?$")
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?(?:{_RATIONAL})?)i$")
_RESIDUE_RE = re.compile(r"^[+-]?\d+$")


def _normalize(text: str) -> str:
    return text.strip().replace("−", "-")


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ScalarParseError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ScalarParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def _imag_coefficient(text: str) -> Fraction:
    # bare sign or empty means coefficient 1
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return _parse_rational(text)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _format_imag(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return format_rational(im) + "i"


@dataclass(frozen=True)
class FieldDescriptor:
    """Which field matrix entries live in, together with its involution.

    Use the module-level :data:`Q`, :data:`QI` and :func:`GF` rather than
    building descriptors by hand.
    """

    kind: FieldKind
    modulus: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME_FIELD:
            if not isinstance(self.modulus, int) or not _is_prime(self.modulus):
                raise CorestarError(f"GF modulus must be prime, got {self.modulus!r}")
        elif self.modulus is not None:
            raise CorestarError(f"{self.kind.value} takes no modulus")

    def __str__(self):
        if self.kind is FieldKind.PRIME_FIELD:
            return f"GF({self.modulus})"
        return self.kind.value

    @property
    def zero(self) -> Scalar:
        return self.from_int(0)

    @property
    def one(self) -> Scalar:
        return self.from_int(1)

    def from_int(self, k: int) -> Scalar:
        if self.kind is FieldKind.RATIONALS:
            return Fraction(k)
        if self.kind is FieldKind.GAUSSIAN_RATIONALS:
            return GaussianRational(k)
        return Residue(k, self.modulus)

    def coerce(self, value) -> Scalar:
        """Convert ints, Fractions, scalar text or native scalars into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.kind is FieldKind.RATIONALS:
            if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
                return Fraction(value)
        elif self.kind is FieldKind.GAUSSIAN_RATIONALS:
            if isinstance(value, GaussianRational):
                return value
            if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
                return GaussianRational(value)
        else:
            if isinstance(value, Residue):
                if value.modulus != self.modulus:
                    raise FieldMismatchError(f"{value!r} is not in {self}")
                return value
            if isinstance(value, int) and not isinstance(value, bool):
                return Residue(value, self.modulus)
        raise FieldMismatchError(f"cannot coerce {value!r} into {self}")

    def contains(self, x) -> bool:
        if self.kind is FieldKind.RATIONALS:
            return type(x) is Fraction
        if self.kind is FieldKind.GAUSSIAN_RATIONALS:
            return type(x) is GaussianRational
        return type(x) is Residue and x.modulus == self.modulus

    def parse(self, text: str) -> Scalar:
        """Parse scalar text in this field's grammar.

        Q accepts ``a`` or ``a/b``; Q(i) accepts ``re``, ``imi`` and
        ``re+imi`` / ``re-imi`` (a bare ``i`` has coefficient 1); GF(p)
        accepts a decimal integer, reduced mod p.
        """
        s = _normalize(text)
        if self.kind is FieldKind.RATIONALS:
            return _parse_rational(s)
        if self.kind is FieldKind.GAUSSIAN_RATIONALS:
            m = _GAUSS_RE.match(s)
            if m:
                im = m.group("im")
                return GaussianRational(
                    _parse_rational(m.group("re")),
                    _imag_coefficient(im) if im is not None else 0,
                )
            m = _IMAG_RE.match(s)
            if m:
                return GaussianRational(0, _imag_coefficient(m.group("im")))
            raise ScalarParseError(f"malformed Gaussian rational {text!r}")
        if not _RESIDUE_RE.match(s):
            raise ScalarParseError(f"malformed GF({self.modulus}) residue {text!r}")
        return Residue(int(s), self.modulus)

    def format(self, x: Scalar) -> str:
        """Canonical text for ``x``; ``parse(format(x)) == x``."""
        if self.kind is FieldKind.RATIONALS:
            return format_rational(x)
        if self.kind is FieldKind.GAUSSIAN_RATIONALS:
            if not x.im:
                return format_rational(x.re)
            if not x.re:
                return _format_imag(x.im)
            imag = _format_imag(x.im)
            sep = "" if imag.startswith("-") else "+"
            return format_rational(x.re) + sep + imag
        return str(x.value)

    def elements(self) -> Iterator[Residue]:
        """All field elements in increasing residue order (GF(p) only)."""
        if self.kind is not FieldKind.PRIME_FIELD:
            raise CorestarError(f"{self} is infinite")
        return (Residue(v, self.modulus) for v in range(self.modulus))

    @property
    def size(self) -> int | None:
        return self.modulus

    def to_json(self) -> dict:
        d = {"field": self.kind.value}
        if self.modulus is not None:
            d["modulus"] = self.modulus
        return d

    @classmethod
    def from_json(cls, doc: dict) -> FieldDescriptor:
        tag = doc.get("field")
        try:
            kind = FieldKind(tag)
        except ValueError:
            raise CorestarError(f"unknown field tag {tag!r}") from None
        if kind is FieldKind.PRIME_FIELD:
            modulus = doc.get("modulus")
            if not isinstance(modulus, int) or isinstance(modulus, bool):
                raise CorestarError("GF field requires an integer modulus")
            return cls(kind, modulus)
        if "modulus" in doc:
            raise CorestarError(f"field {tag} takes no modulus")
        return cls(kind)


Q = FieldDescriptor(FieldKind.RATIONALS)
QI = FieldDescriptor(FieldKind.GAUSSIAN_RATIONALS)


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor(FieldKind.PRIME_FIELD, p)


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    return field.parse(text)
