"""Exact scalar arithmetic: integers mod 5 and the cyclotomic field Q(zeta_5).

Every scalar in the system is either an exponent living in Z/5 or a value in
Q(zeta_5), with zeta_5 a fixed primitive fifth root of unity.  CycNum stores
coordinates on the power basis {1, z, z^2, z^3} with Fraction entries; powers
z^4 and higher are rewritten through the minimal polynomial
1 + z + z^2 + z^3 + z^4 = 0, so equality of values is literally equality of
coordinate tuples.

Most scalars downstream are pure roots of unity, so there is a compact
exponent-only fast path: carry a Mod5 exponent around and realize it with
root_power only when a genuine field element is needed.  The two views must
agree wherever both apply (root_power is a homomorphism from Z/5).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "Mod5",
    "CycNum",
    "root_power",
    "cyc_mul",
    "cyc_inv",
    "ZERO",
    "ONE",
]


class Mod5(int):
    """Residue in Z/5, kept reduced under ring operations.

    Subclasses int, so instances index arrays and hash like plain integers;
    arithmetic returns reduced Mod5 values and nonzero elements are
    invertible.
    """

    __slots__ = ()

    def __new__(cls, value: int) -> "Mod5":
        return super().__new__(cls, int(value) % 5)

    def __add__(self, other):
        return Mod5(int(self) + int(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Mod5(int(self) - int(other))

    def __rsub__(self, other):
        return Mod5(int(other) - int(self))

    def __mul__(self, other):
        return Mod5(int(self) * int(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Mod5(-int(self))

    def __pow__(self, exponent, modulo=None):
        e = int(exponent)
        if e < 0:
            return self.inv() ** (-e)
        return Mod5(pow(int(self), e, 5))

    def inv(self) -> "Mod5":
        if int(self) == 0:
            raise ZeroDivisionError("0 is not invertible mod 5")
        # a^4 = 1 for a != 0, so a^3 is the inverse
        return Mod5(pow(int(self), 3, 5))

    def __truediv__(self, other):
        return self * Mod5(other).inv()

    def __rtruediv__(self, other):
        return Mod5(other) * self.inv()

    def __repr__(self):
        return "Mod5(%d)" % int(self)


CoeffLike = Union[int, str, Fraction]


def _as_fraction(c: CoeffLike) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError("coordinate must be an int, Fraction or fraction string, got %r" % (c,))


class CycNum:
    """Element of Q(zeta_5) on the basis {1, z, z^2, z^3}.

    Immutable by convention; do not mutate .coeffs after construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[CoeffLike] = (0, 0, 0, 0)):
        cs = tuple(_as_fraction(c) for c in coeffs)
        if len(cs) != 4:
            raise ValueError("CycNum takes exactly 4 coordinates, got %d" % len(cs))
        self.coeffs = cs

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> "CycNum":
        return cls((value, 0, 0, 0))

    @classmethod
    def from_json(cls, data) -> "CycNum":
        return cls(data)

    def to_json(self):
        """Four exact fraction strings, e.g. ["1/2", "0", "-1", "0"]."""
        return [str(c) for c in self.coeffs]

    # -- ring structure ------------------------------------------------

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum((other, 0, 0, 0))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        return CycNum((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        return CycNum((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        a = self.coeffs
        return CycNum((-a[0], -a[1], -a[2], -a[3]))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        # schoolbook product, degrees 0..6, then reduce through z^5 = 1
        # and z^4 = -(1 + z + z^2 + z^3)
        acc = [Fraction(0)] * 7
        for i in range(4):
            ai = a[i]
            if not ai:
                continue
            for j in range(4):
                bj = b[j]
                if bj:
                    acc[i + j] += ai * bj
        c0 = acc[0] + acc[5]
        c1 = acc[1] + acc[6]
        c4 = acc[4]
        return CycNum((c0 - c4, c1 - c4, acc[2] - c4, acc[3] - c4))

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNum":
        """The field automorphism determined by z -> z^k, k in 1..4."""
        k = int(k) % 5
        if k == 0:
            raise ValueError("z -> z^0 is not a field automorphism")
        acc = [Fraction(0)] * 5
        for i, c in enumerate(self.coeffs):
            acc[(i * k) % 5] += c
        c4 = acc[4]
        return CycNum((acc[0] - c4, acc[1] - c4, acc[2] - c4, acc[3] - c4))

    def inv(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("zero has no inverse in Q(zeta_5)")
        # product of the three Galois conjugates; x times it is the rational
        # field norm, so dividing by the norm inverts x
        conj = self.galois(2) * self.galois(3) * self.galois(4)
        norm = self * conj
        assert not any(norm.coeffs[1:]), "norm must be rational"
        r = norm.coeffs[0]
        return CycNum((conj.coeffs[0] / r, conj.coeffs[1] / r,
                       conj.coeffs[2] / r, conj.coeffs[3] / r))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int) -> "CycNum":
        e = int(exponent)
        if e < 0:
            return self.inv() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparisons and hashing ----------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        # rational values hash like their Fraction so CycNum(1) == 1 stays
        # consistent with hashing
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        return "CycNum(%r)" % (self.to_json(),)

    def __complex__(self):
        # numeric evaluation, debugging aid only
        z = cmath.exp(2j * cmath.pi / 5)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))


ZERO = CycNum((0, 0, 0, 0))
ONE = CycNum((1, 0, 0, 0))

_ROOTS = (
    ONE,
    CycNum((0, 1, 0, 0)),
    CycNum((0, 0, 1, 0)),
    CycNum((0, 0, 0, 1)),
    CycNum((-1, -1, -1, -1)),  # z^4 through the minimal polynomial
)


def root_power(k) -> CycNum:
    """zeta_5^k in canonical form; root_power(0) is the identity."""
    return _ROOTS[int(k) % 5]


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    """Exact field product in canonical form."""
    return x * y


def cyc_inv(x: CycNum) -> CycNum:
    """Exact multiplicative inverse; raises ZeroDivisionError on 0."""
    return x.inv()
