"""Finite-precision p-adic names, the ring Z[1/p] and the Pruefer group Z(p^inf).

A name of a p-adic integer is a digit sequence ``(a_1, ..., a_N)`` with value
``sum a_n p^(n-1)``.  Digits may be arbitrary integers; :class:`CanonicalPadic`
is the carry-normalized form with every digit in ``[0, p)``.

Elements of Z[1/p] are stored as ``k/p^n`` with ``n == 0`` or ``p`` not
dividing ``k``.  Pruefer elements ``i/p^n + Z`` keep the least non-negative
representative, which is what the overflow flag of :func:`prufer_add` refers to.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "PrecisionError",
    "check_prime",
    "DigitName",
    "CanonicalPadic",
    "canonicalize",
    "block_value",
    "PInvRational",
    "PruferElement",
    "zinvp_add",
    "zinvp_neg",
    "prufer_add",
    "zinvp_window",
    "prufer_window",
]


class PrecisionError(ValueError):
    """A name or digit prefix is too short for the requested evaluation."""


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime, otherwise raise ``ValueError``."""
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise ValueError(f"not a prime: {p!r}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"not a prime: {p}")
        d += 1
    return p


def _valuation_split(k: int, p: int) -> tuple[int, int]:
    """Return ``(k', v)`` with ``k = k' p^v`` and ``p`` not dividing ``k'`` (k != 0)."""
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return k, v


# ---------------------------------------------------------------------------
# names


@dataclass(frozen=True)
class DigitName:
    """Truncated name ``(a_1, ..., a_N)`` of the p-adic integer ``sum a_n p^(n-1)``."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "digits", tuple(int(a) for a in self.digits))

    @property
    def precision(self) -> int:
        return len(self.digits)

    def digit(self, n: int) -> int:
        """The 1-based digit ``a_n``."""
        if not 1 <= n <= len(self.digits):
            raise PrecisionError(f"digit a_{n} not available at precision {self.precision}")
        return self.digits[n - 1]

    def truncation(self) -> int:
        """``sum_{n<=N} a_n p^(n-1)`` as an ordinary integer."""
        return sum(a * self.p**i for i, a in enumerate(self.digits))

    def padded(self, precision: int) -> "DigitName":
        """Extend with zero digits up to ``precision`` (never truncates)."""
        extra = max(0, precision - len(self.digits))
        return type(self)(self.p, self.digits + (0,) * extra)

    def __add__(self, other: "DigitName") -> "DigitName":
        # digit-wise sum: a name of the sum of the two p-adic integers
        if self.p != other.p:
            raise ValueError("names over different primes")
        n = max(self.precision, other.precision)
        a, b = self.padded(n).digits, other.padded(n).digits
        return DigitName(self.p, tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "DigitName":
        return DigitName(self.p, tuple(-a for a in self.digits))

    def __str__(self):
        return ",".join(str(a) for a in self.digits)

    @classmethod
    def parse(cls, p: int, text: str) -> "DigitName":
        text = text.strip()
        if not text:
            return cls(p, ())
        try:
            return cls(p, tuple(int(t) for t in text.split(",")))
        except ValueError:
            raise ValueError(f"bad digit list: {text!r}") from None


@dataclass(frozen=True)
class CanonicalPadic(DigitName):
    """Name whose digits all lie in ``[0, p)``.

    ``overflow`` is the carry left over after the last digit when this value came
    out of :func:`canonicalize`; it only affects digits beyond the precision.
    """

    overflow: int = field(default=0, compare=False)

    def __post_init__(self):
        super().__post_init__()
        for a in self.digits:
            if not 0 <= a < self.p:
                raise ValueError(f"digit {a} outside [0, {self.p})")

    def padded(self, precision: int) -> "CanonicalPadic":
        extra = max(0, precision - len(self.digits))
        return CanonicalPadic(self.p, self.digits + (0,) * extra)


def canonicalize(x: DigitName) -> CanonicalPadic:
    """Carry-normalize a name into digits in ``[0, p)``.

    The result agrees with ``x`` modulo ``p^N`` at the full precision ``N``
    (reported as ``result.precision``); whatever carry or borrow runs past the
    last digit is recorded in ``result.overflow``.  Reads each input digit once,
    low to high.
    """
    if isinstance(x, CanonicalPadic):
        return x
    p = x.p
    out = []
    carry = 0
    for a in x.digits:
        carry, b = divmod(a + carry, p)
        out.append(b)
    return CanonicalPadic(p, tuple(out), overflow=carry)


def block_value(x: DigitName, k: int, n: int) -> int:
    """The block ``p^(-k) sum_{s=k+1..n} a_s p^(s-1)``: digits ``a_{k+1}..a_n`` read in base p."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n > x.precision:
        raise PrecisionError(f"block up to {n} needs precision {n}, have {x.precision}")
    p = x.p
    total = 0
    for s in range(n, k, -1):
        total = total * p + x.digits[s - 1]
    return total


# ---------------------------------------------------------------------------
# Z[1/p]

_RAT_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*(?:\^\s*(\d+))?)?\s*$")


@dataclass(frozen=True, order=False)
class PInvRational:
    """The element ``k / p^n`` of Z[1/p], kept in normal form."""

    p: int
    k: int
    n: int = 0

    def __post_init__(self):
        p, k, n = check_prime(self.p), int(self.k), int(self.n)
        if n < 0:
            k, n = k * p ** (-n), 0
        if k == 0:
            n = 0
        else:
            while n > 0 and k % p == 0:
                k //= p
                n -= 1
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_fraction(cls, p: int, q: Fraction | int) -> "PInvRational":
        q = Fraction(q)
        den, v = _valuation_split(q.denominator, p) if q.denominator != 1 else (1, 0)
        if den != 1:
            raise ValueError(f"{q} is not in Z[1/{p}]")
        return cls(p, q.numerator, v)

    def to_fraction(self) -> Fraction:
        return Fraction(self.k, self.p**self.n)

    def __add__(self, other: "PInvRational") -> "PInvRational":
        return zinvp_add(self, other)

    def __neg__(self) -> "PInvRational":
        return zinvp_neg(self)

    def __sub__(self, other: "PInvRational") -> "PInvRational":
        return zinvp_add(self, zinvp_neg(other))

    def scale(self, c: int) -> "PInvRational":
        return PInvRational(self.p, c * self.k, self.n)

    def is_integer(self) -> bool:
        return self.n == 0

    def floor(self) -> int:
        return self.k // self.p**self.n

    def frac_digits(self) -> tuple[int, ...]:
        """Digits ``r_1..r_n`` of ``self - floor(self)`` in base p (length = exponent)."""
        p, n = self.p, self.n
        rest = self.k % p**n
        out = [0] * n
        for i in range(n - 1, -1, -1):
            rest, out[i] = divmod(rest, p)
        return tuple(out)

    @classmethod
    def from_digits(cls, p: int, m: int, digits: Sequence[int]) -> "PInvRational":
        """The value ``m.r_1 r_2 ... r_n`` (base p)."""
        num = m
        for r in digits:
            num = num * p + r
        return cls(p, num, len(digits))

    def sort_key(self):
        return (self.n, self.k)

    def __lt__(self, other):
        return self.to_fraction() < other.to_fraction()

    def __le__(self, other):
        return self.to_fraction() <= other.to_fraction()

    def __str__(self):
        if self.n == 0:
            return str(self.k)
        return f"{self.k}/{self.p}^{self.n}"

    @classmethod
    def parse(cls, p: int, text: str) -> "PInvRational":
        m = _RAT_RE.match(text)
        if not m:
            raise ValueError(f"bad Z[1/p] element: {text!r}")
        num, base, exp = m.groups()
        if base is None:
            return cls(p, int(num), 0)
        base = int(base)
        if exp is None:
            # plain "k/d" with d a power of p
            return cls.from_fraction(p, Fraction(int(num), base))
        if base != p:
            raise ValueError(f"denominator base {base} does not match p={p}")
        return cls(p, int(num), int(exp))


def zinvp_add(x: PInvRational, y: PInvRational) -> PInvRational:
    if x.p != y.p:
        raise ValueError("elements over different primes")
    p = x.p
    if x.n >= y.n:
        return PInvRational(p, x.k + y.k * p ** (x.n - y.n), x.n)
    return PInvRational(p, y.k + x.k * p ** (y.n - x.n), y.n)


def zinvp_neg(x: PInvRational) -> PInvRational:
    return PInvRational(x.p, -x.k, x.n)


# ---------------------------------------------------------------------------
# Z(p^inf) = Z[1/p] / Z


@dataclass(frozen=True)
class PruferElement:
    """``i/p^n + Z`` with ``0 <= i < p^n`` and ``p`` not dividing ``i`` (zero is ``(0, 0)``)."""

    p: int
    i: int
    n: int = 0

    def __post_init__(self):
        p, i, n = check_prime(self.p), int(self.i), int(self.n)
        if n < 0:
            i, n = 0, 0
        i %= p**n
        if i == 0:
            n = 0
        else:
            while i % p == 0:
                i //= p
                n -= 1
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "n", n)

    @classmethod
    def project(cls, x: PInvRational) -> "PruferElement":
        """The coset ``x + Z``."""
        return cls(x.p, x.k, x.n)

    def lift(self) -> PInvRational:
        """The representative in ``[0, 1)``."""
        return PInvRational(self.p, self.i, self.n)

    def __add__(self, other: "PruferElement") -> "PruferElement":
        return prufer_add(self, other)[0]

    def __neg__(self) -> "PruferElement":
        return PruferElement(self.p, -self.i, self.n)

    def __sub__(self, other):
        return self + (-other)

    def sort_key(self):
        return (self.n, self.i)

    def __str__(self):
        if self.n == 0:
            return "0 mod 1"
        return f"{self.i}/{self.p}^{self.n} mod 1"

    @classmethod
    def parse(cls, p: int, text: str) -> "PruferElement":
        body = text.strip()
        if body.endswith("mod 1"):
            body = body[: -len("mod 1")]
        return cls.project(PInvRational.parse(p, body))


def prufer_add(x: PruferElement, y: PruferElement) -> tuple[PruferElement, int]:
    """Sum in Z(p^inf) together with the overflow bit ``d``.

    ``d = 1`` exactly when the representatives in ``[0, 1)`` add up to at least 1.
    """
    if x.p != y.p:
        raise ValueError("elements over different primes")
    p = x.p
    n = max(x.n, y.n)
    total = x.i * p ** (n - x.n) + y.i * p ** (n - y.n)
    top = p**n
    d = 1 if total >= top else 0
    return PruferElement(p, total - d * top, n), d


# ---------------------------------------------------------------------------
# windows


def prufer_window(p: int, max_exp: int) -> list[PruferElement]:
    """All elements of order dividing ``p^max_exp``, sorted by (exponent, residue)."""
    out = [PruferElement(p, 0, 0)]
    for n in range(1, max_exp + 1):
        for i in range(1, p**n):
            if i % p:
                out.append(PruferElement(p, i, n))
    return out


def zinvp_window(p: int, max_exp: int, max_coef: int) -> list[PInvRational]:
    """Elements ``m + r_1/p + ... + r_E/p^E`` with ``|m| <= max_coef``, sorted by (exponent, numerator)."""
    top = p**max_exp
    out = [PInvRational(p, m * top + t, max_exp) for m in range(-max_coef, max_coef + 1) for t in range(top)]
    return sorted(out, key=PInvRational.sort_key)
