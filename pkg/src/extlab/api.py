"""The rank-2 groups A_pi as extensions of Z[1/p] by Z.

``A_pi`` is generated by ``a_1, a_2`` and ``x_n = p^-n (a_1 + pi_n a_2)``
where ``pi_n = s_0 + s_1 p + ... + s_{n-1} p^(n-1)`` are the partial sums of the
p-adic unit ``pi``.  Elements are kept in the normal form
``m a_1 + k a_2 + sum r_i x_i`` with ``0 <= r_i < p``, using the relations
``p x_1 = a_1 + s_0 a_2`` and ``p x_{i+1} = x_i + s_i a_2``.

Only a digit prefix of ``pi`` is stored; operations raise
:class:`~extlab.padic.PrecisionError` when they need a digit past it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cocycle import INTEGERS, Carrier, CochainFn, CocycleFn, zinvp
from .padic import PInvRational, PrecisionError, check_prime

__all__ = [
    "PiUnit",
    "APiNormalForm",
    "api_normalize",
    "api_add",
    "api_neg",
    "api_sub",
    "api_scale",
    "api_carrier",
    "mu",
    "mu_inverse",
    "nu",
    "nu_case_split",
    "generator_form",
    "x_gen",
    "carry_set",
    "cocycle_v1",
    "cocycle_v2",
    "transversal_v1",
    "transversal_v2",
    "psi_bridge",
    "coordinates",
    "cocycle_v1_fn",
    "cocycle_v2_fn",
    "psi_cochain",
    "delta_transversal",
]


@dataclass(frozen=True)
class PiUnit:
    """Digit prefix ``s_0, ..., s_{N-1}`` of a p-adic unit (``0 < s_0 < p``)."""

    p: int
    s: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if not self.s:
            raise ValueError("pi needs at least the digit s_0")
        if not 0 < self.s[0] < self.p:
            raise ValueError(f"s_0 must lie in (0, {self.p}), got {self.s[0]}")
        for x in self.s:
            if not 0 <= x < self.p:
                raise ValueError(f"digit {x} outside [0, {self.p})")

    @property
    def precision(self) -> int:
        return len(self.s)

    def digit(self, i: int) -> int:
        if i >= len(self.s):
            raise PrecisionError(f"pi digit s_{i} beyond prefix of length {len(self.s)}")
        return self.s[i]

    @cached_property
    def _partials(self) -> tuple[int, ...]:
        out, acc = [0], 0
        for i, x in enumerate(self.s):
            acc += x * self.p**i
            out.append(acc)
        return tuple(out)

    def partial(self, n: int) -> int:
        """``pi_n = s_0 + ... + s_{n-1} p^(n-1)``; ``pi_0 = 0``."""
        if n > len(self.s):
            raise PrecisionError(f"pi_{n} needs {n} digits, prefix has {len(self.s)}")
        return self._partials[n]

    def __str__(self):
        return ",".join(map(str, self.s))


@dataclass(frozen=True)
class APiNormalForm:
    """``m a_1 + k a_2 + sum_i r_i x_i`` with digits in ``[0, p)`` and no trailing zero."""

    m: int = 0
    k: int = 0
    r: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.m}·a1 + {self.k}·a2 + [{','.join(map(str, self.r))}]"

    def sort_key(self):
        return (len(self.r), self.r, self.m, self.k)


def api_normalize(pi: PiUnit, m: int, k: int, digits: Sequence[int]) -> APiNormalForm:
    """Bring ``m a_1 + k a_2 + sum d_i x_i`` (arbitrary integer ``d_i``) to normal form.

    Works from the highest index down: ``q p x_{i+1}`` becomes ``q x_i + q s_i a_2``
    and ``q p x_1`` becomes ``q a_1 + q s_0 a_2``.
    """
    p = pi.p
    d = list(digits)
    for pos in range(len(d), 0, -1):
        q, d[pos - 1] = divmod(d[pos - 1], p)
        if q:
            k += q * pi.digit(pos - 1)
            if pos == 1:
                m += q
            else:
                d[pos - 2] += q
    while d and d[-1] == 0:
        d.pop()
    return APiNormalForm(m, k, tuple(d))


def api_add(pi: PiUnit, y1: APiNormalForm, y2: APiNormalForm) -> APiNormalForm:
    n = max(len(y1.r), len(y2.r))
    r1 = y1.r + (0,) * (n - len(y1.r))
    r2 = y2.r + (0,) * (n - len(y2.r))
    return api_normalize(pi, y1.m + y2.m, y1.k + y2.k, [a + b for a, b in zip(r1, r2)])


def api_neg(pi: PiUnit, y: APiNormalForm) -> APiNormalForm:
    return api_normalize(pi, -y.m, -y.k, [-a for a in y.r])


def api_sub(pi: PiUnit, y1: APiNormalForm, y2: APiNormalForm) -> APiNormalForm:
    return api_add(pi, y1, api_neg(pi, y2))


def api_scale(pi: PiUnit, c: int, y: APiNormalForm) -> APiNormalForm:
    return api_normalize(pi, c * y.m, c * y.k, [c * a for a in y.r])


def x_gen(pi: PiUnit, n: int, times: int = 1) -> APiNormalForm:
    """``times * x_n`` in normal form (``x_0`` is read as ``a_1``)."""
    if n == 0:
        return APiNormalForm(times, 0, ())
    return api_normalize(pi, 0, 0, [0] * (n - 1) + [times])


def api_carrier(pi: PiUnit) -> Carrier:
    return Carrier(
        f"A_pi(p={pi.p}; {pi})",
        lambda x, y: api_add(pi, x, y),
        lambda x: api_neg(pi, x),
        APiNormalForm(),
        sort_key=APiNormalForm.sort_key,
    )


def mu(k: int) -> APiNormalForm:
    return APiNormalForm(0, k, ())


def mu_inverse(y: APiNormalForm) -> int:
    """The integer ``k`` with ``y = k a_2``; ``ValueError`` outside ``<a_2>``."""
    if y.m != 0 or y.r:
        raise ValueError(f"{y} is not in <a_2>")
    return y.k


def nu(p: int, y: APiNormalForm) -> PInvRational:
    """``m + r_1/p + ... + r_n/p^n``."""
    return PInvRational.from_digits(p, y.m, y.r)


def nu_case_split(p: int, k: int, n: int) -> PInvRational:
    """The first description of nu: ``k a_1 + m a_2 -> k`` (n = 0) and ``k x_n + m a_2 -> k/p^n``."""
    return PInvRational(p, k, n)


def generator_form(pi: PiUnit, y: APiNormalForm) -> tuple[int, int, int]:
    """Write ``y = k x_n + m a_2`` (p not dividing k, n >= 1) or ``k a_1 + m a_2`` (n = 0).

    Returns ``(k, n, m)``.
    """
    v = nu(pi.p, y)
    base = x_gen(pi, v.n, v.k)
    return v.k, v.n, mu_inverse(api_sub(pi, y, base))


def coordinates(pi: PiUnit, y: APiNormalForm) -> tuple[Fraction, Fraction]:
    """Coordinates of ``y`` in ``Q a_1 + Q a_2``, from ``x_n = p^-n (a_1 + pi_n a_2)``."""
    p = pi.p
    c1 = Fraction(y.m)
    c2 = Fraction(y.k)
    for i, r in enumerate(y.r, start=1):
        c1 += Fraction(r, p**i)
        c2 += Fraction(r * pi.partial(i), p**i)
    return c1, c2


# ---------------------------------------------------------------------------
# transversals and cocycles


def carry_set(u: PInvRational, v: PInvRational) -> frozenset[int]:
    """Fractional positions (1-based) that emit a carry when adding the base-p expansions."""
    p = u.p
    n = max(u.n, v.n)
    a = u.frac_digits() + (0,) * (n - u.n)
    b = v.frac_digits() + (0,) * (n - v.n)
    out = set()
    carry = 0
    for pos in range(n, 0, -1):
        carry = 1 if a[pos - 1] + b[pos - 1] + carry >= p else 0
        if carry:
            out.add(pos)
    return frozenset(out)


def cocycle_v1(pi: PiUnit, u: PInvRational, v: PInvRational) -> int:
    """``sum s_i`` over ``0 <= i < n`` with a carry at position ``i + 1``."""
    return sum(pi.digit(pos - 1) for pos in carry_set(u, v))


def cocycle_v2(pi: PiUnit, u: PInvRational, v: PInvRational) -> int:
    """Cocycle of the transversal ``k -> k a_1``, ``k/p^n -> k x_n``."""
    if u.n > v.n:
        u, v = v, u
    # now u.n <= v.n
    if v.n == 0:
        return 0
    if u.n == 0:
        # u integer, v = k/p^n: -u pi_n
        return -u.k * pi.partial(v.n)
    if u.n < v.n:
        # u(pi_m - pi_n), m = u.n < n = v.n
        return _exact(u.k * (pi.partial(u.n) - pi.partial(v.n)), u.p**u.n)
    n = u.n
    s = u + v
    if s.n == 0:
        return s.k * pi.partial(n)
    # u + v = k'/p^(n-j): (u+v)(pi_n - pi_{n-j})
    return _exact(s.k * (pi.partial(n) - pi.partial(s.n)), u.p**s.n)


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return q


def transversal_v1(pi: PiUnit, u: PInvRational) -> APiNormalForm:
    """``m.r_1...r_n -> m a_1 + sum r_i x_i``."""
    return APiNormalForm(u.floor(), 0, u.frac_digits())


def transversal_v2(pi: PiUnit, u: PInvRational) -> APiNormalForm:
    """``k -> k a_1`` and ``k/p^n -> k x_n``."""
    return x_gen(pi, u.n, u.k)


def psi_bridge(pi: PiUnit, u: PInvRational) -> int:
    """``mu^-1(transversal_v1(u) - transversal_v2(u))``."""
    return mu_inverse(api_sub(pi, transversal_v1(pi, u), transversal_v2(pi, u)))


def delta_transversal(pi: PiUnit, transversal, u: PInvRational, v: PInvRational) -> int:
    """``mu^-1(phi(u) + phi(v) - phi(u+v))`` computed in A_pi."""
    t = api_sub(pi, api_add(pi, transversal(pi, u), transversal(pi, v)), transversal(pi, u + v))
    return mu_inverse(t)


def cocycle_v1_fn(pi: PiUnit) -> CocycleFn:
    return CocycleFn(zinvp(pi.p), INTEGERS, lambda u, v: cocycle_v1(pi, u, v))


def cocycle_v2_fn(pi: PiUnit) -> CocycleFn:
    return CocycleFn(zinvp(pi.p), INTEGERS, lambda u, v: cocycle_v2(pi, u, v))


def psi_cochain(pi: PiUnit) -> CochainFn:
    return CochainFn(zinvp(pi.p), INTEGERS, lambda u: psi_bridge(pi, u))
