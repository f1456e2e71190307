"""Rank-2 subgroups of Z[1/p]^2 as extensions of Z[1/p] by Z.

The group ``K_alpha`` lives on ``Z x Z[1/p]`` with
``(x, q) + (y, r) = (x + y + ctilde(q, r), q + r)`` where ``ctilde`` is the
Pruefer cocycle :func:`~extlab.em.c_alpha` pulled back along ``Z[1/p] -> Z(p^inf)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cocycle import INTEGERS, Carrier, CocycleFn, zinvp
from .em import c_alpha
from .padic import CanonicalPadic, PInvRational, PruferElement

__all__ = ["K2Element", "K2Group", "KernelProbe", "kernel_probe", "ctilde", "ctilde_cocycle", "k2_add", "k2_neg", "k2_window", "k2_carrier"]


@dataclass(frozen=True)
class K2Element:
    x: int
    q: PInvRational

    def __str__(self):
        return f"({self.x}; {self.q})"

    def sort_key(self):
        return (self.q.sort_key(), self.x)


@dataclass(frozen=True)
class K2Group:
    p: int
    alpha: CanonicalPadic

    def __post_init__(self):
        if not isinstance(self.alpha, CanonicalPadic):
            raise TypeError("K2Group needs a canonical name")
        if self.alpha.p != self.p:
            raise ValueError("name and group over different primes")

    @property
    def zero(self) -> K2Element:
        return K2Element(0, PInvRational(self.p, 0))

    def fiber(self, x: int) -> K2Element:
        return K2Element(x, PInvRational(self.p, 0))

    def parse(self, text: str) -> K2Element:
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")) or ";" not in body:
            raise ValueError(f"bad K2 element: {text!r}")
        xs, qs = body[1:-1].split(";", 1)
        return K2Element(int(xs), PInvRational.parse(self.p, qs))


def ctilde(alpha: CanonicalPadic, x: PInvRational, y: PInvRational) -> int:
    """``c_alpha(x + Z, y + Z)``."""
    return c_alpha(alpha, PruferElement.project(x), PruferElement.project(y))


def ctilde_cocycle(alpha: CanonicalPadic) -> CocycleFn:
    # ctilde only sees x, y mod Z, so cache on the projected pair
    @lru_cache(maxsize=None)
    def on_prufer(a: PruferElement, b: PruferElement) -> int:
        return c_alpha(alpha, a, b)

    return CocycleFn(zinvp(alpha.p), INTEGERS, lambda x, y: on_prufer(PruferElement.project(x), PruferElement.project(y)))


def k2_add(G: K2Group, e1: K2Element, e2: K2Element) -> K2Element:
    return K2Element(e1.x + e2.x + ctilde(G.alpha, e1.q, e2.q), e1.q + e2.q)


def k2_neg(G: K2Group, e: K2Element) -> K2Element:
    return K2Element(-e.x - ctilde(G.alpha, e.q, -e.q), -e.q)


def k2_carrier(G: K2Group) -> Carrier:
    return Carrier(
        f"K(p={G.p}; alpha={G.alpha})",
        lambda a, b: k2_add(G, a, b),
        lambda a: k2_neg(G, a),
        G.zero,
        sort_key=K2Element.sort_key,
    )


def k2_window(G: K2Group, qs, max_coef: int) -> list[K2Element]:
    return sorted((K2Element(x, q) for q in qs for x in range(-max_coef, max_coef + 1)), key=K2Element.sort_key)


@dataclass(frozen=True)
class KernelProbe:
    """Finite-depth data for the question whether ``ctilde_alpha`` is a coboundary.

    A primitive ``phi`` of ``ctilde`` is fixed by ``t_n = phi(1/p^n)`` subject to
    ``t_{n-1} - p t_n = -gamma_n`` with ``gamma_n = sum_{k=1}^{p-1} ctilde(k/p^n, 1/p^n)``.
    Integers ``t_n`` exist iff the p-adic integer ``kappa`` named by
    ``(-gamma_1, -gamma_2, ...)`` is a rational integer (then ``t_0 = kappa``).
    ``candidate`` is that integer when the truncation of ``kappa`` looks like
    a small integer (top half of the canonical digits all 0 or all p-1).
    """

    gamma: tuple[int, ...]
    kappa: CanonicalPadic
    candidate: int | None


def kernel_probe(alpha: CanonicalPadic, depth: int) -> KernelProbe:
    from .padic import DigitName, canonicalize

    p = alpha.p
    gamma = tuple(
        sum(ctilde(alpha, PInvRational(p, k, n), PInvRational(p, 1, n)) for k in range(1, p))
        for n in range(1, depth + 1)
    )
    kappa = canonicalize(DigitName(p, tuple(-g for g in gamma)))
    top = kappa.digits[depth // 2 :]
    candidate = None
    if all(d == 0 for d in top):
        candidate = kappa.truncation()
    elif all(d == p - 1 for d in top):
        candidate = kappa.truncation() - p**depth
    return KernelProbe(gamma, kappa, candidate)
