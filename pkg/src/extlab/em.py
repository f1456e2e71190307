"""Cocycles from homomorphisms on relators, and back.

Two presentations ``H = F/R`` are covered:

* ``H = C_m`` with ``F = Z`` and ``R = mZ``; the transversal cocycle is
  :func:`g_cm`.
* ``H = Z(p^inf)`` with ``F`` free abelian on ``e_0, e_1, ...`` and ``R`` free
  on ``e_0`` and ``e_{r-1} - p e_r``; the transversal is :func:`u_prufer`, its
  cocycle :func:`g_prufer`, and a p-adic name ``alpha`` gives the homomorphism
  :func:`phi_alpha` on ``R`` and the closed-form cocycle :func:`c_alpha`.

``Phi`` sends a homomorphism ``theta: R -> A`` to ``theta o g``; ``Gamma`` goes
back through the telescoping evaluation of :func:`gamma_general`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .cocycle import INTEGERS, Carrier, CocycleFn, cyclic, prufer
from .padic import (
    CanonicalPadic,
    DigitName,
    PrecisionError,
    PruferElement,
    block_value,
    prufer_add,
)

__all__ = [
    "FreeWord",
    "RelatorDecomposition",
    "HomRA",
    "LiftWitness",
    "LiftFailure",
    "Presentation",
    "g_cm",
    "g_cm_cocycle",
    "phi_cm",
    "gamma_cm",
    "free_carrier",
    "free_phi_eval",
    "expand_word",
    "r_decompose",
    "phi_alpha",
    "lift_phi_alpha",
    "lift_hom",
    "u_prufer",
    "g_prufer",
    "c_alpha",
    "c_alpha_cocycle",
    "cyclic_presentation",
    "prufer_presentation",
    "gamma_general",
    "gamma_hom",
    "phi_general",
    "relator_word",
]


# ---------------------------------------------------------------------------
# free abelian words


@dataclass(frozen=True)
class FreeWord:
    """Finitely supported exponent vector ``(w_0, w_1, ...)`` over ``e_0, e_1, ...``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def e(cls, n: int, times: int = 1) -> "FreeWord":
        return cls((0,) * n + (times,))

    @classmethod
    def of(cls, terms: dict[int, int]) -> "FreeWord":
        top = max(terms, default=-1)
        return cls(tuple(terms.get(i, 0) for i in range(top + 1)))

    def coeff(self, n: int) -> int:
        return self.coeffs[n] if n < len(self.coeffs) else 0

    @property
    def top(self) -> int:
        """Largest index with non-zero coefficient, -1 for the empty word."""
        return len(self.coeffs) - 1

    def __add__(self, other: "FreeWord") -> "FreeWord":
        n = max(len(self.coeffs), len(other.coeffs))
        return FreeWord(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "FreeWord":
        return FreeWord(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "FreeWord") -> "FreeWord":
        return self + (-other)

    def scale(self, c: int) -> "FreeWord":
        return FreeWord(tuple(c * x for x in self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}e{i}")
        return " + ".join(parts).replace("+ -", "- ")


def free_carrier() -> Carrier:
    return Carrier(
        "F",
        lambda x, y: x + y,
        lambda x: -x,
        FreeWord(),
        sort_key=lambda w: (len(w.coeffs), w.coeffs),
    )


def expand_word(w: FreeWord) -> list[tuple[int, int]]:
    """Spell ``w`` as a list of signed generators ``(index, +1 | -1)``, ascending index."""
    out = []
    for i, c in enumerate(w.coeffs):
        out.extend([(i, 1 if c > 0 else -1)] * abs(c))
    return out


def _word_sum(word: Sequence[tuple[int, int]]) -> FreeWord:
    counts: Counter = Counter()
    for i, s in word:
        counts[i] += s
    return FreeWord.of(dict(counts))


def free_phi_eval(h: CocycleFn, word: Sequence[tuple[int, int]] | FreeWord) -> Any:
    """The primitive ``phi`` of a normalized cocycle ``h`` on F, vanishing on generators.

    ``phi`` satisfies ``h(x,y) = phi(x+y) - phi(x) - phi(y)``, so ``h`` is the
    coboundary of ``-phi``.  Evaluates along the signed generator list
    ``y_1, ..., y_n``: ``phi(sum y_i) = sum phi(y_i) + sum_k h(y_1+...+y_k, y_{k+1})``
    with ``phi(e_j) = 0`` and ``phi(-e_j) = -h(e_j, -e_j)``.
    """
    if isinstance(word, FreeWord):
        word = expand_word(word)
    F, A = h.domain, h.codomain
    total = A.zero
    prefix = F.zero
    for pos, (i, s) in enumerate(word):
        y = FreeWord.e(i, s)
        if s < 0:
            gen = FreeWord.e(i)
            total = A.sub(total, h(gen, y))
        if pos > 0:
            total = A.add(total, h(prefix, y))
        prefix = F.add(prefix, y)
    return total


# ---------------------------------------------------------------------------
# C_m


def g_cm(k: int, l: int, m: int) -> int:
    """``k + l - ((k + l) mod m)``: 0 below ``m``, ``m`` otherwise."""
    if not (0 <= k < m and 0 <= l < m):
        raise ValueError(f"residues must lie in [0, {m}), got ({k}, {l})")
    return m if k + l >= m else 0


def g_cm_cocycle(m: int) -> CocycleFn:
    return CocycleFn(cyclic(m), INTEGERS, lambda k, l: g_cm(k, l, m))


def phi_cm(a_theta: int, m: int) -> CocycleFn:
    """``Phi(theta) = (a_theta / m) g`` for the homomorphism ``theta(m) = a_theta``."""
    return CocycleFn(cyclic(m), INTEGERS, lambda k, l: a_theta * g_cm(k, l, m) // m)


def gamma_cm(f: CocycleFn, m: int) -> int:
    """``theta(m) = sum_{k=1}^{m-1} f([k], [1])``."""
    return sum(f(k, 1) for k in range(1, m))


# ---------------------------------------------------------------------------
# the presentation of Z(p^inf)


@dataclass(frozen=True)
class RelatorDecomposition:
    """``w = c_0 e_0 + sum_{r>=1} c_r (e_{r-1} - p e_r)``; ``coeffs[r] = c_r``."""

    p: int
    coeffs: tuple[int, ...]

    def recombine(self) -> FreeWord:
        p, c = self.p, self.coeffs
        terms: dict[int, int] = {0: c[0] if c else 0}
        for r in range(1, len(c)):
            terms[r - 1] = terms.get(r - 1, 0) + c[r]
            terms[r] = terms.get(r, 0) - p * c[r]
        return FreeWord.of(terms)


def r_decompose(w: FreeWord, p: int) -> RelatorDecomposition | None:
    """Write ``w`` in the free basis of R, or return ``None`` if ``w`` is not in R.

    Top-down: ``c_{N+1} = 0``, ``c_r = (c_{r+1} - w_r) / p`` for ``r = N..1``
    and ``c_0 = w_0 - c_1``.  Every division is exact iff ``sum w_n p^-n`` is an integer.
    """
    N = max(w.top, 0)
    c = [0] * (N + 2)
    for r in range(N, 0, -1):
        q, rem = divmod(c[r + 1] - w.coeff(r), p)
        if rem:
            return None
        c[r] = q
    c[0] = w.coeff(0) - c[1]
    return RelatorDecomposition(p, tuple(c[: N + 1]))


def relator_word(r: int, p: int) -> list[tuple[int, int]]:
    """Signed generator spelling of the relator ``e_0`` (r=0) or ``e_{r-1} - p e_r``."""
    if r == 0:
        return [(0, 1)]
    return [(r - 1, 1)] + [(r, -1)] * p


@dataclass(frozen=True)
class HomRA:
    """A homomorphism ``R -> Z`` given by its values on ``e_0, e_0 - p e_1, e_1 - p e_2, ...``."""

    p: int
    values: tuple[int, ...]

    @classmethod
    def from_name(cls, alpha: DigitName) -> "HomRA":
        # phi_alpha(e_0) = 0, phi_alpha(e_{r-1} - p e_r) = a_r
        return cls(alpha.p, (0,) + tuple(alpha.digits))

    def __call__(self, w: FreeWord) -> int:
        dec = r_decompose(w, self.p)
        if dec is None:
            raise ValueError(f"{w} is not in R")
        if len(dec.coeffs) > len(self.values):
            raise PrecisionError(f"{w} needs relator values up to index {len(dec.coeffs) - 1}")
        return sum(c * t for c, t in zip(dec.coeffs, self.values))

    def minus(self, other: "HomRA") -> "HomRA":
        n = min(len(self.values), len(other.values))
        return HomRA(self.p, tuple(a - b for a, b in zip(self.values[:n], other.values[:n])))


def phi_alpha(alpha: DigitName, w: FreeWord) -> int:
    """``phi_alpha(w) = sum_{r>=1} c_r a_r`` where ``c_r`` are the relator coordinates of ``w``."""
    return HomRA.from_name(alpha)(w)


@dataclass(frozen=True)
class LiftWitness:
    """Values ``b_n = psi(e_n)`` of an extension of the homomorphism to F, ``b_0`` first."""

    b: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.b) - 1


@dataclass(frozen=True)
class LiftFailure:
    depth: int  # first k at which b_k is not an integer
    partial: tuple[int, ...]


def lift_hom(theta: HomRA, depth: int) -> LiftWitness | LiftFailure:
    """Try to extend ``theta`` to F up to ``e_depth``.

    ``b_0 = theta(e_0)`` and ``b_{k-1} - p b_k = theta(e_{k-1} - p e_k)``.  A
    finite depth only gives a necessary condition for a genuine extension.
    """
    p = theta.p
    if len(theta.values) <= depth:
        raise PrecisionError(f"depth {depth} needs {depth} relator values beyond e_0")
    b = [theta.values[0]]
    for k in range(1, depth + 1):
        q, rem = divmod(b[k - 1] - theta.values[k], p)
        if rem:
            return LiftFailure(k, tuple(b))
        b.append(q)
    return LiftWitness(tuple(b))


def lift_phi_alpha(alpha: DigitName, depth: int) -> LiftWitness | LiftFailure:
    """Run ``a_1 = -p b_1``, ``a_k - b_{k-1} = -p b_k`` for ``k <= depth``."""
    if alpha.precision < depth:
        raise PrecisionError(f"depth {depth} needs precision {depth}, have {alpha.precision}")
    return lift_hom(HomRA.from_name(alpha), depth)


def u_prufer(x: PruferElement) -> FreeWord:
    """The transversal ``0 -> 0``, ``i/p^n -> i e_n``."""
    if x.n == 0:
        return FreeWord()
    return FreeWord.e(x.n, x.i)


def g_prufer(x: PruferElement, y: PruferElement) -> FreeWord:
    """``u(x) + u(y) - u(x+y)``, an element of R."""
    return u_prufer(x) + u_prufer(y) - u_prufer(x + y)


def c_alpha(alpha: CanonicalPadic, x: PruferElement, y: PruferElement) -> int:
    """Closed form of ``phi_alpha(g_prufer(x, y))`` for a canonical name.

    With ``x = i/p^n``, ``y = j/p^k``, ``k <= n`` and ``d`` the overflow of the
    representatives: ``j B(k,n) - d B(0,n)`` if ``k < n``; if ``k = n`` and
    ``x + y = v/p^k'`` (p not dividing v), ``-v B(k',n) - d B(0,n)``.  Here
    ``B(k,n)`` is :func:`block_value`.  Needs precision at least ``max(n, k)``.
    """
    if x.n == 0 or y.n == 0:
        return 0
    if x.n < y.n:
        x, y = y, x
    n, k, j = x.n, y.n, y.i
    if alpha.precision < n:
        raise PrecisionError(f"c_alpha at exponent {n} needs precision {n}, have {alpha.precision}")
    s, d = prufer_add(x, y)
    carry = d * block_value(alpha, 0, n) if d else 0
    if k < n:
        return j * block_value(alpha, k, n) - carry
    if s.n == 0:
        return -carry
    return -s.i * block_value(alpha, s.n, n) - carry


def c_alpha_cocycle(alpha: CanonicalPadic) -> CocycleFn:
    return CocycleFn(prufer(alpha.p), INTEGERS, lambda x, y: c_alpha(alpha, x, y))


# ---------------------------------------------------------------------------
# Gamma and Phi for a general presentation


@dataclass(frozen=True, eq=False)
class Presentation:
    """``H = F/R`` seen through the images of the generators and a membership test for R."""

    H: Carrier
    generator: Callable[[int], Any]
    contains: Callable[[FreeWord], bool]


def cyclic_presentation(m: int) -> Presentation:
    """``C_m = Z / mZ`` with the single generator ``e_0 -> [1]``."""
    return Presentation(
        cyclic(m),
        lambda i: 1 % m if i == 0 else _no_generator(i),
        lambda w: w.top <= 0 and w.coeff(0) % m == 0,
    )


def _no_generator(i):
    raise ValueError(f"Z has a single generator, got index {i}")


def prufer_presentation(p: int) -> Presentation:
    """``Z(p^inf) = F/R`` with ``e_n -> 1/p^n`` (so ``e_0 -> 0``)."""
    return Presentation(
        prufer(p),
        lambda n: PruferElement(p, 1, n),
        lambda w: r_decompose(w, p) is not None,
    )


def gamma_general(f: CocycleFn, word: Sequence[tuple[int, int]], pres: Presentation) -> Any:
    """``Gamma(f)`` evaluated at the element of R spelled by ``word``.

    ``-sum_{i in I} f([x_i], -[x_i]) + sum_{k=1}^{n-1} f([x_1]+...+[x_k], [x_{k+1}])``
    with ``I`` the positions of inverted generators.
    """
    if not pres.contains(_word_sum(word)):
        raise ValueError("word does not lie in R")
    H, A = pres.H, f.codomain
    total = A.zero
    prefix = H.zero
    for pos, (i, s) in enumerate(word):
        g = pres.generator(i)
        x = g if s > 0 else H.neg(g)
        if s < 0:
            total = A.sub(total, f(g, x))
        if pos > 0:
            total = A.add(total, f(prefix, x))
        prefix = H.add(prefix, x)
    return total


def gamma_hom(f: CocycleFn, p: int, precision: int) -> HomRA:
    """``Gamma(f)`` for a cocycle on Z(p^inf), read off on the relator basis up to ``precision``."""
    pres = prufer_presentation(p)
    return HomRA(p, tuple(gamma_general(f, relator_word(r, p), pres) for r in range(precision + 1)))


def phi_general(theta: Callable[[Any], Any], g: Callable[[Any, Any], Any], H: Carrier, A: Carrier = INTEGERS) -> CocycleFn:
    """``Phi(theta) = theta o g``."""
    return CocycleFn(H, A, lambda x, y: theta(g(x, y)))
