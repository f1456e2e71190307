"""Symmetric 2-cocycles, coboundaries and the extension group E_f.

A cocycle ``f: C x C -> A`` is checked on finite windows of ``C``.  For
integer-valued cocycles the triple check runs on numpy tables built from the
window and its pairwise sums; the scalar path handles every other codomain.
Reports list violations in window order, so the first entry is always the
lexicographically first counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .padic import PInvRational, PruferElement

__all__ = [
    "Carrier",
    "INTEGERS",
    "cyclic",
    "zinvp",
    "prufer",
    "CocycleFn",
    "CochainFn",
    "Violation",
    "CocycleReport",
    "verify_cocycle",
    "coboundary_of",
    "cocycle_sub",
    "cocycle_add",
    "normalize",
    "ext_add",
    "ext_neg",
    "extension_axioms",
    "is_coboundary_cm",
]


@dataclass(frozen=True, eq=False)
class Carrier:
    """An abelian group given by its operations."""

    name: str
    add: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    zero: Any
    render: Callable[[Any], str] = str
    sort_key: Callable[[Any], Any] | None = None

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def sum(self, xs: Iterable) -> Any:
        total = self.zero
        for x in xs:
            total = self.add(total, x)
        return total

    def sorted(self, xs: Iterable) -> list:
        xs = list(dict.fromkeys(xs))
        return sorted(xs, key=self.sort_key) if self.sort_key else xs

    def __repr__(self):
        return f"Carrier({self.name})"


INTEGERS = Carrier("Z", lambda x, y: x + y, lambda x: -x, 0, sort_key=lambda x: x)


def cyclic(m: int) -> Carrier:
    """C_m on the residues ``0..m-1``."""
    if m < 1:
        raise ValueError(f"cyclic group needs m >= 1, got {m}")
    return Carrier(
        f"C_{m}",
        lambda x, y: (x + y) % m,
        lambda x: (-x) % m,
        0,
        render=lambda x: f"[{x}]",
        sort_key=lambda x: x,
    )


def zinvp(p: int) -> Carrier:
    return Carrier(
        f"Z[1/{p}]",
        lambda x, y: x + y,
        lambda x: -x,
        PInvRational(p, 0),
        sort_key=PInvRational.sort_key,
    )


def prufer(p: int) -> Carrier:
    return Carrier(
        f"Z({p}^inf)",
        lambda x, y: x + y,
        lambda x: -x,
        PruferElement(p, 0),
        sort_key=PruferElement.sort_key,
    )


@dataclass(frozen=True, eq=False)
class CocycleFn:
    """A function ``C x C -> A`` meant to be a symmetric normalized cocycle.

    ``table`` is an optional precomputed ``{(u, v): value}`` map that takes
    precedence over ``rule``.
    """

    domain: Carrier
    codomain: Carrier
    rule: Callable[[Any, Any], Any]
    table: dict | None = field(default=None, repr=False)

    def __call__(self, u, v):
        if self.table is not None:
            try:
                return self.table[u, v]
            except KeyError:
                pass
        return self.rule(u, v)

    def tabulate(self, window: Iterable) -> "CocycleFn":
        window = list(window)
        table = {(u, v): self(u, v) for u in window for v in window}
        return CocycleFn(self.domain, self.codomain, self.rule, table)


@dataclass(frozen=True, eq=False)
class CochainFn:
    """A 1-cochain ``phi: C -> A`` with ``phi(0) = 0``."""

    domain: Carrier
    codomain: Carrier
    rule: Callable[[Any], Any]

    def __call__(self, u):
        return self.rule(u)

    def __add__(self, other: "CochainFn") -> "CochainFn":
        A = self.codomain
        return CochainFn(self.domain, A, lambda u: A.add(self(u), other(u)))


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Violation:
    kind: str  # "symmetry" | "normalization" | "cocycle"
    args: tuple
    lhs: Any
    rhs: Any

    def render(self, C: Carrier, A: Carrier) -> dict:
        return {
            "kind": self.kind,
            "args": [C.render(x) for x in self.args],
            "lhs": A.render(self.lhs),
            "rhs": A.render(self.rhs),
        }


@dataclass
class CocycleReport:
    violations: list[Violation]
    checked_pairs: int
    checked_triples: int
    total_violations: int = 0

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok


_KIND_ORDER = {"normalization": 0, "symmetry": 1, "cocycle": 2}


def verify_cocycle(f: CocycleFn, window: Iterable, max_report: int = 50) -> CocycleReport:
    """Check ``f(u,0) = 0``, symmetry and the cocycle identity on a window.

    The identity checked is ``f(u,v) + f(u+v,w) = f(v,w) + f(u,v+w)`` for every
    triple of window elements; sums may leave the window, ``f`` is then evaluated
    there directly.  Returns at most ``max_report`` violations (ordered by kind,
    then by position in the sorted window) and the total count.
    """
    C, A = f.domain, f.codomain
    W = C.sorted(window)
    if A is INTEGERS and W:
        return _verify_int(f, W, max_report)
    return _verify_scalar(f, W, max_report)


def _verify_scalar(f: CocycleFn, W: list, max_report: int) -> CocycleReport:
    C, A = f.domain, f.codomain
    memo: dict = {}

    def F(u, v):
        key = (u, v)
        if key not in memo:
            memo[key] = f(u, v)
        return memo[key]

    found: list[Violation] = []
    total = 0

    def record(v: Violation):
        nonlocal total
        total += 1
        if len(found) < max_report:
            found.append(v)

    for u in W:
        val = F(u, C.zero)
        if val != A.zero:
            record(Violation("normalization", (u, C.zero), val, A.zero))
    for u, v in product(W, W):
        if F(u, v) != F(v, u):
            record(Violation("symmetry", (u, v), F(u, v), F(v, u)))
    sums = {(u, v): C.add(u, v) for u in W for v in W}
    for u, v, w in product(W, W, W):
        lhs = A.add(F(u, v), F(sums[u, v], w))
        rhs = A.add(F(v, w), F(u, sums[v, w]))
        if lhs != rhs:
            record(Violation("cocycle", (u, v, w), lhs, rhs))
    return CocycleReport(found, len(W) ** 2, len(W) ** 3, total)


def _verify_int(f: CocycleFn, W: list, max_report: int) -> CocycleReport:
    C = f.domain
    nW = len(W)
    S = list(W)
    index = {x: i for i, x in enumerate(S)}
    sum_idx = np.empty((nW, nW), dtype=np.int64)
    for a, u in enumerate(W):
        for b, v in enumerate(W):
            s = C.add(u, v)
            j = index.get(s)
            if j is None:
                j = index[s] = len(S)
                S.append(s)
            sum_idx[a, b] = j
    # F_sw[s, w] = f(S[s], W[w]),  F_ws[w, s] = f(W[w], S[s])
    F_sw = np.array([[f(s, w) for w in W] for s in S], dtype=object)
    F_ws = np.array([[f(w, s) for s in S] for w in W], dtype=object)
    try:
        F_sw = F_sw.astype(np.int64)
        F_ws = F_ws.astype(np.int64)
    except OverflowError:
        return _verify_scalar(f, W, max_report)

    found: list[Violation] = []
    total = 0

    def bulk(kind, entries):
        # entries: iterable of (args, lhs, rhs), already in window order
        nonlocal total
        for args, lhs, rhs in entries:
            total += 1
            if len(found) < max_report:
                found.append(Violation(kind, args, int(lhs), int(rhs)))

    zero = C.zero
    bulk("normalization", (((u, zero), f(u, zero), 0) for u in W if f(u, zero) != 0))
    WW = F_ws[:, :nW]
    asym = np.argwhere(WW != WW.T)
    bulk("symmetry", (((W[a], W[b]), WW[a, b], WW[b, a]) for a, b in asym))

    for a in range(nW):
        lhs = WW[a, :][:, None] + F_sw[sum_idx[a, :], :]
        rhs = WW + F_ws[a, sum_idx]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            bulk("cocycle", (((W[a], W[b], W[c]), lhs[b, c], rhs[b, c]) for b, c in bad))
    found.sort(key=lambda v: _KIND_ORDER[v.kind])
    return CocycleReport(found, nW * nW, nW**3, total)


# ---------------------------------------------------------------------------
# algebra of cocycles


def coboundary_of(phi: CochainFn) -> CocycleFn:
    """``(u, v) -> phi(u) + phi(v) - phi(u + v)``."""
    C, A = phi.domain, phi.codomain
    return CocycleFn(C, A, lambda u, v: A.sub(A.add(phi(u), phi(v)), phi(C.add(u, v))))


def cocycle_sub(f1: CocycleFn, f2: CocycleFn) -> CocycleFn:
    A = f1.codomain
    return CocycleFn(f1.domain, A, lambda u, v: A.sub(f1(u, v), f2(u, v)))


def cocycle_add(f1: CocycleFn, f2: CocycleFn) -> CocycleFn:
    A = f1.codomain
    return CocycleFn(f1.domain, A, lambda u, v: A.add(f1(u, v), f2(u, v)))


def normalize(f: CocycleFn) -> CocycleFn:
    """Subtract the constant ``f(0, 0)``; constants are coboundaries."""
    C, A = f.domain, f.codomain
    c = f(C.zero, C.zero)
    if c == A.zero:
        return f
    return CocycleFn(C, A, lambda u, v: A.sub(f(u, v), c))


def _require_normalized(f: CocycleFn):
    z = f.domain.zero
    if f(z, z) != f.codomain.zero:
        raise ValueError("cocycle is not normalized (f(0,0) != 0); apply normalize() first")


def ext_add(f: CocycleFn, x: tuple, y: tuple) -> tuple:
    """``(u,a) + (v,b) = (u+v, a+b+f(u,v))`` in E_f.

    The A-components may be numpy arrays, in which case the sum is taken for
    every entry at once.
    """
    _require_normalized(f)
    (u, a), (v, b) = x, y
    A = f.codomain
    return f.domain.add(u, v), A.add(A.add(a, b), f(u, v))


def ext_neg(f: CocycleFn, x: tuple) -> tuple:
    """``-(u,a) = (-u, -a - f(u,-u))``."""
    _require_normalized(f)
    u, a = x
    C, A = f.domain, f.codomain
    nu = C.neg(u)
    return nu, A.sub(A.neg(a), f(u, nu))


def extension_axioms(
    f: CocycleFn, c_window: Sequence, a_window: Sequence[int], max_report: int = 20
) -> list[tuple]:
    """Check the abelian group axioms of E_f on ``c_window x a_window`` exhaustively.

    Integer codomain only.  Every operation goes through :func:`ext_add` and
    :func:`ext_neg`; the A-coordinates of all window elements ride along as one
    numpy array so each C-triple costs a constant number of calls.  Returns the
    failures as ``(axiom, c-args)`` tuples, empty when all axioms hold.
    """
    if f.codomain is not INTEGERS:
        raise TypeError("extension_axioms needs an integer-valued cocycle")
    C = f.domain
    W = C.sorted(c_window)
    a = np.asarray(list(a_window), dtype=np.int64)
    n = len(a)
    # broadcast shapes: first operand varies on axis 0, second on axis 1, third on axis 2
    a1, a2, a3 = a.reshape(n, 1, 1), a.reshape(1, n, 1), a.reshape(1, 1, n)
    zero = (C.zero, 0)
    bad: list[tuple] = []

    def fail(name, args):
        if len(bad) < max_report:
            bad.append((name, tuple(C.render(x) for x in args)))

    for u in W:
        e = (u, a1)
        s, t = ext_add(f, e, zero)
        if s != u or not np.array_equal(t, a1):
            fail("identity", (u,))
        s, t = ext_add(f, e, ext_neg(f, e))
        if s != C.zero or np.any(t != 0):
            fail("inverse", (u,))
    for u, v in product(W, W):
        s1, t1 = ext_add(f, (u, a1), (v, a2))
        s2, t2 = ext_add(f, (v, a2), (u, a1))
        if s1 != s2 or not np.array_equal(t1, t2):
            fail("commutativity", (u, v))
    for u, v in product(W, W):
        left = ext_add(f, (u, a1), (v, a2))
        for w in W:
            s1, t1 = ext_add(f, left, (w, a3))
            s2, t2 = ext_add(f, (u, a1), ext_add(f, (v, a2), (w, a3)))
            if s1 != s2 or not np.array_equal(t1, t2):
                fail("associativity", (u, v, w))
    return bad


# ---------------------------------------------------------------------------
# the cyclic case


def is_coboundary_cm(d: CocycleFn, m: int) -> CochainFn | None:
    """Decide whether an integer cocycle on C_m is a coboundary.

    With ``S = sum_{k=1}^{m-1} d([k],[1])`` a primitive exists iff ``m | S``; it
    is rebuilt from ``phi([1]) = S/m`` and ``phi([k+1]) = phi([k]) + phi([1]) - d([k],[1])``
    and checked against ``d`` on all of ``C_m x C_m`` before being returned.
    """
    S = sum(d(k, 1) for k in range(1, m))
    if S % m:
        return None
    values = [0] * m
    if m > 1:
        values[1] = S // m
        for k in range(1, m - 1):
            values[k + 1] = values[k] + values[1] - d(k, 1)
    table = tuple(values)
    phi = CochainFn(d.domain, INTEGERS, lambda u: table[u % m])
    delta = coboundary_of(phi)
    for u, v in product(range(m), range(m)):
        if delta(u, v) != d(u, v):
            raise ValueError(f"reconstructed primitive fails at ({u}, {v}); input is not a cocycle")
    return phi
