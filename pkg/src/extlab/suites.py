"""Exhaustive verification sweeps shared by the command line and the test suite.

Every sweep walks its window in the documented element order and keeps the
first failing tuple, so a reported counterexample is the lexicographically
smallest one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable

from . import api as A
from .cocycle import CocycleFn, ext_add, extension_axioms, is_coboundary_cm, verify_cocycle
from .em import (
    LiftWitness,
    c_alpha,
    c_alpha_cocycle,
    g_cm,
    g_cm_cocycle,
    g_prufer,
    gamma_cm,
    lift_phi_alpha,
    phi_alpha,
    phi_cm,
)
from .padic import CanonicalPadic, DigitName, PInvRational, prufer_window, zinvp_window
from .rank2 import K2Element, K2Group, ctilde_cocycle, k2_add, k2_neg

__all__ = [
    "CheckResult",
    "seeded_digits",
    "seeded_alpha",
    "seeded_pi",
    "first_failure",
    "check_cocycle",
    "suite_cocycle",
    "suite_equivalence",
    "suite_extension",
    "suite_k2",
    "api_window",
    "api_repeat",
    "suite_api",
    "suite_roundtrip",
    "suite_lift",
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int = 0
    counterexample: Any = None
    info: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.info:
            out["info"] = self.info
        return out


def seeded_digits(seed: int, p: int, n: int, unit: bool = False) -> tuple[int, ...]:
    """Reproducible digits in ``[0, p)`` from ``(seed, p, n)``; ``unit`` forces a non-zero first digit."""
    rng = random.Random(f"extlab:{seed}:{p}:{n}")
    digits = [rng.randrange(p) for _ in range(n)]
    if unit and digits:
        digits[0] = rng.randrange(1, p)
    return tuple(digits)


def seeded_alpha(seed: int, p: int, n: int) -> CanonicalPadic:
    return CanonicalPadic(p, seeded_digits(seed, p, n))


def seeded_pi(seed: int, p: int, n: int) -> A.PiUnit:
    return A.PiUnit(p, seeded_digits(seed, p, n, unit=True))


def first_failure(name: str, cases: Iterable, predicate: Callable[..., bool], render: Callable = None) -> CheckResult:
    """Run ``predicate(*case)`` over ``cases`` in order; stop at the first failure."""
    checked = 0
    for case in cases:
        checked += 1
        if not predicate(*case):
            shown = render(*case) if render else [str(c) for c in case]
            return CheckResult(name, False, checked, shown)
    return CheckResult(name, True, checked)


def check_cocycle(name: str, f: CocycleFn, window) -> CheckResult:
    rep = verify_cocycle(f, window, max_report=1)
    ce = rep.first().render(f.domain, f.codomain) if rep.first() else None
    return CheckResult(name, rep.ok, rep.checked_triples, ce, {"violations": rep.total_violations})


# ---------------------------------------------------------------------------


def suite_cocycle(p: int, alphas, pis, max_exp: int, max_coef: int, ms=()) -> list[CheckResult]:
    out = []
    PW = prufer_window(p, max_exp)
    for al in alphas:
        out.append(check_cocycle(f"c_alpha[{al}] cocycle", c_alpha_cocycle(al), PW))
    if pis:
        ZW = zinvp_window(p, max_exp, max_coef)
        for pi in pis:
            out.append(check_cocycle(f"v1[pi={pi}] cocycle", A.cocycle_v1_fn(pi), ZW))
            out.append(check_cocycle(f"v2[pi={pi}] cocycle", A.cocycle_v2_fn(pi), ZW))
    for m in ms:
        out.append(check_cocycle(f"g_cm[m={m}] cocycle", g_cm_cocycle(m), range(m)))
    return out


def suite_equivalence(p: int, alphas, pis, max_exp: int, max_coef: int) -> list[CheckResult]:
    out = []
    PW = prufer_window(p, max_exp)
    for al in alphas:
        out.append(
            first_failure(
                f"c_alpha[{al}] = phi_alpha o g",
                product(PW, PW),
                lambda x, y: c_alpha(al, x, y) == phi_alpha(al, g_prufer(x, y)),
            )
        )
    ZW = zinvp_window(p, max_exp, max_coef)
    for pi in pis:
        for label, fn, tr in (("v1", A.cocycle_v1, A.transversal_v1), ("v2", A.cocycle_v2, A.transversal_v2)):
            out.append(
                first_failure(
                    f"{label}[pi={pi}] = mu^-1 delta(transversal)",
                    product(ZW, ZW),
                    lambda u, v: fn(pi, u, v) == A.delta_transversal(pi, tr, u, v),
                )
            )
        psi = {u: A.psi_bridge(pi, u) for u in ZW}

        def bridge(u, v):
            s = u + v
            ps = psi[s] if s in psi else A.psi_bridge(pi, s)
            return A.cocycle_v1(pi, u, v) - A.cocycle_v2(pi, u, v) == psi[u] + psi[v] - ps

        out.append(first_failure(f"v1 - v2 = delta(psi)[pi={pi}]", product(ZW, ZW), bridge))
    return out


def _ext_check(name: str, f: CocycleFn, c_window, a_window) -> CheckResult:
    bad = extension_axioms(f, c_window, a_window, max_report=1)
    checked = (len(list(c_window)) * len(a_window)) ** 3
    return CheckResult(name, not bad, checked, list(bad[0]) if bad else None)


def cyclic_generator_order(f: CocycleFn, m: int) -> tuple:
    """``m * ([1], 0)`` by repeated addition in E_f."""
    e = (1 % m, 0)
    acc = (0, 0)
    for _ in range(m):
        acc = ext_add(f, acc, e)
    return acc


def suite_extension(
    ms, max_coef: int, k2_groups=(), k2_q_window=(), k2_x_coef: int = 1, k2_triple_window=None
) -> list[CheckResult]:
    out = []
    a_window = range(-max_coef, max_coef + 1)
    for m in ms:
        out.append(_ext_check(f"E_f axioms, f=g_cm, m={m}", g_cm_cocycle(m), range(m), a_window))
        f = phi_cm(1, m)
        out.append(_ext_check(f"E_f axioms, f=phi_cm(1), m={m}", f, range(m), a_window))
        if m < 2:
            # in C_1 the residue [1] is the identity, so there is nothing to check
            continue
        got = cyclic_generator_order(f, m)
        out.append(CheckResult(f"m*([1],0) = (0,1) in E_phi_cm(1), m={m}", got == (0, 1), m, None if got == (0, 1) else [str(got)]))
    for G in k2_groups:
        out.extend(suite_k2(G, k2_q_window, k2_x_coef, k2_triple_window))
    return out


def suite_k2(G: K2Group, q_window, x_coef: int, triple_window=None) -> list[CheckResult]:
    """Group law of K_alpha on windows.

    Associativity of ``k2_add`` reduces to the cocycle identity for ``ctilde``
    (the integer coordinates cancel), which is checked on all of ``q_window``.
    Pairwise facts (agreement with ``ext_add``, commutativity, inverses) also run
    on the full window; the literal triple-by-triple axioms run on
    ``triple_window`` (default ``q_window``), since their cost is cubic.
    """
    out = []
    f = ctilde_cocycle(G.alpha)
    qs = sorted(set(q_window), key=PInvRational.sort_key)
    xs = list(range(-x_coef, x_coef + 1))
    out.append(check_cocycle(f"ctilde[alpha={G.alpha}] cocycle identity", f, qs))
    tw = qs if triple_window is None else sorted(set(triple_window), key=PInvRational.sort_key)
    out.append(_ext_check(f"K2[alpha={G.alpha}] group axioms via E_ctilde", f, tw, xs))

    # x coordinates cycle through xs so every q-pair is tried with varied fibres
    def pairs():
        for i, q in enumerate(qs):
            for j, r in enumerate(qs):
                yield K2Element(xs[i % len(xs)], q), K2Element(xs[(i + j) % len(xs)], r)

    def agrees(e1, e2):
        s = k2_add(G, e1, e2)
        return s == K2Element(*_swap(ext_add(f, (e1.q, e1.x), (e2.q, e2.x)))) and s == k2_add(G, e2, e1)

    out.append(first_failure(f"K2[alpha={G.alpha}] k2_add = ext_add(ctilde), commutative", pairs(), agrees))
    elems = [K2Element(x, q) for q in qs for x in xs]
    out.append(
        first_failure(
            f"K2[alpha={G.alpha}] k2_neg inverse",
            ((e,) for e in elems),
            lambda e: k2_add(G, e, k2_neg(G, e)) == G.zero and k2_neg(G, k2_neg(G, e)) == e,
        )
    )
    return out


def _swap(pair):
    u, a = pair
    return (a, u)


def suite_api(p: int, pis, max_exp: int, max_coef: int) -> list[CheckResult]:
    out = []
    for pi in pis:
        n_rel = min(4, pi.precision - 1)
        rel = []
        x1p = api_repeat(pi, p, A.x_gen(pi, 1))
        rel.append(x1p == A.APiNormalForm(1, pi.digit(0), ()))
        for i in range(1, n_rel + 1):
            lhs = api_repeat(pi, p, A.x_gen(pi, i + 1))
            rhs = A.api_add(pi, A.x_gen(pi, i), A.mu(pi.digit(i)))
            rel.append(lhs == rhs)
        first_bad = next((i for i, ok in enumerate(rel) if not ok), None)
        out.append(CheckResult(f"A_pi relations[pi={pi}]", first_bad is None, len(rel), None if first_bad is None else [first_bad]))
        window = api_window(pi, max_exp, max_coef)
        out.append(
            first_failure(
                f"nu homomorphism[pi={pi}]",
                product(window, window),
                lambda y1, y2: A.nu(p, A.api_add(pi, y1, y2)) == A.nu(p, y1) + A.nu(p, y2),
            )
        )

        def case_split(y):
            k, n, m = A.generator_form(pi, y)
            rebuilt = A.api_add(pi, A.x_gen(pi, n, k), A.mu(m))
            return rebuilt == y and (n == 0 or k % p != 0) and A.nu(p, y) == A.nu_case_split(p, k, n)

        out.append(first_failure(f"nu agrees with case split[pi={pi}]", ((y,) for y in window), case_split))
    u = PInvRational.from_digits(3, 0, (1, 1, 2))
    v = PInvRational.from_digits(3, 0, (2, 1, 1))
    F = A.carry_set(u, v)
    out.append(CheckResult("carry example p=3, 0.112 + 0.211", F == frozenset({1, 2, 3}), 1, None if F == {1, 2, 3} else sorted(F)))
    return out


def api_repeat(pi: A.PiUnit, c: int, y: A.APiNormalForm) -> A.APiNormalForm:
    """``y + y + ... + y`` (``c >= 0`` terms) through :func:`~extlab.api.api_add`."""
    acc = A.APiNormalForm()
    for _ in range(c):
        acc = A.api_add(pi, acc, y)
    return acc


def api_window(pi: A.PiUnit, max_exp: int, max_coef: int) -> list[A.APiNormalForm]:
    """Normal forms with ``|m|, |k| <= max_coef`` and at most ``max_exp`` fractional digits."""
    p = pi.p
    out = []
    for n in range(max_exp + 1):
        for digits in product(range(p), repeat=n):
            if n and digits[-1] == 0:
                continue
            for m in range(-max_coef, max_coef + 1):
                for k in range(-max_coef, max_coef + 1):
                    out.append(A.APiNormalForm(m, k, digits))
    return out


def suite_roundtrip(ms) -> list[CheckResult]:
    out = []
    for m in ms:
        out.append(
            first_failure(
                f"Gamma(Phi(theta)) = theta, m={m}",
                ((a,) for a in range(m)),
                lambda a: gamma_cm(phi_cm(a, m), m) == a,
            )
        )
        if m >= 2:
            # C_1 has no residue [1]; the identity is stated for m >= 2
            total = sum(g_cm(k, 1, m) for k in range(1, m))
            out.append(CheckResult(f"sum g([k],[1]) = m, m={m}", total == m, 1, None if total == m else [total]))

        def criterion(a):
            phi = is_coboundary_cm(phi_cm(a, m), m)
            return (phi is not None) == (a % m == 0)

        out.append(first_failure(f"coboundary iff m | a, m={m}", ((a,) for a in range(2 * m)), criterion))
    return out


def suite_lift(alpha: DigitName, depth: int) -> list[CheckResult]:
    res = lift_phi_alpha(alpha.padded(depth), depth)
    if isinstance(res, LiftWitness):
        return [CheckResult(f"lift phi_alpha[{alpha}] to depth {depth}", True, depth, info={"b": list(res.b)})]
    return [
        CheckResult(
            f"lift phi_alpha[{alpha}] to depth {depth}",
            False,
            res.depth,
            {"failure_depth": res.depth},
            {"b": list(res.partial)},
        )
    ]
