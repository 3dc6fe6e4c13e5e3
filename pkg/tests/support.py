"""Shared oracles and generators for the test suite.

Everything here is deliberately independent of the package internals:
expansion oracles use plain dict convolution, expression evaluation uses
Fractions, and the unimodular sampler certifies its own determinant.
"""

from __future__ import annotations

import random
from fractions import Fraction

from weaklg.expr import Const, Diff, Expr, Pow, Prod, Quot, Sum, Var

Term = tuple[tuple[int, ...], int]


def convolve_terms(left: dict[tuple[int, ...], int], right: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in left.items():
        for eb, cb in right.items():
            key = tuple(a + b for a, b in zip(ea, eb))
            val = out.get(key, 0) + ca * cb
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def term_power(terms: dict[tuple[int, ...], int], exponent: int, nvars: int) -> dict[tuple[int, ...], int]:
    out = {tuple([0] * nvars): 1}
    for _ in range(exponent):
        out = convolve_terms(out, terms)
    return out


def coefficient_in_power(terms: dict[tuple[int, ...], int], exponent: int, target: tuple[int, ...]) -> int:
    """Coefficient of the target monomial in (sum of terms)^exponent,
    computed by straight dict convolution."""
    return term_power(terms, exponent, len(target)).get(target, 0)


def evaluate_exactly(e: Expr, env: dict[str, Fraction]) -> Fraction:
    if isinstance(e, Const):
        return Fraction(e.value)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Sum):
        return sum((evaluate_exactly(t, env) for t in e.terms), Fraction(0))
    if isinstance(e, Diff):
        return evaluate_exactly(e.left, env) - evaluate_exactly(e.right, env)
    if isinstance(e, Prod):
        out = Fraction(1)
        for f in e.factors:
            out *= evaluate_exactly(f, env)
        return out
    if isinstance(e, Quot):
        return evaluate_exactly(e.numerator, env) / evaluate_exactly(e.denominator, env)
    if isinstance(e, Pow):
        return evaluate_exactly(e.base, env) ** e.exponent
    raise TypeError(f"not an expression node: {e!r}")


def random_unimodular(rng: random.Random, n: int = 3, ops: int = 6) -> tuple[tuple[int, ...], ...]:
    """Random determinant +-1 integer matrix from elementary operations."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2)
        if kind == 0:
            c = rng.choice((1, -1))
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif kind == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-v for v in m[i]]
    return tuple(tuple(row) for row in m)


def determinant_3x3(m: tuple[tuple[int, ...], ...]) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
