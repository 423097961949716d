"""Shared test utilities: safe random expressions and finite differences.

The random expression generator only produces trees whose domain is all of
R^n (log and sqrt arguments are bounded below by 1, divisors bounded away
from zero), so finite-difference probes never step outside a function's
domain.
"""

from __future__ import annotations

import numpy as np

from contactcurv import exprlang as el


def random_expr(rng: np.random.Generator, names: list[str], depth: int) -> el.Expr:
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.3:
            return el.Const(float(np.round(rng.uniform(-2.0, 2.0), 3)))
        return el.Sym(names[rng.integers(len(names))])
    pick = rng.integers(9)
    a = random_expr(rng, names, depth - 1)
    if pick == 0:
        return el.add(a, random_expr(rng, names, depth - 1))
    if pick == 1:
        return el.sub(a, random_expr(rng, names, depth - 1))
    if pick == 2:
        return el.mul(a, random_expr(rng, names, depth - 1))
    if pick == 3:
        return el.div(a, el.add(el.Const(2.0), el.Fn("cos", random_expr(rng, names, depth - 1))))
    if pick == 4:
        return el.Fn("sin", a)
    if pick == 5:
        return el.Fn("cos", a)
    if pick == 6:
        return el.Fn("log", el.add(el.Const(2.0), el.Fn("sin", a)))
    if pick == 7:
        return el.Fn("sqrt", el.add(el.Const(2.0), el.Fn("cos", a)))
    return el.pow_(a, el.Const(float(rng.integers(2, 4))))


def fd_gradient(f, x: np.ndarray, h: float) -> np.ndarray:
    g = np.zeros_like(x)
    for i in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (f(xp) - f(xm)) / (2.0 * h)
    return g


def fd_hessian(f, x: np.ndarray, h: float) -> np.ndarray:
    d = len(x)
    H = np.zeros((d, d))
    f0 = f(x)
    for i in range(d):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        H[i, i] = (f(xp) - 2.0 * f0 + f(xm)) / (h * h)
        for j in range(i + 1, d):
            xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
            xpp[[i, j]] += h
            xmm[[i, j]] -= h
            xpm[i] += h
            xpm[j] -= h
            xmp[i] -= h
            xmp[j] += h
            H[i, j] = H[j, i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h)
    return H
