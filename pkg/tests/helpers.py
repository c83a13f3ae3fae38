"""Random generators shared by the test modules."""

import random
from fractions import Fraction

from eulerseidel.expr import Add, Const, Div, Mul, Neg, Sub, VarK, VarN
from eulerseidel.series import Series

SMALL = [Fraction(x) for x in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-1, 3), Fraction(5, 4)]


def rand_const(rng, nonzero=False):
    pool = SMALL if nonzero else SMALL + [Fraction(0)]
    return Const(rng.choice(pool))


def safe_denominator(rng, variables):
    """An expression that cannot vanish for n >= 0, k >= 1."""
    choices = [rand_const(rng, nonzero=True)]
    if "n" in variables:
        choices.append(Add(VarN(), Const(rng.randint(1, 3))))
    if "k" in variables:
        choices.append(Add(VarK(), Const(rng.randint(0, 2))))
    return rng.choice(choices)


def random_expr(rng, variables=("n", "k"), depth=3):
    leaves = [lambda: rand_const(rng)]
    if "n" in variables:
        leaves.append(VarN)
    if "k" in variables:
        leaves.append(VarK)
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(leaves)()
    op = rng.choice(["add", "sub", "mul", "mul", "div", "neg"])
    if op == "neg":
        return Neg(random_expr(rng, variables, depth - 1))
    left = random_expr(rng, variables, depth - 1)
    if op == "div":
        return Div(left, safe_denominator(rng, variables))
    right = random_expr(rng, variables, depth - 1)
    return {"add": Add, "sub": Sub, "mul": Mul}[op](left, right)


def nonvanishing_expr(rng, variables=("n", "k"), factors=2):
    """Product/quotient of factors that never vanish on n >= 0, k >= 1."""
    e = rand_const(rng, nonzero=True)
    for _ in range(factors):
        d = safe_denominator(rng, variables)
        e = Mul(e, d) if rng.random() < 0.5 else Div(e, d)
    return e


def random_series(rng, order, constant=None, lo=-5, hi=5):
    cs = [Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(order + 1)]
    if constant is not None:
        cs[0] = Fraction(constant)
    return Series(cs)


def random_riordan_parts(rng, order):
    """(g, f) with g0 != 0 and f = f1 t + ..., f1 != 0."""
    g = random_series(rng, order)
    if g[0] == 0:
        g = g + 1
    f = random_series(rng, order, constant=0)
    if f[1] == 0:
        f = f + Series([0, 1], order)
    return g, f


def rng_for(seed):
    return random.Random(seed)
