"""Random generators, independent oracles and the acceptance log shared by the tests."""

import contextlib
import random

from gmpy2 import mpq

from threewebs.series import Series1, Series2

ACCEPTANCE = []  # (criterion, title, passed)


@contextlib.contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        ACCEPTANCE.append((number, title, False))
        raise
    ACCEPTANCE.append((number, title, True))


def rand_rat(rng, num=5, den=4, nonzero=False):
    while True:
        v = mpq(rng.randint(-num, num), rng.randint(1, den))
        if v or not nonzero:
            return v


def random_series2(rng, order, min_deg=0, max_deg=None, density=0.6, num=5, den=4):
    max_deg = order if max_deg is None else max_deg
    coeffs = {}
    for d in range(min_deg, max_deg + 1):
        for r in range(d + 1):
            if rng.random() < density:
                coeffs[(r, d - r)] = rand_rat(rng, num, den)
    return Series2(coeffs, order)


def random_diffeo1(rng, order, max_deg=None, num=3, den=3):
    """t -> c1 t + ... with c1 != 0 and random rational higher terms."""
    max_deg = order if max_deg is None else max_deg
    coeffs = {1: rand_rat(rng, num, den, nonzero=True)}
    for d in range(2, max_deg + 1):
        coeffs[d] = rand_rat(rng, num, den)
    return Series1(coeffs, order)


def seeded(seed):
    return random.Random(seed)


# -- independent oracles -------------------------------------------------------


def naive_mul(a: dict, b: dict) -> dict:
    """Untruncated schoolbook product of {(r, s): c} polynomials."""
    out = {}
    for (r1, s1), c1 in a.items():
        for (r2, s2), c2 in b.items():
            k = (r1 + r2, s1 + s2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def naive_pow(a: dict, k: int) -> dict:
    out = {(0, 0): mpq(1)}
    for _ in range(k):
        out = naive_mul(out, a)
    return out


def naive_truncate(a: dict, order: int) -> dict:
    return {k: v for k, v in a.items() if k[0] + k[1] <= order and v}


def naive_compose(f: dict, p: dict, q: dict, order: int) -> dict:
    """sum c_rs p^r q^s by plain expansion, truncated only at the end."""
    out = {}
    for (r, s), c in f.items():
        term = naive_mul(naive_pow(p, r), naive_pow(q, s))
        for k, v in term.items():
            out[k] = out.get(k, 0) + c * v
    return naive_truncate(out, order)


def as_dict(s: Series2) -> dict:
    return dict(s.items())
