import random

import pytest

from foliana import CPoly2, VectorField
from foliana.errors import FolianaError


def random_poly(rng, degree, lo=-3, hi=3, density=0.7, gaussian=False):
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if rng.random() < density:
                re = rng.randint(lo, hi)
                im = rng.randint(lo, hi) if gaussian else 0
                if re or im:
                    terms[(i, j)] = complex(re, im) if gaussian else re
    from foliana.scalars import GaussRat
    return CPoly2({k: GaussRat(v.real, v.imag) if isinstance(v, complex) else v for k, v in terms.items()})


def random_fields(seed, degree, count, predicate=None, gaussian=False):
    """Deterministic stream of valid fields (rejecting common factors and the zero field)."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("random field generator starved")
        P, Q = random_poly(rng, degree, gaussian=gaussian), random_poly(rng, degree, gaussian=gaussian)
        try:
            vf = VectorField(P, Q)
        except FolianaError:
            continue
        if predicate is None or predicate(vf):
            out.append(vf)
    return out


@pytest.fixture
def pd_field():
    return VectorField("x+y", "y")
