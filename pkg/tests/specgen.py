"""Random twisted-code specs for the property and acceptance suites."""

import random

from coltrs.construct import TwistedCodeSpec, gen_rs
from coltrs.galois import field_from_q, in_subgroup, subgroup

SUITE_QS = (7, 9, 11, 13, 16, 25, 27, 29)
MAX_N, MAX_K = 14, 6


def _proper_orders(q):
    return [d for d in range(2, q - 1) if (q - 1) % d == 0]


def _product(F, xs):
    out = 1
    for x in xs:
        out = F.mul(out, x)
    return out


def random_spec(rng: random.Random, kind: str, q: int | None = None) -> TwistedCodeSpec:
    """One spec of the requested kind.

    ``valid``: mu in H, lambdas outside H.  ``loose``: mu and lambdas drawn
    from the whole field, so the subgroup argument usually does not apply.
    ``planted``: a valid spec whose first lambda is replaced by a product of
    multipliers of the size the criterion inspects, forcing a zero minor.
    """
    while True:
        F = field_from_q(q or rng.choice(SUITE_QS))
        orders = _proper_orders(F.q)
        if not orders:
            continue
        H = subgroup(F, rng.choice(orders))
        columns = rng.choice((1, 2))
        extended = rng.random() < 0.5
        nonzero = list(range(1, F.q))
        b, c = rng.sample(nonzero, 2)
        if kind == "loose":
            pool = [x for x in range(2, F.q)]
            lam_pool = list(range(F.q))
        else:
            pool = [h for h in H.elements if h != 1]
            lam_pool = [x for x in nonzero if not in_subgroup(x, H)]
        room = MAX_N - columns - int(extended)
        if not pool or len(lam_pool) < columns:
            continue
        m = rng.randint(1, min(len(pool), room))
        mus = rng.sample(pool, m)
        n = m + columns + int(extended)
        k = rng.randint(1, min(MAX_K, n))
        lams = rng.sample(lam_pool, columns)
        if kind == "planted":
            sizes = [s for s in ([k - 1] + ([k - 2] if extended else [])) if 0 <= s <= m]
            if not sizes:
                continue
            s = rng.choice(sizes)
            lams[0] = _product(F, rng.sample(mus, s))
            if columns == 2 and lams[0] == lams[1]:
                continue
        regime = "subgroup" if kind == "valid" else "unchecked"
        return TwistedCodeSpec(F, k, b, c, H, tuple(mus), tuple(lams), extended, regime, kind)


def suite(seed: int = 20261018, valid: int = 250, loose: int = 200, planted: int = 150):
    rng = random.Random(seed)
    out = []
    for kind, count in (("valid", valid), ("loose", loose), ("planted", planted)):
        out.extend(random_spec(rng, kind) for _ in range(count))
    return out


def random_rs(rng: random.Random):
    F = field_from_q(rng.choice(SUITE_QS))
    extended = rng.random() < 0.5
    m = rng.randint(2, min(F.q, MAX_N - int(extended)))
    pts = rng.sample(range(F.q), m)
    k = rng.randint(1, min(MAX_K, m + int(extended)))
    return gen_rs(pts, k, extended=extended, field=F)
