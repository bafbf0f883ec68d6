import itertools
import json

import pytest

from coltrs.certify import (
    INCONCLUSIVE,
    NOT_GRS,
    CertificationError,
    OversizeError,
    certify,
    criterion,
    criterion_one,
    criterion_two,
    delta_eval,
    dual_consistent,
    dual_oracle,
    min_distance,
    minor_is_zero,
    non_grs_certificate,
    oracle_mds,
    parity_closed_form,
    schur_square,
)
from coltrs.codec import encode
from coltrs.construct import TwistedCodeSpec, corollary_construct, gen_rs, generator, make_spec
from coltrs.galois import field_from_q, field_new, subgroup
from coltrs.gfmatrix import GFMatrix, mat_mul, rank, row_space_equal, transpose
from coltrs.golden import PRINTED_MODULI, REFERENCES, matrix_diff, reference_field, reference_spec
from specgen import random_rs, random_spec


def brute_first_singular(G):
    """Lexicographically first k-subset of columns with a zero minor."""
    for cols in itertools.combinations(range(G.cols), G.rows):
        if minor_is_zero(G, cols):
            return cols
    return None


def brute_min_distance(G):
    F = G.field
    best = G.cols
    for msg in itertools.product(range(F.q), repeat=G.rows):
        if any(msg):
            best = min(best, sum(1 for s in encode(list(msg), G).symbols if s))
    return best


def test_oracle_matches_brute_force(rng):
    for t in range(150):
        kind = ("valid", "loose", "planted")[t % 3]
        spec = random_spec(rng, kind)
        G = generator(spec)
        if G.cols > 11:
            continue
        first = brute_first_singular(G)
        v = oracle_mds(G)
        assert v.is_mds == (first is None)
        assert v.witness == (first or ())


def test_oracle_on_random_matrices(rng):
    F = field_new(5)
    for _ in range(100):
        k, n = rng.randint(1, 4), rng.randint(4, 7)
        G = GFMatrix.from_rows(F, [[rng.randrange(5) for _ in range(n)] for _ in range(k)])
        first = brute_first_singular(G)
        assert oracle_mds(G).witness == (first or ())


def test_oracle_parallel_agrees(example1):
    G = generator(example1)
    bad = make_spec(example1.field, 7, 12, 7, example1.mus, [4, 21], extended=True, H=14)
    for M in (G, generator(bad)):
        assert oracle_mds(M, jobs=2) == oracle_mds(M)


def test_oracle_budget():
    F = field_new(2, 6)
    G = gen_rs(list(range(60)), 10, field=F)
    with pytest.raises(OversizeError):
        oracle_mds(G)


def test_criterion_matches_oracle_on_random_specs(rng):
    for t in range(300):
        spec = random_spec(rng, ("valid", "loose", "planted")[t % 3])
        crit = criterion(spec, enumerate_all=True)
        orc = oracle_mds(generator(spec))
        assert crit.is_mds == orc.is_mds
        assert crit.witness == orc.witness
        assert criterion(spec).is_mds == orc.is_mds
        if not crit.is_mds:
            assert minor_is_zero(generator(spec), crit.witness)


def test_fast_path_on_valid_specs(example1, example2, example3):
    for spec in (example1, example2, example3):
        v = criterion(spec)
        assert v.is_mds and v.fast_path


def test_criterion_shape_guards(example1, gf29):
    one = make_spec(gf29, 3, 12, 7, [4, 5, 6], [15], H=14)
    assert criterion_one(one).is_mds
    assert criterion_two(example1).is_mds
    with pytest.raises(CertificationError):
        criterion_one(example1)
    with pytest.raises(CertificationError):
        criterion_two(one)


def test_planted_lambda_is_caught(gf29):
    # lambda_1 = product of k - 1 = 2 multipliers: the minor on those
    # two points and the first twisted column vanishes
    mus = [4, 5, 6, 7]
    spec = make_spec(gf29, 3, 12, 7, mus, [4 * 6 % 29, 21], H=14)
    want = (0, 2, 4)
    v = criterion(spec)
    assert not v.is_mds and v.witness == want
    assert oracle_mds(generator(spec)).witness == want


def test_min_distance_matches_codeword_enumeration(rng):
    count = 0
    while count < 40:
        spec = random_spec(rng, ("loose", "planted")[count % 2], q=rng.choice((7, 9, 11)))
        G = generator(spec)
        if spec.field.q ** spec.k > 20000 or rank(G) < G.rows:
            continue
        count += 1
        d = brute_min_distance(G)
        assert min_distance(G) == d
        assert min_distance(G, method="dual") == d
        assert min_distance(G, method="enumerate") == d
        assert (d == G.cols - G.rows + 1) == oracle_mds(G).is_mds


def test_min_distance_examples(example1):
    assert min_distance(generator(example1)) == 10
    F = field_new(7)
    assert min_distance(gen_rs([F.elem(x) for x in range(6)], 3)) == 4
    rep = GFMatrix.from_rows(F, [[1, 1, 0, 0], [0, 0, 1, 0]])
    assert min_distance(rep) == 1


def test_min_distance_needs_full_rank():
    F = field_new(7)
    with pytest.raises(CertificationError):
        min_distance(GFMatrix.from_rows(F, [[1, 2, 3], [2, 4, 6]]))


def test_schur_square_of_rs_is_rs(rng):
    for _ in range(200):
        G = random_rs(rng)
        k = G.rows
        if k <= G.cols / 2:
            assert schur_square(G)[1] == 2 * k - 1


def test_schur_square_matches_codeword_products(example1, rng):
    G = generator(example1)
    F = G.field
    words = [encode([rng.randrange(F.q) for _ in range(G.rows)], G).symbols for _ in range(40)]
    prods = [[F.mul(x, y) for x, y in zip(u, v)] for u, v in itertools.combinations(words, 2)]
    S, dim = schur_square(G)
    assert dim == 14 == rank(GFMatrix.from_rows(F, prods))
    assert row_space_equal(S, GFMatrix.from_rows(F, prods))


def test_schur_dimension_2k_with_enough_points(rng):
    """With at least 2k - 1 evaluation points the square has dimension 2k."""
    checked = 0
    while checked < 150:
        spec = random_spec(rng, "valid")
        if spec.k < 3 or spec.m < 2 * spec.k - 1:
            continue
        checked += 1
        assert schur_square(generator(spec))[1] == 2 * spec.k


def test_schur_dimension_can_drop_at_k_equal_half_n():
    # a valid two-column [6, 3] MDS code over GF(11) whose square has
    # dimension 2k - 1: four points cannot carry the degree <= 4 part
    F = field_new(11)
    spec = TwistedCodeSpec(F, 3, 4, 8, subgroup(F, 5), (5, 4, 9, 3), (7, 8))
    assert spec.criterion_guaranteed()
    G = generator(spec)
    assert oracle_mds(G).is_mds
    words = [encode(list(m), G).symbols for m in itertools.product(range(11), repeat=3)]
    prods = [[F.mul(x, y) for x, y in zip(u, v)] for u, v in zip(words[1::7], words[2::5])]
    assert schur_square(G)[1] == 5 == rank(GFMatrix.from_rows(F, prods))


def test_non_grs_certificate(example1, gf29):
    assert non_grs_certificate(generator(example1)) == NOT_GRS
    rs = gen_rs([gf29.elem(x) for x in range(12)], 4)
    assert non_grs_certificate(rs) == INCONCLUSIVE
    with pytest.raises(CertificationError):
        non_grs_certificate(gen_rs([gf29.elem(x) for x in range(12)], 2))
    with pytest.raises(CertificationError):
        non_grs_certificate(gen_rs([gf29.elem(x) for x in range(12)], 7))


def test_delta_eval_examples():
    F = field_new(7)
    pts = [F.elem(x) for x in (1, 2, 3)]
    assert delta_eval(pts, 2, F.elem(0), 3).value == 3
    assert delta_eval(pts, 1, F.elem(5), 1).value == 1
    for l in (1, 2, 3):
        for j in (1, 2, 3):
            if j != l:
                assert delta_eval(pts, l, pts[j - 1]).value == 0
        assert delta_eval(pts, l, pts[l - 1]).value != 0
    with pytest.raises(CertificationError):
        delta_eval(pts, 4, F.elem(0))


def test_closed_form_matches_printed_parity_checks():
    for number in (1, 2, 3):
        ref = REFERENCES[number]
        F = reference_field(number, PRINTED_MODULI.get(number))
        spec = reference_spec(number, F, printed=True)
        assert matrix_diff(parity_closed_form(spec), ref.H) == []


def test_closed_form_on_random_two_column_specs(rng):
    checked = 0
    while checked < 150:
        spec = random_spec(rng, ("valid", "loose", "planted")[checked % 3])
        if spec.columns != 2 or spec.m < spec.k or (spec.extended and spec.k > spec.n / 2):
            continue
        checked += 1
        G = generator(spec)
        H = parity_closed_form(spec)
        assert H.rows == spec.n - spec.k
        assert mat_mul(H, transpose(G)).is_zero()
        assert row_space_equal(H, dual_oracle(G))
        assert dual_consistent(H, G)


def test_closed_form_preconditions(gf29, example1):
    with pytest.raises(CertificationError):
        parity_closed_form(make_spec(gf29, 3, 12, 7, [4, 5, 6], [15], H=14))
    with pytest.raises(CertificationError):
        parity_closed_form(make_spec(gf29, 4, 12, 7, [4, 5, 6], [15, 21], H=14))
    with pytest.raises(CertificationError):
        parity_closed_form(make_spec(gf29, 5, 12, 7, [4, 5, 6, 7, 9], [15, 21], extended=True, H=14))


def test_dual_oracle_basics(rng):
    F = field_new(7)
    G = GFMatrix.from_rows(F, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
    D = dual_oracle(G)
    assert D.entries == ((0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1))
    for _ in range(30):
        R = random_rs(rng)
        if R.rows == R.cols:
            continue
        assert row_space_equal(dual_oracle(dual_oracle(R)), R)
    with pytest.raises(CertificationError):
        dual_oracle(GFMatrix.from_rows(F, [[1, 2, 3], [2, 4, 6]]))


def test_dual_of_mds_is_mds(rng):
    for _ in range(120):
        spec = random_spec(rng, "valid")
        G = generator(spec)
        if spec.k == spec.n:
            continue
        assert oracle_mds(dual_oracle(G)).is_mds


def test_certify_example_1(example1):
    rep = certify(example1)
    assert (rep.n, rep.k, rep.d) == (16, 7, 10)
    assert rep.is_mds and rep.witness == []
    assert rep.schur_dim == 14 and rep.non_grs is True
    assert rep.dual_ok is True
    assert rep.criterion_mds is True and rep.oracle_mds is True
    blob = json.loads(rep.to_json())
    assert {"n", "k", "d", "is_mds", "witness", "schur_dim", "non_grs", "dual_ok", "mode"} <= set(blob)


def test_certify_modes(example1, gf29):
    assert certify(example1, mode="criterion").mode == "criterion-only"
    assert certify(example1, mode="criterion").oracle_mds is None
    assert certify(generator(example1), mode="both").mode == "oracle"
    with pytest.raises(CertificationError):
        certify(generator(example1), mode="criterion")
    with pytest.raises(ValueError):
        certify(example1, mode="vibes")
    bad = make_spec(gf29, 3, 12, 7, [4, 5, 6, 7], [24, 21], H=14)
    rep = certify(bad)
    assert not rep.is_mds and rep.d < rep.n - rep.k + 1
    assert rep.witness == list(oracle_mds(generator(bad)).witness)


def test_criterion_only_above_oracle_budget():
    F = field_from_q(64)
    spec = corollary_construct(F, 10, "even-cubics")
    rep = certify(spec, mode="criterion", distance=False)
    assert rep.is_mds and rep.mode == "criterion-only"
