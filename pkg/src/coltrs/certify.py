"""MDS decisions, minimum distance, Schur squares and parity-check matrices.

Column indices in witnesses are 0-based and sorted; add 1 to each to get
the 1-based column numbering used in printed generator matrices.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Sequence

from .construct import TwistedCodeSpec, generator
from .galois import FieldElement, FieldSpec
from .gfmatrix import GFMatrix, mat_mul, nullspace, rank, rref_with_pivots, row_space_equal, transpose

# largest C(n, k) the minor oracle will sweep before demanding criterion-only mode
ORACLE_BUDGET = 2_000_000
ENUMERATION_BUDGET = 10_000_000


class CertificationError(ValueError):
    pass


class OversizeError(CertificationError):
    pass


@dataclass(frozen=True)
class Verdict:
    is_mds: bool
    witness: tuple[int, ...] = ()
    fast_path: bool = False

    def __bool__(self):
        return self.is_mds


# -- incremental column independence ------------------------------------------------

def _reduce(F: FieldSpec, basis: list[tuple[int, list[int]]], v: list[int]) -> tuple[int, list[int]] | None:
    """Reduce v against an echelon basis; None if v is in its span."""
    v = list(v)
    add, mul, neg = F.add, F.mul, F.neg
    for piv, bvec in basis:
        x = v[piv]
        if x:
            f = neg(x)
            for i, y in enumerate(bvec):
                if y:
                    v[i] = add(v[i], mul(f, y))
    for i, x in enumerate(v):
        if x:
            s = F.inv(x)
            return i, [mul(s, y) for y in v]
    return None


def _first_singular(F: FieldSpec, cols: list[list[int]], k: int, first: Sequence[int] | None = None) -> tuple[int, ...] | None:
    """Lexicographically first dependent k-subset of ``cols``.

    Depth-first over index sets in lexicographic order.  Once a prefix is
    dependent, its smallest completion is the answer, since every smaller
    k-set has already been visited.
    """
    n = len(cols)
    prefix: list[int] = []

    def dfs(start: int, basis, choices) -> tuple[int, ...] | None:
        depth = len(prefix)
        for j in choices if choices is not None else range(start, n - (k - depth) + 1):
            reduced = _reduce(F, basis, cols[j])
            if reduced is None:
                return tuple(prefix) + (j,) + tuple(range(j + 1, j + k - depth))
            if depth + 1 == k:
                continue
            prefix.append(j)
            hit = dfs(j + 1, basis + [reduced], None)
            prefix.pop()
            if hit is not None:
                return hit
        return None

    return dfs(0, [], first)


def _sweep_partition(args):
    F, cols, k, firsts = args
    return _first_singular(F, cols, k, firsts)


def oracle_mds(G: GFMatrix, jobs: int = 1) -> Verdict:
    """Ground truth: every k x k minor of G is nonsingular.

    On failure the witness is the lexicographically first singular column
    set.  ``jobs > 1`` splits the sweep by first column index.
    """
    k, n = G.rows, G.cols
    if k > n:
        raise CertificationError(f"k = {k} exceeds n = {n}")
    if k == 0:
        return Verdict(True)
    if math.comb(n, k) > ORACLE_BUDGET:
        raise OversizeError(f"C({n},{k}) = {math.comb(n, k)} minors exceeds the oracle budget")
    F = G.field
    cols = [G.column(j) for j in range(n)]
    firsts = list(range(n - k + 1))
    if jobs > 1 and len(firsts) > 1:
        chunks = [[f] for f in firsts]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_partition, [(F, cols, k, c) for c in chunks]))
        hits = [r for r in results if r is not None]
        return Verdict(False, min(hits)) if hits else Verdict(True)
    hit = _first_singular(F, cols, k, firsts)
    return Verdict(hit is None, hit or ())


def minor_is_zero(G: GFMatrix, columns: Sequence[int]) -> bool:
    from .gfmatrix import det, submatrix
    return not det(submatrix(G, None, columns))


# -- subgroup criteria -------------------------------------------------------------

def _criterion_sizes(spec: TwistedCodeSpec) -> list[int]:
    sizes = [spec.k - 1]
    if spec.extended:
        sizes.insert(0, spec.k - 2)
    return [s for s in sizes if 0 <= s <= spec.m]


def _coset_fast_path(spec: TwistedCodeSpec) -> bool:
    """True when no product of s distinct multipliers can equal any lambda,
    decided on cosets of H: products of s multipliers only reach a known
    set of cosets, and a lambda in any other coset is never hit."""
    F, H = spec.field, spec.H
    index = (F.q - 1) // H.order
    if index == 1:
        return False
    sizes = _criterion_sizes(spec)
    top = max(sizes, default=0)
    reach = [set() for _ in range(top + 1)]
    reach[0].add(0)
    for mu in spec.mus:
        r = F.log(mu) % index
        for cnt in range(top, 0, -1):
            reach[cnt] |= {(x + r) % index for x in reach[cnt - 1]}
    hit = set().union(*(reach[s] for s in sizes)) if sizes else set()
    return all(lam == 0 or F.log(lam) % index not in hit for lam in spec.lambdas)


def _both_twisted_nonzero(spec: TwistedCodeSpec) -> bool:
    """Minors that contain both twisted columns equal (lambda_1 - lambda_2)
    times a Vandermonde determinant on a subset of {a_i} + {b, c} (the
    infinity column, if present, just drops the top row).  They are
    nonzero exactly when lambda_1 != lambda_2 and those nodes are distinct."""
    if spec.columns < 2:
        return True
    nodes = list(spec.points) + [spec.b, spec.c]
    return spec.lambdas[0] != spec.lambdas[1] and len(set(nodes)) == len(nodes)


def _criterion(spec: TwistedCodeSpec, enumerate_all: bool) -> Verdict:
    F = spec.field
    if not _both_twisted_nonzero(spec):
        raise CertificationError("twisted columns collide; spec invariants violated")
    fast = _coset_fast_path(spec)
    if fast and not enumerate_all:
        return Verdict(True, (), True)

    b_diff = [F.sub(spec.b, a) for a in spec.points]
    c_diff = [F.sub(spec.c, a) for a in spec.points]
    tw = spec.twisted_indices
    inf = spec.infinity_index
    best: tuple[int, ...] | None = None
    for s in _criterion_sizes(spec):
        for subset in itertools.combinations(range(spec.m), s):
            pb = F.prod(b_diff[i] for i in subset)
            pc = F.prod(c_diff[i] for i in subset)
            for lam, t in zip(spec.lambdas, tw):
                if F.sub(pb, F.mul(lam, pc)) == 0:
                    cols = subset + (t,) + ((inf,) if s == spec.k - 2 else ())
                    if best is None or cols < best:
                        best = cols
    if fast and best is not None:
        raise CertificationError("coset argument and enumeration disagree")
    return Verdict(best is None, best or (), fast)


def criterion_one(spec: TwistedCodeSpec, enumerate_all: bool = False) -> Verdict:
    """One-column MDS criterion on (k-1)-subsets (and (k-2)-subsets when
    extended) of evaluation points.  Witness: lexicographically first
    violating column set, same convention as :func:`oracle_mds`."""
    if spec.columns != 1:
        raise CertificationError("criterion_one needs a one-column spec")
    return _criterion(spec, enumerate_all)


def criterion_two(spec: TwistedCodeSpec, enumerate_all: bool = False) -> Verdict:
    if spec.columns != 2:
        raise CertificationError("criterion_two needs a two-column spec")
    return _criterion(spec, enumerate_all)


def criterion(spec: TwistedCodeSpec, enumerate_all: bool = False) -> Verdict:
    return _criterion(spec, enumerate_all)


# -- distance ------------------------------------------------------------------------

def _min_dependent(F: FieldSpec, cols: list[list[int]], limit: int) -> int | None:
    """Size of the smallest linearly dependent subset of ``cols`` (<= limit)."""
    best = [limit + 1]

    def dfs(start: int, depth: int, basis) -> None:
        for j in range(start, len(cols)):
            if depth + 1 >= best[0]:
                return
            reduced = _reduce(F, basis, cols[j])
            if reduced is None:
                best[0] = depth + 1
                return
            dfs(j + 1, depth + 1, basis + [reduced])

    dfs(0, 0, [])
    return best[0] if best[0] <= limit else None


def _min_weight_sweep(G: GFMatrix) -> int:
    F, k, n = G.field, G.rows, G.cols
    add, mul = F.add, F.mul
    best = n + 1
    for lead in range(k):
        # messages with first nonzero coordinate equal to 1 at position ``lead``
        for tail in itertools.product(range(F.q), repeat=k - lead - 1):
            msg = (1,) + tail
            rows = G.entries[lead:]
            weight = 0
            for j in range(n):
                acc = 0
                for x, r in zip(msg, rows):
                    if x:
                        acc = add(acc, mul(x, r[j]))
                if acc:
                    weight += 1
            if weight < best:
                best = weight
                if best == 1:
                    return 1
    return best


def min_distance(G: GFMatrix, method: str = "auto", jobs: int = 1) -> int:
    """Exact minimum Hamming distance of the row space of full-rank G.

    ``auto`` returns n - k + 1 when the minor oracle certifies MDS and
    otherwise picks the cheaper exhaustive route: a codeword sweep or a
    search for the smallest dependent column set of a parity-check matrix.
    ``enumerate`` and ``dual`` force one route.
    """
    k, n = G.rows, G.cols
    if rank(G) != k:
        raise CertificationError("generator must have full row rank")
    F = G.field
    sweep_cost = (F.q ** k - 1) // (F.q - 1) if k else 0
    if method == "enumerate":
        if sweep_cost > ENUMERATION_BUDGET:
            raise OversizeError(f"codeword sweep of {sweep_cost} messages exceeds budget")
        return _min_weight_sweep(G)
    if method == "auto" and math.comb(n, k) <= ORACLE_BUDGET and oracle_mds(G, jobs):
        return n - k + 1
    if method not in ("auto", "dual"):
        raise ValueError(f"unknown method {method!r}")
    Hm = nullspace(G)
    if Hm.rows == 0:
        return 1
    dual_cost = sum(math.comb(n, s) for s in range(1, n - k + 2))
    if method == "auto" and sweep_cost <= min(dual_cost, ENUMERATION_BUDGET):
        return _min_weight_sweep(G)
    if dual_cost > ENUMERATION_BUDGET * 10:
        raise OversizeError("minimum distance search exceeds budget")
    d = _min_dependent(F, [Hm.column(j) for j in range(n)], n - k + 1)
    return d if d is not None else n - k + 1


# -- Schur square ------------------------------------------------------------------

def schur_square(G: GFMatrix) -> tuple[GFMatrix, int]:
    """Span of all coordinatewise products g_i * g_j (i <= j) of rows of G,
    returned in reduced echelon form together with its dimension."""
    F = G.field
    mul = F.mul
    prods = []
    for i in range(G.rows):
        for j in range(i, G.rows):
            prods.append(tuple(mul(x, y) for x, y in zip(G.entries[i], G.entries[j])))
    R, pivots = rref_with_pivots(GFMatrix(F, len(prods), G.cols, tuple(prods)))
    return R, len(pivots)


NOT_GRS = "NOT-GRS-EQUIVALENT"
INCONCLUSIVE = "INCONCLUSIVE"


def non_grs_certificate(G: GFMatrix, k: int | None = None) -> str:
    """Schur-square distinguisher against (extended) RS codes.

    For 3 <= k <= n/2 an RS or extended RS code has a Schur square of
    dimension exactly 2k - 1, so any other dimension rules out equivalence.
    A matching dimension proves nothing.
    """
    k = G.rows if k is None else k
    n = G.cols
    if not 3 <= k <= n / 2:
        raise CertificationError(f"certificate needs 3 <= k <= n/2 (k = {k}, n = {n})")
    _, dim = schur_square(G)
    return NOT_GRS if dim != 2 * k - 1 else INCONCLUSIVE


# -- closed-form duals -------------------------------------------------------------

def delta_eval(points: Sequence[FieldElement], l: int, x: FieldElement, k: int | None = None) -> FieldElement:
    """prod over i = 1..k, i != l of (a_i - x); ``l`` is 1-based."""
    F = x.field
    k = len(points) if k is None else k
    if not 1 <= l <= k or k > len(points):
        raise CertificationError(f"index l = {l} out of range for k = {k}")
    vals = [p.value for p in points[:k]]
    return FieldElement(F, _delta(F, vals, l - 1, x.value))


def _delta(F: FieldSpec, first_k: Sequence[int], l0: int, x: int) -> int:
    out = 1
    for i, a in enumerate(first_k):
        if i != l0:
            out = F.mul(out, F.sub(a, x))
    return out


def parity_closed_form(spec: TwistedCodeSpec, check: bool = True) -> GFMatrix:
    """Closed-form parity-check matrix of a two-column code.

    The first k columns carry Lagrange-basis values over the first k
    evaluation points; each remaining coordinate gets its own row with a -1
    in that coordinate.
    """
    if spec.columns != 2:
        raise CertificationError("closed-form parity check exists for two-column codes only")
    F, k, m, n = spec.field, spec.k, spec.m, spec.n
    if m < k:
        raise CertificationError(f"need at least k = {k} evaluation points, have {m}")
    if spec.extended and not k <= n / 2:
        raise CertificationError(f"extended closed form requires k <= n/2 (k = {k}, n = {n})")
    pts = spec.points
    first = pts[:k]
    denom = [F.inv(_delta(F, first, l, first[l])) for l in range(k)]
    minus_one = F.neg(1)

    def row(left: list[int], pivot: int) -> tuple[int, ...]:
        r = left + [0] * (n - k)
        r[pivot] = minus_one
        return tuple(r)

    rows = []
    for r in range(k, m):
        rows.append(row([F.mul(_delta(F, first, l, pts[r]), denom[l]) for l in range(k)], r))
    for lam, t in zip(spec.lambdas, spec.twisted_indices):
        rows.append(row([
            F.mul(F.sub(_delta(F, first, l, spec.b), F.mul(lam, _delta(F, first, l, spec.c))), denom[l])
            for l in range(k)
        ], t))
    if spec.extended:
        sign = 1 if (k + 1) % 2 == 0 else minus_one
        rows.append(row([F.mul(sign, denom[l]) for l in range(k)], spec.infinity_index))
    H = GFMatrix(F, len(rows), n, tuple(rows))
    if check and not mat_mul(H, transpose(generator(spec))).is_zero():
        raise CertificationError("closed-form parity check fails H G^T = 0 (implementation bug)")
    return H


def dual_oracle(G: GFMatrix) -> GFMatrix:
    """Nullspace basis of G by elimination."""
    if rank(G) != G.rows:
        raise CertificationError("generator is rank deficient")
    return nullspace(G)


def dual_consistent(H: GFMatrix, G: GFMatrix) -> bool:
    """H G^T = 0, H has n - k rows, and H spans the whole dual."""
    if H.rows != G.cols - G.rows or not mat_mul(H, transpose(G)).is_zero():
        return False
    return row_space_equal(H, dual_oracle(G))


# -- reports ----------------------------------------------------------------------

@dataclass
class CertificateReport:
    n: int
    k: int
    d: int | None
    is_mds: bool
    witness: list[int] = dc_field(default_factory=list)
    schur_dim: int | None = None
    non_grs: bool | str | None = None
    dual_ok: bool | None = None
    mode: str = "oracle"
    criterion_mds: bool | None = None
    oracle_mds: bool | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def certify(code: GFMatrix | TwistedCodeSpec, mode: str = "both", jobs: int = 1,
            distance: bool = True) -> CertificateReport:
    """Run every applicable check and collect the results.

    ``mode`` is ``oracle``, ``criterion`` (alias ``criterion-only``) or
    ``both``; when both run and disagree a CertificationError is raised.
    """
    spec = code if isinstance(code, TwistedCodeSpec) else None
    G = generator(spec) if spec is not None else code
    k, n = G.rows, G.cols
    if mode == "criterion-only":
        mode = "criterion"
    if mode not in ("oracle", "criterion", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "criterion" and spec is None:
        raise CertificationError("criterion mode needs a code spec, not a bare matrix")
    if spec is None:
        mode = "oracle"

    crit = criterion(spec) if spec is not None and mode != "oracle" else None
    orc = oracle_mds(G, jobs) if mode != "criterion" else None
    if crit is not None and orc is not None:
        if crit.is_mds != orc.is_mds:
            raise CertificationError("criterion and minor oracle disagree")
        if not orc.is_mds and crit.witness != orc.witness:
            raise CertificationError("criterion and minor oracle witnesses differ")
    primary = orc if orc is not None else crit
    is_mds = primary.is_mds

    d = None
    if distance:
        if is_mds:
            d = n - k + 1
        else:
            d = min_distance(G, method="dual" if math.comb(n, k) > ORACLE_BUDGET else "auto")

    _, sdim = schur_square(G)
    non_grs: bool | str | None = None
    if 3 <= k <= n / 2:
        non_grs = True if sdim != 2 * k - 1 else "inconclusive"

    dual_ok = None
    if spec is not None and spec.columns == 2 and spec.m >= k and (not spec.extended or k <= n / 2):
        dual_ok = dual_consistent(parity_closed_form(spec, check=False), G)

    return CertificateReport(
        n=n, k=k, d=d, is_mds=is_mds, witness=list(primary.witness), schur_dim=sdim,
        non_grs=non_grs, dual_ok=dual_ok,
        mode={"oracle": "oracle", "criterion": "criterion-only", "both": "both"}[mode],
        criterion_mds=crit.is_mds if crit is not None else None,
        oracle_mds=orc.is_mds if orc is not None else None,
    )
