"""Generator matrices for Reed-Solomon codes and column twisted RS codes.

A column twisted code appends to the k x m Vandermonde matrix on the
evaluation points a_1..a_m one or two columns

    (1 - lam, b - lam*c, b^2 - lam*c^2, ..., b^(k-1) - lam*c^(k-1))^T

and, for the extended variant, a final (0, ..., 0, 1)^T column.  The
evaluation points are derived from multipliers mu_i != 1 by

    a_i = (b - mu_i*c) / (1 - mu_i),

so that (b - a_i)/(c - a_i) = mu_i.  Column order is always: points,
twisted columns, infinity column.  Lengths follow from m:

    ======================  ======
    one column, plain       m + 1
    one column, extended    m + 2
    two columns, plain      m + 2
    two columns, extended   m + 3
    ======================  ======
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .galois import (
    FieldElement,
    FieldError,
    FieldSpec,
    SubgroupSpec,
    in_subgroup,
    parse_field,
    prime_factors,
    subgroup,
)
from .gfmatrix import GFMatrix, hstack


class ConstructionError(ValueError):
    pass


REGIMES = ("subgroup", "even-cubics", "unchecked")
SHAPES = ("one", "one-ext", "two", "two-ext")


def _vals(xs, field: FieldSpec | None = None) -> list[int]:
    out = []
    for x in xs:
        if isinstance(x, FieldElement):
            if field is not None and x.field != field:
                raise ConstructionError("element from a different field")
            out.append(x.value)
        else:
            out.append(field.elem(x).value if field is not None else int(x))
    return out


def _eval_points(F: FieldSpec, b: int, c: int, mus: Sequence[int]) -> list[int]:
    if b == c:
        raise ConstructionError("b and c must be distinct")
    if len(set(mus)) != len(mus):
        raise ConstructionError("multipliers must be distinct")
    points = []
    for mu in mus:
        if mu == 1:
            raise ConstructionError("multiplier 1 is not allowed")
        points.append(F.div(F.sub(b, F.mul(mu, c)), F.sub(1, mu)))
    # distinct mu with mu != 1 make the a_i distinct and avoid {b, c}
    if len(set(points)) != len(points) or b in points or c in points:
        raise ConstructionError("derived evaluation points collide")
    return points


def eval_points(b: FieldElement, c: FieldElement, mus: Sequence[FieldElement]) -> list[FieldElement]:
    """a_i = (b - mu_i c) / (1 - mu_i) for each multiplier."""
    F = b.field
    pts = _eval_points(F, b.value, _vals([c], F)[0], _vals(mus, F))
    return [FieldElement(F, a) for a in pts]


def _vandermonde(F: FieldSpec, points: Sequence[int], k: int) -> list[list[int]]:
    return [[F.pow(a, i) for a in points] for i in range(k)]


def _infinity_column(F: FieldSpec, k: int) -> GFMatrix:
    return GFMatrix(F, k, 1, tuple((int(i == k - 1),) for i in range(k)))


def gen_rs(points: Sequence[FieldElement], k: int, extended: bool = False, field: FieldSpec | None = None) -> GFMatrix:
    """k x n Vandermonde generator; row i holds the i-th powers of the points."""
    F = field if field is not None else points[0].field
    pts = _vals(points, F)
    if len(set(pts)) != len(pts):
        raise ConstructionError("duplicate evaluation points")
    if k < 1 or k > len(pts) + int(extended):
        raise ConstructionError(f"k = {k} does not fit {len(pts)} points")
    G = GFMatrix(F, k, len(pts), tuple(tuple(r) for r in _vandermonde(F, pts, k)))
    return hstack(G, _infinity_column(F, k)) if extended else G


def twisted_column(F: FieldSpec, b: int, c: int, lam: int, k: int) -> list[int]:
    """(b^i - lam * c^i) for i = 0..k-1."""
    return [F.sub(F.pow(b, i), F.mul(lam, F.pow(c, i))) for i in range(k)]


@dataclass(frozen=True)
class TwistedCodeSpec:
    """Complete recipe for a one- or two-column twisted RS code.

    Field values are canonical integers of ``field``.  ``regime`` records
    why the code is expected to be MDS: ``subgroup`` (all mu in H, all
    lambda outside H), ``even-cubics`` (mu in {w^2} and H minus 1, lambda in wH),
    or ``unchecked`` (nothing is promised; certify decides).
    """

    field: FieldSpec
    k: int
    b: int
    c: int
    H: SubgroupSpec
    mus: tuple[int, ...]
    lambdas: tuple[int, ...]
    extended: bool = False
    regime: str = "subgroup"
    variant: str = "custom"

    def __post_init__(self):
        F = self.field
        if self.H.field != F:
            raise ConstructionError("subgroup lives in a different field")
        if len(self.lambdas) not in (1, 2):
            raise ConstructionError("one or two twist scalars required")
        if len(self.lambdas) == 2 and self.lambdas[0] == self.lambdas[1]:
            raise ConstructionError("lambda_1 == lambda_2 duplicates a column")
        if self.regime not in REGIMES:
            raise ConstructionError(f"unknown regime {self.regime!r}")
        if self.k < 1:
            raise ConstructionError("k must be >= 1")
        _eval_points(F, self.b, self.c, self.mus)
        if self.k > self.n:
            raise ConstructionError(f"k = {self.k} exceeds length n = {self.n}")

    @property
    def columns(self) -> int:
        return len(self.lambdas)

    @property
    def m(self) -> int:
        return len(self.mus)

    @property
    def n(self) -> int:
        return self.m + self.columns + int(self.extended)

    @cached_property
    def points(self) -> tuple[int, ...]:
        return tuple(_eval_points(self.field, self.b, self.c, self.mus))

    @property
    def twisted_indices(self) -> list[int]:
        return [self.m + j for j in range(self.columns)]

    @property
    def infinity_index(self) -> int | None:
        return self.n - 1 if self.extended else None

    @property
    def shape(self) -> str:
        return ("one" if self.columns == 1 else "two") + ("-ext" if self.extended else "")

    def criterion_guaranteed(self) -> bool:
        """True when the subgroup argument alone proves the MDS property."""
        F, H = self.field, self.H
        if self.regime == "subgroup":
            return all(in_subgroup(mu, H) for mu in self.mus) and not any(
                in_subgroup(lam, H) for lam in self.lambdas if lam)
        if self.regime == "even-cubics":
            w2 = F.exp(2)
            ok_mu = all(in_subgroup(mu, H) or in_subgroup(F.div(mu, w2), H) for mu in self.mus)
            outside = all(lam and not in_subgroup(lam, H) and not in_subgroup(F.div(lam, w2), H)
                          for lam in self.lambdas)
            return ok_mu and outside and sum(not in_subgroup(mu, H) for mu in self.mus) <= 1
        return False

    def bookkeeping(self) -> str:
        return f"{self.m} points -> n = {self.n} ({self.shape}, k = {self.k})"

    def to_dict(self) -> dict:
        F = self.field
        return {
            "field": F.describe(),
            "k": self.k,
            "b": F.format(self.b),
            "c": F.format(self.c),
            "subgroup_order": self.H.order,
            "mu_exponents": [F.log(mu) for mu in self.mus],
            "lambdas": [F.format(lam) for lam in self.lambdas],
            "extended": self.extended,
            "regime": self.regime,
            "variant": self.variant,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def spec_from_dict(obj: dict) -> TwistedCodeSpec:
    try:
        F = parse_field(obj["field"])
        return TwistedCodeSpec(
            field=F,
            k=int(obj["k"]),
            b=F.parse(str(obj["b"])),
            c=F.parse(str(obj["c"])),
            H=subgroup(F, int(obj["subgroup_order"])),
            mus=tuple(F.exp(e) for e in obj["mu_exponents"]),
            lambdas=tuple(F.parse(str(t)) for t in obj["lambdas"]),
            extended=bool(obj.get("extended", False)),
            regime=obj.get("regime", "subgroup"),
            variant=obj.get("variant", "custom"),
        )
    except KeyError as exc:
        raise ConstructionError(f"spec is missing key {exc}") from None


def spec_from_json(text: str) -> TwistedCodeSpec:
    return spec_from_dict(json.loads(text))


def make_spec(field: FieldSpec, k: int, b, c, mus, lambdas, *, extended: bool = False,
              H: SubgroupSpec | int | None = None, regime: str | None = None,
              variant: str = "custom") -> TwistedCodeSpec:
    """Convenience constructor accepting FieldElements, ints or tokens.

    Without an explicit ``regime`` the spec is tagged ``subgroup`` when the
    subgroup argument applies and ``unchecked`` otherwise.
    """
    def one(x):
        if isinstance(x, str):
            return field.parse(x)
        return _vals([x], field)[0]

    if H is None:
        H = subgroup(field, field.q - 1)
    elif isinstance(H, int):
        H = subgroup(field, H)
    spec = TwistedCodeSpec(field, k, one(b), one(c), H, tuple(one(x) for x in mus),
                           tuple(one(x) for x in lambdas), extended,
                           regime or "subgroup", variant)
    if regime is None and not spec.criterion_guaranteed():
        spec = TwistedCodeSpec(field, k, spec.b, spec.c, H, spec.mus, spec.lambdas,
                               extended, "unchecked", variant)
    return spec


def _assemble(spec: TwistedCodeSpec) -> GFMatrix:
    F, k = spec.field, spec.k
    rows = _vandermonde(F, spec.points, k)
    for lam in spec.lambdas:
        col = twisted_column(F, spec.b, spec.c, lam, k)
        for r, v in zip(rows, col):
            r.append(v)
    G = GFMatrix(F, k, len(rows[0]), tuple(tuple(r) for r in rows))
    return hstack(G, _infinity_column(F, k)) if spec.extended else G


def gen_one_column(spec: TwistedCodeSpec) -> GFMatrix:
    if spec.columns != 1:
        raise ConstructionError("gen_one_column needs exactly one lambda")
    return _assemble(spec)


def gen_two_column(spec: TwistedCodeSpec) -> GFMatrix:
    if spec.columns != 2:
        raise ConstructionError("gen_two_column needs two lambdas")
    return _assemble(spec)


def generator(spec: TwistedCodeSpec) -> GFMatrix:
    return _assemble(spec)


# -- procedures ------------------------------------------------------------------

def _largest_proper_subgroup_order(q: int) -> int:
    return (q - 1) // prime_factors(q - 1)[0] if q > 2 else 1


def five_step(field: FieldSpec, n: int, k: int, *, b=None, c=None, lambdas=None,
              subgroup_order: int | None = None, mus=None, extended: bool = False,
              check_k: bool = True, point_order: str = "ascending") -> TwistedCodeSpec:
    """Two-column construction of length n.

    1. choose H and b != c in F_q^*;  2. take mu's in H minus 1;
    3. a_i = (b - mu_i c)/(1 - mu_i);  4. choose lambda_1 != lambda_2 outside H;
    5. the generator is then :func:`gen_two_column` of the result.

    Unset choices: H is the largest proper subgroup, b the primitive
    element, c = 1, mu's the first m non-identity elements of H in exponent
    order, lambdas the first two non-members of H in exponent order.
    ``point_order="ascending"`` then sorts the columns by evaluation point;
    ``"mu"`` keeps the multiplier order.
    """
    F = field
    m = n - 2 - int(extended)
    if check_k and not 3 <= k <= n / 2:
        raise ConstructionError(f"need 3 <= k <= n/2, got k = {k}, n = {n}")
    if m < 1:
        raise ConstructionError(f"length {n} leaves no evaluation points")

    d = subgroup_order or _largest_proper_subgroup_order(F.q)
    if d >= F.q - 1:
        raise ConstructionError("H must be a proper subgroup of F_q^*")
    H = subgroup(F, d)

    def pick(x):
        if x is None:
            return None
        return F.parse(x) if isinstance(x, str) else _vals([x], F)[0]

    b_val = pick(b) if b is not None else F.primitive
    c_val = pick(c) if c is not None else 1
    if b is None and c_val == b_val:
        b_val = 1 if c_val != 1 else F.exp(1)
    if c is None and c_val == b_val:
        c_val = F.exp(1)
    if b_val == c_val or 0 in (b_val, c_val):
        raise ConstructionError("b and c must be distinct nonzero elements")

    if mus is None:
        pool = [h for h in H.elements if h != 1]
        if len(pool) < m:
            raise ConstructionError(
                f"subgroup of order {d} gives {len(pool)} multipliers, {m} needed for n = {n}")
        mu_vals = tuple(pool[:m])
    else:
        mu_vals = tuple(pick(x) for x in mus)
        if len(mu_vals) != m:
            raise ConstructionError(f"{len(mu_vals)} multipliers given, {m} needed for n = {n}")

    if point_order == "ascending":
        pts = _eval_points(F, b_val, c_val, mu_vals)
        mu_vals = tuple(mu for _, mu in sorted(zip(pts, mu_vals)))
    elif point_order != "mu":
        raise ConstructionError(f"unknown point order {point_order!r}")

    if lambdas is None:
        outside = [F.exp(e) for e in range(F.q - 1) if not in_subgroup(F.exp(e), H)]
        if len(outside) < 2:
            raise ConstructionError("fewer than two elements outside H")
        lam_vals = (outside[0], outside[1])
    else:
        lam_vals = tuple(pick(x) for x in lambdas)

    spec = TwistedCodeSpec(F, k, b_val, c_val, H, mu_vals, lam_vals, extended, "subgroup", "five-step")
    if not spec.criterion_guaranteed():
        spec = TwistedCodeSpec(F, k, b_val, c_val, H, mu_vals, lam_vals, extended, "unchecked", "five-step")
    return spec


def corollary_construct(field: FieldSpec, k: int, variant: str, shape: str = "two-ext",
                        b=None, c=None) -> TwistedCodeSpec:
    """Maximal-length systematic families.

    ``odd-squares`` (q odd): H = squares, mu over all of H minus 1, lambdas
    non-squares.  ``even-cubics`` (q = 2^(2m)): H = cubes, mu over
    {w^2} and H minus 1, lambdas in wH.
    """
    F = field
    if shape not in SHAPES:
        raise ConstructionError(f"shape must be one of {SHAPES}")
    if variant == "odd-squares":
        if F.p == 2:
            raise ConstructionError(f"odd-squares needs odd q, got q = {F.q}")
        H = subgroup(F, (F.q - 1) // 2)
        mus = [h for h in H.elements if h != 1]
        lams = [F.exp(1), F.exp(3)]
        regime = "subgroup"
    elif variant == "even-cubics":
        if F.p != 2 or F.m % 2:
            raise ConstructionError(f"even-cubics needs q = 2^(2m), got q = {F.q}")
        H = subgroup(F, (F.q - 1) // 3)
        mus = [h for h in H.elements if h != 1] + [F.exp(2)]
        lams = [F.exp(1), F.exp(4)]
        regime = "even-cubics"
    else:
        raise ConstructionError(f"unknown variant {variant!r}")

    columns = 2 if shape.startswith("two") else 1
    extended = shape.endswith("-ext")
    b_val = F.parse(b) if isinstance(b, str) else (_vals([b], F)[0] if b is not None else F.primitive)
    c_val = F.parse(c) if isinstance(c, str) else (_vals([c], F)[0] if c is not None else 1)
    return TwistedCodeSpec(F, k, b_val, c_val, H, tuple(mus), tuple(lams[:columns]),
                           extended, regime, variant)


def corollary_length(q: int, variant: str, shape: str) -> int:
    """Closed-form maximal lengths of the corollary families."""
    offsets = {
        "odd-squares": {"one": -1, "one-ext": 1, "two": 1, "two-ext": 3},
        "even-cubics": {"one": 2, "one-ext": 5, "two": 5, "two-ext": 8},
    }
    div = 2 if variant == "odd-squares" else 3
    return (q + offsets[variant][shape]) // div


__all__ = [
    "ConstructionError", "FieldError", "TwistedCodeSpec", "corollary_construct", "corollary_length",
    "eval_points", "five_step", "gen_one_column", "gen_rs", "gen_two_column", "generator",
    "make_spec", "spec_from_dict", "spec_from_json", "twisted_column",
]
