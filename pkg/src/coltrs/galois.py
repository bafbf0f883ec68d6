"""Exact arithmetic in GF(p) and GF(p^m).

Elements are stored as canonical integers: the polynomial
c_0 + c_1 x + ... + c_{m-1} x^{m-1} over GF(p) corresponds to the integer
c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  Coefficient lists are always written
lowest degree first, both for elements and for the field modulus.

Hot loops (matrix elimination, minor sweeps) work directly on these integers
through the :class:`FieldSpec` methods; :class:`FieldElement` is the
user-facing wrapper with operator overloading.

Multiplication goes through log/antilog tables built from the primitive
element, so fields are limited to q <= 2**16.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

MAX_ORDER = 1 << 16
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists lowest degree first -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for low in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            low, r = divmod(low, p)
            coeffs.append(r)
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(poly, g, p):
                return False
    return True


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p^m) with a fixed modulus and primitive element.

    Build instances with :func:`field_new`; the constructor does not
    validate its arguments.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    primitive: int
    _exp: tuple[int, ...] = dc_field(repr=False, compare=False)
    _log: tuple[int, ...] = dc_field(repr=False, compare=False)
    _add: tuple[tuple[int, ...], ...] | None = dc_field(default=None, repr=False, compare=False)
    _neg: tuple[int, ...] | None = dc_field(default=None, repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.m

    # integer-level arithmetic

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._digitwise(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][self._neg[b]]
        return self._digitwise(a, b, -1)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        if self._neg is not None:
            return self._neg[a]
        return self._digitwise(0, a, -1)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        p = self.p
        out = 0
        scale = 1
        for _ in range(self.m):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + sign * db) % p) * scale
            scale *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in " + self.name)
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def exp(self, e: int) -> int:
        """primitive**e as an integer."""
        return self._exp[e % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base of the primitive element."""
        if a == 0:
            raise FieldError("log of zero")
        return self._log[a]

    def prod(self, values: Iterable[int]) -> int:
        out = 1
        for v in values:
            out = self.mul(out, v)
        return out

    # conversions

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise FieldError(f"{len(coeffs)} coefficients for a degree-{self.m} field")
        value = 0
        for c in reversed(coeffs):
            if not 0 <= c < self.p:
                raise FieldError(f"coefficient {c} outside GF({self.p})")
            value = value * self.p + c
        return value

    def elem(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        """Wrap an integer (canonical encoding) or coefficient list."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.m == 1:
                value %= self.p
            elif not 0 <= value < self.q:
                raise FieldError(f"{value} is not a canonical element of {self.name}")
            return FieldElement(self, value)
        return FieldElement(self, self.from_coeffs(list(value)))

    def w(self, e: int) -> "FieldElement":
        return FieldElement(self, self.exp(e))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    # text forms

    @property
    def name(self) -> str:
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m})"

    def describe(self) -> str:
        """Self-describing text form ``GF(p^m)/modulus-coeffs/primitive-coeffs``."""
        mod = ",".join(map(str, self.modulus)) if self.m > 1 else "-"
        prim = ",".join(map(str, self.coeffs(self.primitive)))
        return f"GF({self.p}^{self.m})/{mod}/{prim}"

    def format(self, a: int, style: str = "auto") -> str:
        """Render an element.  ``auto`` gives integers for prime fields and
        ``0`` / ``1`` / ``w^e`` for extension fields; ``coeffs`` gives the
        coefficient list; ``both`` joins the two."""
        if style == "coeffs":
            return "[" + ",".join(map(str, self.coeffs(a))) + "]"
        if style == "both":
            return self.format(a) + " " + self.format(a, "coeffs")
        if self.m == 1 or a == 0:
            return str(a)
        e = self._log[a]
        if e == 0:
            return "1"
        return "w" if e == 1 else f"w^{e}"

    def parse(self, token: str) -> int:
        """Inverse of :meth:`format`; also accepts ``-1``, ``w^e`` in prime
        fields, and bracketed coefficient lists."""
        token = token.strip()
        if token.startswith("["):
            inner = token.strip("[]").strip()
            return self.from_coeffs([int(t) for t in inner.split(",")] if inner else [])
        if token == "w":
            return self.primitive
        if token.startswith("w^"):
            return self.exp(int(token[2:]))
        value = int(token)
        if value < 0:
            return self.neg(self.parse(str(-value)))
        return self.elem(value).value


class FieldElement:
    """An element of a :class:`FieldSpec`, with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> list[int]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("mixed-field operands")
            return other.value
        if isinstance(other, int):
            return self.field.elem(other % self.field.p if self.field.m > 1 else other).value
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def log(self) -> int:
        return self.field.log(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field.name}"

    def __str__(self):
        return self.field.format(self.value)


def arith(a: FieldElement, b: FieldElement | int | None, kind: str) -> FieldElement:
    """Dispatch one field operation by name (add, sub, mul, div, pow, inv, neg)."""
    if kind == "inv":
        return a.inv()
    if kind == "neg":
        return -a
    if kind == "pow":
        return a ** int(b)
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if kind not in ops:
        raise FieldError(f"unknown operation {kind!r}")
    if isinstance(b, FieldElement) and b.field != a.field:
        raise FieldError("mixed-field operands")
    return ops[kind](b)


# -- construction --------------------------------------------------------------

def _polymul_mod(a: int, b: int, p: int, m: int, modulus: Sequence[int]) -> int:
    da = [(a // p ** i) % p for i in range(m)]
    db = [(b // p ** i) % p for i in range(m)]
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    red = _poly_mod(prod, modulus, p)
    out = 0
    for c in reversed(red):
        out = out * p + c
    return out


def _power_cycle(g: int, p: int, m: int, modulus: Sequence[int]) -> list[int] | None:
    """Successive powers of g, or None if g is not primitive."""
    q = p ** m
    seq = [1]
    cur = 1
    for _ in range(q - 2):
        cur = cur * g % p if m == 1 else _polymul_mod(cur, g, p, m, modulus)
        if cur == 1 or cur == 0:
            return None
        seq.append(cur)
    last = cur * g % p if m == 1 else _polymul_mod(cur, g, p, m, modulus)
    return seq if last == 1 else None


def _build(p: int, m: int, modulus: tuple[int, ...], primitive: int, cycle: list[int]) -> FieldSpec:
    q = p ** m
    log = [0] * q
    for e, v in enumerate(cycle):
        log[v] = e
    add = neg = None
    if m > 1 and p != 2:
        tmp = FieldSpec(p, m, modulus, primitive, (), ())
        neg = tuple(tmp._digitwise(0, a, -1) for a in range(q))
        if q <= _ADD_TABLE_LIMIT:
            add = tuple(tuple(tmp._digitwise(a, b, 1) for b in range(q)) for a in range(q))
    return FieldSpec(p, m, modulus, primitive, tuple(cycle + cycle), tuple(log), add, neg)


@lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: tuple[int, ...] | None, primitive: tuple[int, ...] | None) -> FieldSpec:
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    q = p ** m
    if q > MAX_ORDER:
        raise FieldError(f"fields larger than 2^16 are not supported (q = {q})")

    if m == 1:
        mod: tuple[int, ...] = ()
        candidates = [primitive] if primitive is not None else None
    else:
        if modulus is not None:
            mod = tuple(c % p for c in modulus)
            if len(mod) != m + 1 or mod[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {m}")
            if not is_irreducible(mod, p):
                raise FieldError(f"modulus {list(mod)} is reducible over GF({p})")
        else:
            mod = _default_modulus(p, m)
        candidates = [primitive] if primitive is not None else None

    if candidates is not None:
        prim_coeffs = candidates[0]
        g = 0
        for c in reversed(prim_coeffs):
            g = g * p + (c % p)
        cycle = _power_cycle(g, p, m, mod) if g else None
        if cycle is None:
            raise FieldError(f"supplied primitive {list(prim_coeffs)} has order < q-1")
        return _build(p, m, mod, g, cycle)

    for g in range(1, q):
        cycle = _power_cycle(g, p, m, mod)
        if cycle is not None:
            return _build(p, m, mod, g, cycle)
    raise FieldError("no primitive element found")  # unreachable for a genuine field


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible (ordered by canonical integer encoding of the
    lower coefficients) whose root x is primitive."""
    x = p  # the element x in canonical encoding
    for poly in _monic_polys(p, m):
        if poly[0] == 0 or not is_irreducible(poly, p):
            continue
        if _power_cycle(x, p, m, poly) is not None:
            return tuple(poly)
    raise FieldError(f"no primitive polynomial of degree {m} over GF({p})")


def field_new(
    p: int,
    m: int = 1,
    modulus: Sequence[int] | None = None,
    primitive: int | Sequence[int] | None = None,
) -> FieldSpec:
    """Build and validate GF(p^m).

    ``modulus`` is a monic coefficient list (lowest degree first), ignored
    for prime fields.  ``primitive`` is a canonical integer or coefficient
    list.  Omitted choices are filled deterministically: the least primitive
    polynomial and the least element of order q - 1.
    """
    mod = tuple(modulus) if modulus is not None and m > 1 else None
    prim = None
    if primitive is not None:
        if isinstance(primitive, int):
            digits = []
            v = primitive
            for _ in range(m):
                v, r = divmod(v, p)
                digits.append(r)
            prim = tuple(digits)
        else:
            prim = tuple(primitive)
    return _field_cached(p, m, mod, prim)


def field_from_q(q: int, modulus: Sequence[int] | None = None, primitive=None) -> FieldSpec:
    for p in prime_factors(q)[:1]:
        m = 0
        r = q
        while r % p == 0:
            r //= p
            m += 1
        if r == 1:
            return field_new(p, m, modulus, primitive)
    raise FieldError(f"{q} is not a prime power")


_DESC = re.compile(r"^GF\((\d+)\^(\d+)\)/([-\d,]+)/([\d,]+)$")


def parse_field(text: str) -> FieldSpec:
    """Inverse of :meth:`FieldSpec.describe`."""
    match = _DESC.match(text.strip())
    if not match:
        raise FieldError(f"malformed field description {text!r}")
    p, m = int(match.group(1)), int(match.group(2))
    mod = None if match.group(3) == "-" else [int(t) for t in match.group(3).split(",")]
    prim = [int(t) for t in match.group(4).split(",")]
    return field_new(p, m, mod, prim)


def irreducible_polys(p: int, m: int) -> list[tuple[int, ...]]:
    """Every monic irreducible polynomial of degree m over GF(p)."""
    return [tuple(f) for f in _monic_polys(p, m) if is_irreducible(f, p)]


# -- multiplicative subgroups ----------------------------------------------------

@dataclass(frozen=True)
class SubgroupSpec:
    field: FieldSpec
    order: int
    generator: int
    elements: tuple[int, ...]

    def __contains__(self, x) -> bool:
        value = x.value if isinstance(x, FieldElement) else x
        return in_subgroup(value, self)

    def __len__(self) -> int:
        return self.order


def subgroup(field: FieldSpec, d: int) -> SubgroupSpec:
    """The unique subgroup of order d, elements listed as generator^0, ^1, ..."""
    if d < 1 or (field.q - 1) % d:
        raise FieldError(f"{d} does not divide q - 1 = {field.q - 1}")
    step = (field.q - 1) // d
    gen = field.exp(step)
    elements = tuple(field.exp(step * i) for i in range(d))
    return SubgroupSpec(field, d, gen, elements)


def in_subgroup(x: int | FieldElement, H: SubgroupSpec) -> bool:
    if isinstance(x, FieldElement):
        if x.field != H.field:
            raise FieldError("element and subgroup live in different fields")
        x = x.value
    if x == 0:
        raise FieldError("zero is not in the multiplicative group")
    return H.field.pow(x, H.order) == 1
