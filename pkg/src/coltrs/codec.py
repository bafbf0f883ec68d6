"""Encoding and erasure decoding against a generator matrix.

Symbols are canonical field integers; an erased symbol is ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .galois import FieldElement, FieldSpec, parse_field
from .gfmatrix import GFMatrix, MatrixError, submatrix, _rref_rows


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class Codeword:
    field: FieldSpec
    symbols: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def erasures(self) -> list[int]:
        return [i for i, s in enumerate(self.symbols) if s is None]

    def erase(self, positions: Iterable[int]) -> "Codeword":
        lost = set(positions)
        return Codeword(self.field, tuple(None if i in lost else s for i, s in enumerate(self.symbols)))

    def elements(self) -> list[FieldElement | None]:
        return [None if s is None else FieldElement(self.field, s) for s in self.symbols]


def _as_ints(F: FieldSpec, values: Sequence) -> list[int]:
    return [F.elem(v).value if not isinstance(v, str) else F.parse(v) for v in values]


def _combine(F: FieldSpec, coeffs: Sequence[int], rows: Sequence[Sequence[int]], cols: Sequence[int]) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for j in cols:
        acc = 0
        for x, r in zip(coeffs, rows):
            if x and r[j]:
                acc = add(acc, mul(x, r[j]))
        out.append(acc)
    return out


def encode(msg: Sequence, G: GFMatrix) -> Codeword:
    """msg . G"""
    if len(msg) != G.rows:
        raise DecodeError(f"message length {len(msg)} != k = {G.rows}")
    F = G.field
    return Codeword(F, tuple(_combine(F, _as_ints(F, msg), G.entries, range(G.cols))))


@lru_cache(maxsize=4096)
def _survivor_inverse(G: GFMatrix, cols: tuple[int, ...]) -> tuple[tuple[int, ...], ...] | None:
    """Inverse of the k x k submatrix on ``cols``, or None if singular."""
    S = submatrix(G, None, cols)
    k = S.rows
    aug = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(S.entries)]
    rows, pivots = _rref_rows(G.field, aug, 2 * k)
    if pivots[:k] != list(range(k)) or len(rows) < k:
        return None
    return tuple(tuple(r[k:]) for r in rows)


def erasure_decode(cw: Codeword, G: GFMatrix) -> list[int]:
    """Recover the message from the surviving symbols.

    Solves on the first k surviving columns, then re-encodes and checks
    every surviving position, so a corrupted (not just erased) symbol is
    reported rather than silently decoded.
    """
    k, n = G.rows, G.cols
    if cw.n != n:
        raise DecodeError(f"codeword length {cw.n} != n = {n}")
    if cw.field != G.field:
        raise DecodeError("codeword and generator use different fields")
    alive = [i for i, s in enumerate(cw.symbols) if s is not None]
    if len(alive) < k:
        raise DecodeError(f"{n - len(alive)} erasures exceed n - k = {n - k}")
    cols = tuple(alive[:k])
    inv = _survivor_inverse(G, cols)
    if inv is None:
        raise DecodeError(f"survivor columns {list(cols)} are linearly dependent (code is not MDS)")
    F = G.field
    # msg = y . S^{-1}, with y the survivors on cols
    y = [cw.symbols[j] for j in cols]
    msg = _combine(F, y, inv, range(k))
    check = _combine(F, msg, G.entries, alive[k:])
    if any(a != cw.symbols[j] for a, j in zip(check, alive[k:])):
        raise DecodeError("surviving symbols are inconsistent with any codeword")
    return msg


# -- symbol streams ------------------------------------------------------------

def write_stream(words: Iterable[Sequence[int | None]], field: FieldSpec, n: int, k: int) -> str:
    """Header ``# <field> n=<n> k=<k>`` then one word per line, ``?`` for erasures."""
    lines = [f"# {field.describe()} n={n} k={k}"]
    for w in words:
        lines.append(" ".join("?" if s is None else field.format(s) for s in w))
    return "\n".join(lines) + "\n"


def read_stream(text: str) -> tuple[FieldSpec, int, int, list[list[int | None]]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise MatrixError("symbol stream must start with a '# <field> n=.. k=..' header")
    parts = lines[0][1:].split()
    try:
        F = parse_field(parts[0])
        meta = dict(p.split("=") for p in parts[1:])
        n, k = int(meta["n"]), int(meta["k"])
    except (KeyError, ValueError, IndexError) as exc:
        raise MatrixError(f"malformed stream header: {lines[0]!r}") from exc
    words = [[None if t == "?" else F.parse(t) for t in ln.split()] for ln in lines[1:]]
    return F, n, k, words
