"""Dense exact linear algebra over a :class:`~coltrs.galois.FieldSpec`.

Entries are canonical field integers.  Elimination always pivots on the
first nonzero entry of a column, so rref and nullspace bases are
deterministic.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .galois import FieldElement, FieldSpec, parse_field


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class GFMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "GFMatrix":
        """Build from nested sequences of ints, FieldElements or text tokens."""
        out = []
        for row in rows:
            vals = []
            for x in row:
                if isinstance(x, FieldElement):
                    if x.field != field:
                        raise MatrixError("entry from a different field")
                    vals.append(x.value)
                elif isinstance(x, str):
                    vals.append(field.parse(x))
                else:
                    vals.append(field.elem(int(x)).value)
            out.append(tuple(vals))
        if cols is None:
            if not out:
                raise MatrixError("column count required for an empty matrix")
            cols = len(out[0])
        if any(len(r) != cols for r in out):
            raise MatrixError("ragged rows")
        return cls(field, len(out), cols, tuple(out))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GFMatrix":
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "GFMatrix":
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx) -> FieldElement:
        i, j = idx
        return FieldElement(self.field, self.entries[i][j])

    def row(self, i: int) -> list[int]:
        return list(self.entries[i])

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.entries]

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def to_text(self, style: str = "auto") -> str:
        fmt = self.field.format
        cells = [[fmt(v, style) for v in r] for r in self.entries]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def __str__(self):
        return self.to_text()


def _check_same_field(a: GFMatrix, b: GFMatrix) -> None:
    if a.field != b.field:
        raise MatrixError("matrices over different fields")


def transpose(M: GFMatrix) -> GFMatrix:
    return GFMatrix(M.field, M.cols, M.rows, tuple(zip(*M.entries)) if M.rows else tuple(() for _ in range(M.cols)))


def mat_mul(A: GFMatrix, B: GFMatrix) -> GFMatrix:
    _check_same_field(A, B)
    if A.cols != B.rows:
        raise MatrixError(f"cannot multiply {A.shape} by {B.shape}")
    F = A.field
    add, mul = F.add, F.mul
    bt = list(zip(*B.entries)) if B.rows else [() for _ in range(B.cols)]
    out = []
    for row in A.entries:
        new = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add(acc, mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return GFMatrix(F, A.rows, B.cols, tuple(out))


def submatrix(M: GFMatrix, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> GFMatrix:
    rows = list(range(M.rows)) if rows is None else list(rows)
    cols = list(range(M.cols)) if cols is None else list(cols)
    for i in rows:
        if not 0 <= i < M.rows:
            raise MatrixError(f"row index {i} out of range")
    for j in cols:
        if not 0 <= j < M.cols:
            raise MatrixError(f"column index {j} out of range")
    return GFMatrix(M.field, len(rows), len(cols), tuple(tuple(M.entries[i][j] for j in cols) for i in rows))


def hstack(*blocks: GFMatrix) -> GFMatrix:
    F = blocks[0].field
    rows = blocks[0].rows
    for b in blocks:
        _check_same_field(blocks[0], b)
        if b.rows != rows:
            raise MatrixError("row counts differ")
    entries = tuple(tuple(v for b in blocks for v in b.entries[i]) for i in range(rows))
    return GFMatrix(F, rows, sum(b.cols for b in blocks), entries)


def vstack(*blocks: GFMatrix) -> GFMatrix:
    cols = blocks[0].cols
    for b in blocks:
        _check_same_field(blocks[0], b)
        if b.cols != cols:
            raise MatrixError("column counts differ")
    entries = tuple(r for b in blocks for r in b.entries)
    return GFMatrix(blocks[0].field, len(entries), cols, entries)


# -- elimination ---------------------------------------------------------------

def _rref_rows(F: FieldSpec, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduce ``rows`` in place; return (nonzero rows, pivot columns)."""
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        scale = inv(rows[r][c])
        prow = rows[r] = [mul(v, scale) for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = neg(rows[i][c])
                row = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = add(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref_with_pivots(M: GFMatrix) -> tuple[GFMatrix, list[int]]:
    rows, pivots = _rref_rows(M.field, [list(r) for r in M.entries], M.cols)
    return GFMatrix(M.field, len(rows), M.cols, tuple(tuple(r) for r in rows)), pivots


def rref(M: GFMatrix) -> GFMatrix:
    """Reduced row echelon form with zero rows removed."""
    return rref_with_pivots(M)[0]


def rank(M: GFMatrix) -> int:
    return len(_rref_rows(M.field, [list(r) for r in M.entries], M.cols)[1])


def nullspace(M: GFMatrix) -> GFMatrix:
    """Basis (as rows) of {v : M v^T = 0}."""
    R, pivots = rref_with_pivots(M)
    F = M.field
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.entries[i][f])
        basis.append(tuple(v))
    return GFMatrix(F, len(basis), M.cols, tuple(basis))


def det(M: GFMatrix) -> FieldElement:
    if M.rows != M.cols:
        raise MatrixError(f"determinant of non-square {M.shape} matrix")
    return FieldElement(M.field, det_int(M.field, [list(r) for r in M.entries]))


def det_int(F: FieldSpec, rows: list[list[int]]) -> int:
    """Determinant of a square list-of-lists (consumed) by elimination."""
    n = len(rows)
    add, mul, div, neg = F.add, F.mul, F.div, F.neg
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = neg(result)
        prow = rows[c]
        p = prow[c]
        result = mul(result, p)
        for i in range(c + 1, n):
            x = rows[i][c]
            if x:
                f = neg(div(x, p))
                row = rows[i]
                for j in range(c + 1, n):
                    if prow[j]:
                        row[j] = add(row[j], mul(f, prow[j]))
    return result


def row_space_equal(A: GFMatrix, B: GFMatrix) -> bool:
    _check_same_field(A, B)
    if A.cols != B.cols:
        raise MatrixError("column counts differ")
    return rref(A).entries == rref(B).entries


def solve(M: GFMatrix, rhs: Sequence[int]) -> list[int]:
    """Solve M x = rhs for square nonsingular M."""
    if M.rows != M.cols or len(rhs) != M.rows:
        raise MatrixError("solve needs a square system")
    aug = [list(r) + [v] for r, v in zip(M.entries, rhs)]
    rows, pivots = _rref_rows(M.field, aug, M.cols + 1)
    if pivots != list(range(M.cols)):
        raise MatrixError("singular system")
    return [r[-1] for r in rows]


# -- file formats ------------------------------------------------------------------

def to_csv(M: GFMatrix) -> str:
    buf = io.StringIO()
    buf.write(f"# {M.field.describe()} {M.rows}x{M.cols}\n")
    writer = csv.writer(buf, lineterminator="\n")
    for r in M.entries:
        writer.writerow(M.field.format(v) for v in r)
    return buf.getvalue()


def from_csv(text: str) -> GFMatrix:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise MatrixError("CSV matrix must start with a '# <field> <rows>x<cols>' header")
    header = lines[0][1:].split()
    if len(header) != 2:
        raise MatrixError("malformed matrix header")
    F = parse_field(header[0])
    nrows, ncols = (int(t) for t in header[1].split("x"))
    body = [r for r in csv.reader(lines[1:]) if r]
    if len(body) != nrows:
        raise MatrixError(f"header says {nrows} rows, found {len(body)}")
    return GFMatrix.from_rows(F, body, cols=ncols)


def to_json(M: GFMatrix) -> str:
    F = M.field
    cell = (lambda v: v) if F.m == 1 else F.format
    return json.dumps({
        "field": F.describe(),
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[cell(v) for v in r] for r in M.entries],
    })


def from_json(text: str | dict) -> GFMatrix:
    obj = json.loads(text) if isinstance(text, str) else text
    try:
        F = parse_field(obj["field"])
        M = GFMatrix.from_rows(F, [[str(v) for v in r] for r in obj["entries"]], cols=obj["cols"])
    except KeyError as exc:
        raise MatrixError(f"matrix JSON missing key {exc}") from None
    if M.rows != obj["rows"]:
        raise MatrixError("row count mismatch")
    return M


def load_matrix(path: str) -> GFMatrix:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_csv(text)
