"""Exact scalars and dense matrices over Q and GF(p).

Matrices act on column vectors, so the composite ``g o f`` is ``g @ f``.
Storage is delegated to python-flint (``fmpq_mat`` / ``nmod_mat``); every
entry handed back to callers is a :class:`fractions.Fraction` (over Q) or a
plain ``int`` residue in ``[0, p)`` (over GF(p)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

__all__ = [
    "DivisionByZero",
    "FieldMismatch",
    "FieldSpec",
    "Matrix",
    "QQ",
    "Scalar",
    "image_basis",
    "kernel_basis",
    "kronecker",
    "rref",
    "scalar_arith",
]


class DivisionByZero(ZeroDivisionError):
    pass


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p) or self.p >= 2**31:
                raise ValueError(f"not a usable prime modulus: {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def parse(cls, text) -> "FieldSpec":
        """Accept ``"Q"``, ``"rational"``, ``"GF(7)"``, ``"GF7"``, ``7``
        or a dict ``{"kind": ..., "p": ...}``."""
        if isinstance(text, FieldSpec):
            return text
        if isinstance(text, dict):
            return cls(text.get("kind", "rational"), text.get("p"))
        if isinstance(text, int):
            return cls.prime(text)
        t = str(text).strip().replace(" ", "")
        if t.upper() in ("Q", "QQ", "RATIONAL"):
            return cls.rational()
        up = t.upper()
        if up.startswith("GF"):
            t = up[2:].strip("()")
        return cls.prime(int(t))

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def characteristic(self) -> int:
        return 0 if self.is_rational else self.p

    def __str__(self):
        return "Q" if self.is_rational else f"GF({self.p})"

    def to_json(self):
        return "Q" if self.is_rational else f"GF({self.p})"

    # -- elements ---------------------------------------------------------
    def coerce(self, x):
        """Bring an int, Fraction or decimal string into the field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif isinstance(x, flint.fmpq):
            x = Fraction(int(x.p), int(x.q))
        elif isinstance(x, flint.nmod):
            x = int(x)
        if self.is_rational:
            return Fraction(x)
        x = Fraction(x)
        num = x.numerator % self.p
        den = x.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"denominator vanishes mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def format(self, value) -> str:
        if self.is_rational:
            v = Fraction(value)
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return str(int(value) % self.p)

    def zero(self):
        return Fraction(0) if self.is_rational else 0

    def one(self):
        return Fraction(1) if self.is_rational else 1

    def _flint_entry(self, value):
        if self.is_rational:
            value = Fraction(value)
            return flint.fmpq(value.numerator, value.denominator)
        return int(value)

    def _new(self, rows: int, cols: int, flat=None):
        if self.is_rational:
            if flat is None:
                return flint.fmpq_mat(rows, cols)
            return flint.fmpq_mat(rows, cols, flat)
        if flat is None:
            return flint.nmod_mat(rows, cols, self.p)
        return flint.nmod_mat(rows, cols, flat, self.p)

    def _from_flint(self, x):
        if self.is_rational:
            return Fraction(int(x.p), int(x.q))
        return int(x)


QQ = FieldSpec.rational()


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    value: object
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def __str__(self):
        return self.field.format(self.value)

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ) -> "Scalar":
        return cls(text, field)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    f = a.field
    x, y = a.value, b.value
    if op == "add":
        r = x + y
    elif op == "sub":
        r = x - y
    elif op == "mul":
        r = x * y
    elif op == "div":
        if y == 0:
            raise DivisionByZero("division by zero")
        r = x / y if f.is_rational else x * pow(y, -1, f.p)
    else:
        raise ValueError(f"unknown op {op!r}")
    return Scalar(r, f)


class Matrix:
    """Dense exact matrix; immutable by convention.

    ``_nz`` caches the nonzero entries when they are known for free (identity,
    sparse and Kronecker construction, sparse products); products of two such
    matrices skip the dense multiplication.
    """

    __slots__ = ("field", "rows", "cols", "_m", "_nz")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries: Iterable | None = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._nz = None
        if entries is None:
            self._m = field._new(rows, cols)
        else:
            flat = [field._flint_entry(field.coerce(e)) for e in entries]
            if len(flat) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
            self._m = field._new(rows, cols, flat) if flat else field._new(rows, cols)

    @classmethod
    def _wrap(cls, field: FieldSpec, m) -> "Matrix":
        out = cls.__new__(cls)
        out.field = field
        out.rows = m.nrows()
        out.cols = m.ncols()
        out._m = m
        out._nz = None
        return out

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = QQ, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "Matrix":
        m = field._new(n, n)
        for i in range(n):
            m[i, i] = 1
        out = cls._wrap(field, m)
        out._nz = [((i, i), m[i, i]) for i in range(n)]
        return out

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int, field: FieldSpec = QQ) -> "Matrix":
        cols = len(columns)
        m = field._new(rows, cols)
        for j, col in enumerate(columns):
            for i, x in enumerate(col):
                if x:
                    m[i, j] = field._flint_entry(field.coerce(x))
        return cls._wrap(field, m)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, items, field: FieldSpec = QQ) -> "Matrix":
        """Build from an iterable of ``((i, j), value)``; repeated keys add."""
        acc: dict = {}
        for (i, j), v in items:
            acc[i, j] = acc.get((i, j), 0) + v
        m = field._new(rows, cols)
        nz = []
        for (i, j), v in sorted(acc.items()):
            v = field.coerce(v)
            if v:
                m[i, j] = field._flint_entry(v)
                nz.append(((i, j), m[i, j]))
        out = cls._wrap(field, m)
        out._nz = nz
        return out

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.field._from_flint(self._m[i, j])

    def entries(self) -> list:
        conv = self.field._from_flint
        return [conv(x) for x in self._m.entries()] if self.rows and self.cols else []

    def tolist(self) -> list[list]:
        e = self.entries()
        return [e[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.tolist()]

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {self.to_strings()})"

    # -- algebra ------------------------------------------------------------
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return None

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.field)
        if self._nz is not None and other._nz is not None and self.rows * other.cols >= _SPARSE_MIN:
            work = len(self._nz) * len(other._nz) // max(other.rows, 1)
            if work * _SPARSE_RATIO < self.rows * self.cols * other.cols:
                return _sparse_product(self, other)
        return Matrix._wrap(self.field, self._m * other._m)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        if not self.rows or not self.cols:
            return self
        return Matrix._wrap(self.field, self._m + other._m)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        if not self.rows or not self.cols:
            return self
        return Matrix._wrap(self.field, self._m - other._m)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        if not self.rows or not self.cols:
            return self
        c = self.field._flint_entry(self.field.coerce(c))
        return Matrix._wrap(self.field, self._m * c)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if not self.rows or not self.cols:
            return True
        return self._m == other._m

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.entries())))

    def is_zero(self) -> bool:
        return self.nonzero_entry() is None

    def nonzero_entry(self) -> tuple[int, int] | None:
        """Position of the first nonzero entry in row-major order."""
        if not self.rows or not self.cols:
            return None
        for k, x in enumerate(self._m.entries()):
            if x != 0:
                return divmod(k, self.cols)
        return None

    @property
    def T(self) -> "Matrix":
        if not self.rows or not self.cols:
            return Matrix.zeros(self.cols, self.rows, self.field)
        return Matrix._wrap(self.field, self._m.transpose())

    def rank(self) -> int:
        if not self.rows or not self.cols:
            return 0
        return self._m.rank()

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("non-square matrix has no inverse")
        if self.rows == 0:
            return self
        if self.rank() < self.rows:
            raise DivisionByZero("matrix is singular")
        return Matrix._wrap(self.field, self._m.inv())

    def kron(self, other: "Matrix") -> "Matrix":
        return kronecker(self, other)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        e = self._m.entries() if self.rows and self.cols else []
        c = self.cols
        flat = [e[i * c + j] for i in range(self.rows) for j in idx]
        m = self.field._new(self.rows, len(idx), flat) if flat else self.field._new(self.rows, len(idx))
        return Matrix._wrap(self.field, m)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        e = self._m.entries() if self.rows and self.cols else []
        c = self.cols
        flat = [e[i * c + j] for i in idx for j in range(c)]
        m = self.field._new(len(idx), c, flat) if flat else self.field._new(len(idx), c)
        return Matrix._wrap(self.field, m)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        cols = self.cols + other.cols
        if not self.rows or not cols:
            return Matrix.zeros(self.rows, cols, self.field)
        a, b = self._raw(), other._raw()
        ca, cb = self.cols, other.cols
        flat = []
        for i in range(self.rows):
            flat += a[i * ca:(i + 1) * ca]
            flat += b[i * cb:(i + 1) * cb]
        return Matrix._wrap(self.field, self.field._new(self.rows, cols, flat))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        rows = self.rows + other.rows
        if not rows or not self.cols:
            return Matrix.zeros(rows, self.cols, self.field)
        return Matrix._wrap(self.field, self.field._new(rows, self.cols, self._raw() + other._raw()))

    def _raw(self) -> list:
        """Row-major flint entries."""
        return self._m.entries() if self.rows and self.cols else []

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Some X with ``self @ X == rhs``; raises ValueError if none exists."""
        self._check(rhs)
        if rhs.rows != self.rows:
            raise ValueError("right-hand side has wrong height")
        n = self.cols
        if rhs.cols == 0:
            return Matrix.zeros(n, 0, self.field)
        if self.rows == 0:
            return Matrix.zeros(n, rhs.cols, self.field)
        r, piv = rref(self.hstack(rhs))
        if any(p >= n for p in piv):
            raise ValueError("system is inconsistent")
        e = r._raw()
        width, k = r.cols, rhs.cols
        m = self.field._new(n, k)
        for row, p in enumerate(piv):
            base = row * width + n
            for j in range(k):
                x = e[base + j]
                if x != 0:
                    m[p, j] = x
        return Matrix._wrap(self.field, m)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    if not m.rows or not m.cols:
        return m, []
    r, rank = m._m.rref()
    out = Matrix._wrap(m.field, r)
    e = r.entries()
    piv = []
    c = m.cols
    for i in range(rank):
        row = e[i * c:(i + 1) * c]
        start = piv[-1] + 1 if piv else 0
        for j in range(start, c):
            if row[j] != 0:
                piv.append(j)
                break
    return out, piv


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space, one per free column."""
    n = m.cols
    if not m.rows:
        return Matrix.identity(n, m.field)
    r, piv = rref(m)
    e = r._raw()
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    out = m.field._new(n, len(free))
    for col, j in enumerate(free):
        out[j, col] = 1
        for k, p in enumerate(piv):
            x = e[k * n + j]
            if x != 0:
                out[p, col] = -x
    return Matrix._wrap(m.field, out)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``: an independent spanning set of its image."""
    _, piv = rref(m)
    return m.select_columns(piv)


def kronecker(f: Matrix, g: Matrix) -> Matrix:
    """``f (x) g`` with ``e_i (x) e_j`` at index ``i * dim_g + j``."""
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    rows, cols = f.rows * g.rows, f.cols * g.cols
    field = f.field
    if not rows or not cols:
        return Matrix.zeros(rows, cols, field)
    gnz = _nonzeros(g)
    m = field._new(rows, cols)
    gr, gc = g.rows, g.cols
    nz = []
    for (i1, j1), a in _nonzeros(f):
        r0, c0 = i1 * gr, j1 * gc
        for (i2, j2), b in gnz:
            x = a * b
            m[r0 + i2, c0 + j2] = x
            nz.append(((r0 + i2, c0 + j2), x))
    out = Matrix._wrap(field, m)
    out._nz = nz
    return out


# sparse products pay off for large outputs once the estimated work is far
# below the dense cost
_SPARSE_MIN = 4096
_SPARSE_RATIO = 64


def _sparse_product(a: Matrix, b: Matrix) -> Matrix:
    by_row: dict = {}
    for (k, j), y in b._nz:
        by_row.setdefault(k, []).append((j, y))
    acc: dict = {}
    for (i, k), x in a._nz:
        for j, y in by_row.get(k, ()):
            key = (i, j)
            acc[key] = acc[key] + x * y if key in acc else x * y
    m = a.field._new(a.rows, b.cols)
    nz = []
    for key in sorted(acc):
        v = acc[key]
        if v != 0:
            m[key] = v
            nz.append((key, v))
    out = Matrix._wrap(a.field, m)
    out._nz = nz
    return out


def _nonzeros(m: Matrix) -> list:
    """``((i, j), flint entry)`` for the nonzero entries, row-major."""
    if m._nz is None:
        e = m._m.entries()
        c = m.cols
        m._nz = [((k // c, k % c), x) for k, x in enumerate(e) if x != 0]
    return m._nz


def kron_all(mats: Sequence[Matrix], field: FieldSpec = QQ) -> Matrix:
    out = Matrix.identity(1, field)
    for m in mats:
        out = kronecker(out, m)
    return out


def direct_sum_columns(mats: Sequence[Matrix], rows: int, field: FieldSpec) -> Matrix:
    cols = []
    for m in mats:
        cols.extend(m.column(j) for j in range(m.cols))
    return Matrix.from_columns(cols, rows, field)
