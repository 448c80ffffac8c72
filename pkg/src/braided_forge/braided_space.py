"""Braided vector spaces: Yang-Baxter operators, strand operators, braid lifts.

Basis of ``V^{(x)n}``: the tuple ``(i_1, ..., i_n)`` sits at position
``sum i_k * dim**(n-k)``.  A permutation ``sigma`` is a tuple of images,
``sigma[k]`` being where the k-th tensor factor is moved; its lift is the
product of strand operators along a reduced word.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exactla import FieldSpec, Matrix, QQ, kronecker

__all__ = [
    "BasedSpace",
    "BraidEquationFails",
    "Braiding",
    "IndexOutOfRange",
    "NotInvertible",
    "ZeroParameter",
    "block_swap",
    "braiding_from_diagonal",
    "braiding_from_matrix",
    "braiding_from_yd",
    "flip_matrix",
    "inversions",
    "permutation_lift",
    "permutation_matrix",
    "reduced_word",
    "shuffles",
    "strand_operator",
]


class ZeroParameter(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class BraidEquationFails(ValueError):
    def __init__(self, position):
        super().__init__(f"braid equation residual nonzero at entry {position}")
        self.position = position


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class BasedSpace:
    dim: int
    labels: tuple[str, ...] = ()
    field: FieldSpec = QQ

    def __post_init__(self):
        labels = tuple(self.labels) if self.labels else tuple(f"x{i + 1}" for i in range(self.dim))
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.dim:
            raise ValueError(f"{len(labels)} labels for a space of dimension {self.dim}")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")


@dataclass(eq=False)
class Braiding:
    space: BasedSpace
    c: Matrix
    c_inv: Matrix
    yd: object = None  # the YDModule this braiding came from, if any
    _strands: dict = field(default_factory=dict, repr=False)
    _lifts: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def inverse(self) -> "Braiding":
        return Braiding(self.space, self.c_inv, self.c)

    def braid_residual(self) -> Matrix:
        d = self.dim
        f = self.field
        i = Matrix.identity(d, f)
        c1 = kronecker(self.c, i)
        c2 = kronecker(i, self.c)
        return c1 @ c2 @ c1 - c2 @ c1 @ c2


def flip_matrix(d1: int, d2: int, field: FieldSpec = QQ) -> Matrix:
    """The symmetric flip ``U (x) W -> W (x) U`` for dims ``d1``, ``d2``."""
    return Matrix.from_sparse(
        d1 * d2, d1 * d2,
        (((j * d1 + i, i * d2 + j), 1) for i in range(d1) for j in range(d2)),
        field,
    )


def _validate(space: BasedSpace, c: Matrix) -> Braiding:
    n = space.dim * space.dim
    if c.shape != (n, n):
        raise ValueError(f"braiding must be {n}x{n}, got {c.shape}")
    if c.field != space.field:
        raise ValueError("braiding entries live in a different field")
    if c.rank() < n:
        raise NotInvertible("braiding matrix is singular")
    b = Braiding(space, c, c.inverse())
    pos = b.braid_residual().nonzero_entry()
    if pos is not None:
        raise BraidEquationFails(pos)
    return b


def braiding_from_matrix(entries, space: BasedSpace) -> Braiding:
    c = entries if isinstance(entries, Matrix) else Matrix.from_rows(entries, space.field)
    return _validate(space, c)


def braiding_from_diagonal(q, space: BasedSpace) -> Braiding:
    """``c(x_i (x) x_j) = q[i][j] * x_j (x) x_i``."""
    d = space.dim
    f = space.field
    qq = [[f.coerce(x) for x in row] for row in q]
    if len(qq) != d or any(len(row) != d for row in qq):
        raise ValueError(f"q must be {d}x{d}")
    if any(x == 0 for row in qq for x in row):
        raise ZeroParameter("diagonal braiding parameters must be nonzero")
    c = Matrix.from_sparse(
        d * d, d * d,
        (((j * d + i, i * d + j), qq[i][j]) for i in range(d) for j in range(d)),
        f,
    )
    return _validate(space, c)


def braiding_from_yd(m) -> Braiding:
    """``Psi_{V,V} = (act (x) V)(H (x) flip)(coact (x) V)`` for a YD module."""
    from .hopf import check_yd, YDValidationError

    rep = check_yd(m)
    if not rep.passed:
        raise YDValidationError(rep)
    f = m.field
    d = m.dim
    h = m.hopf.dim
    iv = Matrix.identity(d, f)
    ih = Matrix.identity(h, f)
    psi = kronecker(m.action, iv) @ kronecker(ih, flip_matrix(d, d, f)) @ kronecker(m.coaction, iv)
    space = BasedSpace(d, tuple(m.labels) if getattr(m, "labels", None) else (), f)
    b = _validate(space, psi)
    b.yd = m
    return b


# -- permutations -----------------------------------------------------------

def inversions(sigma: Sequence[int]) -> int:
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def _compose(s, t):
    """(s o t)[k] = s[t[k]]."""
    return tuple(s[k] for k in t)


def _inverse(s):
    out = [0] * len(s)
    for k, v in enumerate(s):
        out[v] = k
    return tuple(out)


def reduced_word(sigma: Sequence[int], pick: str = "first") -> list[int]:
    """Reduced word ``[i_1, ..., i_k]`` with ``sigma = s_{i_1} o ... o s_{i_k}``.

    ``s_i`` swaps positions ``i`` and ``i+1`` (0-based).  Descents are
    removed bubble-sort style, taking the leftmost (``pick="first"``) or
    rightmost one.
    """
    s = tuple(sigma)
    n = len(s)
    found = []
    while True:
        desc = [i for i in range(n - 1) if s[i] > s[i + 1]]
        if not desc:
            break
        i = desc[0] if pick == "first" else desc[-1]
        found.append(i)
        s = s[:i] + (s[i + 1], s[i]) + s[i + 2:]
    return found[::-1]


def strand_operator(b: Braiding, n: int, i: int) -> Matrix:
    """``c_i = id^{i-1} (x) c (x) id^{n-i-1}`` on ``V^{(x)n}``, ``1 <= i <= n-1``."""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"strand {i} out of range for degree {n}")
    key = (n, i)
    cached = b._strands.get(key)
    if cached is not None:
        return cached
    d, f = b.dim, b.field
    left = Matrix.identity(d ** (i - 1), f)
    right = Matrix.identity(d ** (n - i - 1), f)
    out = kronecker(kronecker(left, b.c), right)
    b._strands[key] = out
    return out


def permutation_lift(b: Braiding, n: int, sigma: Sequence[int], word: Sequence[int] | None = None) -> Matrix:
    """Matsumoto lift: product of strand operators along a reduced word."""
    sigma = tuple(sigma)
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma} is not a permutation of {n} letters")
    if word is not None:
        out = Matrix.identity(b.dim ** n, b.field)
        for i in word:
            out = out @ strand_operator(b, n, i + 1)
        return out
    return _lift_cached(b, sigma)


def _lift_cached(b: Braiding, sigma: tuple) -> Matrix:
    n = len(sigma)
    hit = b._lifts.get(sigma)
    if hit is not None:
        return hit
    desc = next((i for i in range(n - 1) if sigma[i] > sigma[i + 1]), None)
    if desc is None:
        out = Matrix.identity(b.dim ** n, b.field)
    else:
        # sigma = sigma' o s_desc with one inversion fewer
        shorter = sigma[:desc] + (sigma[desc + 1], sigma[desc]) + sigma[desc + 2:]
        out = _lift_cached(b, shorter) @ strand_operator(b, n, desc + 1)
    b._lifts[sigma] = out
    return out


def permutation_matrix(n: int, dim: int, sigma: Sequence[int], field: FieldSpec = QQ) -> Matrix:
    """Plain permutation of tensor factors: factor k moves to position sigma[k]."""
    size = dim ** n
    items = []
    for src in range(size):
        digits = []
        x = src
        for _ in range(n):
            digits.append(x % dim)
            x //= dim
        digits.reverse()
        out = [0] * n
        for k, v in enumerate(digits):
            out[sigma[k]] = v
        dst = 0
        for v in out:
            dst = dst * dim + v
        items.append(((dst, src), 1))
    return Matrix.from_sparse(size, size, items, field)


def shuffles(a: int, b: int) -> list[tuple[int, ...]]:
    """(a,b)-shuffles, ordered lexicographically by the first block's positions."""
    n = a + b
    out = []
    for pos in combinations(range(n), a):
        rest = [k for k in range(n) if k not in pos]
        out.append(tuple(pos) + tuple(rest))
    return out


def block_swap(a: int, b: int) -> tuple[int, ...]:
    """Permutation moving a first block of length a past a block of length b."""
    return tuple(k + b for k in range(a)) + tuple(k for k in range(b))


def component_flip(br: Braiding, a: int, b: int) -> Matrix:
    """``c_{V^a, V^b}``: the lift of the block swap."""
    if a == 0 or b == 0:
        return Matrix.identity(br.dim ** (a + b), br.field)
    return permutation_lift(br, a + b, block_swap(a, b))


__all__ += ["component_flip"]
