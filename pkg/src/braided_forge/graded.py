"""Degree-truncated graded bialgebras and their component calculus.

A :class:`TruncatedGradedBialgebra` stores only components: ``mult[a, b]``
maps ``B_a (x) B_b -> B_{a+b}``, ``comult[a, b]`` maps ``B_{a+b} -> B_a (x) B_b``,
both for ``a + b <= N``.  An identity is checked exactly when every composite
in it stays in total degree ``<= N``.

Subobjects (wedge products, ideal powers, floors, ceilings) are dicts
``degree -> Matrix`` whose columns span the degree-d part.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ._parallel import pmap
from .braided_space import BasedSpace, flip_matrix
from .exactla import FieldSpec, Matrix, image_basis, kernel_basis, kron_all, kronecker

__all__ = [
    "BasisNotIndependent",
    "GradedMap",
    "GradedSpace",
    "NotGradedBialgebraMorphism",
    "Report",
    "TruncatedGradedBialgebra",
    "YDStructure",
    "ceiling",
    "check_bialgebra_compat",
    "check_graded_algebra_axioms",
    "check_graded_coalgebra_axioms",
    "check_strongly_graded",
    "floor",
    "ideal_power",
    "image_bialgebra",
    "iterated_comult",
    "iterated_mult",
    "same_subobject",
    "wedge",
    "wedge_power",
]


class BasisNotIndependent(ValueError):
    pass


class NotGradedBialgebraMorphism(ValueError):
    pass


@dataclass
class Report:
    check: str
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, indices, residual: Matrix):
        self.instances += 1
        pos = residual.nonzero_entry()
        if pos is not None:
            self.failures.append({"indices": list(indices), "residual_entry": list(pos)})

    def merge(self, other: "Report") -> "Report":
        return Report(self.check, self.instances + other.instances, self.failures + other.failures)

    def failed_indices(self) -> list:
        return [tuple(f["indices"]) for f in self.failures]

    def to_json(self) -> dict:
        return {"check": self.check, "instances": self.instances, "failures": self.failures}


@dataclass(frozen=True)
class GradedSpace:
    components: tuple[BasedSpace, ...]

    @classmethod
    def from_dims(cls, dims: Iterable[int], field: FieldSpec) -> "GradedSpace":
        comps = []
        for n, d in enumerate(dims):
            comps.append(BasedSpace(d, tuple(f"b{n}_{i}" for i in range(d)), field))
        return cls(tuple(comps))

    @property
    def N(self) -> int:
        return len(self.components) - 1

    @property
    def dims(self) -> list[int]:
        return [c.dim for c in self.components]

    @property
    def field(self) -> FieldSpec:
        return self.components[0].field


@dataclass
class YDStructure:
    """Degreewise Yetter-Drinfeld data over a Hopf algebra ``hopf``:
    ``actions[n]: H (x) B_n -> B_n`` and ``coactions[n]: B_n -> H (x) B_n``."""

    hopf: object
    actions: dict
    coactions: dict


@dataclass(eq=False)
class TruncatedGradedBialgebra:
    space: GradedSpace
    mult: dict
    comult: dict
    unit: Matrix
    counit: Matrix
    flips: dict = field(default_factory=dict)
    name: str = ""
    yd: YDStructure | None = None

    @property
    def N(self) -> int:
        return self.space.N

    @property
    def dims(self) -> list[int]:
        return self.space.dims

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def ident(self, n: int) -> Matrix:
        return Matrix.identity(self.dims[n], self.field)

    def flip(self, a: int, b: int) -> Matrix:
        """Braiding ``B_a (x) B_b -> B_b (x) B_a``; the symmetric flip if not stored."""
        hit = self.flips.get((a, b))
        if hit is not None:
            return hit
        return flip_matrix(self.dims[a], self.dims[b], self.field)

    def replace(self, **changes) -> "TruncatedGradedBialgebra":
        data = dict(space=self.space, mult=dict(self.mult), comult=dict(self.comult),
                    unit=self.unit, counit=self.counit, flips=dict(self.flips),
                    name=self.name, yd=self.yd)
        data.update(changes)
        return TruncatedGradedBialgebra(**data)

    def truncate(self, n: int) -> "TruncatedGradedBialgebra":
        keep = lambda d: {k: v for k, v in d.items() if sum(k) <= n}
        yd = None
        if self.yd is not None:
            yd = YDStructure(self.yd.hopf,
                             {k: v for k, v in self.yd.actions.items() if k <= n},
                             {k: v for k, v in self.yd.coactions.items() if k <= n})
        return TruncatedGradedBialgebra(
            GradedSpace(self.space.components[: n + 1]), keep(self.mult), keep(self.comult),
            self.unit, self.counit, keep(self.flips), self.name, yd)


@dataclass
class GradedMap:
    domain: TruncatedGradedBialgebra
    codomain: TruncatedGradedBialgebra
    components: dict

    def __post_init__(self):
        for n, f in self.components.items():
            if f.shape != (self.codomain.dims[n], self.domain.dims[n]):
                raise ValueError(f"component {n} has shape {f.shape}")


def _pairs(N: int):
    return [(a, n - a) for n in range(N + 1) for a in range(n + 1)]


def _triples(N: int):
    return [(a, b, c) for a in range(N + 1) for b in range(N + 1 - a) for c in range(N + 1 - a - b)]


# -- axiom checkers -----------------------------------------------------------

def check_graded_coalgebra_axioms(b: TruncatedGradedBialgebra) -> Report:
    """Coassociativity per triple (a,b,c) and the counit laws per degree."""
    D = b.comult
    I = b.ident

    def one(t):
        a, bb, c = t
        lhs = kronecker(D[a, bb], I(c)) @ D[a + bb, c]
        rhs = kronecker(I(a), D[bb, c]) @ D[a, bb + c]
        return ("coassoc", a, bb, c), lhs - rhs

    rep = Report("graded_coalgebra_axioms")
    for idx, res in pmap(one, _triples(b.N)):
        rep.record(idx, res)
    for d in range(b.N + 1):
        rep.record(("counit_left", d), kronecker(b.counit, I(d)) @ D[0, d] - I(d))
        rep.record(("counit_right", d), kronecker(I(d), b.counit) @ D[d, 0] - I(d))
    return rep


def check_graded_algebra_axioms(b: TruncatedGradedBialgebra) -> Report:
    """Associativity per triple (a,b,c) and the unit laws per degree."""
    m = b.mult
    I = b.ident

    def one(t):
        a, bb, c = t
        lhs = m[a + bb, c] @ kronecker(m[a, bb], I(c))
        rhs = m[a, bb + c] @ kronecker(I(a), m[bb, c])
        return ("assoc", a, bb, c), lhs - rhs

    rep = Report("graded_algebra_axioms")
    for idx, res in pmap(one, _triples(b.N)):
        rep.record(idx, res)
    for d in range(b.N + 1):
        rep.record(("unit_left", d), m[0, d] @ kronecker(b.unit, I(d)) - I(d))
        rep.record(("unit_right", d), m[d, 0] @ kronecker(I(d), b.unit) - I(d))
    return rep


def _compat_instance(b: TruncatedGradedBialgebra, a: int, bb: int, s: int, t: int) -> Matrix:
    lhs = b.comult[s, t] @ b.mult[a, bb]
    rhs = Matrix.zeros(lhs.rows, lhs.cols, b.field)
    for a1 in range(a + 1):
        a2 = a - a1
        b1 = s - a1
        b2 = bb - b1
        if b1 < 0 or b2 < 0:
            continue
        step = kronecker(b.comult[a1, a2], b.comult[b1, b2])
        step = kron_all([b.ident(a1), b.flip(a2, b1), b.ident(b2)], b.field) @ step
        step = kronecker(b.mult[a1, b1], b.mult[a2, b2]) @ step
        rhs = rhs + step
    return lhs - rhs


def check_bialgebra_compat(b: TruncatedGradedBialgebra) -> Report:
    """``Delta m = (m (x) m)(B (x) c (x) B)(Delta (x) Delta)`` and ``eps m = eps (x) eps``,
    one instance per (a, b, s, t) with a+b = s+t <= N, plus the unit laws
    ``Delta u = u (x) u`` and ``eps u = 1``."""
    insts = [(a, bb, s, n - s) for (a, bb) in _pairs(b.N) for n in [a + bb] for s in range(n + 1)]
    rep = Report("bialgebra_compat")
    for idx, res in pmap(lambda t: (t, _compat_instance(b, *t)), insts):
        rep.record(idx, res)
    rep.record(("counit_mult",), b.counit @ b.mult[0, 0] - kronecker(b.counit, b.counit))
    rep.record(("comult_unit",), b.comult[0, 0] @ b.unit - kronecker(b.unit, b.unit))
    rep.record(("counit_unit",), b.counit @ b.unit - Matrix.identity(1, b.field))
    return rep


def check_strongly_graded(b: TruncatedGradedBialgebra, side: str = "coalgebra") -> Report:
    """Injectivity of every ``Delta_{i,j}`` or surjectivity of every ``m_{i,j}``."""
    if side not in ("coalgebra", "algebra"):
        raise ValueError(side)
    rep = Report(f"strongly_graded_{side}")
    for i, j in _pairs(b.N):
        rep.instances += 1
        if side == "coalgebra":
            d = b.comult[i, j]
            ok = d.rank() == d.cols
        else:
            m = b.mult[i, j]
            ok = m.rank() == m.rows
        if not ok:
            rep.failures.append({"indices": [i, j], "residual_entry": None})
    return rep


# -- subobjects ---------------------------------------------------------------

def floor(b: TruncatedGradedBialgebra, n: int) -> dict:
    """``B(n) = sum_{i<n} B_i``."""
    return {d: (b.ident(d) if d < n else Matrix.zeros(b.dims[d], 0, b.field)) for d in range(b.N + 1)}


def ceiling(b: TruncatedGradedBialgebra, n: int) -> dict:
    """``B[n] = sum_{i>=n} B_i``."""
    return {d: (b.ident(d) if d >= n else Matrix.zeros(b.dims[d], 0, b.field)) for d in range(b.N + 1)}


def same_subobject(x: dict, y: dict) -> bool:
    for d in x:
        a, c = x[d], y[d]
        ra, rc = a.rank(), c.rank()
        if ra != rc or a.hstack(c).rank() != ra:
            return False
    return True


def _quotient(basis: Matrix) -> Matrix:
    """Quotient map ``C -> C / span(basis)``: complete the basis with unit
    vectors in pivot order and keep the complementary coordinates."""
    n, k = basis.rows, basis.cols
    f = basis.field
    if basis.rank() != k:
        raise BasisNotIndependent(f"{k} columns of rank {basis.rank()}")
    if k == 0:
        return Matrix.identity(n, f)
    full = basis.hstack(Matrix.identity(n, f))
    chosen = image_basis(full)
    inv = chosen.inverse()
    return inv.select_rows(list(range(k, n)))


def _compositions(d: int, n: int):
    """Ordered n-tuples of positive integers summing to d."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(1, d - n + 2):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def iterated_comult(b: TruncatedGradedBialgebra, parts: tuple) -> Matrix:
    """``B_{sum parts} -> B_{p1} (x) ... (x) B_{pk}``, splitting off the head first."""
    total = sum(parts)
    if len(parts) == 1:
        return b.ident(total)
    head = parts[0]
    rest = iterated_comult(b, parts[1:])
    return kronecker(b.ident(head), rest) @ b.comult[head, total - head]


def iterated_mult(b: TruncatedGradedBialgebra, parts: tuple) -> Matrix:
    total = sum(parts)
    if len(parts) == 1:
        return b.ident(total)
    head = parts[0]
    rest = iterated_mult(b, parts[1:])
    return b.mult[head, total - head] @ kronecker(b.ident(head), rest)


def _stack_rows(mats: list, cols: int, f: FieldSpec) -> Matrix:
    out = Matrix.zeros(0, cols, f)
    for m in mats:
        out = out.vstack(m)
    return out


def wedge(b: TruncatedGradedBialgebra, X: dict, Y: dict) -> dict:
    """``X ^ Y = ker((p_X (x) p_Y) Delta)``, degree by degree."""
    qx = {d: _quotient(X[d]) for d in range(b.N + 1)}
    qy = {d: _quotient(Y[d]) for d in range(b.N + 1)}
    out = {}
    for d in range(b.N + 1):
        blocks = [kronecker(qx[a], qy[d - a]) @ b.comult[a, d - a] for a in range(d + 1)]
        out[d] = kernel_basis(_stack_rows(blocks, b.dims[d], b.field))
    return out


def wedge_power(b: TruncatedGradedBialgebra, n: int) -> dict:
    """``B_0^{^n} = ker(p^{(x)n} Delta^{n-1})`` with ``p: B -> B/B_0``."""
    if n < 0:
        raise ValueError("negative wedge power")
    f = b.field
    if n == 0:
        return {d: Matrix.zeros(b.dims[d], 0, f) for d in range(b.N + 1)}
    out = {}
    for d in range(b.N + 1):
        blocks = [iterated_comult(b, parts) for parts in _compositions(d, n)]
        out[d] = kernel_basis(_stack_rows(blocks, b.dims[d], f))
    return out


def ideal_power(b: TruncatedGradedBialgebra, n: int) -> dict:
    """``B[1]^n``: span of n-fold products of positive-degree elements."""
    if n < 1:
        raise ValueError("ideal powers start at 1")
    f = b.field
    out = {}
    for d in range(b.N + 1):
        span = Matrix.zeros(b.dims[d], 0, f)
        for parts in _compositions(d, n):
            span = span.hstack(iterated_mult(b, parts))
        out[d] = image_basis(span)
    return out


# -- images -------------------------------------------------------------------

def morphism_residuals(f: GradedMap) -> list:
    """Violated component equations of a candidate graded bialgebra map."""
    A, B = f.domain, f.codomain
    N = min(A.N, B.N)
    F = f.components
    bad = []
    for a, b in _pairs(N):
        r = F[a + b] @ A.mult[a, b] - B.mult[a, b] @ kronecker(F[a], F[b])
        if not r.is_zero():
            bad.append(("mult", a, b, r.nonzero_entry()))
        r = B.comult[a, b] @ F[a + b] - kronecker(F[a], F[b]) @ A.comult[a, b]
        if not r.is_zero():
            bad.append(("comult", a, b, r.nonzero_entry()))
    if not (F[0] @ A.unit - B.unit).is_zero():
        bad.append(("unit",))
    if not (B.counit @ F[0] - A.counit).is_zero():
        bad.append(("counit",))
    return bad


def _coords(basis: Matrix, vectors: Matrix) -> Matrix:
    return basis.solve(vectors)


def image_bialgebra(f: GradedMap, name: str = "") -> tuple[TruncatedGradedBialgebra, dict]:
    """Degreewise image ``Im(f)_n = Im(f_n)`` with the induced structure.

    Returns the bialgebra and the inclusion bases (columns of ``f_n``'s
    pivot columns), which realize the monomorphic half of ``f``.
    """
    bad = morphism_residuals(f)
    if bad:
        raise NotGradedBialgebraMorphism(f"violated component equation {bad[0]}")
    B = f.codomain
    N = min(f.domain.N, B.N)
    fld = B.field
    bases = {n: image_basis(f.components[n]) for n in range(N + 1)}
    dims = [bases[n].cols for n in range(N + 1)]
    mult, comult, flips = {}, {}, {}
    for a, b in _pairs(N):
        mult[a, b] = _coords(bases[a + b], B.mult[a, b] @ kronecker(bases[a], bases[b]))
        comult[a, b] = _coords(kronecker(bases[a], bases[b]), B.comult[a, b] @ bases[a + b])
    for a, b in _pairs(N):
        flips[a, b] = _coords(kronecker(bases[b], bases[a]), B.flip(a, b) @ kronecker(bases[a], bases[b]))
    unit = _coords(bases[0], B.unit)
    counit = B.counit @ bases[0]
    yd = None
    if B.yd is not None:
        h = B.yd.hopf
        ih = Matrix.identity(h.dim, fld)
        yd = YDStructure(
            h,
            {n: _coords(bases[n], B.yd.actions[n] @ kronecker(ih, bases[n])) for n in range(N + 1)},
            {n: _coords(kronecker(ih, bases[n]), B.yd.coactions[n] @ bases[n]) for n in range(N + 1)},
        )
    space = GradedSpace.from_dims(dims, fld)
    out = TruncatedGradedBialgebra(space, mult, comult, unit, counit, flips, name or f"Im({B.name})", yd)
    return out, bases
