"""The braided cotensor (quantum shuffle) bialgebra T^c(V): deconcatenation
coproduct and braided shuffle product, truncated at degree N."""
from __future__ import annotations

from .braided_space import Braiding, permutation_lift, shuffles
from .exactla import Matrix
from .graded import TruncatedGradedBialgebra, _pairs
from .tensor import _flips, _space, tensor_yd_structure

__all__ = ["build_cotensor_bialgebra", "shuffle_component"]


def shuffle_component(b: Braiding, a: int, t: int) -> Matrix:
    """``m_{a,t} = sum over (a,t)-shuffles s of lift(s)``."""
    n = a + t
    if a == 0 or t == 0:
        return Matrix.identity(b.dim ** n, b.field)
    total = None
    for s in shuffles(a, t):
        lift = permutation_lift(b, n, s)
        total = lift if total is None else total + lift
    return total


def build_cotensor_bialgebra(b: Braiding, N: int) -> TruncatedGradedBialgebra:
    f = b.field
    mult, comult = {}, {}
    for x, y in _pairs(N):
        mult[x, y] = shuffle_component(b, x, y)
        comult[x, y] = Matrix.identity(b.dim ** (x + y), f)
    one = Matrix.identity(1, f)
    return TruncatedGradedBialgebra(
        _space(b, N), mult, comult, one, one, _flips(b, N), "T^c(V)", tensor_yd_structure(b, N))
