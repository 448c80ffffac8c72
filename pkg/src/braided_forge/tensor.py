"""The braided tensor bialgebra T(V): concatenation product, braided
unshuffle coproduct, truncated at degree N."""
from __future__ import annotations

from .braided_space import Braiding, component_flip, permutation_lift, shuffles
from .exactla import Matrix
from .graded import GradedSpace, TruncatedGradedBialgebra, YDStructure, _pairs

__all__ = ["build_tensor_bialgebra", "unshuffle_component", "tensor_yd_structure"]


def _inv(sigma):
    out = [0] * len(sigma)
    for k, v in enumerate(sigma):
        out[v] = k
    return tuple(out)


def unshuffle_component(b: Braiding, a: int, t: int) -> Matrix:
    """``Delta_{a,t} = sum over (a,t)-shuffles s of lift(s^-1)``."""
    n = a + t
    if a == 0 or t == 0:
        return Matrix.identity(b.dim ** n, b.field)
    total = None
    for s in shuffles(a, t):
        lift = permutation_lift(b, n, _inv(s))
        total = lift if total is None else total + lift
    return total


def _space(b: Braiding, N: int) -> GradedSpace:
    return GradedSpace.from_dims([b.dim ** n for n in range(N + 1)], b.field)


def _flips(b: Braiding, N: int) -> dict:
    return {(x, y): component_flip(b, x, y) for x, y in _pairs(N)}


def tensor_yd_structure(b: Braiding, N: int):
    """Diagonal action / multiplied coaction on each ``V^{(x)n}`` when the
    braiding came from a Yetter-Drinfeld module; ``None`` otherwise."""
    if b.yd is None:
        return None
    from .hopf import tensor_power_yd

    acts, coacts = {}, {}
    for n in range(N + 1):
        acts[n], coacts[n] = tensor_power_yd(b.yd, n)
    return YDStructure(b.yd.hopf, acts, coacts)


def build_tensor_bialgebra(b: Braiding, N: int) -> TruncatedGradedBialgebra:
    f = b.field
    mult, comult = {}, {}
    for x, y in _pairs(N):
        mult[x, y] = Matrix.identity(b.dim ** (x + y), f)
        comult[x, y] = unshuffle_component(b, x, y)
    one = Matrix.identity(1, f)
    return TruncatedGradedBialgebra(
        _space(b, N), mult, comult, one, one, _flips(b, N), "T(V)", tensor_yd_structure(b, N))
