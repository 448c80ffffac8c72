"""Hand-coded reference matrices for every builtin DSL formula.

Everything here is written element by element over a group algebra kG and a
Yetter-Drinfeld module given by G-degrees and action matrices, without the
Kronecker-product plumbing the library uses.  ``conformance_cases`` yields
``(builtin name, environment, expected matrix)`` triples.
"""
from __future__ import annotations

from braided_forge import GroupTable, Matrix, QQ, group_algebra, yd_from_group
from braided_forge.exactla import FieldSpec
from braided_forge.braided_space import braiding_from_yd
from braided_forge.hopf import bosonize, structure_env, yd_to_bimodule
from braided_forge.typeone import typeone_truncation

GF7 = FieldSpec.prime(7)


class Data:
    """kG plus a YD module ``V`` with basis ``v_j`` of G-degree ``deg[j]``."""

    def __init__(self, table: GroupTable, degrees, actions, field):
        self.g = table
        self.n = table.order
        self.deg = list(degrees)
        self.d = len(degrees)
        self.f = field
        self.h = group_algebra(table, field)
        self.v = yd_from_group(self.h, degrees, actions, ())
        self.A = [Matrix.from_rows(a, field) for a in actions]
        self.e = next(k for k in range(self.n) if all(table.mul[k][x] == x for x in range(self.n)))

    def mul(self, *xs):
        out = self.e
        for x in xs:
            out = self.g.mul[out][x]
        return out

    def sparse(self, rows, cols, items):
        acc = {}
        for key, val in items:
            acc[key] = acc.get(key, 0) + val
        return Matrix.from_sparse(rows, cols, [(k, v) for k, v in acc.items()], self.f)

    def act(self, g, j):
        """``g . v_j`` as ``[(r, coefficient)]``."""
        return [(r, self.A[g][r, j]) for r in range(self.d) if self.A[g][r, j] != 0]

    # the Hopf bimodule V (x) H; basis (j, k) -> j * n + k
    def M(self, j, k):
        return j * self.n + k


def _hopf_refs(D: Data) -> dict:
    n, e, one = D.n, D.e, D.f.one()
    G = range(n)
    pairs = [(g * n + h, g, h) for g in G for h in G]
    delta_m = D.sparse(n * n, n * n, [((D.mul(g, h) * n + D.mul(g, h), c), one) for c, g, h in pairs])
    eps2 = D.sparse(1, n * n, [((0, c), one) for c, _, _ in pairs])
    to_unit = D.sparse(n, n, [((e, g), one) for g in G])
    return {
        "braided_compat_lhs": delta_m,
        "braided_compat_rhs": delta_m,
        "counit_compat_lhs": eps2,
        "counit_compat_rhs": eps2,
        "ad": D.sparse(n, n * n, [((D.mul(g, h, D.g.inv[g]), c), one) for c, g, h in pairs]),
        "coad": D.sparse(n * n, n, [((e * n + g, g), one) for g in G]),
        "antipode_left": to_unit,
        "antipode_right": to_unit,
        "unit_counit": to_unit,
    }


def _yd_refs(D: Data) -> dict:
    n, d = D.n, D.d
    G, V = range(n), range(d)
    inv, deg = D.g.inv, D.deg
    lhs, rhs = [], []
    for g in G:
        for j in V:
            col = g * d + j
            for r, a in D.act(g, j):
                lhs.append((((D.mul(g, deg[j])) * d + r, col), a))
                rhs.append((((D.mul(deg[r], g)) * d + r, col), a))
    psi, psi_inv = [], []
    for i in V:
        for j in V:
            col = i * d + j
            psi += [((r * d + i, col), a) for r, a in D.act(deg[i], j)]
            psi_inv += [((j * d + r, col), a) for r, a in D.act(inv[deg[j]], i)]
    return {
        "yd_compat_lhs": D.sparse(n * d, n * d, lhs),
        "yd_compat_rhs": D.sparse(n * d, n * d, rhs),
        "psi_braiding": D.sparse(d * d, d * d, psi),
        "psi_inverse": D.sparse(d * d, d * d, psi_inv),
    }


def _bimodule_refs(D: Data) -> dict:
    n, d, one = D.n, D.d, D.f.one()
    G, V = range(n), range(d)
    dm = d * n
    deg, M = D.deg, D.M
    left = lambda g, j, k: g * dm + M(j, k)        # H (x) M
    right = lambda j, k, g: M(j, k) * n + g        # M (x) H
    mu_l, mu_r, rho_l, rho_r = [], [], [], []
    h1l, h1r, h2, h3, h4 = [], [], [], [], []
    for j in V:
        for k in G:
            rho_l.append(((D.mul(deg[j], k) * dm + M(j, k), M(j, k)), one))
            rho_r.append(((right(j, k, k), M(j, k)), one))
            for g in G:
                gk, kg = D.mul(g, k), D.mul(k, g)
                mu_r.append(((M(j, kg), right(j, k, g)), one))
                h2.append(((D.mul(deg[j], k, g) * dm + M(j, kg), right(j, k, g)), one))
                h4.append(((right(j, kg, kg), right(j, k, g)), one))
                for r, a in D.act(g, j):
                    mu_l.append(((M(r, gk), left(g, j, k)), a))
                    h1l.append(((D.mul(deg[r], g, k) * dm + M(r, gk), left(g, j, k)), a))
                    h1r.append(((D.mul(g, deg[j], k) * dm + M(r, gk), left(g, j, k)), a))
                    h3.append(((right(r, gk, gk), left(g, j, k)), a))
    refs = {
        "yd_bimodule_left_action": D.sparse(dm, n * dm, mu_l),
        "yd_bimodule_right_action": D.sparse(dm, dm * n, mu_r),
        "yd_bimodule_left_coaction": D.sparse(n * dm, dm, rho_l),
        "yd_bimodule_right_coaction": D.sparse(dm * n, dm, rho_r),
        "hopfbimod1_lhs": D.sparse(n * dm, n * dm, h1l),
        "hopfbimod1_rhs": D.sparse(n * dm, n * dm, h1r),
        "hopfbimod2_lhs": D.sparse(n * dm, dm * n, h2),
        "hopfbimod2_rhs": D.sparse(n * dm, dm * n, h2),
        "hopfbimod3_lhs": D.sparse(dm * n, n * dm, h3),
        "hopfbimod3_rhs": D.sparse(dm * n, n * dm, h3),
        "hopfbimod4_lhs": D.sparse(dm * n, dm * n, h4),
        "hopfbimod4_rhs": D.sparse(dm * n, dm * n, h4),
    }
    return refs


def assemble(q) -> dict:
    """Total matrices of a truncated graded bialgebra whose top degree vanishes,
    so the truncation is the whole (finite dimensional) object."""
    f, dims = q.field, q.dims
    off = [sum(dims[:k]) for k in range(len(dims))]
    D = sum(dims)
    m, dl = [], []
    for (a, b), mat in q.mult.items():
        for (r, c) in ((r, c) for r in range(mat.rows) for c in range(mat.cols)):
            x = mat[r, c]
            if x != 0:
                i, j = divmod(c, dims[b])
                m.append(((off[a + b] + r, (off[a] + i) * D + off[b] + j), x))
    for (a, b), mat in q.comult.items():
        for (r, c) in ((r, c) for r in range(mat.rows) for c in range(mat.cols)):
            x = mat[r, c]
            if x != 0:
                i, j = divmod(r, dims[b])
                dl.append((((off[a] + i) * D + off[b] + j, off[a + b] + c), x))
    h = q.yd.hopf
    act, coact = [], []
    for k, mat in q.yd.actions.items():
        for r in range(mat.rows):
            for c in range(mat.cols):
                if mat[r, c] != 0:
                    g, j = divmod(c, dims[k])
                    act.append(((off[k] + r, g * D + off[k] + j), mat[r, c]))
    for k, mat in q.yd.coactions.items():
        for r in range(mat.rows):
            for c in range(mat.cols):
                if mat[r, c] != 0:
                    g, j = divmod(r, dims[k])
                    coact.append(((g * D + off[k] + j, off[k] + c), mat[r, c]))
    return {
        "dim": D,
        "mQ": Matrix.from_sparse(D, D * D, m, f),
        "deltaQ": Matrix.from_sparse(D * D, D, dl, f),
        "uQ": Matrix.from_sparse(D, 1, [((0, 0), 1)], f),
        "epsQ": Matrix.from_sparse(1, D, [((0, 0), 1)], f),
        "actQ": Matrix.from_sparse(D, h.dim * D, act, f),
        "coactQ": Matrix.from_sparse(h.dim * D, D, coact, f),
    }


def _entries(mat):
    return [((r, c), mat[r, c]) for r in range(mat.rows) for c in range(mat.cols) if mat[r, c] != 0]


def _bosonization_refs(D: Data, Q: dict) -> dict:
    """``(x # g)(y # h) = x (g . y) # gh`` and
    ``Delta(x # g) = x_1 # (x_2)_{-1} g (x) (x_2)_0 # g``."""
    n, dq, f = D.n, Q["dim"], D.f
    one = f.one()
    B = dq * n
    idx = lambda x, g: x * n + g
    mult, comult = [], []
    act = {}
    for (r, c), a in _entries(Q["actQ"]):
        g, y = divmod(c, dq)
        act.setdefault((g, y), []).append((r, a))
    prod = {}
    for (s, c), a in _entries(Q["mQ"]):
        prod.setdefault(divmod(c, dq), []).append((s, a))
    for x in range(dq):
        for g in range(n):
            for y in range(dq):
                for h in range(n):
                    col = idx(x, g) * B + idx(y, h)
                    for r, a in act.get((g, y), []):
                        for s, b in prod.get((x, r), []):
                            mult.append(((idx(s, D.mul(g, h)), col), a * b))
    coact = {}
    for (r, c), a in _entries(Q["coactQ"]):
        coact.setdefault(c, []).append(divmod(r, dq) + (a,))
    for (r, x), a in _entries(Q["deltaQ"]):
        x1, x2 = divmod(r, dq)
        for k, y, b in coact.get(x2, []):
            for g in range(n):
                comult.append(((idx(x1, D.mul(k, g)) * B + idx(y, g), idx(x, g)), a * b))
    return {
        "bosonization_mult": D.sparse(B, B * B, mult),
        "bosonization_comult": D.sparse(B * B, B, comult),
        "bosonization_unit": D.sparse(B, 1, [((idx(0, D.e), 0), one)]),
        "bosonization_counit": D.sparse(1, B, [((0, idx(0, g)), one) for g in range(n)]),
    }


def examples() -> list:
    """A few YD modules over small groups, including a nonabelian one."""
    from itertools import permutations

    elems = list(permutations(range(3)))
    pos = {p: k for k, p in enumerate(elems)}
    s3 = GroupTable(6, [[pos[tuple(a[b[i]] for i in range(3))] for b in elems] for a in elems])
    sgn = [(-1) ** sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) for p in elems]
    transp = [k for k, p in enumerate(elems) if sum(p[i] != i for i in range(3)) == 2]
    s3_acts = []
    for a in range(6):
        m = [[0] * 3 for _ in range(3)]
        for j, t in enumerate(transp):
            m[transp.index(s3.mul[s3.mul[a][t]][s3.inv[a]])][j] = sgn[a]
        s3_acts.append(m)
    return [
        ("z2_sign", Data(GroupTable.cyclic(2), [1], [[[1]], [[-1]]], QQ)),
        ("z3_character_gf7", Data(GroupTable.cyclic(3), [1], [[[1]], [[2]], [[4]]], GF7)),
        ("z2_two_dim", Data(GroupTable.cyclic(2), [1, 0], [[[1, 0], [0, 1]], [[-1, 0], [0, 1]]], QQ)),
        ("s3_transpositions", Data(s3, transp, s3_acts, QQ)),
    ]


def conformance_cases(with_bosonization=True):
    """``(example, builtin, env, expected)`` for every builtin and example."""
    for label, D in examples():
        mb = yd_to_bimodule(D.v)
        env = structure_env(D.h, yd=D.v, bimodule=mb)
        refs = {**_hopf_refs(D), **_yd_refs(D), **_bimodule_refs(D)}
        for name, mat in refs.items():
            yield label, name, env, mat
        if not with_bosonization or D.d != 1:
            continue
        q = typeone_truncation(braiding_from_yd(D.v), 4).bialgebra
        Q = assemble(q)
        benv = structure_env(D.h, extra_objects={"Q": Q["dim"]},
                             extra_gens={k: v for k, v in Q.items() if k != "dim"})
        for name, mat in _bosonization_refs(D, Q).items():
            yield label, name, benv, mat
        boson = bosonize(q, D.h)
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]:
            if a + b > q.N or not q.dims[a] or not q.dims[b]:
                continue
            senv = structure_env(
                D.h,
                extra_objects={"Qa": q.dims[a], "Qb": q.dims[b], "Qn": q.dims[a + b]},
                extra_gens={"mQab": q.mult[a, b], "deltaQab": q.comult[a, b],
                            "actQb": q.yd.actions[b], "coactQb": q.yd.coactions[b]})
            yield f"{label}[{a},{b}]", "smash_mult_component", senv, boson.mult[a, b]
            yield f"{label}[{a},{b}]", "smash_comult_component", senv, boson.comult[a, b]
