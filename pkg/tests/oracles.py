"""Slow, independent reference implementations used to cross-check the
library.  Plain Python lists; entries are Fractions or residues mod p."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product


class Field:
    def __init__(self, p=None):
        self.p = p

    def norm(self, x):
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def inv(self, x):
        return 1 / Fraction(x) if self.p is None else pow(x, -1, self.p)


def rref(rows, F: Field):
    a = [[F.norm(x) for x in r] for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = F.inv(a[r][c])
        a[r] = [F.norm(x * s) for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                t = a[i][c]
                a[i] = [F.norm(x - t * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(rows, F: Field) -> int:
    return len(rref(rows, F)[1])


def nullity(rows, ncols, F: Field) -> int:
    return ncols - (rank(rows, F) if rows else 0)


def matmul(a, b, F: Field):
    return [[F.norm(sum(a[i][k] * b[k][j] for k in range(len(b)))) for j in range(len(b[0]))]
            for i in range(len(a))]


def kron(a, b, F: Field):
    return [[F.norm(x * y) for x in ra for y in rb] for ra in a for rb in b]


def diagonal_symmetrizer(q, n, F: Field):
    """Sum over S_n of braid lifts for c(x_i x_j) = q_ij x_j x_i, built from
    inversion counting: each lift sends a basis word to a permuted word times
    the product of q over the pairs it crosses."""
    d = len(q)
    size = d ** n
    out = [[0] * size for _ in range(size)]
    words = list(product(range(d), repeat=n))
    index = {w: k for k, w in enumerate(words)}
    for sigma in permutations(range(n)):
        for w in words:
            coeff = 1
            for k in range(n):
                for l in range(k + 1, n):
                    if sigma[k] > sigma[l]:
                        coeff *= q[w[k]][w[l]]
            image = [None] * n
            for k in range(n):
                image[sigma[k]] = w[k]
            out[index[tuple(image)]][index[w]] += coeff
    return [[F.norm(x) for x in row] for row in out]


def apply_braiding_word(c, d, n, word, vec: dict, F: Field) -> dict:
    """Apply c at 0-based positions ``word`` (rightmost first) to a sparse
    vector of words."""
    for i in reversed(word):
        nxt: dict = {}
        for w, coeff in vec.items():
            col = w[i] * d + w[i + 1]
            for r in range(d * d):
                x = c[r][col]
                if x:
                    nw = w[:i] + (r // d, r % d) + w[i + 2:]
                    nxt[nw] = F.norm(nxt.get(nw, 0) + coeff * x)
        vec = {k: v for k, v in nxt.items() if v}
    return vec


def selection_word(sigma):
    """A reduced word for sigma found by moving the largest image right
    first (a different strategy from the library's bubble sort)."""
    s = list(sigma)
    word = []
    n = len(s)
    for target in range(n - 1, -1, -1):
        k = s.index(target)
        while k < target:
            s[k], s[k + 1] = s[k + 1], s[k]
            word.append(k)
            k += 1
    return word[::-1]


def general_symmetrizer(c, d, n, F: Field):
    words = list(product(range(d), repeat=n))
    index = {w: k for k, w in enumerate(words)}
    size = len(words)
    out = [[0] * size for _ in range(size)]
    for sigma in permutations(range(n)):
        word = selection_word(sigma)
        for w in words:
            for nw, x in apply_braiding_word(c, d, n, word, {w: 1}, F).items():
                out[index[nw]][index[w]] = F.norm(out[index[nw]][index[w]] + x)
    return out
