"""A small typed language for strict monoidal morphism expressions.

Grammar (whitespace is insignificant)::

    expr    := tensor ('.' tensor)*          composition, g . f = g after f
    tensor  := atom ('*' atom)*              tensor product
    atom    := '(' expr ')'
             | 'id' '[' word ']'
             | NAME ('[' word (',' word)* ']')?
    word    := NAME*                         empty word = unit object

``.`` binds looser than ``*``; both associate to the left.  ``c[X,Y]`` and
``cinv[X,Y]`` are the ambient symmetric flip ``X Y -> Y X`` and its inverse
``Y X -> X Y`` unless the signature declares them.

``.mor`` files hold ``object H : 2``, ``gen m : H H -> H`` and
``let name = expr`` lines; ``--`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .braided_space import flip_matrix
from .exactla import FieldSpec, Matrix, QQ, kronecker

__all__ = [
    "Compose",
    "DSLSyntaxError",
    "Env",
    "Gen",
    "Id",
    "MorTypeError",
    "ObjectWord",
    "ShapeMismatch",
    "Signature",
    "Tensor",
    "UnknownName",
    "builtin_formulas",
    "canonical_signature",
    "evaluate",
    "load_mor",
    "parse_expr",
    "print_expr",
    "typecheck",
]

# a word of object names; the empty word is the monoidal unit
ObjectWord = tuple


class DSLSyntaxError(SyntaxError):
    def __init__(self, msg, line, col):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


class UnknownName(NameError):
    def __init__(self, name, line=None, col=None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"UnknownName: {name!r}{where}")
        self.name = name
        self.line = line
        self.col = col


class MorTypeError(TypeError):
    def __init__(self, msg, path, pos=None):
        where = f" (line {pos[0]}, column {pos[1]})" if pos else ""
        super().__init__(f"{msg} at {'/'.join(path) or 'root'}{where}")
        self.path = list(path)
        self.pos = pos


class ShapeMismatch(ValueError):
    pass


# -- syntax tree ----------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    name: str
    subs: tuple = ()
    pos: tuple = field(default=None, compare=False, repr=False)

    @property
    def key(self) -> str:
        if not self.subs:
            return self.name
        return f"{self.name}[{','.join(' '.join(w) for w in self.subs)}]"


@dataclass(frozen=True)
class Id:
    word: tuple
    pos: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Tensor:
    left: "MorExpr"
    right: "MorExpr"
    pos: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Compose:
    outer: "MorExpr"
    inner: "MorExpr"
    pos: tuple = field(default=None, compare=False, repr=False)


MorExpr = Union[Gen, Id, Tensor, Compose]


@dataclass
class Signature:
    objects: dict = field(default_factory=dict)   # name -> dim (None if unknown)
    gens: dict = field(default_factory=dict)      # key -> (dom, cod)
    lets: dict = field(default_factory=dict)      # name -> MorExpr

    def declare_object(self, name, dim=None):
        self.objects[name] = dim

    def declare_gen(self, key, dom, cod):
        self.gens[key] = (tuple(dom), tuple(cod))

    def copy(self) -> "Signature":
        return Signature(dict(self.objects), dict(self.gens), dict(self.lets))


# -- parser -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[.*()\[\],]))")


def _tokenize(src: str, line0: int = 1):
    toks = []
    line, col0 = line0, 0
    i = 0
    while i < len(src):
        if src[i] == "\n":
            line += 1
            col0 = i + 1
            i += 1
            continue
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise DSLSyntaxError(f"unexpected character {src[i]!r}", line, i - col0 + 1)
        start = m.start("name") if m.group("name") else m.start("op")
        kind = "name" if m.group("name") else m.group("op")
        toks.append((kind, m.group("name") or m.group("op"), line, start - col0 + 1))
        i = m.end()
    toks.append(("eof", "", line, len(src) - col0 + 1))
    return toks


class _Parser:
    def __init__(self, src, sig, line0=1):
        self.toks = _tokenize(src, line0)
        self.k = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None):
        t = self.toks[self.k]
        if kind is not None and t[0] != kind:
            want = "name" if kind == "name" else repr(kind)
            got = "end of input" if t[0] == "eof" else repr(t[1])
            raise DSLSyntaxError(f"expected {want}, found {got}", t[2], t[3])
        self.k += 1
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t[0] != "eof":
            raise DSLSyntaxError(f"unexpected {t[1]!r}", t[2], t[3])
        return e

    def expr(self):
        e = self.tensor()
        while self.peek()[0] == ".":
            t = self.take()
            rhs = self.tensor()
            e = Compose(e, rhs, pos=(t[2], t[3]))
        return e

    def tensor(self):
        e = self.atom()
        while self.peek()[0] == "*":
            t = self.take()
            rhs = self.atom()
            e = Tensor(e, rhs, pos=(t[2], t[3]))
        return e

    def word(self, stop=("]",)):
        names = []
        while self.peek()[0] == "name":
            t = self.take()
            if t[1] not in self.sig.objects:
                raise UnknownName(t[1], t[2], t[3])
            names.append(t[1])
        if self.peek()[0] not in stop:
            t = self.peek()
            raise DSLSyntaxError(f"unexpected {t[1]!r} in object word", t[2], t[3])
        return tuple(names)

    def atom(self):
        t = self.peek()
        if t[0] == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if t[0] != "name":
            got = "end of input" if t[0] == "eof" else repr(t[1])
            raise DSLSyntaxError(f"expected a morphism, found {got}", t[2], t[3])
        self.take()
        pos = (t[2], t[3])
        if t[1] == "id":
            self.take("[")
            names = []
            while True:
                names.extend(self.word(stop=("]", ",")))
                if self.peek()[0] == ",":
                    self.take()
                    continue
                break
            self.take("]")
            return Id(tuple(names), pos=pos)
        subs = ()
        if self.peek()[0] == "[":
            self.take()
            slots = [self.word(stop=("]", ","))]
            while self.peek()[0] == ",":
                self.take()
                slots.append(self.word(stop=("]", ",")))
            self.take("]")
            subs = tuple(slots)
        g = Gen(t[1], subs, pos=pos)
        if not _known(g, self.sig):
            raise UnknownName(g.key, *pos)
        return g


def _known(g: Gen, sig: Signature) -> bool:
    if g.key in sig.gens or g.name in sig.lets and not g.subs:
        return True
    return g.name in ("c", "cinv") and len(g.subs) == 2


def parse_expr(src: str, sig: Signature, line: int = 1) -> MorExpr:
    return _Parser(src, sig, line).parse()


# -- printer ------------------------------------------------------------------------

def _word_str(w) -> str:
    return " ".join(w)


def print_expr(e: MorExpr) -> str:
    if isinstance(e, Id):
        return f"id[{','.join(e.word)}]"
    if isinstance(e, Gen):
        if not e.subs:
            return e.name
        return f"{e.name}[{','.join(_word_str(w) for w in e.subs)}]"
    if isinstance(e, Tensor):
        left = print_expr(e.left)
        right = print_expr(e.right)
        if isinstance(e.left, Compose):
            left = f"({left})"
        if isinstance(e.right, (Compose, Tensor)):
            right = f"({right})"
        return f"{left} * {right}"
    left = print_expr(e.outer)
    right = print_expr(e.inner)
    if isinstance(e.inner, Compose):
        right = f"({right})"
    return f"{left} . {right}"


# -- typing ---------------------------------------------------------------------------

def _gen_type(g: Gen, sig: Signature, path):
    if g.key in sig.gens:
        return sig.gens[g.key]
    if not g.subs and g.name in sig.lets:
        return typecheck(sig.lets[g.name], sig)
    if g.name == "c" and len(g.subs) == 2:
        x, y = g.subs
        return tuple(x) + tuple(y), tuple(y) + tuple(x)
    if g.name == "cinv" and len(g.subs) == 2:
        x, y = g.subs
        return tuple(y) + tuple(x), tuple(x) + tuple(y)
    raise UnknownName(g.key, *(g.pos or (None, None)))


def typecheck(e: MorExpr, sig: Signature, path=()) -> tuple:
    """``(domain, codomain)`` object words of ``e``."""
    if isinstance(e, Id):
        return e.word, e.word
    if isinstance(e, Gen):
        return _gen_type(e, sig, path)
    if isinstance(e, Tensor):
        d1, c1 = typecheck(e.left, sig, path + ("tensor.left",))
        d2, c2 = typecheck(e.right, sig, path + ("tensor.right",))
        return d1 + d2, c1 + c2
    d_in, c_in = typecheck(e.inner, sig, path + ("compose.inner",))
    d_out, c_out = typecheck(e.outer, sig, path + ("compose.outer",))
    if c_in != d_out:
        raise MorTypeError(
            f"cannot compose {print_expr(e.outer)} : {_word_str(d_out) or '1'} -> ... "
            f"after {print_expr(e.inner)} : ... -> {_word_str(c_in) or '1'}",
            path, e.pos)
    return d_in, c_out


# -- evaluation -------------------------------------------------------------------------

@dataclass
class Env:
    """Object dimensions and generator matrices for evaluation."""

    objects: dict
    gens: dict
    field: FieldSpec = QQ
    sig: Signature | None = None

    def dim(self, word) -> int:
        d = 1
        for name in word:
            if name not in self.objects:
                raise UnknownName(name)
            d *= self.objects[name]
        return d


def evaluate(e: MorExpr, env: Env, sig: Signature | None = None) -> Matrix:
    sig = sig or env.sig
    f = env.field
    if isinstance(e, Id):
        return Matrix.identity(env.dim(e.word), f)
    if isinstance(e, Tensor):
        return kronecker(evaluate(e.left, env, sig), evaluate(e.right, env, sig))
    if isinstance(e, Compose):
        outer = evaluate(e.outer, env, sig)
        inner = evaluate(e.inner, env, sig)
        if outer.cols != inner.rows:
            raise ShapeMismatch(f"{print_expr(e.outer)} has {outer.cols} columns, "
                                f"{print_expr(e.inner)} has {inner.rows} rows")
        return outer @ inner
    # generator
    if e.key in env.gens:
        m = env.gens[e.key]
        if sig is not None and e.key in sig.gens:
            dom, cod = sig.gens[e.key]
            if m.shape != (env.dim(cod), env.dim(dom)):
                raise ShapeMismatch(f"{e.key} bound to {m.shape}, declared {(env.dim(cod), env.dim(dom))}")
        return m
    if sig is not None and not e.subs and e.name in sig.lets:
        return evaluate(sig.lets[e.name], env, sig)
    if e.name in ("c", "cinv") and len(e.subs) == 2:
        x, y = e.subs
        dx, dy = env.dim(x), env.dim(y)
        return flip_matrix(dx, dy, f) if e.name == "c" else flip_matrix(dy, dx, f)
    raise UnknownName(e.key, *(e.pos or (None, None)))


# -- .mor files ----------------------------------------------------------------------------

def _parse_word_text(text: str, sig: Signature, line: int) -> tuple:
    text = text.strip()
    if text in ("", "[]", "1"):
        return ()
    names = text.split()
    for n in names:
        if n not in sig.objects:
            raise UnknownName(n, line, 1)
    return tuple(names)


def load_mor(text: str, sig: Signature | None = None) -> tuple[Signature, dict]:
    """Parse a ``.mor`` document; returns the signature and the ``let`` bindings
    in file order."""
    sig = sig.copy() if sig is not None else Signature()
    lets = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "object":
            name, colon, dim = rest.partition(":")
            if not colon:
                raise DSLSyntaxError("expected 'object NAME : DIM'", lineno, 1)
            try:
                sig.declare_object(name.strip(), int(dim))
            except ValueError:
                raise DSLSyntaxError("object dimension must be an integer", lineno, 1) from None
        elif head == "gen":
            name, colon, typ = rest.partition(":")
            dom, arrow, cod = typ.partition("->")
            if not colon or not arrow:
                raise DSLSyntaxError("expected 'gen NAME : WORD -> WORD'", lineno, 1)
            sig.declare_gen(name.strip().replace(" ", ""), _parse_word_text(dom, sig, lineno),
                            _parse_word_text(cod, sig, lineno))
        elif head == "let":
            name, eq, src = rest.partition("=")
            if not eq:
                raise DSLSyntaxError("expected 'let NAME = EXPR'", lineno, 1)
            col = raw.index("=") + 1
            expr = parse_expr(" " * col + src, sig, lineno)
            typecheck(expr, sig)
            sig.lets[name.strip()] = expr
            lets[name.strip()] = expr
        else:
            raise DSLSyntaxError(f"unknown directive {head!r}", lineno, 1)
    return sig, lets


# -- builtin library -----------------------------------------------------------------------

_CANONICAL_GENS = {
    # Hopf algebra H
    "m": ("H H", "H"), "u": ("", "H"), "delta": ("H", "H H"), "eps": ("H", ""),
    "S": ("H", "H"), "Sinv": ("H", "H"),
    # Yetter-Drinfeld module V
    "act": ("H V", "V"), "coact": ("V", "H V"),
    # Hopf bimodule M
    "muL": ("H M", "M"), "muR": ("M H", "M"), "rhoL": ("M", "H M"), "rhoR": ("M", "M H"),
    # braided bialgebra Q in YD, plus its (a,b) graded components
    "mQ": ("Q Q", "Q"), "uQ": ("", "Q"), "deltaQ": ("Q", "Q Q"), "epsQ": ("Q", ""),
    "actQ": ("H Q", "Q"), "coactQ": ("Q", "H Q"),
    "mQab": ("Qa Qb", "Qn"), "deltaQab": ("Qn", "Qa Qb"),
    "actQb": ("H Qb", "Qb"), "coactQb": ("Qb", "H Qb"),
}


def canonical_signature() -> Signature:
    sig = Signature()
    for name in ("H", "Q", "M", "V", "Qa", "Qb", "Qn"):
        sig.declare_object(name)
    for name, (dom, cod) in _CANONICAL_GENS.items():
        sig.declare_gen(name, tuple(dom.split()), tuple(cod.split()))
    return sig


_BUILTINS = {
    # bialgebra compatibility
    "braided_compat_lhs": "delta . m",
    "braided_compat_rhs": "(m * m) . (id[H] * c[H,H] * id[H]) . (delta * delta)",
    "counit_compat_lhs": "eps . m",
    "counit_compat_rhs": "eps * eps",
    # Hopf bimodule compatibilities
    "hopfbimod1_lhs": "rhoL . muL",
    "hopfbimod1_rhs": "(m * muL) . (id[H] * c[H,H] * id[M]) . (delta * rhoL)",
    "hopfbimod2_lhs": "rhoL . muR",
    "hopfbimod2_rhs": "(m * muR) . (id[H] * c[M,H] * id[H]) . (rhoL * delta)",
    "hopfbimod3_lhs": "rhoR . muL",
    "hopfbimod3_rhs": "(muL * m) . (id[H] * c[H,M] * id[H]) . (delta * rhoR)",
    "hopfbimod4_lhs": "rhoR . muR",
    "hopfbimod4_rhs": "(muR * m) . (id[M] * c[H,H] * id[H]) . (rhoR * delta)",
    # Yetter-Drinfeld compatibility (antipode-free form) and the YD braiding
    "yd_compat_lhs": "(m * act) . (id[H] * c[H,H] * id[V]) . (delta * coact)",
    "yd_compat_rhs": "(m * id[V]) . (id[H] * c[V,H]) . (coact * id[H]) . (act * id[H]) . (id[H] * c[H,V]) . (delta * id[V])",
    "psi_braiding": "(act * id[V]) . (id[H] * c[V,V]) . (coact * id[V])",
    "psi_inverse": "(id[V] * act) . (id[V] * cinv[H,V]) . (cinv[V,V] * Sinv) . (id[V] * cinv[V,H]) . (id[V] * coact)",
    # V (x) H as a Hopf bimodule
    "yd_bimodule_left_action": "(act * m) . (id[H] * c[H,V] * id[H]) . (delta * id[V] * id[H])",
    "yd_bimodule_right_action": "id[V] * m",
    "yd_bimodule_left_coaction": "(m * id[V] * id[H]) . (id[H] * c[V,H] * id[H]) . (coact * delta)",
    "yd_bimodule_right_coaction": "id[V] * delta",
    # Radford-Majid bosonization
    "bosonization_mult": "(mQ * m) . (id[Q] * actQ * id[H] * id[H]) . (id[Q] * id[H] * c[H,Q] * id[H]) . (id[Q] * delta * id[Q] * id[H])",
    "bosonization_unit": "uQ * u",
    "bosonization_comult": "(id[Q] * m * id[Q] * id[H]) . (id[Q] * id[H] * c[Q,H] * id[H]) . (id[Q] * coactQ * id[H] * id[H]) . (deltaQ * delta)",
    "bosonization_counit": "epsQ * eps",
    "smash_mult_component": "(mQab * m) . (id[Qa] * actQb * id[H] * id[H]) . (id[Qa] * id[H] * c[H,Qb] * id[H]) . (id[Qa] * delta * id[Qb] * id[H])",
    "smash_comult_component": "(id[Qa] * m * id[Qb] * id[H]) . (id[Qa] * id[H] * c[Qb,H] * id[H]) . (id[Qa] * coactQb * id[H] * id[H]) . (deltaQab * delta)",
    # adjoint action and coadjoint coaction
    "ad": "m . (m * id[H]) . (id[H] * c[H,H]) . (id[H] * S * id[H]) . (delta * id[H])",
    "coad": "(m * id[H]) . (id[H] * S * id[H]) . (id[H] * c[H,H]) . (delta * id[H]) . delta",
    # antipode laws
    "antipode_left": "m . (S * id[H]) . delta",
    "antipode_right": "m . (id[H] * S) . delta",
    "unit_counit": "u . eps",
}


def builtin_formulas() -> dict:
    """Named, typechecked expressions over :func:`canonical_signature`."""
    sig = canonical_signature()
    out = {}
    for name, src in _BUILTINS.items():
        e = parse_expr(src, sig)
        typecheck(e, sig)
        out[name] = e
    return out


def builtin_source(name: str) -> str:
    return _BUILTINS[name]
