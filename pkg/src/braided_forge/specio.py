"""Reading JSON specification files into braidings, YD modules and
explicit truncated bialgebras."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .braided_space import BasedSpace, Braiding, braiding_from_diagonal, braiding_from_matrix, braiding_from_yd
from .exactla import DivisionByZero, FieldSpec, Matrix
from .graded import GradedSpace, TruncatedGradedBialgebra, _pairs
from .hopf import FinHopf, GroupTable, YDModule, group_algebra, yd_from_group

__all__ = ["LoadedSpec", "SpecError", "load_spec", "read_spec", "schema"]


class SpecError(ValueError):
    """Malformed input: unreadable, schema-invalid or inconsistent shapes."""


@lru_cache(maxsize=None)
def schema(name: str = "spec") -> dict:
    text = resources.files("braided_forge").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def read_spec(source) -> dict:
    """Parse and schema-validate a spec given as a path, JSON text or dict."""
    if isinstance(source, dict):
        data = source
    else:
        path = Path(source)
        try:
            text = path.read_text("utf-8")
        except OSError as exc:
            raise SpecError(f"cannot read {path}: {exc.strerror}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, schema("spec"))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise SpecError(f"schema violation at {where}: {exc.message}") from None
    return data


@dataclass
class LoadedSpec:
    """Parsed but not yet validated content.  Building the braiding (which
    validates it) is left to :meth:`braiding` so callers can report failures."""

    data: dict
    field: FieldSpec

    @property
    def kind(self) -> str:
        if "braiding" in self.data:
            return "yd" if self.data["braiding"]["kind"] == "yd" else "braiding"
        if "bialgebra" in self.data:
            return "bialgebra"
        return "environment"

    @property
    def name(self) -> str:
        return self.data.get("name", "")

    def space(self) -> BasedSpace:
        sp = self.data["space"]
        try:
            return BasedSpace(sp["dim"], tuple(sp.get("labels", ())), self.field)
        except ValueError as exc:
            raise SpecError(str(exc)) from None

    def matrix(self, rows, cols=None) -> Matrix:
        try:
            return Matrix.from_rows(rows, self.field, cols=cols)
        except DivisionByZero as exc:
            raise SpecError(f"entry not defined in {self.field}: {exc}") from None
        except (ValueError, TypeError) as exc:
            raise SpecError(f"bad matrix: {exc}") from None

    def group(self) -> GroupTable:
        g = self.data["braiding"]["group"]
        return GroupTable(g["order"], tuple(tuple(r) for r in g["table"]))

    def hopf(self) -> FinHopf:
        return group_algebra(self.group(), self.field)

    def yd(self, hopf: FinHopf | None = None) -> YDModule:
        b = self.data["braiding"]
        h = hopf or self.hopf()
        d = self.space().dim
        if len(b["degrees"]) != d:
            raise SpecError(f"{len(b['degrees'])} degrees for a space of dimension {d}")
        if len(b["action"]) != h.dim:
            raise SpecError(f"need one action matrix per group element ({h.dim})")
        mats = []
        for a in b["action"]:
            m = self.matrix(a, cols=d)
            if m.shape != (d, d):
                raise SpecError(f"action matrices must be {d}x{d}")
            mats.append(m)
        if any(not 0 <= x < h.dim for x in b["degrees"]):
            raise SpecError("degree index outside the group")
        return yd_from_group(h, b["degrees"], mats, self.space().labels)

    def braiding(self) -> Braiding:
        b = self.data["braiding"]
        space = self.space()
        d = space.dim
        if b["kind"] == "diagonal":
            q = b["q"]
            if len(q) != d or any(len(r) != d for r in q):
                raise SpecError(f"q must be {d}x{d}")
            try:
                q = [[self.field.coerce(x) for x in r] for r in q]
            except DivisionByZero as exc:
                raise SpecError(str(exc)) from None
            return braiding_from_diagonal(q, space)
        if b["kind"] == "matrix":
            c = self.matrix(b["entries"], cols=d * d)
            if c.shape != (d * d, d * d):
                raise SpecError(f"braiding matrix must be {d * d}x{d * d}")
            return braiding_from_matrix(c, space)
        return braiding_from_yd(self.yd())

    def bialgebra(self) -> TruncatedGradedBialgebra:
        spec = self.data["bialgebra"]
        dims = list(spec["dims"])
        N = len(dims) - 1
        f = self.field

        def comp(table, key, rows, cols, default):
            if key in table:
                m = self.matrix(table[key], cols=cols)
                if m.shape != (rows, cols):
                    raise SpecError(f"component {key} must be {rows}x{cols}, got {m.shape}")
                return m
            return default(rows, cols)

        def fallback(a, b):
            def make(rows, cols):
                if (a == 0 or b == 0) and rows == cols:
                    if dims[0] != 1:
                        raise SpecError(f"component {a},{b} is required when dims[0] != 1")
                    return Matrix.identity(rows, f)
                return Matrix.zeros(rows, cols, f)
            return make

        mult, comult, flips = {}, {}, {}
        for a, b in _pairs(N):
            key = f"{a},{b}"
            mult[a, b] = comp(spec.get("mult", {}), key, dims[a + b], dims[a] * dims[b], fallback(a, b))
            comult[a, b] = comp(spec.get("comult", {}), key, dims[a] * dims[b], dims[a + b], fallback(a, b))
            if key in spec.get("flips", {}):
                flips[a, b] = comp(spec["flips"], key, dims[a] * dims[b], dims[a] * dims[b], None)
        unit = comp(spec, "unit", dims[0], 1, lambda r, c: Matrix.identity(1, f) if r == 1 else None)
        counit = comp(spec, "counit", 1, dims[0], lambda r, c: Matrix.identity(1, f) if c == 1 else None)
        if unit is None or counit is None:
            raise SpecError("unit and counit are required when dims[0] != 1")
        return TruncatedGradedBialgebra(GradedSpace.from_dims(dims, f), mult, comult, unit, counit, flips,
                                        self.name or "B")


def load_spec(source, field_override=None) -> LoadedSpec:
    data = read_spec(source)
    try:
        f = FieldSpec.parse(field_override if field_override is not None else data.get("field", "Q"))
    except (ValueError, TypeError) as exc:
        raise SpecError(f"bad field: {exc}") from None
    return LoadedSpec(data, f)
