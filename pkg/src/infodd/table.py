"""Multi-valued decision tables: schema model, ingestion, cofactors.

A table maps assignments of n discrete variables to one of m output
values (the products of a catalog). Tables are immutable once built;
cofactor extraction returns new tables sharing the same schema.

Three ingestion formats are supported:

* catalog documents (JSON): per-product entries whose cells list the
  admissible values of each variable; every entry expands to the
  Cartesian product of its cells,
* plain CSV with a header naming every variable plus the output
  column ``f``,
* Monk's benchmark files (``class a1..a6 id``, attributes 1-based).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from array import array
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import DataError, InconsistentTableError

__all__ = [
    "Consistency",
    "EMPTY",
    "VariableSpec",
    "TableSchema",
    "Row",
    "DecisionTable",
    "CatalogEntry",
    "Catalog",
    "load_catalog",
    "parse_catalog",
    "parse_table_csv",
    "parse_monks",
    "monks_schema",
    "pad_table",
]


class Consistency(Enum):
    """Policy for rows that repeat an assignment with a different output.

    STRICT aborts ingestion (the table must describe a function);
    MAJORITY rewrites each contradicting group to its most frequent
    output, breaking ties toward the smallest output value.
    """

    STRICT = "strict"
    MAJORITY = "majority"


class _EmptyMarker:
    __slots__ = ()

    def __repr__(self) -> str:
        return "EMPTY"


#: Distinguished result of :meth:`DecisionTable.constant_value` on an
#: empty cofactor. Compare with ``is``.
EMPTY = _EmptyMarker()


@dataclass(frozen=True)
class VariableSpec:
    """One discrete variable: 0-based position, name, and value labels."""

    index: int
    name: str
    arity: int
    value_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "value_labels", tuple(self.value_labels))
        if self.index < 0:
            raise DataError(f"variable {self.name!r}: negative index")
        if self.arity < 2:
            raise DataError(f"variable {self.name!r}: arity must be >= 2")
        if self.arity != len(self.value_labels):
            raise DataError(
                f"variable {self.name!r}: arity {self.arity} != "
                f"{len(self.value_labels)} value labels"
            )

    @classmethod
    def of(cls, index: int, name: str, value_labels: Sequence[str]) -> "VariableSpec":
        return cls(index, name, len(value_labels), tuple(value_labels))


@dataclass(frozen=True)
class TableSchema:
    """Ordered variables plus the labeled output domain."""

    variables: tuple[VariableSpec, ...]
    output_arity: int
    output_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "output_labels", tuple(self.output_labels))
        if self.output_arity < 1:
            raise DataError("output arity must be >= 1")
        if self.output_arity != len(self.output_labels):
            raise DataError(
                f"output arity {self.output_arity} != "
                f"{len(self.output_labels)} output labels"
            )
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise DataError("variable names must be unique within a schema")
        for pos, var in enumerate(self.variables):
            if var.index != pos:
                raise DataError(
                    f"variable {var.name!r} carries index {var.index}, "
                    f"expected {pos}"
                )

    @classmethod
    def build(
        cls,
        variables: Sequence[tuple[str, Sequence[str]]],
        output_labels: Sequence[str],
    ) -> "TableSchema":
        specs = tuple(
            VariableSpec.of(i, name, labels)
            for i, (name, labels) in enumerate(variables)
        )
        return cls(specs, len(output_labels), tuple(output_labels))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(v.arity for v in self.variables)

    def to_doc(self) -> dict:
        return {
            "variables": [
                {"name": v.name, "labels": list(v.value_labels)}
                for v in self.variables
            ],
            "outputs": list(self.output_labels),
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "TableSchema":
        try:
            variables = [(v["name"], v["labels"]) for v in doc["variables"]]
            outputs = doc["outputs"]
        except (KeyError, TypeError) as exc:
            raise DataError(f"malformed schema document: {exc}") from exc
        return cls.build(variables, outputs)


@dataclass(frozen=True)
class Row:
    """One assignment of values to all variables plus its output."""

    values: tuple[int, ...]
    output: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))


class DecisionTable:
    """Immutable k-row table; k = 0 is legal only for cofactors."""

    __slots__ = ("schema", "rows", "_flat", "_outputs", "_index")

    def __init__(
        self,
        schema: TableSchema,
        rows: Iterable[Row],
        *,
        allow_empty: bool = False,
    ) -> None:
        rows = tuple(rows)
        if not rows and not allow_empty:
            raise DataError("decision table must contain at least one row")
        n = schema.n
        arities = schema.arities
        m = schema.output_arity
        for pos, row in enumerate(rows):
            if len(row.values) != n:
                raise DataError(
                    f"row {pos}: expected {n} values, got {len(row.values)}"
                )
            for var, value in enumerate(row.values):
                if not 0 <= value < arities[var]:
                    raise DataError(
                        f"row {pos}: value {value} outside domain of "
                        f"{schema.variables[var].name!r} (arity {arities[var]})"
                    )
            if not 0 <= row.output < m:
                raise DataError(
                    f"row {pos}: output {row.output} outside [0, {m})"
                )
        self.schema = schema
        self.rows = rows
        self._flat: array | None = None
        self._outputs: array | None = None
        self._index: array | None = None

    # -- construction ------------------------------------------------

    @classmethod
    def ingest(
        cls,
        schema: TableSchema,
        rows: Iterable[Row],
        consistency: Consistency = Consistency.STRICT,
    ) -> "DecisionTable":
        """Validate and apply the consistency policy; k >= 1 enforced.

        Duplicate identical rows are kept: multiplicities weight the
        empirical output probabilities.
        """
        rows = list(rows)
        groups: dict[tuple[int, ...], Counter] = {}
        for row in rows:
            groups.setdefault(row.values, Counter())[row.output] += 1
        conflicts = {vals: c for vals, c in groups.items() if len(c) > 1}
        if conflicts:
            if consistency is Consistency.STRICT:
                vals, counter = next(iter(conflicts.items()))
                raise InconsistentTableError(
                    f"assignment {vals} maps to outputs "
                    f"{sorted(counter)} (strict policy)"
                )
            resolved = {
                vals: min(c, key=lambda out: (-c[out], out))
                for vals, c in conflicts.items()
            }
            rows = [
                Row(row.values, resolved.get(row.values, row.output))
                for row in rows
            ]
        return cls(schema, rows)

    # -- packed views (shared with the entropy kernels) ----------------

    def packed(self) -> tuple[array, array]:
        """Row-major flat values and outputs as C-int arrays."""
        if self._flat is None:
            self._flat = array(
                "i", (v for row in self.rows for v in row.values)
            )
            self._outputs = array("i", (row.output for row in self.rows))
        return self._flat, self._outputs

    def row_index(self) -> array:
        """Index array selecting every row, for kernel subset calls."""
        if self._index is None:
            self._index = array("i", range(len(self.rows)))
        return self._index

    # -- core operations ----------------------------------------------

    @property
    def k(self) -> int:
        return len(self.rows)

    def restrict(self, var: int, value: int) -> "DecisionTable":
        """Cofactor: the sub-table where ``var`` equals ``value``.

        May be empty. The schema is unchanged; callers track which
        variables they have already fixed.
        """
        if not 0 <= var < self.schema.n:
            raise IndexError(f"variable index {var} out of range")
        if not 0 <= value < self.schema.variables[var].arity:
            raise ValueError(
                f"value {value} outside domain of variable {var}"
            )
        kept = (row for row in self.rows if row.values[var] == value)
        return DecisionTable(self.schema, kept, allow_empty=True)

    def constant_value(self):
        """Shared output if all rows agree, None otherwise, EMPTY if k=0."""
        if not self.rows:
            return EMPTY
        first = self.rows[0].output
        for row in self.rows:
            if row.output != first:
                return None
        return first

    # -- CSV ------------------------------------------------------------

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([v.name for v in self.schema.variables] + ["f"])
        for row in self.rows:
            writer.writerow(list(row.values) + [row.output])
        return out.getvalue()

    # -- misc -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecisionTable):
            return NotImplemented
        return self.schema == other.schema and self.rows == other.rows

    __hash__ = None  # mutable caches; tables are compared, not hashed

    def __repr__(self) -> str:
        return (
            f"DecisionTable(n={self.schema.n}, "
            f"m={self.schema.output_arity}, k={self.k})"
        )


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog line: a product plus per-variable admissible values."""

    product_label: str
    output: int
    cells: tuple[tuple[int, ...], ...]

    def combinations(self) -> int:
        total = 1
        for cell in self.cells:
            total *= len(cell)
        return total


@dataclass(frozen=True)
class Catalog:
    """Parsed catalog document: schema plus unexpanded entries."""

    name: str
    schema: TableSchema
    entries: tuple[CatalogEntry, ...]

    def expand(
        self, consistency: Consistency = Consistency.STRICT
    ) -> DecisionTable:
        """One row per combination of each entry's cells, in document order."""
        rows = []
        for entry in self.entries:
            for combo in itertools.product(*entry.cells):
                rows.append(Row(combo, entry.output))
        return DecisionTable.ingest(self.schema, rows, consistency)


def load_catalog(doc) -> Catalog:
    """Parse a catalog document (dict, or JSON text/bytes) without expanding."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise DataError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise DataError("catalog document must be a JSON object")
    try:
        raw_vars = doc["variables"]
        raw_products = doc["products"]
        raw_entries = doc["entries"]
    except KeyError as exc:
        raise DataError(f"catalog missing key: {exc}") from exc

    try:
        variables = [(v["name"], v["labels"]) for v in raw_vars]
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed variable spec: {exc}") from exc

    labels_by_id: dict[int, str] = {}
    for product in raw_products:
        try:
            pid, label = product["id"], product["label"]
        except (KeyError, TypeError) as exc:
            raise DataError(f"malformed product spec: {exc}") from exc
        if not isinstance(pid, int):
            raise DataError(f"product id {pid!r} is not an integer")
        if pid in labels_by_id:
            raise DataError(f"duplicate product id {pid}")
        labels_by_id[pid] = str(label)
    m = len(labels_by_id)
    if sorted(labels_by_id) != list(range(m)):
        raise DataError("product ids must densely cover 0..m-1")
    output_labels = [labels_by_id[i] for i in range(m)]

    schema = TableSchema.build(variables, output_labels)

    entries = []
    for pos, raw in enumerate(raw_entries):
        try:
            pid = raw["product"]
            cells = raw["cells"]
        except (KeyError, TypeError) as exc:
            raise DataError(f"entry {pos}: malformed ({exc})") from exc
        if pid not in labels_by_id:
            raise DataError(f"entry {pos}: unknown product id {pid}")
        if len(cells) != schema.n:
            raise DataError(
                f"entry {pos}: expected {schema.n} cells, got {len(cells)}"
            )
        checked = []
        for var, cell in enumerate(cells):
            if not cell:
                raise DataError(f"entry {pos}: empty cell for variable {var}")
            arity = schema.variables[var].arity
            for value in cell:
                if not isinstance(value, int) or not 0 <= value < arity:
                    raise DataError(
                        f"entry {pos}: value {value!r} outside domain of "
                        f"{schema.variables[var].name!r}"
                    )
            checked.append(tuple(cell))
        entries.append(CatalogEntry(labels_by_id[pid], pid, tuple(checked)))

    name = str(doc.get("name", "catalog"))
    return Catalog(name, schema, tuple(entries))


def parse_catalog(
    doc, consistency: Consistency = Consistency.STRICT
) -> DecisionTable:
    """Parse a catalog document and expand it into a validated table."""
    return load_catalog(doc).expand(consistency)


def parse_table_csv(
    text: str,
    schema: TableSchema,
    consistency: Consistency = Consistency.STRICT,
) -> DecisionTable:
    """Parse header-checked CSV (variable columns plus ``f``) against a schema."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("CSV input is empty") from None
    expected = [v.name for v in schema.variables] + ["f"]
    if [h.strip() for h in header] != expected:
        raise DataError(
            f"CSV header mismatch: expected {expected}, got {header}"
        )
    rows = []
    for lineno, record in enumerate(reader, start=2):
        if not record or (len(record) == 1 and not record[0].strip()):
            continue  # tolerate blank lines
        if len(record) != schema.n + 1:
            raise DataError(
                f"line {lineno}: expected {schema.n + 1} cells, "
                f"got {len(record)}"
            )
        try:
            cells = [int(cell.strip()) for cell in record]
        except ValueError as exc:
            raise DataError(f"line {lineno}: non-integer cell ({exc})") from exc
        rows.append(Row(tuple(cells[:-1]), cells[-1]))
    if not rows:
        raise DataError("CSV contains a header but no rows")
    return DecisionTable.ingest(schema, rows, consistency)


#: Native arities of the six Monk's attributes.
MONKS_ARITIES = (3, 3, 2, 3, 4, 2)


def monks_schema() -> TableSchema:
    variables = [
        (f"a{i + 1}", tuple(str(v + 1) for v in range(arity)))
        for i, arity in enumerate(MONKS_ARITIES)
    ]
    return TableSchema.build(variables, ("0", "1"))


def parse_monks(
    text: str, consistency: Consistency = Consistency.STRICT
) -> DecisionTable:
    """Parse a Monk's benchmark file: ``class a1..a6 id`` per line.

    Attribute values are 1-based on disk and stored 0-based; the
    trailing id token is dropped.
    """
    schema = monks_schema()
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 8:
            raise DataError(
                f"line {lineno}: expected 8 fields (class a1..a6 id), "
                f"got {len(tokens)}"
            )
        try:
            cls = int(tokens[0])
            attrs = [int(t) for t in tokens[1:7]]
        except ValueError as exc:
            raise DataError(f"line {lineno}: non-integer field ({exc})") from exc
        if cls not in (0, 1):
            raise DataError(f"line {lineno}: class {cls} not in {{0, 1}}")
        values = []
        for var, raw in enumerate(attrs):
            value = raw - 1
            if not 0 <= value < MONKS_ARITIES[var]:
                raise DataError(
                    f"line {lineno}: attribute a{var + 1} value {raw} "
                    f"outside 1..{MONKS_ARITIES[var]}"
                )
            values.append(value)
        rows.append(Row(tuple(values), cls))
    if not rows:
        raise DataError("Monk's file contains no data lines")
    return DecisionTable.ingest(schema, rows, consistency)


def pad_table(
    table: DecisionTable, arity: int = 4, output_arity: int | None = None
) -> DecisionTable:
    """Pad variable arities (and optionally the output domain) upward.

    Added values never occur in any row; they surface as empty
    cofactors during induction. Opt-in knob for benchmark
    comparability with uniform-arity setups.
    """
    out_arity = max(table.schema.output_arity, output_arity or 0)
    variables = []
    for spec in table.schema.variables:
        target = max(spec.arity, arity)
        labels = list(spec.value_labels)
        labels += [f"pad{v}" for v in range(spec.arity, target)]
        variables.append((spec.name, labels))
    outputs = list(table.schema.output_labels)
    outputs += [
        f"pad{v}" for v in range(table.schema.output_arity, out_arity)
    ]
    schema = TableSchema.build(variables, outputs)
    return DecisionTable(schema, table.rows)
