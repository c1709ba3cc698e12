"""Decision diagrams: hash-consed node store, metrics, paths, JSON form.

A diagram is a rooted DAG over three node types: non-terminals that
test one variable and branch on its value, terminals carrying a
product value, and a single x-terminal meaning "no product matches".

Two kinds are supported. TREE appends every non-terminal as-is (the
plain decision tree; terminals are still shared). REDUCED applies the
two classic reduction rules at interning time: a node whose children
are all identical is elided (rule a), and a node structurally equal
to an existing one is reused (rule b). Node references are integers
into an append-only store; children always precede parents, which
makes cycles unrepresentable.

Serialization is canonical: nodes are emitted in depth-first
post-order with children visited in ascending value order, ids are
assigned in emission order, and the document is dumped with sorted
keys and no whitespace. Structurally equal diagrams therefore
serialize to byte-identical documents regardless of construction
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Sequence

from .errors import DiagramError
from .table import TableSchema

__all__ = [
    "Kind",
    "Terminal",
    "XTerminal",
    "NonTerminal",
    "CostMetrics",
    "PathDescriptor",
    "Diagram",
]


class Kind(Enum):
    TREE = "tree"
    REDUCED = "reduced"


@dataclass(frozen=True)
class Terminal:
    value: int


@dataclass(frozen=True)
class XTerminal:
    pass


@dataclass(frozen=True)
class NonTerminal:
    var: int
    children: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


Node = Terminal | XTerminal | NonTerminal


@dataclass(frozen=True)
class CostMetrics:
    """Size figures: decision nodes, worst-case path length, leaf count."""

    nonterminals: int
    levels: int
    terminals: int

    def key(self, criterion: tuple[str, str]) -> tuple[int, int]:
        """Lexicographic comparison key under a two-field criterion order."""
        return tuple(getattr(self, name) for name in criterion)


@dataclass(frozen=True)
class PathDescriptor:
    """One root-to-terminal path: (var, value) constraints plus the leaf.

    ``leaf`` is the terminal's product value, or None when the path
    ends in the x-terminal.
    """

    constraints: tuple[tuple[int, int], ...]
    leaf: int | None

    @property
    def no_match(self) -> bool:
        return self.leaf is None

    def to_doc(self) -> dict:
        doc = {
            "constraints": [
                {"var": var, "value": value} for var, value in self.constraints
            ]
        }
        if self.leaf is None:
            doc["x"] = True
        else:
            doc["value"] = self.leaf
        return doc


class Diagram:
    """Append-only node store with interning, sealed by assigning a root.

    Build bottom-up with :meth:`terminal`, :meth:`xterminal` and
    :meth:`internal`, then call :meth:`seal` with the root reference.
    All query methods require a sealed diagram. Sealed diagrams are
    immutable and safe to share across threads.
    """

    __slots__ = ("schema", "kind", "_nodes", "_unique", "_root", "_canon")

    def __init__(self, schema: TableSchema, kind: Kind) -> None:
        self.schema = schema
        self.kind = kind
        self._nodes: list[Node] = []
        self._unique: dict[Node, int] = {}
        self._root: int | None = None
        self._canon = None

    # -- construction ---------------------------------------------------

    def terminal(self, value: int) -> int:
        if self._root is not None:
            raise DiagramError("diagram is sealed")
        if not 0 <= value < self.schema.output_arity:
            raise DiagramError(
                f"terminal value {value} outside "
                f"[0, {self.schema.output_arity})"
            )
        return self._intern(Terminal(value))

    def xterminal(self) -> int:
        if self._root is not None:
            raise DiagramError("diagram is sealed")
        return self._intern(XTerminal())

    def internal(self, var: int, children: Sequence[int]) -> int:
        if self._root is not None:
            raise DiagramError("diagram is sealed")
        if not 0 <= var < self.schema.n:
            raise DiagramError(f"variable index {var} out of range")
        arity = self.schema.variables[var].arity
        children = tuple(children)
        if len(children) != arity:
            raise DiagramError(
                f"variable {var} needs {arity} children, got {len(children)}"
            )
        for child in children:
            if not 0 <= child < len(self._nodes):
                raise DiagramError(f"child reference {child} does not exist")
        if self.kind is Kind.REDUCED:
            first = children[0]
            if all(c == first for c in children):
                return first
            return self._intern(NonTerminal(var, children))
        self._nodes.append(NonTerminal(var, children))
        return len(self._nodes) - 1

    def _intern(self, node: Node) -> int:
        ref = self._unique.get(node)
        if ref is None:
            self._nodes.append(node)
            ref = len(self._nodes) - 1
            self._unique[node] = ref
        return ref

    def seal(self, root: int) -> "Diagram":
        if self._root is not None:
            raise DiagramError("diagram already sealed")
        if not 0 <= root < len(self._nodes):
            raise DiagramError(f"root reference {root} does not exist")
        self._root = root
        return self

    # -- access -----------------------------------------------------------

    @property
    def root(self) -> int:
        if self._root is None:
            raise DiagramError("diagram not sealed yet")
        return self._root

    def node(self, ref: int) -> Node:
        return self._nodes[ref]

    def _reachable(self) -> list[int]:
        """References reachable from the root, in ascending order."""
        seen = set()
        stack = [self.root]
        while stack:
            ref = stack.pop()
            if ref in seen:
                continue
            seen.add(ref)
            node = self._nodes[ref]
            if isinstance(node, NonTerminal):
                stack.extend(node.children)
        return sorted(seen)

    # -- queries ------------------------------------------------------------

    def evaluate(self, assignment: Sequence[int]) -> int | None:
        """Walk from the root; the terminal value, or None at the x-terminal."""
        schema = self.schema
        if len(assignment) != schema.n:
            raise DiagramError(
                f"assignment length {len(assignment)} != {schema.n}"
            )
        for var, value in enumerate(assignment):
            if not 0 <= value < schema.variables[var].arity:
                raise DiagramError(
                    f"assignment value {value} outside domain of variable {var}"
                )
        node = self._nodes[self.root]
        while isinstance(node, NonTerminal):
            node = self._nodes[node.children[assignment[node.var]]]
        if isinstance(node, Terminal):
            return node.value
        return None

    def cost(self) -> CostMetrics:
        """Counts over reachable nodes; levels = longest decision chain."""
        reachable = self._reachable()
        nonterminals = 0
        terminals = 0
        depth: dict[int, int] = {}
        # children precede parents, so ascending order is topological
        for ref in reachable:
            node = self._nodes[ref]
            if isinstance(node, NonTerminal):
                nonterminals += 1
                depth[ref] = 1 + max(depth[c] for c in node.children)
            else:
                terminals += 1
                depth[ref] = 0
        return CostMetrics(nonterminals, depth[self.root], terminals)

    def paths(self) -> list[PathDescriptor]:
        """Every root-to-terminal path, depth-first, values ascending."""
        out: list[PathDescriptor] = []

        def walk(ref: int, prefix: tuple[tuple[int, int], ...]) -> None:
            node = self._nodes[ref]
            if isinstance(node, NonTerminal):
                for value, child in enumerate(node.children):
                    walk(child, prefix + ((node.var, value),))
            elif isinstance(node, Terminal):
                out.append(PathDescriptor(prefix, node.value))
            else:
                out.append(PathDescriptor(prefix, None))

        walk(self.root, ())
        return out

    def check_free(self) -> None:
        """Raise DiagramError if any path tests a variable twice."""
        seen: set[tuple[int, frozenset]] = set()

        def walk(ref: int, used: frozenset) -> None:
            if (ref, used) in seen:
                return
            seen.add((ref, used))
            node = self._nodes[ref]
            if not isinstance(node, NonTerminal):
                return
            if node.var in used:
                raise DiagramError(
                    f"variable {node.var} tested twice on one path"
                )
            for child in node.children:
                walk(child, used | {node.var})

        walk(self.root, frozenset())

    # -- reduction --------------------------------------------------------

    def reduced(self) -> "Diagram":
        """Rebuild as a REDUCED diagram (idempotent on reduced inputs)."""
        out = Diagram(self.schema, Kind.REDUCED)
        mapped: dict[int, int] = {}
        for ref in self._reachable():
            node = self._nodes[ref]
            if isinstance(node, Terminal):
                mapped[ref] = out.terminal(node.value)
            elif isinstance(node, XTerminal):
                mapped[ref] = out.xterminal()
            else:
                mapped[ref] = out.internal(
                    node.var, [mapped[c] for c in node.children]
                )
        return out.seal(mapped[self.root])

    # -- canonical form and serialization -----------------------------------

    def _canonical(self):
        """Post-order node tuples with emission-order ids; root id last."""
        if self._canon is not None:
            return self._canon
        ids: dict[int, int] = {}
        emitted: list[tuple] = []

        def emit(ref: int) -> int:
            known = ids.get(ref)
            if known is not None:
                return known
            node = self._nodes[ref]
            if isinstance(node, NonTerminal):
                children = tuple(emit(c) for c in node.children)
                entry = ("n", node.var, children)
            elif isinstance(node, Terminal):
                entry = ("t", node.value)
            else:
                entry = ("x",)
            ids[ref] = len(emitted)
            emitted.append(entry)
            return ids[ref]

        root_id = emit(self.root)
        self._canon = (tuple(emitted), root_id)
        return self._canon

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.kind is other.kind
            and self.schema == other.schema
            and self._canonical() == other._canonical()
        )

    __hash__ = None

    def __repr__(self) -> str:
        sealed = self._root is not None
        return (
            f"Diagram(kind={self.kind.value}, nodes={len(self._nodes)}, "
            f"sealed={sealed})"
        )

    def to_doc(self) -> dict:
        emitted, root_id = self._canonical()
        nodes = []
        for node_id, entry in enumerate(emitted):
            if entry[0] == "n":
                nodes.append(
                    {"id": node_id, "var": entry[1], "children": list(entry[2])}
                )
            elif entry[0] == "t":
                nodes.append({"id": node_id, "value": entry[1]})
            else:
                nodes.append({"id": node_id, "x": True})
        return {
            "kind": self.kind.value,
            "schema_ref": self.schema.to_doc(),
            "root": root_id,
            "nodes": nodes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_doc(cls, doc: Mapping) -> "Diagram":
        if not isinstance(doc, Mapping):
            raise DiagramError("diagram document must be a JSON object")
        try:
            kind = Kind(doc["kind"])
            schema = TableSchema.from_doc(doc["schema_ref"])
            root = doc["root"]
            raw_nodes = doc["nodes"]
        except (KeyError, ValueError, TypeError) as exc:
            raise DiagramError(f"malformed diagram document: {exc}") from exc

        by_id: dict[int, Mapping] = {}
        for raw in raw_nodes:
            node_id = raw.get("id")
            if not isinstance(node_id, int) or node_id in by_id:
                raise DiagramError(f"bad or duplicate node id: {node_id!r}")
            by_id[node_id] = raw
        count = len(by_id)
        if sorted(by_id) != list(range(count)) or count == 0:
            raise DiagramError("node ids must densely cover 0..N-1")

        out = cls(schema, kind)
        seen_terms: set = set()
        for node_id in range(count):
            raw = by_id[node_id]
            if "var" in raw:
                var, children = raw["var"], raw.get("children")
                if not isinstance(var, int) or not 0 <= var < schema.n:
                    raise DiagramError(f"node {node_id}: bad variable {var!r}")
                arity = schema.variables[var].arity
                if not isinstance(children, list) or len(children) != arity:
                    raise DiagramError(
                        f"node {node_id}: variable {var} needs {arity} children"
                    )
                for child in children:
                    if not isinstance(child, int) or not 0 <= child < node_id:
                        # forward/self references would allow cycles
                        raise DiagramError(
                            f"node {node_id}: child {child!r} must reference "
                            f"an earlier node"
                        )
                node: Node = NonTerminal(var, tuple(children))
            elif "value" in raw:
                value = raw["value"]
                if not isinstance(value, int) or not (
                    0 <= value < schema.output_arity
                ):
                    raise DiagramError(f"node {node_id}: bad value {value!r}")
                node = Terminal(value)
            elif raw.get("x") is True:
                node = XTerminal()
            else:
                raise DiagramError(f"node {node_id}: unrecognized node shape")
            if not isinstance(node, NonTerminal):
                if node in seen_terms:
                    raise DiagramError(f"node {node_id}: duplicate terminal")
                seen_terms.add(node)
                out._unique[node] = node_id
            out._nodes.append(node)

        if not isinstance(root, int) or not 0 <= root < count:
            raise DiagramError(f"bad root reference: {root!r}")
        out.seal(root)
        out._validate_loaded()
        return out

    @classmethod
    def from_json(cls, text: str | bytes) -> "Diagram":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"diagram is not valid JSON: {exc}") from exc
        return cls.from_doc(doc)

    def _validate_loaded(self) -> None:
        if len(self._reachable()) != len(self._nodes):
            raise DiagramError("document contains unreachable nodes")
        if self.kind is Kind.REDUCED:
            seen: set[Node] = set()
            for node in self._nodes:
                if not isinstance(node, NonTerminal):
                    continue
                first = node.children[0]
                if all(c == first for c in node.children):
                    raise DiagramError(
                        "reduced diagram contains an all-equal-children node"
                    )
                if node in seen:
                    raise DiagramError(
                        "reduced diagram contains duplicate (var, children) nodes"
                    )
                seen.add(node)
        self.check_free()
