"""infodd: decision tables to entropy-optimized decision diagrams.

The package turns multi-valued decision tables (product catalogs,
classification benchmarks) into free decision trees and reduced
decision diagrams whose branch variables are chosen by minimal
conditional entropy. On top of the core sit a cost/paths toolkit, a
benchmark harness, and an HTTP service that walks shoppers through
the diagram one question at a time.

The entropy kernels run on a compiled extension when it is installed
and on a pure-Python fallback otherwise; both produce bit-identical
numbers (see ``infodd.kernels``).
"""

from .diagram import CostMetrics, Diagram, Kind, PathDescriptor
# the entropy() function itself stays in the submodule: re-exporting it
# here would shadow the infodd.entropy module attribute
from .entropy import (
    conditional_entropy,
    conditional_entropy_profile,
    rank_variables,
)
from .errors import (
    DataError,
    DiagramError,
    InconsistentTableError,
    InfoddError,
    InvalidAnswerError,
    SessionConflictError,
    SessionError,
    UnknownSessionError,
)
from .induction import (
    Algorithm,
    Criterion,
    InductionConfig,
    build,
    compare_cost,
    info_greedy,
    info_iter,
)
from .navigator import Session, SessionStore
from .table import (
    Catalog,
    CatalogEntry,
    Consistency,
    DecisionTable,
    EMPTY,
    Row,
    TableSchema,
    VariableSpec,
    load_catalog,
    pad_table,
    parse_catalog,
    parse_monks,
    parse_table_csv,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "Algorithm",
    "Catalog",
    "CatalogEntry",
    "Consistency",
    "CostMetrics",
    "Criterion",
    "DataError",
    "DecisionTable",
    "Diagram",
    "DiagramError",
    "EMPTY",
    "InconsistentTableError",
    "InductionConfig",
    "InfoddError",
    "InvalidAnswerError",
    "Kind",
    "PathDescriptor",
    "Row",
    "Session",
    "SessionConflictError",
    "SessionError",
    "SessionStore",
    "TableSchema",
    "UnknownSessionError",
    "VariableSpec",
    "build",
    "compare_cost",
    "conditional_entropy",
    "conditional_entropy_profile",
    "info_greedy",
    "info_iter",
    "load_catalog",
    "pad_table",
    "parse_catalog",
    "parse_monks",
    "parse_table_csv",
    "rank_variables",
]
