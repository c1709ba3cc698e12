"""Bundled catalog plus benchmark dataset generation and fetching.

The Monk's test sets are exact: each one is the full 432-row
enumeration of the six-attribute space labeled by that problem's
target concept, which is precisely what the published test files
contain. The training sets are seeded stand-ins: random subsets of
the documented sizes (124/169/122), with six labels flipped in the
third one to mirror its documented 5% class noise. ``fetch_monks``
replaces the stand-ins with the original files when network access
is available, pinning SHA-256 checksums on first use.

The shuttle-style set is fully synthetic: a seeded sample of 1695
distinct rows over six four-valued attributes, labeled by a fixed
piecewise rule, so size benchmarks have one input that dwarfs the
Monk's tables.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import urllib.request
from importlib import resources
from pathlib import Path

from .errors import DataError
from .table import (
    Catalog,
    Consistency,
    DecisionTable,
    MONKS_ARITIES,
    TableSchema,
    load_catalog,
    parse_monks,
    parse_table_csv,
)

__all__ = [
    "cars_json_text",
    "cars_catalog",
    "cars_table",
    "monks_concept",
    "monks_test_text",
    "monks_train_text",
    "shuttle_schema",
    "shuttle_csv_text",
    "BENCH_DATASETS",
    "ensure_datasets",
    "load_dataset",
    "fetch_monks",
    "MONKS_BASE_URL",
]


# -- bundled cars catalog ------------------------------------------------

def cars_json_text() -> str:
    return (
        resources.files("infodd").joinpath("data/cars.json").read_text("utf-8")
    )


def cars_catalog() -> Catalog:
    return load_catalog(cars_json_text())


def cars_table(consistency: Consistency = Consistency.STRICT) -> DecisionTable:
    return cars_catalog().expand(consistency)


# -- Monk's problems -----------------------------------------------------

#: Documented row counts of the original files; verified after download.
MONKS_ROWS = {
    "monks-1.train": 124,
    "monks-1.test": 432,
    "monks-2.train": 169,
    "monks-2.test": 432,
    "monks-3.train": 122,
    "monks-3.test": 432,
}

MONKS_BASE_URL = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/monks-problems/"
)

_TRAIN_SEEDS = {1: 7101, 2: 7102, 3: 7103}
_TRAIN_SIZES = {1: 124, 2: 169, 3: 122}
_MONKS3_FLIPS = 6


def monks_concept(problem: int, values) -> int:
    """Target concept of Monk's problem 1, 2 or 3 (0-based values)."""
    a2, a4, a5 = values[1], values[3], values[4]
    if problem == 1:
        return int(values[0] == a2 or a5 == 0)
    if problem == 2:
        return int(sum(v == 0 for v in values) == 2)
    if problem == 3:
        return int((a5 == 2 and a4 == 0) or (a5 != 3 and a2 != 2))
    raise ValueError(f"no Monk's problem {problem}")


def _monks_space() -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(a) for a in MONKS_ARITIES)))


def _monks_lines(rows, tag: str) -> str:
    lines = []
    for i, (values, label) in enumerate(rows, start=1):
        attrs = " ".join(str(v + 1) for v in values)
        lines.append(f"{label} {attrs} {tag}_{i}")
    return "\n".join(lines) + "\n"


def monks_test_text(problem: int) -> str:
    """The full 432-row space labeled by the concept, in file format."""
    rows = [(v, monks_concept(problem, v)) for v in _monks_space()]
    return _monks_lines(rows, "data")


def monks_train_text(problem: int) -> str:
    """Seeded training stand-in of the documented size (noisy for 3)."""
    rng = random.Random(_TRAIN_SEEDS[problem])
    picked = rng.sample(_monks_space(), _TRAIN_SIZES[problem])
    picked.sort()
    rows = [(v, monks_concept(problem, v)) for v in picked]
    if problem == 3:
        for i in rng.sample(range(len(rows)), _MONKS3_FLIPS):
            values, label = rows[i]
            rows[i] = (values, 1 - label)
    return _monks_lines(rows, "gen")


# -- shuttle-style synthetic set --------------------------------------------

SHUTTLE_K = 1695
_SHUTTLE_SEED = 90210
_SHUTTLE_N = 6
_SHUTTLE_ARITY = 4


def shuttle_schema() -> TableSchema:
    variables = [
        (f"x_{i + 1}", tuple(str(v) for v in range(_SHUTTLE_ARITY)))
        for i in range(_SHUTTLE_N)
    ]
    outputs = tuple(f"class {c}" for c in range(4))
    return TableSchema.build(variables, outputs)


def _shuttle_label(v: tuple[int, ...]) -> int:
    if v[0] == 0:
        return v[1]
    if v[0] == 1:
        return (v[2] + v[3]) % 4
    if v[0] == 2:
        return max(v[4], v[5]) if v[1] < 2 else min(v[4], v[5])
    return (v[1] + v[2] * (v[3] % 2)) % 4


def shuttle_csv_text() -> str:
    rng = random.Random(_SHUTTLE_SEED)
    space = list(itertools.product(*(range(_SHUTTLE_ARITY),) * _SHUTTLE_N))
    picked = rng.sample(space, SHUTTLE_K)
    picked.sort()
    header = ",".join(f"x_{i + 1}" for i in range(_SHUTTLE_N)) + ",f"
    lines = [header]
    for values in picked:
        lines.append(
            ",".join(str(v) for v in values) + f",{_shuttle_label(values)}"
        )
    return "\n".join(lines) + "\n"


# -- dataset registry --------------------------------------------------------

#: Benchmark suite keys, in reporting order.
BENCH_DATASETS = (
    "shuttle",
    "monks1te",
    "monks1tr",
    "monks2te",
    "monks2tr",
    "monks3te",
    "monks3tr",
)

_DATASET_FILES = {
    "shuttle": "shuttle.csv",
    "monks1te": "monks-1.test",
    "monks1tr": "monks-1.train",
    "monks2te": "monks-2.test",
    "monks2tr": "monks-2.train",
    "monks3te": "monks-3.test",
    "monks3tr": "monks-3.train",
}


def ensure_datasets(directory: Path) -> dict[str, Path]:
    """Create any missing dataset files; existing ones are kept.

    Returns the file path for every benchmark dataset key.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}
    for key, filename in _DATASET_FILES.items():
        target = directory / filename
        if not target.exists():
            if key == "shuttle":
                target.write_text(shuttle_csv_text(), "utf-8")
            else:
                problem = int(key[5])
                if key.endswith("te"):
                    target.write_text(monks_test_text(problem), "utf-8")
                else:
                    target.write_text(monks_train_text(problem), "utf-8")
        paths[key] = target
    schema_file = directory / "shuttle-schema.json"
    if not schema_file.exists():
        schema_file.write_text(
            json.dumps(shuttle_schema().to_doc(), indent=2) + "\n", "utf-8"
        )
    return paths


def load_dataset(
    key: str,
    directory: Path,
    consistency: Consistency = Consistency.STRICT,
) -> DecisionTable:
    try:
        filename = _DATASET_FILES[key]
    except KeyError:
        raise DataError(f"unknown dataset: {key}") from None
    path = Path(directory) / filename
    if not path.exists():
        raise DataError(f"dataset file missing: {path}")
    text = path.read_text("utf-8")
    if key == "shuttle":
        return parse_table_csv(text, shuttle_schema(), consistency)
    return parse_monks(text, consistency)


# -- fetching the original files ------------------------------------------------

def fetch_monks(
    directory: Path,
    base_url: str = MONKS_BASE_URL,
    checksums_path: Path | None = None,
    timeout: float = 30.0,
) -> list[Path]:
    """Download the six Monk's files, verifying counts and checksums.

    Checksums are trust-on-first-use: recorded into the lock file when
    absent, required to match on every later fetch. Downloads that fail
    either check are discarded without touching existing files.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lock_path = checksums_path or directory / "checksums.json"
    lock: dict[str, str] = {}
    if lock_path.exists():
        try:
            lock = json.loads(lock_path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"unreadable checksum lock: {exc}") from exc

    written = []
    for filename, expected_rows in MONKS_ROWS.items():
        url = base_url + filename
        try:
            with urllib.request.urlopen(url, timeout=timeout) as response:
                blob = response.read()
        except OSError as exc:
            raise DataError(f"download failed for {url}: {exc}") from exc
        digest = hashlib.sha256(blob).hexdigest()
        pinned = lock.get(filename)
        if pinned is not None and pinned != digest:
            raise DataError(
                f"{filename}: checksum mismatch (pinned {pinned[:12]}..., "
                f"got {digest[:12]}...)"
            )
        text = blob.decode("utf-8")
        table = parse_monks(text)
        if table.k != expected_rows:
            raise DataError(
                f"{filename}: expected {expected_rows} rows, got {table.k}"
            )
        (directory / filename).write_text(text, "utf-8")
        lock[filename] = digest
        written.append(directory / filename)

    lock_path.write_text(json.dumps(lock, indent=2, sort_keys=True) + "\n", "utf-8")
    return written
