import itertools

import pytest

from infodd import datasets
from infodd.errors import DataError
from infodd.table import MONKS_ARITIES, parse_monks


SPACE = list(itertools.product(*(range(a) for a in MONKS_ARITIES)))


# -- cars -------------------------------------------------------------------

def test_cars_catalog_expands_to_nineteen_rows(cars_table):
    assert cars_table.k == 19
    assert cars_table.schema.n == 8
    assert cars_table.schema.output_arity == 8
    assert datasets.cars_catalog().name == "cars"


# -- the three concepts ----------------------------------------------------------

def test_concept_one_spot_checks():
    # head == body, or jacket color is the first option
    assert datasets.monks_concept(1, (2, 2, 1, 0, 3, 1)) == 1
    assert datasets.monks_concept(1, (0, 1, 0, 0, 0, 0)) == 1
    assert datasets.monks_concept(1, (0, 1, 0, 0, 2, 0)) == 0


def test_concept_two_counts_first_options():
    assert datasets.monks_concept(2, (0, 0, 1, 1, 1, 1)) == 1
    assert datasets.monks_concept(2, (0, 0, 0, 1, 1, 1)) == 0
    assert datasets.monks_concept(2, (1, 1, 1, 1, 1, 1)) == 0
    assert datasets.monks_concept(2, (0, 1, 1, 1, 1, 0)) == 1


def test_concept_three_spot_checks():
    assert datasets.monks_concept(3, (0, 0, 0, 0, 2, 0)) == 1
    assert datasets.monks_concept(3, (0, 2, 0, 1, 3, 0)) == 0
    assert datasets.monks_concept(3, (0, 1, 0, 1, 1, 0)) == 1


def test_concept_rejects_unknown_problem():
    with pytest.raises(ValueError):
        datasets.monks_concept(4, SPACE[0])


# -- generated text --------------------------------------------------------------

@pytest.mark.parametrize("problem", [1, 2, 3])
def test_test_sets_enumerate_the_whole_space(problem):
    table = parse_monks(datasets.monks_test_text(problem))
    assert table.k == 432
    assert sorted(r.values for r in table.rows) == SPACE
    for row in table.rows:
        assert row.output == datasets.monks_concept(problem, row.values)


@pytest.mark.parametrize("problem,size", [(1, 124), (2, 169), (3, 122)])
def test_train_sets_have_documented_sizes(problem, size):
    table = parse_monks(datasets.monks_train_text(problem))
    assert table.k == size
    assert len({r.values for r in table.rows}) == size


def test_train_sets_one_and_two_follow_the_concept():
    for problem in (1, 2):
        table = parse_monks(datasets.monks_train_text(problem))
        for row in table.rows:
            assert row.output == datasets.monks_concept(problem, row.values)


def test_train_set_three_has_exactly_six_noisy_labels():
    table = parse_monks(datasets.monks_train_text(3))
    flipped = [
        row
        for row in table.rows
        if row.output != datasets.monks_concept(3, row.values)
    ]
    assert len(flipped) == 6


def test_generated_text_is_deterministic():
    for problem in (1, 2, 3):
        assert datasets.monks_train_text(problem) == datasets.monks_train_text(
            problem
        )
    assert datasets.shuttle_csv_text() == datasets.shuttle_csv_text()


def test_generated_lines_use_the_disk_format():
    first = datasets.monks_test_text(1).splitlines()[0]
    fields = first.split()
    assert len(fields) == 8
    assert fields[0] in ("0", "1")
    assert [int(f) for f in fields[1:7]] == [1, 1, 1, 1, 1, 1]
    assert fields[7] == "data_1"


# -- shuttle ------------------------------------------------------------------------

def test_shuttle_table_shape():
    table = datasets.parse_table_csv(
        datasets.shuttle_csv_text(), datasets.shuttle_schema()
    )
    assert table.k == datasets.SHUTTLE_K == 1695
    assert table.schema.n == 6
    assert table.schema.arities == (4, 4, 4, 4, 4, 4)
    assert table.schema.output_arity == 4
    assert len({r.values for r in table.rows}) == table.k


# -- registry ----------------------------------------------------------------------

def test_ensure_datasets_creates_all_files(tmp_path):
    paths = datasets.ensure_datasets(tmp_path)
    assert set(paths) == set(datasets.BENCH_DATASETS)
    for path in paths.values():
        assert path.is_file()
    assert (tmp_path / "shuttle-schema.json").is_file()


def test_ensure_datasets_keeps_existing_files(tmp_path):
    datasets.ensure_datasets(tmp_path)
    marker = tmp_path / "monks-1.train"
    marker.write_text("1 1 1 1 1 1 1 custom_1\n", "utf-8")
    datasets.ensure_datasets(tmp_path)
    assert marker.read_text("utf-8").startswith("1 1 1 1 1 1 1 custom_1")


def test_load_dataset_row_counts(dataset_dir):
    expected = {
        "shuttle": 1695,
        "monks1te": 432,
        "monks1tr": 124,
        "monks2te": 432,
        "monks2tr": 169,
        "monks3te": 432,
        "monks3tr": 122,
    }
    for key, k in expected.items():
        assert datasets.load_dataset(key, dataset_dir).k == k


def test_load_dataset_errors(tmp_path, dataset_dir):
    with pytest.raises(DataError):
        datasets.load_dataset("nope", dataset_dir)
    with pytest.raises(DataError):
        datasets.load_dataset("shuttle", tmp_path / "empty")
