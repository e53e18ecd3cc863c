from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughrank.errors import ConfigurationError, DataError, DomainError
from roughrank.rough import (
    DecisionTable,
    Partition,
    aggregate_rank_measure,
    boundary_region,
    indiscernibility_partition,
    lower_approximation,
    membership_pawlak,
    rank_measure,
    rank_objects,
    upper_approximation,
)


def blocks_as_sets(partition: Partition) -> list[set[int]]:
    return [set(b) for b in partition.blocks]


class TestDecisionTable:
    def test_rejects_ragged_rows(self):
        with pytest.raises(DataError):
            DecisionTable.from_rows(["a", "b"], ["a1", "a2"], [(0, 1), (0,)])

    def test_rejects_duplicate_ids(self):
        with pytest.raises(DataError):
            DecisionTable.from_rows(["a", "a"], ["a1"], [(0,), (1,)])

    def test_rejects_duplicate_attributes(self):
        with pytest.raises(DataError):
            DecisionTable.from_rows(["a"], ["a1", "a1"], [(0, 1)])

    def test_rejects_missing_cells(self):
        with pytest.raises(DataError):
            DecisionTable.from_rows(["a"], ["a1"], [(None,)])

    def test_csv_round_trip_values(self):
        text = "id,a1,a2,decision\nr1,0,hot,yes\nr2,1,cold,no\n"
        table = DecisionTable.from_csv_text(text)
        assert table.object_ids == ("r1", "r2")
        assert table.attributes == ("a1", "a2")
        assert table.values == ((0, "hot"), (1, "cold"))
        assert table.decision == ("yes", "no")

    def test_csv_reports_line_number_on_ragged_row(self):
        text = "id,a1,a2\nr1,0\n"
        with pytest.raises(DataError, match=":2:"):
            DecisionTable.from_csv_text(text)

    def test_csv_rejects_missing_cell(self):
        with pytest.raises(DataError, match="missing cell"):
            DecisionTable.from_csv_text("id,a1\nr1,\n")

    def test_csv_rejects_bad_header(self):
        with pytest.raises(DataError, match="header"):
            DecisionTable.from_csv_text("object,a1\nr1,0\n")


class TestPartition:
    def test_single_attribute(self, example1):
        part = indiscernibility_partition(example1, ["a1"])
        assert blocks_as_sets(part) == [{0, 1, 2, 4, 5}, {3}]

    def test_full_attributes(self, example1):
        part = indiscernibility_partition(example1, ["a1", "a2", "a3"])
        assert blocks_as_sets(part) == [{0}, {1, 4}, {2}, {3}, {5}]

    def test_constant_attribute_single_block(self):
        table = DecisionTable.from_rows(
            ["a", "b", "c"], ["a1", "a2"], [(7, 0), (7, 1), (7, 2)]
        )
        part = indiscernibility_partition(table, ["a1"])
        assert blocks_as_sets(part) == [{0, 1, 2}]

    def test_unknown_attribute_is_configuration_error(self, example1):
        with pytest.raises(ConfigurationError):
            indiscernibility_partition(example1, ["a9"])

    def test_empty_attrs_is_configuration_error(self, example1):
        with pytest.raises(ConfigurationError):
            indiscernibility_partition(example1, [])

    def test_duplicate_attrs_rejected(self, example1):
        with pytest.raises(ConfigurationError):
            indiscernibility_partition(example1, ["a1", "a1"])


class TestApproximations:
    FULL = ["a1", "a2", "a3"]

    def test_lower_full_attrs(self, example1, example1_target):
        assert lower_approximation(example1, self.FULL, example1_target) == {1, 4}

    def test_lower_of_universe_is_universe(self, example1):
        universe = set(range(6))
        assert lower_approximation(example1, self.FULL, universe) == universe

    def test_lower_of_empty_is_empty(self, example1):
        assert lower_approximation(example1, self.FULL, set()) == frozenset()

    def test_upper_single_attribute(self, example1, example1_target):
        assert upper_approximation(example1, ["a3"], example1_target) == {1, 2, 4}

    def test_upper_of_universe_is_universe(self, example1):
        universe = set(range(6))
        assert upper_approximation(example1, ["a3"], universe) == universe

    def test_upper_of_empty_is_empty(self, example1):
        assert upper_approximation(example1, ["a3"], set()) == frozenset()

    def test_boundary_empty_when_exact(self, example1, example1_target):
        assert boundary_region(example1, self.FULL, example1_target) == frozenset()

    def test_boundary_single_attribute(self, example1, example1_target):
        assert boundary_region(example1, ["a3"], example1_target) == {1, 2, 4}

    def test_boundary_of_universe_empty(self, example1):
        assert boundary_region(example1, ["a3"], set(range(6))) == frozenset()


class TestPawlakMembership:
    def test_block_inside_target(self, example1, example1_target):
        score = membership_pawlak(example1, ["a1", "a2", "a3"], 1, example1_target)
        assert score.value == 1
        assert (score.numerator, score.denominator) == (2, 2)

    def test_empty_target_gives_zero(self, example1):
        score = membership_pawlak(example1, ["a1", "a2", "a3"], 0, set())
        assert score.value == 0

    def test_partial_overlap(self, example1, example1_target):
        # [x3]_{a3} = {x2, x3, x5}
        score = membership_pawlak(example1, ["a3"], 2, example1_target)
        assert score.value == Fraction(2, 3)
        assert score.denominator == 3


class TestRankMeasure:
    def test_golden_values(self, example1, example1_target):
        expected = [0, 1, 0, 0, 1, 0]
        for x, want in enumerate(expected):
            score = rank_measure(example1, ["a1", "a2", "a3"], x, example1_target)
            assert score.value == want
            assert score.denominator == 2

    def test_target_equal_to_one_block(self, example1):
        # X = {x2, x5} is exactly the block of x2
        score = rank_measure(example1, ["a1", "a2", "a3"], 1, {1, 4})
        assert score.value == 1

    def test_single_attribute_block_covers_target(self, example1, example1_target):
        score = rank_measure(example1, ["a1"], 0, example1_target)
        assert score.value == 1

    def test_empty_target_is_domain_error(self, example1):
        with pytest.raises(DomainError):
            rank_measure(example1, ["a1"], 0, set())


class TestAggregateRankMeasure:
    FULL = ["a1", "a2", "a3"]

    def test_golden_values(self, example1, example1_target):
        expected = [
            Fraction(2, 3),
            Fraction(1),
            Fraction(2, 3),
            Fraction(1, 3),
            Fraction(1),
            Fraction(1, 3),
        ]
        for x, want in enumerate(expected):
            score = aggregate_rank_measure(example1, self.FULL, x, example1_target)
            assert score.value == want

    def test_worked_expansion_is_unreduced(self, example1, example1_target):
        # (2 + 2 + 0) / (3 * 2)
        score = aggregate_rank_measure(example1, self.FULL, 0, example1_target)
        assert (score.numerator, score.denominator) == (4, 6)

    def test_single_attribute_equals_rank_measure(self, example1, example1_target):
        for x in range(6):
            agg = aggregate_rank_measure(example1, ["a2"], x, example1_target)
            plain = rank_measure(example1, ["a2"], x, example1_target)
            assert agg.value == plain.value

    def test_empty_target_is_domain_error(self, example1):
        with pytest.raises(DomainError):
            aggregate_rank_measure(example1, self.FULL, 0, set())

    def test_empty_attrs_is_domain_error(self, example1, example1_target):
        with pytest.raises(DomainError):
            aggregate_rank_measure(example1, [], 0, example1_target)


class TestRankObjects:
    FULL = ["a1", "a2", "a3"]

    def test_aggregate_ordering(self, example1, example1_target):
        ranked = rank_objects(example1, self.FULL, example1_target, "aggregate")
        ids = [example1.object_ids[x] for x, _ in ranked]
        assert ids == ["x2", "x5", "x1", "x3", "x4", "x6"]

    def test_all_equal_scores_preserve_index_order(self):
        table = DecisionTable.from_rows(
            ["a", "b", "c", "d"], ["a1"], [(0,), (0,), (0,), (0,)]
        )
        ranked = rank_objects(table, ["a1"], {0, 1}, "rank")
        assert [x for x, _ in ranked] == [0, 1, 2, 3]

    def test_plain_rank_ordering(self, example1, example1_target):
        ranked = rank_objects(example1, self.FULL, example1_target, "rank")
        ids = [example1.object_ids[x] for x, _ in ranked]
        assert ids == ["x2", "x5", "x1", "x3", "x4", "x6"]
        values = [s.value for _, s in ranked]
        assert values == [1, 1, 0, 0, 0, 0]

    def test_empty_target_is_domain_error(self, example1):
        with pytest.raises(DomainError):
            rank_objects(example1, self.FULL, set(), "rank")

    def test_unknown_measure_is_configuration_error(self, example1, example1_target):
        with pytest.raises(ConfigurationError):
            rank_objects(example1, self.FULL, example1_target, "median")


# --- property-based suite -------------------------------------------------

SYMBOLS = st.integers(min_value=0, max_value=2)


@st.composite
def tables(draw, max_objects: int = 10, max_attrs: int = 5):
    n = draw(st.integers(min_value=1, max_value=max_objects))
    m = draw(st.integers(min_value=1, max_value=max_attrs))
    rows = draw(
        st.lists(
            st.lists(SYMBOLS, min_size=m, max_size=m).map(tuple),
            min_size=n,
            max_size=n,
        )
    )
    return DecisionTable.from_rows(
        [f"o{i}" for i in range(n)], [f"a{j}" for j in range(m)], rows
    )


@st.composite
def table_with_target(draw):
    table = draw(tables())
    target = draw(
        st.sets(
            st.integers(min_value=0, max_value=table.n_objects - 1),
            min_size=1,
            max_size=table.n_objects,
        )
    )
    x = draw(st.integers(min_value=0, max_value=table.n_objects - 1))
    return table, frozenset(target), x


@st.composite
def nested_attr_subsets(draw):
    """(table, X, x, small, big) with small a nonempty subset of big."""
    table, target, x = draw(table_with_target())
    big = draw(
        st.sets(st.sampled_from(list(table.attributes)), min_size=1).map(sorted)
    )
    small = draw(st.sets(st.sampled_from(list(big)), min_size=1).map(sorted))
    return table, target, x, small, big


@given(table_with_target())
def test_scores_lie_in_unit_interval(case):
    table, target, x = case
    attrs = list(table.attributes)
    for fn in (membership_pawlak, rank_measure, aggregate_rank_measure):
        score = fn(table, attrs, x, target)
        assert 0 <= score.value <= 1


@given(table_with_target())
def test_counting_identity(case):
    # |[x]_P ^ X| = mu * |[x]_P| = rho * |X| exactly
    table, target, x = case
    attrs = list(table.attributes)
    cols = tuple(range(len(attrs)))
    key = tuple(table.values[x][c] for c in cols)
    block = {
        i
        for i, row in enumerate(table.values)
        if tuple(row[c] for c in cols) == key
    }
    overlap = len(block & target)
    mu = membership_pawlak(table, attrs, x, target)
    rho = rank_measure(table, attrs, x, target)
    assert mu.value * len(block) == overlap
    assert rho.value * len(target) == overlap


@given(table_with_target())
def test_rank_sums_to_one_over_block_representatives(case):
    table, target, _ = case
    attrs = list(table.attributes)
    part = indiscernibility_partition(table, attrs)
    total = sum(
        rank_measure(table, attrs, min(block), target).value for block in part.blocks
    )
    assert total == 1


@given(table_with_target())
def test_rank_one_iff_aggregate_one(case):
    table, target, x = case
    attrs = list(table.attributes)
    rho = rank_measure(table, attrs, x, target).value
    agg = aggregate_rank_measure(table, attrs, x, target).value
    assert (rho == 1) == (agg == 1)


@given(nested_attr_subsets())
def test_zero_rank_propagates_to_supersets(case):
    table, target, x, small, big = case
    if rank_measure(table, small, x, target).value == 0:
        assert rank_measure(table, big, x, target).value == 0


@given(nested_attr_subsets())
def test_aggregate_one_restricts_to_subsets(case):
    table, target, x, small, big = case
    if aggregate_rank_measure(table, big, x, target).value == 1:
        assert aggregate_rank_measure(table, small, x, target).value == 1


@given(nested_attr_subsets())
def test_aggregate_zero_restricts_to_subsets(case):
    table, target, x, small, big = case
    if aggregate_rank_measure(table, big, x, target).value == 0:
        assert aggregate_rank_measure(table, small, x, target).value == 0


@given(table_with_target())
def test_strictly_fractional_rank_keeps_aggregate_fractional(case):
    table, target, x = case
    attrs = list(table.attributes)
    rho = rank_measure(table, attrs, x, target).value
    if 0 < rho < 1:
        agg = aggregate_rank_measure(table, attrs, x, target).value
        assert 0 < agg < 1


@given(table_with_target())
def test_full_rank_pair_shares_block(case):
    table, target, _ = case
    attrs = list(table.attributes)
    full = [
        x for x in target if rank_measure(table, attrs, x, target).value == 1
    ]
    part = indiscernibility_partition(table, attrs)
    for x in full:
        for y in full:
            assert part.block_containing(x) == part.block_containing(y)


@given(nested_attr_subsets())
def test_rank_monotone_under_attribute_growth(case):
    # fewer attributes -> coarser blocks -> never smaller rank
    table, target, x, small, big = case
    assert (
        rank_measure(table, small, x, target).value
        >= rank_measure(table, big, x, target).value
    )


@given(nested_attr_subsets())
def test_partition_refines_under_attribute_growth(case):
    table, _, _, small, big = case
    fine = indiscernibility_partition(table, big)
    coarse = indiscernibility_partition(table, small)
    assert fine.refines(coarse)


def pairwise_partition_oracle(table: DecisionTable, attrs) -> list[set[int]]:
    """O(n^2) pairwise-comparison partition, independent of the hash path."""
    cols = [table.attributes.index(a) for a in attrs]
    blocks: list[set[int]] = []
    for i in range(table.n_objects):
        placed = False
        for block in blocks:
            j = next(iter(block))
            if all(table.values[i][c] == table.values[j][c] for c in cols):
                block.add(i)
                placed = True
                break
        if not placed:
            blocks.append({i})
    blocks.sort(key=min)
    return blocks


@settings(max_examples=200)
@given(tables())
def test_partition_matches_pairwise_oracle(table):
    attrs = list(table.attributes)
    fast = blocks_as_sets(indiscernibility_partition(table, attrs))
    assert fast == pairwise_partition_oracle(table, attrs)
