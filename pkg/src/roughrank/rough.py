"""Indiscernibility partitions, rough approximations, and exact rank scores.

A :class:`DecisionTable` holds a universe of objects described by discrete
attribute values.  Two objects are indiscernible with respect to an
attribute subset P when they agree on every attribute in P; the induced
equivalence classes partition the universe, and ``[x]_P`` denotes the block
containing object x.  Given a target set X of objects, three scores are
computed in exact rational arithmetic:

* ``pawlak``    |[x]_P  ^ X| / |[x]_P|   (fraction of x's block inside X)
* ``rank``      |[x]_P  ^ X| / |X|       (fraction of X captured by x's block)
* ``aggregate`` mean over single attributes a in P of |[x]_a ^ X| / |X|

The aggregate score is robust to rows that differ from X's members in only
a few attributes: each attribute votes separately, so a near-miss still
collects credit from the attributes it agrees on.

All operations are pure functions over immutable tables and are safe for
concurrent read-only use.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConfigurationError, DataError, DomainError

Symbol = int | str

SCORE_KINDS = ("pawlak", "rank", "aggregate")


def _parse_symbol(cell: str) -> int | str:
    try:
        return int(cell)
    except ValueError:
        return cell


@dataclass(frozen=True)
class DecisionTable:
    """Universe of objects x discrete condition attributes x optional decision.

    The value matrix is rectangular, object ids and attribute names are
    unique, and every cell holds a discrete symbol (int or str).  Missing
    values are not supported; impute or drop rows upstream.
    """

    object_ids: tuple[str, ...]
    attributes: tuple[str, ...]
    values: tuple[tuple[Symbol, ...], ...]
    decision: tuple[Symbol, ...] | None = None

    def __post_init__(self) -> None:
        if len(set(self.object_ids)) != len(self.object_ids):
            raise DataError("object ids must be unique")
        if not self.attributes:
            raise DataError("table needs at least one attribute")
        if len(set(self.attributes)) != len(self.attributes):
            raise DataError("attribute names must be unique")
        if len(self.values) != len(self.object_ids):
            raise DataError(
                f"{len(self.object_ids)} object ids but {len(self.values)} value rows"
            )
        width = len(self.attributes)
        for i, row in enumerate(self.values):
            if len(row) != width:
                raise DataError(f"row {i} has {len(row)} cells, expected {width}")
            if any(cell is None for cell in row):
                raise DataError(f"row {i} contains a missing cell")
        if self.decision is not None and len(self.decision) != len(self.object_ids):
            raise DataError("decision column length does not match object count")

    @classmethod
    def from_rows(
        cls,
        object_ids: Iterable[str],
        attributes: Iterable[str],
        rows: Iterable[Iterable[Symbol]],
        decision: Iterable[Symbol] | None = None,
    ) -> "DecisionTable":
        return cls(
            object_ids=tuple(object_ids),
            attributes=tuple(attributes),
            values=tuple(tuple(row) for row in rows),
            decision=None if decision is None else tuple(decision),
        )

    @classmethod
    def from_csv_text(cls, text: str, source: str = "<string>") -> "DecisionTable":
        """Parse the CSV interchange format.

        Header row is ``id,<attr1>,...,<attrK>[,decision]``; one row per
        object; cells are integers or strings; no missing cells.
        """
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{source}:1: empty file") from None
        if not header or header[0].strip() != "id":
            raise DataError(f"{source}:1: header must start with 'id'")
        has_decision = len(header) >= 3 and header[-1].strip() == "decision"
        attrs = [h.strip() for h in (header[1:-1] if has_decision else header[1:])]
        if not attrs:
            raise DataError(f"{source}:1: no attribute columns in header")
        ids: list[str] = []
        rows: list[tuple[Symbol, ...]] = []
        decision: list[Symbol] = []
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(
                    f"{source}:{line}: expected {len(header)} cells, found {len(row)}"
                )
            cells = [c.strip() for c in row]
            if any(c == "" for c in cells):
                raise DataError(f"{source}:{line}: missing cell")
            ids.append(cells[0])
            body = cells[1:-1] if has_decision else cells[1:]
            rows.append(tuple(_parse_symbol(c) for c in body))
            if has_decision:
                decision.append(_parse_symbol(cells[-1]))
        try:
            return cls.from_rows(ids, attrs, rows, decision if has_decision else None)
        except DataError as exc:
            raise DataError(f"{source}: {exc}") from None

    @classmethod
    def from_csv(cls, path) -> "DecisionTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_csv_text(fh.read(), source=str(path))

    @property
    def n_objects(self) -> int:
        return len(self.object_ids)

    def attr_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise ConfigurationError(f"unknown attribute {name!r}") from None

    def object_index(self, object_id: str) -> int:
        try:
            return self.object_ids.index(object_id)
        except ValueError:
            raise ConfigurationError(f"unknown object id {object_id!r}") from None


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of object indices covering the whole universe."""

    blocks: tuple[frozenset[int], ...]
    size: int

    def __post_init__(self) -> None:
        seen: set[int] = set()
        total = 0
        for block in self.blocks:
            if not block:
                raise DataError("partition contains an empty block")
            total += len(block)
            seen.update(block)
        if total != len(seen) or seen != set(range(self.size)):
            raise DataError("blocks must disjointly cover the universe")

    def block_containing(self, x: int) -> frozenset[int]:
        for block in self.blocks:
            if x in block:
                return block
        raise DomainError(f"object index {x} outside universe of size {self.size}")

    def refines(self, other: "Partition") -> bool:
        """True if every block of self lies inside a block of other."""
        return all(
            any(block <= coarse for coarse in other.blocks) for block in self.blocks
        )


@dataclass(frozen=True)
class RankScore:
    """Exact rational score in [0, 1] attached to one object.

    The numerator/denominator pair is kept unreduced so the counting
    identity behind each kind stays visible: ``rank`` has denominator |X|,
    ``pawlak`` has |[x]_P|, and ``aggregate`` has |P|*|X|.
    """

    object: int
    numerator: int
    denominator: int
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in SCORE_KINDS:
            raise DataError(f"unknown score kind {self.kind!r}")
        if self.denominator < 1:
            raise DataError("denominator must be positive")
        if not 0 <= self.numerator <= self.denominator:
            raise DataError("numerator must lie in [0, denominator]")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator


def _attr_indices(table: DecisionTable, attrs: Sequence[str]) -> tuple[int, ...]:
    if not attrs:
        raise ConfigurationError("attribute subset must be nonempty")
    if len(set(attrs)) != len(attrs):
        raise ConfigurationError("attribute subset contains duplicates")
    return tuple(table.attr_index(a) for a in attrs)


def _object_set(table: DecisionTable, objects: Iterable[int]) -> frozenset[int]:
    out = frozenset(objects)
    for x in out:
        if not 0 <= x < table.n_objects:
            raise DomainError(f"object index {x} outside universe")
    return out


def _check_object(table: DecisionTable, x: int) -> None:
    if not 0 <= x < table.n_objects:
        raise DomainError(f"object index {x} outside universe")


def indiscernibility_partition(table: DecisionTable, attrs: Sequence[str]) -> Partition:
    """Partition the universe by agreement on every attribute in ``attrs``.

    Blocks are ordered by their smallest member index.
    """
    cols = _attr_indices(table, attrs)
    groups: dict[tuple[Symbol, ...], list[int]] = {}
    for i, row in enumerate(table.values):
        groups.setdefault(tuple(row[c] for c in cols), []).append(i)
    # insertion order == order of first member, so blocks come out sorted
    # by smallest index already
    return Partition(
        blocks=tuple(frozenset(g) for g in groups.values()), size=table.n_objects
    )


def _class_of(table: DecisionTable, cols: tuple[int, ...], x: int) -> frozenset[int]:
    key = tuple(table.values[x][c] for c in cols)
    return frozenset(
        i
        for i, row in enumerate(table.values)
        if tuple(row[c] for c in cols) == key
    )


def lower_approximation(
    table: DecisionTable, attrs: Sequence[str], objects: Iterable[int]
) -> frozenset[int]:
    """Union of indiscernibility blocks fully contained in the target set."""
    target = _object_set(table, objects)
    part = indiscernibility_partition(table, attrs)
    out: set[int] = set()
    for block in part.blocks:
        if block <= target:
            out.update(block)
    return frozenset(out)


def upper_approximation(
    table: DecisionTable, attrs: Sequence[str], objects: Iterable[int]
) -> frozenset[int]:
    """Union of indiscernibility blocks intersecting the target set."""
    target = _object_set(table, objects)
    part = indiscernibility_partition(table, attrs)
    out: set[int] = set()
    for block in part.blocks:
        if block & target:
            out.update(block)
    return frozenset(out)


def boundary_region(
    table: DecisionTable, attrs: Sequence[str], objects: Iterable[int]
) -> frozenset[int]:
    """Upper approximation minus lower approximation."""
    return upper_approximation(table, attrs, objects) - lower_approximation(
        table, attrs, objects
    )


def membership_pawlak(
    table: DecisionTable, attrs: Sequence[str], x: int, objects: Iterable[int]
) -> RankScore:
    """Fraction of x's block that lies inside the target set: |[x]_P ^ X| / |[x]_P|."""
    cols = _attr_indices(table, attrs)
    _check_object(table, x)
    target = _object_set(table, objects)
    block = _class_of(table, cols, x)
    return RankScore(
        object=x,
        numerator=len(block & target),
        denominator=len(block),
        kind="pawlak",
    )


def rank_measure(
    table: DecisionTable, attrs: Sequence[str], x: int, objects: Iterable[int]
) -> RankScore:
    """Fraction of the target set captured by x's block: |[x]_P ^ X| / |X|."""
    cols = _attr_indices(table, attrs)
    _check_object(table, x)
    target = _object_set(table, objects)
    if not target:
        raise DomainError("target set must be nonempty for the rank measure")
    block = _class_of(table, cols, x)
    return RankScore(
        object=x,
        numerator=len(block & target),
        denominator=len(target),
        kind="rank",
    )


def aggregate_rank_measure(
    table: DecisionTable, attrs: Sequence[str], x: int, objects: Iterable[int]
) -> RankScore:
    """Mean of per-attribute rank measures.

    The numerator sums |[x]_a ^ X| over the single attributes a in
    ``attrs`` and the denominator is |attrs| * |X|, so the value is the
    exact mean of the single-attribute scores.
    """
    if not attrs:
        raise DomainError("attribute subset must be nonempty for the aggregate measure")
    cols = _attr_indices(table, attrs)
    _check_object(table, x)
    target = _object_set(table, objects)
    if not target:
        raise DomainError("target set must be nonempty for the aggregate measure")
    numerator = 0
    for c in cols:
        numerator += len(_class_of(table, (c,), x) & target)
    return RankScore(
        object=x,
        numerator=numerator,
        denominator=len(cols) * len(target),
        kind="aggregate",
    )


_MEASURES = {
    "pawlak": membership_pawlak,
    "rank": rank_measure,
    "aggregate": aggregate_rank_measure,
}


def rank_objects(
    table: DecisionTable,
    attrs: Sequence[str],
    objects: Iterable[int],
    measure: str = "aggregate",
) -> list[tuple[int, RankScore]]:
    """Score every object and sort by score descending.

    Ties break toward the lower original object index, which keeps the
    output deterministic and stable.
    """
    if measure not in _MEASURES:
        raise ConfigurationError(
            f"unknown measure {measure!r}; expected one of {', '.join(_MEASURES)}"
        )
    target = _object_set(table, objects)
    if not target:
        raise DomainError("target set must be nonempty for ranking")
    score = _MEASURES[measure]
    pairs = [(x, score(table, attrs, x, target)) for x in range(table.n_objects)]
    pairs.sort(key=lambda p: (-p[1].value, p[0]))
    return pairs
