"""Latin squares over sector alphabets and (A, B, C) masking triples.

Squares store alphabet indices, not labels; binding to a concrete model
happens in the encoder.  The combinatorics is model-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

LATIN = "latin"
CONSTANT_ROW = "constant_row"
CONSTANT_COLUMN = "constant_column"
OTHER = "other"

MOLS_SEARCH_BOUND = 5


@dataclass(frozen=True)
class Square:
    """A d x d array of alphabet indices."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        d = len(self.cells)
        cells = tuple(tuple(int(x) for x in row) for row in self.cells)
        for row in cells:
            if len(row) != d:
                raise ValueError("square rows must all have length d")
            for x in row:
                if not 0 <= x < d:
                    raise ValueError(f"cell value {x} outside 0..{d - 1}")
        object.__setattr__(self, "cells", cells)

    @property
    def d(self) -> int:
        return len(self.cells)

    def row(self, j: int) -> tuple[int, ...]:
        return self.cells[j]

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(row[k] for row in self.cells)


def is_latin(square: Square) -> bool:
    """True iff every value appears exactly once per row and per column."""
    full = set(range(square.d))
    for j in range(square.d):
        if set(square.row(j)) != full:
            return False
    for k in range(square.d):
        if set(square.column(k)) != full:
            return False
    return True


def is_constant_row(square: Square) -> bool:
    """True iff every row equals the alphabet sequence 0..d-1."""
    identity = tuple(range(square.d))
    return all(row == identity for row in square.cells)


def is_constant_column(square: Square) -> bool:
    """True iff every column equals the alphabet sequence 0..d-1."""
    identity = tuple(range(square.d))
    return all(square.column(k) == identity for k in range(square.d))


def classify(square: Square) -> str:
    if square.d == 1:
        return LATIN
    if is_constant_row(square):
        return CONSTANT_ROW
    if is_constant_column(square):
        return CONSTANT_COLUMN
    if is_latin(square):
        return LATIN
    return OTHER


def are_orthogonal(s1: Square, s2: Square) -> bool:
    """True iff the d^2 ordered cell pairs (s1[j][k], s2[j][k]) are all distinct."""
    if s1.d != s2.d:
        raise ValueError(f"order mismatch: {s1.d} vs {s2.d}")
    pairs = {
        (s1.cells[j][k], s2.cells[j][k])
        for j in range(s1.d)
        for k in range(s1.d)
    }
    return len(pairs) == s1.d * s1.d


def cyclic_square(d: int, direction: str = "forward") -> Square:
    """Rows are successive powers of the cyclic permutation acting on 0..d-1.

    Row r of the forward square is the alphabet rotated right r times
    (cell (r, k) holds (k - r) mod d); the backward square rotates left
    (cell (r, k) holds (k + r) mod d).  Row 0 is always the identity.
    """
    if d < 1:
        raise ValueError("order must be at least 1")
    if direction == "forward":
        sign = -1
    elif direction == "backward":
        sign = +1
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return Square(tuple(tuple((k + sign * r) % d for k in range(d)) for r in range(d)))


def constant_row_square(d: int) -> Square:
    return Square(tuple(tuple(range(d)) for _ in range(d)))


def constant_column_square(d: int) -> Square:
    return Square(tuple(tuple(j for _ in range(d)) for j in range(d)))


@dataclass(frozen=True)
class SchemeTriple:
    """An (A, B, C) triple of equal-order squares used by the tripartite encoder."""

    a: Square
    b: Square
    c: Square

    def __post_init__(self) -> None:
        if not (self.a.d == self.b.d == self.c.d):
            raise ValueError("A, B, C must share one order")

    @property
    def d(self) -> int:
        return self.a.d


@dataclass(frozen=True)
class TripleValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_triple(triple: SchemeTriple) -> TripleValidationReport:
    """Check the triple invariants, naming each violation.

    B and C must be mutually orthogonal Latin squares; A must be a
    constant-row or constant-column square, or a third Latin square
    orthogonal to both.
    """
    bad: list[str] = []
    if not is_latin(triple.b):
        bad.append("B-not-latin")
    if not is_latin(triple.c):
        bad.append("C-not-latin")
    if not bad and not are_orthogonal(triple.b, triple.c):
        bad.append("B-C-not-orthogonal")
    a_class = classify(triple.a)
    if a_class == LATIN:
        if not (are_orthogonal(triple.a, triple.b) and are_orthogonal(triple.a, triple.c)):
            bad.append("A-latin-but-not-orthogonal-to-B-and-C")
    elif a_class == OTHER:
        bad.append("A-not-constant-or-latin")
    return TripleValidationReport(ok=not bad, violations=tuple(bad))


def standard_squares_d4() -> SchemeTriple:
    """The built-in order-4 triple: constant-row A with the standard MOLS pair."""
    b = Square(
        (
            (0, 1, 2, 3),
            (1, 0, 3, 2),
            (2, 3, 0, 1),
            (3, 2, 1, 0),
        )
    )
    c = Square(
        (
            (0, 1, 2, 3),
            (3, 2, 1, 0),
            (1, 0, 3, 2),
            (2, 3, 0, 1),
        )
    )
    return SchemeTriple(a=constant_row_square(4), b=b, c=c)


def cyclic_triple(d: int) -> SchemeTriple:
    """Constant-row A with the forward/backward cyclic MOLS pair (odd d >= 3)."""
    return SchemeTriple(
        a=constant_row_square(d),
        b=cyclic_square(d, "forward"),
        c=cyclic_square(d, "backward"),
    )


def _latin_squares_first_row_identity(d: int) -> Iterator[Square]:
    """All Latin squares with identity first row, in lexicographic row order."""

    def extend(rows: list[tuple[int, ...]], col_used: list[set[int]]) -> Iterator[list[tuple[int, ...]]]:
        if len(rows) == d:
            yield rows
            return
        row: list[int] = []

        def place(k: int) -> Iterator[list[tuple[int, ...]]]:
            if k == d:
                for j in range(d):
                    col_used[j].add(row[j])
                yield from extend(rows + [tuple(row)], col_used)
                for j in range(d):
                    col_used[j].remove(row[j])
                return
            for v in range(d):
                if v in row or v in col_used[k]:
                    continue
                row.append(v)
                yield from place(k + 1)
                row.pop()

        yield from place(0)

    first = tuple(range(d))
    for square_rows in extend([first], [{k} for k in range(d)]):
        yield Square(tuple(square_rows))


def _orthogonal_mate(s1: Square) -> Optional[Square]:
    """Lexicographically first identity-first-row orthogonal mate, if any."""
    d = s1.d
    rows: list[tuple[int, ...]] = [tuple(range(d))]
    col_used: list[set[int]] = [{k} for k in range(d)]
    pairs_used = {(s1.cells[0][k], k) for k in range(d)}

    def extend() -> Optional[list[tuple[int, ...]]]:
        j = len(rows)
        if j == d:
            return list(rows)
        row: list[int] = []

        def place(k: int) -> Optional[list[tuple[int, ...]]]:
            if k == d:
                added = []
                for kk in range(d):
                    col_used[kk].add(row[kk])
                    added.append((s1.cells[j][kk], row[kk]))
                pairs_used.update(added)
                rows.append(tuple(row))
                found = extend()
                rows.pop()
                pairs_used.difference_update(added)
                for kk in range(d):
                    col_used[kk].remove(row[kk])
                if found is not None:
                    return found
                return None
            for v in range(d):
                if v in row or v in col_used[k]:
                    continue
                if (s1.cells[j][k], v) in pairs_used or any(
                    (s1.cells[j][kk], row[kk]) == (s1.cells[j][k], v) for kk in range(k)
                ):
                    continue
                row.append(v)
                found = place(k + 1)
                row.pop()
                if found is not None:
                    return found
            return None

        return place(0)

    mate_rows = extend()
    return None if mate_rows is None else Square(tuple(mate_rows))


def find_mols_pair(d: int) -> Optional[tuple[Square, Square]]:
    """Deterministic search for a mutually orthogonal Latin pair of order d.

    Enumerates identity-first-row squares in lexicographic order (symbol
    relabeling loses no generality), so repeated calls return the same
    pair.  Returns None when no pair exists.  Bounded to d <= 5.
    """
    if d < 1:
        raise ValueError("order must be at least 1")
    if d > MOLS_SEARCH_BOUND:
        raise ValueError(f"search is bounded to d <= {MOLS_SEARCH_BOUND}, got {d}")
    for s1 in _latin_squares_first_row_identity(d):
        mate = _orthogonal_mate(s1)
        if mate is not None:
            return s1, mate
    return None


def square_to_text(square: Square, alphabet: Sequence[str]) -> str:
    """One row per line, labels space-separated."""
    if len(alphabet) != square.d:
        raise ValueError("alphabet size must equal the square order")
    return "\n".join(" ".join(alphabet[x] for x in row) for row in square.cells) + "\n"


def parse_square(text: str, alphabet: Sequence[str]) -> Square:
    index = {label: i for i, label in enumerate(alphabet)}
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append(tuple(index[token] for token in line.split()))
        except KeyError as exc:
            raise ValueError(f"unknown label {exc.args[0]!r} for alphabet {tuple(alphabet)}") from None
    if len(rows) != len(alphabet):
        raise ValueError(f"expected {len(alphabet)} rows, got {len(rows)}")
    return Square(tuple(rows))


def triple_to_text(triple: SchemeTriple, alphabet: Sequence[str]) -> str:
    """A, B, C grids separated by blank lines."""
    return "\n".join(
        square_to_text(s, alphabet) for s in (triple.a, triple.b, triple.c)
    )


def parse_triple(text: str, alphabet: Sequence[str]) -> SchemeTriple:
    blocks = [block for block in text.split("\n\n") if block.strip()]
    if len(blocks) != 3:
        raise ValueError(f"expected three blank-line-separated grids, got {len(blocks)}")
    a, b, c = (parse_square(block, alphabet) for block in blocks)
    return SchemeTriple(a=a, b=b, c=c)
