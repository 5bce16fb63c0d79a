"""
Exact integer linear algebra.
Dense matrices of Python ints, Smith normal form with unimodular certificates,
Kronecker products, kernels/cokernels and ranks over Q and prime fields.
"""
import re
from math import prod
from typing import Any, Sequence
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime
from fillcheck.errors import PreconditionError
from fillcheck.logger import setup_logger

logger = setup_logger(__name__)

_DECIMAL = re.compile(r"[+-]?[0-9]+")


def _exact_int(value: Any, where: str) -> int:
    """Accept ints and decimal strings (big integers survive JSON); reject bools and floats."""
    if isinstance(value, bool):
        raise ValueError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _DECIMAL.fullmatch(value):
        return int(value)
    raise ValueError(f"{where}: expected an integer or a decimal string, got {value!r}")


# ============================================================================
# Value Types
# ============================================================================

class IntMatrix(BaseModel):
    """
    Dense rows x cols matrix of arbitrary-precision integers, stored row-major.
    0 x k and k x 0 matrices are legal.
    """

    model_config = ConfigDict(frozen=True)

    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    entries: tuple[int, ...] = ()

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce_entries(cls, value: Any) -> tuple[int, ...]:
        if not isinstance(value, (list, tuple)):
            raise ValueError(f"entries must be a list of integers, got {type(value).__name__}")
        return tuple(_exact_int(x, f"entries[{i}]") for i, x in enumerate(value))

    @model_validator(mode="after")
    def _check_shape(self) -> "IntMatrix":
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries has length {len(self.entries)}, expected rows*cols = {self.rows * self.cols}"
            )
        return self

    # --- constructors -------------------------------------------------------

    @classmethod
    def _trusted(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMatrix":
        """Build without re-validating (internal results are already well formed)."""
        return cls.model_construct(rows=rows, cols=cols, entries=tuple(entries))

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        """
        Build a matrix from a list of rows.

        Args:
            data: Row lists (all the same length)
            cols: Column count, only needed when data has no rows
        """
        rows = len(data)
        width = len(data[0]) if rows else (cols or 0)
        if any(len(row) != width for row in data):
            raise ValueError("all rows must have the same length")
        return cls(rows=rows, cols=width, entries=[x for row in data for x in row])

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls._trusted(size, size, [1 if i == j else 0 for i in range(size) for j in range(size)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._trusted(rows, cols, [0] * (rows * cols))

    @classmethod
    def from_dict(cls, data: dict) -> "IntMatrix":
        """Parse the JSON form {"rows": r, "cols": c, "entries": [[...], ...]}."""
        if not isinstance(data, dict):
            raise ValueError(f"matrix must be an object, got {type(data).__name__}")
        for key in ("rows", "cols"):
            if key not in data:
                raise ValueError(f"matrix.{key} is missing")
        rows = _exact_int(data["rows"], "matrix.rows")
        cols = _exact_int(data["cols"], "matrix.cols")
        nested = data.get("entries", [])
        if not isinstance(nested, list) or not all(isinstance(row, list) for row in nested):
            raise ValueError("matrix.entries must be a list of row lists")
        if len(nested) != rows or any(len(row) != cols for row in nested):
            raise ValueError(f"matrix.entries must be {rows} rows of {cols} values")
        return cls(rows=rows, cols=cols, entries=[x for row in nested for x in row])

    # --- accessors ----------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        """Mutable copy as a list of row lists."""
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def to_dict(self) -> dict:
        """JSON form with entries as decimal strings (no precision loss)."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in row] for row in self.to_rows()],
        }

    # --- arithmetic ---------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix._trusted(
            self.cols, self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix._trusted(self.rows, self.cols, [factor * x for x in self.entries])

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError(
                f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols} matrices"
            )
        return IntMatrix._trusted(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise PreconditionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        left = self.to_rows()
        right_cols = other.transpose().to_rows()
        return IntMatrix._trusted(
            self.rows, other.cols,
            [sum(a * b for a, b in zip(row, col)) for row in left for col in right_cols],
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def is_antisymmetric(self) -> bool:
        return self.is_square and self.add(self.transpose()).is_zero()


class SmithDecomposition(BaseModel):
    """
    Certificate of a Smith normal form computation: u . M . v = d.
    u and v are unimodular; d carries d_1 | d_2 | ... | d_r followed by zeros.
    """

    model_config = ConfigDict(frozen=True)

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        """Rank of the source matrix over Q."""
        return len(self.invariant_factors)

    def kernel_rank(self) -> int:
        return self.d.cols - self.rank

    def cokernel(self) -> "HomologyGroup":
        return HomologyGroup(
            free_rank=self.d.rows - self.rank,
            torsion=[f for f in self.invariant_factors if f > 1],
        )

    def to_dict(self) -> dict:
        return {
            "U": self.u.to_dict(),
            "D": self.d.to_dict(),
            "V": self.v.to_dict(),
            "invariant_factors": [str(f) for f in self.invariant_factors],
            "rank": self.rank,
        }


class HomologyGroup(BaseModel):
    """One graded piece of integral homology: Z^free_rank + sum of Z/t_i with t_1 | t_2 | ..."""

    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(ge=0)
    torsion: tuple[int, ...] = ()

    @field_validator("torsion", mode="before")
    @classmethod
    def _coerce_torsion(cls, value: Any) -> tuple[int, ...]:
        return tuple(int(x) for x in value)

    @model_validator(mode="after")
    def _check_chain(self) -> "HomologyGroup":
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion coefficient {t} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion coefficients {a}, {b} do not form a divisibility chain")
        return self

    def rank_over(self, characteristic: int) -> int:
        """
        Rank of G (x) F for the field of the given characteristic (0 for Q).
        Over F_p every Z/t with p | t contributes one copy of F_p.
        """
        if characteristic == 0:
            return self.free_rank
        return self.free_rank + sum(1 for t in self.torsion if t % characteristic == 0)

    def tor_rank(self, characteristic: int) -> int:
        """Rank of Tor(G, F); zero over Q."""
        if characteristic == 0:
            return 0
        return sum(1 for t in self.torsion if t % characteristic == 0)

    def describe(self) -> str:
        """Human readable form, e.g. 'Z^2 + Z/2 + Z/6'."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": [str(t) for t in self.torsion],
            "group": self.describe(),
        }


# ============================================================================
# Elementary operations (act on the working copy and its certificate together)
# ============================================================================

def _swap_rows(a: list[list[int]], u: list[list[int]], i: int, j: int):
    if i != j:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]


def _swap_cols(a: list[list[int]], v: list[list[int]], i: int, j: int):
    if i != j:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]


def _add_row_multiple(a: list[list[int]], u: list[list[int]], target: int, source: int, q: int):
    """row[target] += q * row[source]"""
    for mat in (a, u):
        src = mat[source]
        tgt = mat[target]
        for k, x in enumerate(src):
            if x:
                tgt[k] += q * x


def _add_col_multiple(a: list[list[int]], v: list[list[int]], target: int, source: int, q: int):
    """col[target] += q * col[source]"""
    for mat in (a, v):
        for row in mat:
            if row[source]:
                row[target] += q * row[source]


def _min_nonzero(a: list[list[int]], start: int) -> tuple[int, int] | None:
    """Position of the smallest nonzero |entry| in the lower-right block from (start, start)."""
    best = None
    best_value = 0
    for i in range(start, len(a)):
        for j in range(start, len(a[i])):
            x = abs(a[i][j])
            if x and (best is None or x < best_value):
                best = (i, j)
                best_value = x
                if x == 1:
                    return best
    return best


def _clear_cross(a: list[list[int]], u: list[list[int]], v: list[list[int]], t: int):
    """Zero out column t below and row t right of the pivot (t, t)."""
    rows, cols = len(a), len(a[0])
    while True:
        pivot = a[t][t]
        for i in range(t + 1, rows):
            if a[i][t]:
                _add_row_multiple(a, u, i, t, -(a[i][t] // pivot))
        for j in range(t + 1, cols):
            if a[t][j]:
                _add_col_multiple(a, v, j, t, -(a[t][j] // pivot))

        # Remainders are strictly smaller than the pivot; move the smallest in
        best = None
        for i in range(t + 1, rows):
            if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                best = (abs(a[i][t]), "row", i)
        for j in range(t + 1, cols):
            if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                best = (abs(a[t][j]), "col", j)
        if best is None:
            return
        if best[1] == "row":
            _swap_rows(a, u, t, best[2])
        else:
            _swap_cols(a, v, t, best[2])


def _find_non_multiple(a: list[list[int]], t: int) -> int | None:
    """Row index of an entry in the remaining block not divisible by the pivot."""
    pivot = a[t][t]
    for i in range(t + 1, len(a)):
        for j in range(t + 1, len(a[i])):
            if a[i][j] % pivot:
                return i
    return None


# ============================================================================
# Operations
# ============================================================================

def smith_normal_form(matrix: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form by row/column reduction, pivoting on the smallest nonzero |entry|.

    Args:
        matrix: Any integer matrix (empty shapes allowed)

    Returns:
        SmithDecomposition with U . M . V = D, |det U| = |det V| = 1 and
        positive invariant factors forming a divisibility chain
    """
    rows, cols = matrix.rows, matrix.cols
    a = matrix.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    t = 0
    while t < min(rows, cols):
        position = _min_nonzero(a, t)
        if position is None:
            break
        _swap_rows(a, u, t, position[0])
        _swap_cols(a, v, t, position[1])

        while True:
            _clear_cross(a, u, v, t)
            offender = _find_non_multiple(a, t)
            if offender is None:
                break
            # Pulling the offending row up leaves a[t][t] alone and breaks divisibility in row t
            _add_row_multiple(a, u, t, offender, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    factors = tuple(a[i][i] for i in range(t))
    logger.debug(
        "Computed Smith normal form",
        extra={"rows": rows, "cols": cols, "rank": len(factors)}
    )
    return SmithDecomposition(
        u=IntMatrix._trusted(rows, rows, [x for row in u for x in row]),
        d=IntMatrix._trusted(rows, cols, [x for row in a for x in row]),
        v=IntMatrix._trusted(cols, cols, [x for row in v for x in row]),
        invariant_factors=factors,
    )


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """
    Kronecker product with lexicographic index flattening:
    entry ((i1, i2), (j1, j2)) = a[i1, j1] * b[i2, j2].
    """
    rows, cols = a.rows * b.rows, a.cols * b.cols
    entries = [
        a.entry(i1, j1) * b.entry(i2, j2)
        for i1 in range(a.rows)
        for i2 in range(b.rows)
        for j1 in range(a.cols)
        for j2 in range(b.cols)
    ]
    return IntMatrix._trusted(rows, cols, entries)


def rank_q(matrix: IntMatrix) -> int:
    """Rank over Q (number of invariant factors)."""
    return smith_normal_form(matrix).rank


def cokernel(matrix: IntMatrix) -> HomologyGroup:
    """Cokernel of M : Z^cols -> Z^rows as free rank plus torsion chain."""
    return smith_normal_form(matrix).cokernel()


def kernel_rank(matrix: IntMatrix) -> int:
    """Rank of the kernel of M : Z^cols -> Z^rows (the kernel is free)."""
    return smith_normal_form(matrix).kernel_rank()


def determinant_abs(matrix: IntMatrix) -> int:
    """|det M| for a square matrix, read off the invariant factors."""
    if not matrix.is_square:
        raise PreconditionError(f"determinant needs a square matrix, got {matrix.rows}x{matrix.cols}")
    decomposition = smith_normal_form(matrix)
    if decomposition.rank < matrix.rows:
        return 0
    return prod(decomposition.invariant_factors)


def rank_mod_p(matrix: IntMatrix, p: int) -> int:
    """
    Rank over F_p by Gaussian elimination on residues.

    Args:
        matrix: Integer matrix
        p: Prime modulus

    Raises:
        PreconditionError: if p < 2 or p is composite
    """
    if p < 2 or not isprime(p):
        raise PreconditionError(f"modulus {p} is not a prime")

    work = [[x % p for x in row] for row in matrix.to_rows()]
    rank = 0
    for col in range(matrix.cols):
        pivot_row = next((r for r in range(rank, matrix.rows) if work[r][col]), None)
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inverse = pow(work[rank][col], -1, p)
        work[rank] = [(x * inverse) % p for x in work[rank]]
        for r in range(matrix.rows):
            if r != rank and work[r][col]:
                factor = work[r][col]
                work[r] = [(x - factor * y) % p for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank
