"""Exact dense matrices over the scalar ring, with fraction-free elimination.

The ring Q(zeta)[Pi, Pi^-1] is not a field, so elimination divides only by
invertible Pi-monomials.  Bareiss-style fraction-free elimination keeps all
intermediate divisions exact (each is by a previous pivot, a leading minor),
which suffices for every matrix this library inverts: Pascal matrices have
rational entries and Vandermonde matrices on the nodes 2p*Pi have leading
minors that are nonzero monomials.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .scalars import ExactScalar, ScalarLike, UnsupportedDivision

Entry = ExactScalar


def _coerce_row(row: Iterable[ScalarLike]) -> list[ExactScalar]:
    return [ExactScalar.coerce(v) for v in row]


class ExactMatrix:
    """Rectangular matrix with ExactScalar entries; all arithmetic exact."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[ScalarLike]]):
        self.entries: list[list[ExactScalar]] = [_coerce_row(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n: int) -> ExactMatrix:
        return ExactMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> ExactMatrix:
        return ExactMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> ExactScalar:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> list[ExactScalar]:
        return list(self.entries[i])

    def column(self, j: int) -> list[ExactScalar]:
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._shape_check(other)
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._shape_check(other)
        return ExactMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([[-a for a in r] for r in self.entries])

    def scale(self, s: ScalarLike) -> ExactMatrix:
        s = ExactScalar.coerce(s)
        return ExactMatrix([[a * s for a in r] for r in self.entries])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ExactScalar.zero()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if not a.is_zero():
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def apply(self, vec: Sequence[ScalarLike]) -> list[ExactScalar]:
        v = _coerce_row(vec)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            sum((self.entries[i][k] * v[k] for k in range(self.cols)), ExactScalar.zero())
            for i in range(self.rows)
        ]

    def commutator(self, other: ExactMatrix) -> ExactMatrix:
        return (self @ other) - (other @ self)

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.entries for a in r)

    def is_nilpotent(self) -> bool:
        p = self
        for _ in range(self.rows):
            if p.is_zero():
                return True
            p = p @ self
        return p.is_zero()

    def map(self, f: Callable[[ExactScalar], ExactScalar]) -> ExactMatrix:
        return ExactMatrix([[f(a) for a in r] for r in self.entries])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self) -> str:
        from .printer import scalar_str

        rows = "; ".join("[" + ", ".join(scalar_str(a) for a in r) + "]" for r in self.entries)
        return f"ExactMatrix({rows})"

    def _shape_check(self, other: ExactMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # -- elimination -----------------------------------------------------------

    def inverse(self) -> ExactMatrix:
        """Inverse by fraction-free (Bareiss) elimination.

        Divisions are only performed by previous pivots and final diagonal
        entries; raises :class:`UnsupportedDivision` when such a pivot is not
        an invertible Pi-monomial, and ValueError when singular.
        """
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        a = [list(r) for r in self.entries]
        b = [list(r) for r in ExactMatrix.identity(n).entries]
        prev = ExactScalar.coerce(1)
        for k in range(n):
            if a[k][k].is_zero():
                for i in range(k + 1, n):
                    if not a[i][k].is_zero():
                        a[k], a[i] = a[i], a[k]
                        b[k], b[i] = b[i], b[k]
                        break
                else:
                    raise ValueError("matrix is singular")
            pivot = a[k][k]
            for i in range(n):
                if i == k:
                    continue
                factor = a[i][k]
                for j in range(n):
                    a[i][j] = (a[i][j] * pivot - factor * a[k][j]).div_monomial(prev)
                    b[i][j] = (b[i][j] * pivot - factor * b[k][j]).div_monomial(prev)
            prev = pivot
        out = []
        for i in range(n):
            d = a[i][i]
            out.append([b[i][j].div_monomial(d) for j in range(n)])
        return ExactMatrix(out)


def nullspace(rows: Sequence[Sequence[ScalarLike]], ncols: int) -> list[list[ExactScalar]]:
    """Exact nullspace basis of a linear system given by coefficient rows.

    Gauss-Jordan with pivot search restricted to invertible (Pi-monomial)
    entries; raises :class:`UnsupportedDivision` if a nonzero row has no
    invertible pivot candidate (cannot happen for rational systems).
    """
    a = [_coerce_row(r) for r in rows if any(not ExactScalar.coerce(v).is_zero() for v in r)]
    pivots: dict[int, int] = {}  # column -> row
    r = 0
    for c in range(ncols):
        # find a row at index >= r with an invertible entry in column c
        pick = None
        for i in range(r, len(a)):
            if a[i][c].is_monomial():
                pick = i
                break
        if pick is None:
            if any(not a[i][c].is_zero() for i in range(r, len(a))):
                raise UnsupportedDivision(
                    "no invertible pivot available in the remaining system; "
                    "coefficients left the monomial-invertible fragment"
                )
            continue
        a[r], a[pick] = a[pick], a[r]
        inv_pivot = a[r][c]
        a[r] = [v.div_monomial(inv_pivot) for v in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots[c] = r
        r += 1
        if r == len(a):
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [ExactScalar.zero()] * ncols
        vec[fc] = ExactScalar.coerce(1)
        for c, pr in pivots.items():
            v = a[pr][fc]
            if not v.is_zero():
                vec[c] = -v
        basis.append(vec)
    return basis
