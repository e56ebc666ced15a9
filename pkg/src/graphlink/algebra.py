"""Integer matrix normal forms and modules over the Novikov ring.

All arithmetic is on Python ints.  A matrix is a list of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence[int]]


@dataclass(frozen=True)
class NovikovModule:
    """``free_rank`` copies of the Novikov ring plus cyclic torsion summands.

    ``torsion`` holds invariant factors d1 | d2 | ... (each > 1); the summand
    for d is the quotient of the ring by the ideal generated by d.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"torsion factor {d} must exceed 1")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"torsion factors {d}, {e} break the divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Λ/({d})" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Λ")
        elif self.free_rank > 1:
            parts.append(f"Λ^{self.free_rank}")
        return " ⊕ ".join(parts) if parts else "0"


def smith_normal_form(matrix: Matrix) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Returns min(rows, cols) nonnegative entries; trailing zeros mark rank
    deficiency.  Pivots are the smallest nonzero absolute value, ties broken by
    (row, column) index.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("matrix is not rectangular")
    size = min(rows, cols)
    out = []
    for t in range(size):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (pivot is None or abs(x) < pivot[0]):
                        pivot = (abs(x), i, j)
            if pivot is None:
                out.extend([0] * (size - t))
                return out
            _, pi, pj = pivot
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]

            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                clean &= a[i][t] == 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                clean &= a[t][j] == 0
            if not clean:
                continue
            # pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        out.append(abs(a[t][t]))
    return out


def cokernel(matrix: Matrix) -> NovikovModule:
    """Module presented by ``matrix`` (rows are relations, columns generators).

    Integer unimodular changes of basis stay invertible over the Novikov ring,
    so the Smith invariants read off the module directly.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    factors = smith_normal_form(matrix) if rows and cols else []
    nonzero = [d for d in factors if d]
    return NovikovModule(cols - len(nonzero), tuple(d for d in nonzero if d > 1))


def determinant(matrix: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def integer_kernel_basis(matrix: Matrix, ncols: int) -> list[list[int]]:
    """Primitive integer vectors spanning the rational kernel of ``matrix``."""
    a = [[Fraction(x) for x in row] for row in matrix if any(row)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(a, pivots):
            vec[pc] = -row[fc]
        scale = lcm(*(x.denominator for x in vec))
        ints = [int(x * scale) for x in vec]
        g = gcd(*ints)
        basis.append([x // g for x in ints])
    return basis
