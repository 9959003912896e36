"""Exact integer linear algebra: Smith normal form, abelian invariants,
kernels over Z and Z/p^e, and S-torsion quotients of abelian groups.

Everything here works with arbitrary-precision Python ints; naive pivoting
explodes entries even on small inputs, so pivots are always chosen with
minimal absolute value (deterministic row-major tie break).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import UnsupportedCoefficients


class IntMatrix:
    """Dense row-major integer matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: list[list[int]], cols: int | None = None):
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
            if any(len(row) != self.cols for row in self.data):
                raise ValueError("ragged matrix")
        else:
            self.cols = 0 if cols is None else cols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.data, cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if a:
                    orow = other.data[k]
                    trow = out[i]
                    for j in range(other.cols):
                        trow[j] += a * orow[j]
        return IntMatrix(out, cols=other.cols)

    def mul_vec(self, v: list[int]) -> list[int]:
        if self.cols != len(v):
            raise ValueError("dimension mismatch")
        return [sum(row[j] * v[j] for j in range(self.cols)) for row in self.data]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        return f"IntMatrix({self.data!r})"


@dataclass(frozen=True)
class SmithForm:
    """U*M*V = D, with U and V unimodular and D in Smith normal form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        n = min(self.D.rows, self.D.cols)
        return [self.D.data[i][i] for i in range(n)]


@dataclass(frozen=True)
class AbelianInvariants:
    """Canonical form of a finitely generated abelian group.

    torsion is the chain of invariant factors (each > 1, each dividing the
    next); factors equal to 1 are never stored.
    """

    torsion: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"divisibility chain broken: {self.torsion}")
        if any(d <= 1 for d in self.torsion):
            raise ValueError(f"non-canonical factor in {self.torsion}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class RSpec:
    """Coefficient ring: Z, Q, Z localized at a prime p, or Z/pZ.

    S(R) = {s in Z : s is invertible in R} drives every torsion quotient.
    """

    kind: str  # "Z" | "Q" | "Zloc" | "Zmod"
    p: int | None = None

    def __post_init__(self):
        if self.kind in ("Zloc", "Zmod"):
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise ValueError(f"prime required for {self.kind}, got {self.p}")
        elif self.kind in ("Z", "Q"):
            if self.p is not None:
                raise ValueError(f"{self.kind} takes no prime")
        else:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")

    def contains_inverse_of(self, s: int) -> bool:
        """True iff the integer s is invertible in R."""
        if s == 0:
            return False
        if self.kind == "Z":
            return abs(s) == 1
        if self.kind == "Q":
            return True
        return s % self.p != 0

    def __str__(self) -> str:
        if self.kind == "Zloc":
            return f"Zloc:{self.p}"
        if self.kind == "Zmod":
            return f"Zmod:{self.p}"
        return self.kind


Z = RSpec("Z")
Q = RSpec("Q")


def Zloc(p: int) -> RSpec:
    return RSpec("Zloc", p)


def Zmod(p: int) -> RSpec:
    return RSpec("Zmod", p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _row_add(M: IntMatrix, dst: int, src: int, c: int) -> None:
    if c:
        drow, srow = M.data[dst], M.data[src]
        for j in range(M.cols):
            drow[j] += c * srow[j]


def _col_add(M: IntMatrix, dst: int, src: int, c: int) -> None:
    if c:
        for row in M.data:
            row[dst] += c * row[src]


def _row_swap(M: IntMatrix, i: int, j: int) -> None:
    if i != j:
        M.data[i], M.data[j] = M.data[j], M.data[i]


def _col_swap(M: IntMatrix, i: int, j: int) -> None:
    if i != j:
        for row in M.data:
            row[i], row[j] = row[j], row[i]


def _row_negate(M: IntMatrix, i: int) -> None:
    M.data[i] = [-x for x in M.data[i]]


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Smith normal form with transforms: U*M*V = D.

    Pivot = smallest nonzero absolute value in the remaining block, ties
    broken in (row, col) order, so the output is reproducible.
    """
    A = M.copy()
    U = IntMatrix.identity(M.rows)
    V = IntMatrix.identity(M.cols)
    t = 0
    limit = min(A.rows, A.cols)
    while t < limit:
        pivot = _find_pivot(A, t)
        if pivot is None:
            break
        while True:
            pi, pj = pivot
            _row_swap(A, t, pi)
            _row_swap(U, t, pi)
            _col_swap(A, t, pj)
            _col_swap(V, t, pj)
            if A.data[t][t] < 0:
                _row_negate(A, t)
                _row_negate(U, t)
            p = A.data[t][t]
            dirty = False
            for i in range(t + 1, A.rows):
                if A.data[i][t]:
                    q = A.data[i][t] // p
                    _row_add(A, i, t, -q)
                    _row_add(U, i, t, -q)
                    if A.data[i][t]:
                        dirty = True
            if not dirty:
                for j in range(t + 1, A.cols):
                    if A.data[t][j]:
                        q = A.data[t][j] // p
                        _col_add(A, j, t, -q)
                        _col_add(V, j, t, -q)
                        if A.data[t][j]:
                            dirty = True
            if not dirty:
                bad = _divisibility_defect(A, t, p)
                if bad is not None:
                    # pull the offending row up so the gcd lands in the pivot
                    _row_add(A, t, bad, 1)
                    _row_add(U, t, bad, 1)
                    dirty = True
            if not dirty:
                break
            pivot = _find_pivot(A, t)
        t += 1
    return SmithForm(U=U, D=A, V=V)


def _find_pivot(A: IntMatrix, t: int) -> tuple[int, int] | None:
    best = None
    best_abs = None
    for i in range(t, A.rows):
        row = A.data[i]
        for j in range(t, A.cols):
            v = row[j]
            if v:
                a = abs(v)
                if best_abs is None or a < best_abs:
                    best, best_abs = (i, j), a
                    if a == 1:
                        return best
    return best


def _divisibility_defect(A: IntMatrix, t: int, p: int) -> int | None:
    """Row index of an entry in the remaining block not divisible by p."""
    for i in range(t + 1, A.rows):
        row = A.data[i]
        for j in range(t + 1, A.cols):
            if row[j] % p:
                return i
    return None


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = [row[:] for row in M.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def unimodular_inverse(M: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, computed exactly."""
    if M.rows != M.cols:
        raise ValueError("not square")
    n = M.rows
    aug = [[Fraction(M.data[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n, 2 * n):
            x = aug[i][j]
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(x))
        out.append(row)
    return IntMatrix(out)


def abelian_invariants(relations: IntMatrix) -> AbelianInvariants:
    """Cokernel invariants of a relation matrix (rows = relations,
    columns = generators), in canonical form."""
    snf = smith_normal_form(relations)
    diag = [d for d in snf.diagonal() if d != 0]
    torsion = tuple(d for d in diag if d > 1)
    free_rank = relations.cols - len(diag)
    return AbelianInvariants(torsion=torsion, free_rank=free_rank)


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def s_torsion_quotient(inv: AbelianInvariants, R: RSpec) -> AbelianInvariants:
    """Quotient of an abelian group by its S-torsion, S = units of R in Z.

    Over Q all torsion dies; over Z nothing is S-torsion; over Z_(p) only
    the p-primary part of each invariant factor survives.
    """
    if R.kind == "Zmod":
        raise UnsupportedCoefficients(
            "S-torsion quotients are defined for subrings of Q; "
            "finite-field coefficients go through the mod-p series")
    if R.kind == "Z":
        return inv
    if R.kind == "Q":
        return AbelianInvariants(torsion=(), free_rank=inv.free_rank)
    torsion = tuple(d for d in (p_part(n, R.p) for n in inv.torsion) if d > 1)
    return AbelianInvariants(torsion=torsion, free_rank=inv.free_rank)


def kernel(M: IntMatrix) -> list[list[int]]:
    """Basis of the integer kernel {v : M v = 0} (column vectors)."""
    snf = smith_normal_form(M)
    diag = snf.diagonal()
    out = []
    for j in range(M.cols):
        if j >= len(diag) or diag[j] == 0:
            out.append([snf.V.data[i][j] for i in range(M.cols)])
    return out


def kernel_mod(M: IntMatrix, modulus: int) -> list[list[int]]:
    """Generating set of {v : M v = 0} over Z (modulus 0) or Z/modulus.

    Over Z/m the generators are lifted from the integer kernel of the
    augmented map (v, w) -> M v + m w and reduced mod m.
    """
    if modulus == 0:
        return kernel(M)
    if modulus < 2:
        raise ValueError("modulus must be 0 or >= 2")
    aug = IntMatrix(
        [M.data[i] + [modulus if k == i else 0 for k in range(M.rows)]
         for i in range(M.rows)],
        cols=M.cols + M.rows,
    )
    gens = []
    seen = set()
    for v in kernel(aug):
        w = tuple(x % modulus for x in v[: M.cols])
        if any(w) and w not in seen:
            seen.add(w)
            gens.append(list(w))
    return gens


def solve(M: IntMatrix, b: list[int]) -> list[int] | None:
    """One integer solution of M x = b, or None if none exists."""
    snf = smith_normal_form(M)
    ub = snf.U.mul_vec(b)
    diag = snf.diagonal()
    y = [0] * M.cols
    for i in range(M.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            if i < M.cols:
                y[i] = ub[i] // d
    return snf.V.mul_vec(y)


def solve_matrix(M: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """Integer solution X of M X = B (columnwise), or None."""
    snf = smith_normal_form(M)
    UB = snf.U.mul(B)
    diag = snf.diagonal()
    Y = IntMatrix.zeros(M.cols, B.cols)
    for i in range(M.rows):
        d = diag[i] if i < len(diag) else 0
        for j in range(B.cols):
            v = UB.data[i][j]
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d:
                    return None
                if i < M.cols:
                    Y.data[i][j] = v // d
    return snf.V.mul(Y)


def in_row_span(M: IntMatrix, v: list[int]) -> bool:
    """Is v an integer combination of the rows of M?"""
    return solve(M.transpose(), v) is not None


class CokernelMap:
    """Coordinates for Z^n / rowspace(relations).

    Provides the canonical decomposition (invariant factors + free rank),
    the projection of ambient vectors to canonical coordinates, and integer
    lifts of the canonical generators.
    """

    def __init__(self, relations: IntMatrix):
        self.n = relations.cols
        self.relations = relations
        # columns of U' give the images of the ambient basis in diagonal
        # coordinates, where U' diagonalizes the transposed relation matrix
        snf = smith_normal_form(relations.transpose())
        self._U = snf.U
        diag = snf.diagonal()
        full = [diag[i] if i < len(diag) else 0 for i in range(self.n)]
        self._full_diag = full
        self._keep = [i for i, d in enumerate(full) if d != 1]
        self.torsion = tuple(full[i] for i in self._keep if full[i] > 1)
        self.free_rank = sum(1 for i in self._keep if full[i] == 0)
        # torsion coordinates first, then free, to match AbelianInvariants
        self._keep.sort(key=lambda i: (full[i] == 0, full[i]))
        self.invariants = AbelianInvariants(self.torsion, self.free_rank)
        self._Uinv = None

    def project(self, v: list[int]) -> tuple[int, ...]:
        """Canonical coordinates of an ambient vector."""
        if len(v) != self.n:
            raise ValueError("dimension mismatch")
        w = self._U.mul_vec(v)
        out = []
        for i in self._keep:
            d = self._full_diag[i]
            out.append(w[i] % d if d else w[i])
        return tuple(out)

    def lift(self, coords: tuple[int, ...] | list[int]) -> list[int]:
        """An ambient vector mapping to the given canonical coordinates."""
        if len(coords) != len(self._keep):
            raise ValueError("dimension mismatch")
        if self._Uinv is None:
            self._Uinv = unimodular_inverse(self._U)
        w = [0] * self.n
        for c, i in zip(coords, self._keep):
            w[i] = c
        return self._Uinv.mul_vec(w)

    def generator_images(self) -> list[tuple[int, ...]]:
        """Canonical coordinates of the ambient basis vectors."""
        return [self.project([int(i == j) for i in range(self.n)])
                for j in range(self.n)]


def lattice_gcd(values: list[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
