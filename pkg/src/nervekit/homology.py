"""Integral homology of truncated simplicial sets from normalized chains."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TruncationTooShallow


@dataclass
class ChainComplex:
    """Free abelian chain complex; ``boundaries[n]`` maps degree n to degree n - 1
    (rows indexed by ``bases[n - 1]``, columns by ``bases[n]``)."""

    bases: list
    boundaries: dict = field(default_factory=dict)

    @property
    def ranks(self):
        return tuple(len(b) for b in self.bases)

    def check(self):
        """Compose consecutive boundaries; return the degrees where d o d != 0."""
        bad = []
        for n in range(2, len(self.bases)):
            if any(any(row) for row in matmul(self.boundaries[n - 1], self.boundaries[n])):
                bad.append(n)
        return bad


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = self.torsion
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invalid torsion coefficients {t}")

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return zeros(rows, cols)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def normalized_chains(Y, top=None):
    """Chains on nondegenerate simplices in degrees 0..top (default Y.maxdim).

    Faces landing on degenerate simplices are dropped.
    """
    top = Y.maxdim if top is None else top
    if top > Y.maxdim:
        raise TruncationTooShallow(f"chains up to degree {top} need maxdim >= {top}")
    bases = [Y.nondegenerate(n) for n in range(top + 1)]
    index = [{x: k for k, x in enumerate(b)} for b in bases]
    bd = {}
    for n in range(1, top + 1):
        M = zeros(len(bases[n - 1]), len(bases[n]))
        for col, x in enumerate(bases[n]):
            for i in range(n + 1):
                row = index[n - 1].get(Y.d(n, i, x))
                if row is not None:
                    M[row][col] += -1 if i % 2 else 1
        bd[n] = M
    cc = ChainComplex(bases, bd)
    bad = cc.check()
    if bad:
        raise ValueError(f"boundary squared is nonzero in degrees {bad}")
    return cc


@dataclass
class SNF:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal d1 | d2 | ..."""

    invariants: list
    U: list
    V: list
    D: list

    def verify(self, M):
        if matmul(matmul(self.U, M), self.V) != self.D:
            return False
        return abs(det(self.U)) == 1 and abs(det(self.V)) == 1


def det(A):
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M):
    """Smith normal form with unimodular certificates, exact over Python ints.

    Pivots on the entry of least absolute value to keep intermediate entries small.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        if q:
            for R in A:
                R[dst] += q * R[src]
            for R in V:
                R[dst] += q * R[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                add_row(t, i, -(A[i][t] // p))
            for j in range(t + 1, n):
                add_col(t, j, -(A[t][j] // p))
            rest = [(i, t) for i in range(t + 1, m) if A[i][t]] + \
                   [(t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(A[ij[0]][ij[1]]))
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    invariants = [A[k][k] for k in range(min(m, n)) if A[k][k]]
    return SNF(invariants, U, V, A)


def homology(Y, n, chains=None):
    """H_n(Y; Z) from normalized chains; needs the truncation to reach n + 1."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if Y.maxdim < n + 1:
        raise TruncationTooShallow(f"H_{n} needs maxdim >= {n + 1} (have {Y.maxdim})")
    cc = chains if chains is not None else normalized_chains(Y, n + 1)
    dim = len(cc.bases[n])
    rank_out = len(smith_normal_form(cc.boundaries[n]).invariants) if n >= 1 else 0
    inv_in = smith_normal_form(cc.boundaries[n + 1]).invariants
    torsion = tuple(d for d in inv_in if d > 1)
    return HomologyGroup(dim - rank_out - len(inv_in), torsion)


def homology_table(Y, degrees):
    cc = normalized_chains(Y, max(degrees) + 1)
    return {n: homology(Y, n, cc) for n in degrees}
