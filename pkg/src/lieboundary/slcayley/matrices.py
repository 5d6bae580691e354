"""Square matrices over GF(q), single and batched.

Entries are stored as element codes (see :mod:`lieboundary.gf`).  Prime
fields use integer matmul followed by ``% p``; extension fields go through
the lookup tables.  A batch is an ``(N, n, n)`` int64 array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..gf import FieldElem, FieldSpec, field_of_order, primitive_element, tables


def _is_prime_field(F: FieldSpec) -> bool:
    return F.k == 1


def batch_matmul(F: FieldSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """``X @ Y`` over GF(q); either side may be a single matrix or a batch."""
    if _is_prime_field(F):
        return np.matmul(X, Y) % F.p
    T = tables(F)
    # prod[..., i, k, j] = X[..., i, k] * Y[..., k, j]
    prod = T.mul[X[..., :, :, None], Y[..., None, :, :]]
    acc = prod[..., 0, :]
    for k in range(1, prod.shape[-2]):
        acc = T.add[acc, prod[..., k, :]]
    return acc


def batch_keys(X: np.ndarray, q: int):
    """Integer keys whose numeric order is the lexicographic order of the
    row-major entry sequence.  Returns int64 when q**(n*n) fits, else a
    list of bytes."""
    flat = X.reshape(len(X), -1)
    m = flat.shape[1]
    if q**m < 2**63:
        weights = np.array([q ** (m - 1 - i) for i in range(m)], dtype=np.int64)
        return flat @ weights
    dtype = np.uint8 if q <= 256 else np.dtype(">u4")
    return [row.tobytes() for row in flat.astype(dtype)]


def keys_fit_int64(q: int, n: int) -> bool:
    return q ** (n * n) < 2**63


@dataclass(frozen=True, eq=False)
class MatGF:
    """Immutable square matrix over ``field``."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= self.field.q:
            raise ValueError("entries must be element codes in [0, q)")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> MatGF:
        return cls(F, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return self.field.from_code(int(self.entries[i, j]))

    def __matmul__(self, other: MatGF) -> MatGF:
        if other.field != self.field:
            raise ValueError("matrices over different fields")
        return MatGF(self.field, batch_matmul(self.field, self.entries, other.entries))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatGF) and self.field == other.field
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.field, self.to_bytes()))

    def to_bytes(self) -> bytes:
        """Row-major canonical serialisation (one byte per entry for q <= 256)."""
        dtype = np.uint8 if self.field.q <= 256 else np.dtype(">u4")
        return self.entries.astype(dtype).tobytes()

    def __pow__(self, e: int) -> MatGF:
        if e < 0:
            return self.inv() ** (-e)
        result, base = MatGF.identity(self.field, self.dim), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def _rows(self) -> list[list[FieldElem]]:
        F = self.field
        return [[F.from_code(int(c)) for c in row] for row in self.entries]

    def det(self) -> FieldElem:
        F = self.field
        a = self._rows()
        n = self.dim
        det = F.one
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return F.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c]
            inv = a[c][c].inv()
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inv(self) -> MatGF:
        F = self.field
        n = self.dim
        a = self._rows()
        b = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            b[c], b[piv] = b[piv], b[c]
            inv = a[c][c].inv()
            a[c] = [x * inv for x in a[c]]
            b[c] = [x * inv for x in b[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                    b[r] = [x - f * y for x, y in zip(b[r], b[c])]
        return MatGF(F, [[int(x) for x in row] for row in b])

    def is_identity(self) -> bool:
        return np.array_equal(self.entries, np.eye(self.dim, dtype=np.int64))

    def __repr__(self) -> str:
        return f"MatGF({self.field}, {self.entries.tolist()})"


# -- the generators -------------------------------------------------------

def _field(q) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_of_order(q)


def transvection(i: int, j: int, delta, dim: int, q) -> MatGF:
    """T_{i,j}(delta) = I + delta e_{i,j}, with 1-based indices."""
    F = _field(q)
    if i == j:
        raise ValueError("a transvection needs i != j")
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise IndexError(f"indices ({i}, {j}) outside 1..{dim}")
    M = np.eye(dim, dtype=np.int64)
    M[i - 1, j - 1] = int(F(delta))
    return MatGF(F, M)


def gen_A(l: int, q) -> MatGF:
    """T_{1,2}(1) in dimension l + 1."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return transvection(1, 2, 1, l + 1, q)


def gen_B(l: int, q) -> MatGF:
    """Signed cyclic shift: subdiagonal ones and (-1)^l in the top-right corner."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    F = _field(q)
    n = l + 1
    M = np.zeros((n, n), dtype=np.int64)
    for k in range(1, n):
        M[k, k - 1] = 1
    M[0, n - 1] = int(F(-1) if l % 2 else F.one)
    return MatGF(F, M)


def gen_C(l: int, q) -> MatGF:
    """diag(1/lambda, lambda, 1, ..., 1) for the primitive element lambda."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    F = _field(q)
    lam = primitive_element(F)
    M = np.eye(l + 1, dtype=np.int64)
    M[0, 0] = int(lam.inv())
    M[1, 1] = int(lam)
    return MatGF(F, M)


def commutator(g: MatGF, h: MatGF) -> MatGF:
    """[g, h] = g^-1 h^-1 g h."""
    return g.inv() @ h.inv() @ g @ h


def block_embed(D: np.ndarray) -> np.ndarray:
    """diag(D, 1) for a batch of (N, l, l) matrices."""
    N, l, _ = D.shape
    out = np.zeros((N, l + 1, l + 1), dtype=np.int64)
    out[:, :l, :l] = D
    out[:, l, l] = 1
    return out
