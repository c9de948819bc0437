"""Exact linear algebra over Gaussian rationals.

Vectors are tuples of Scalar, matrices are tuples of row tuples.  Sizes are
small (representation spaces up to ~8 dimensions, Gram matrices up to a few
hundred rows), so everything uses plain fraction-exact Gaussian elimination.
Dimension 0 is allowed throughout; it shows up when a splitting has an empty
Gaussian or remainder part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import ONE, ZERO, Scalar


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class IndefiniteFormError(LinalgError):
    """An operation that needs a positive definite form got an indefinite one."""


# --- constructors ---------------------------------------------------


def vector(items) -> tuple:
    return tuple(Scalar.coerce(x) for x in items)


def matrix(rows) -> tuple:
    m = tuple(tuple(Scalar.coerce(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def zero_vector(n: int) -> tuple:
    return tuple(ZERO for _ in range(n))


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> tuple:
    return tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows))


# --- vector ops -----------------------------------------------------


def vadd(v, w):
    if len(v) != len(w):
        raise DimensionMismatch("vector sizes differ")
    return tuple(a + b for a, b in zip(v, w))


def vsub(v, w):
    if len(v) != len(w):
        raise DimensionMismatch("vector sizes differ")
    return tuple(a - b for a, b in zip(v, w))


def vscale(c: Scalar, v):
    return tuple(c * a for a in v)


def vneg(v):
    return tuple(-a for a in v)


def vconj(v):
    return tuple(a.conj() for a in v)


def is_zero_vector(v) -> bool:
    return all(a.is_zero() for a in v)


# --- matrix ops -----------------------------------------------------


def mat_shape(m) -> tuple:
    return (len(m), len(m[0]) if m else 0)


def madd(a, b):
    if mat_shape(a) != mat_shape(b):
        raise DimensionMismatch("matrix shapes differ")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def msub(a, b):
    if mat_shape(a) != mat_shape(b):
        raise DimensionMismatch("matrix shapes differ")
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mscale(c: Scalar, m):
    return tuple(tuple(c * x for x in row) for row in m)


def mmul(a, b):
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = tuple(zip(*b)) if b else ()
    out = []
    for row in a:
        out.append(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt))
    return tuple(out)


def mvmul(m, v):
    r, c = mat_shape(m)
    if r == 0:
        # a matrix with no rows maps anything to the empty vector
        return ()
    if c != len(v):
        raise DimensionMismatch(f"cannot apply {r}x{c} to vector of size {len(v)}")
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in m)


def conj_transpose(m):
    r, c = mat_shape(m)
    return tuple(tuple(m[i][j].conj() for i in range(r)) for j in range(c))


def mat_eq(a, b) -> bool:
    return mat_shape(a) == mat_shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(m) -> bool:
    return all(x.is_zero() for row in m for x in row)


def columns(m) -> list:
    r, c = mat_shape(m)
    return [tuple(m[i][j] for i in range(r)) for j in range(c)]


def from_columns(cols, rows_hint=None) -> tuple:
    if not cols:
        return tuple(() for _ in range(rows_hint or 0))
    r = len(cols[0])
    return tuple(tuple(col[i] for col in cols) for i in range(r))


# --- elimination ----------------------------------------------------


def rref(rows) -> tuple:
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, len(m)):
            if not m[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        inv = ONE / m[lead][col]
        m[lead] = [inv * x for x in m[lead]]
        for i in range(len(m)):
            if i != lead and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(m):
            break
    return [tuple(r) for r in m], pivots


def rank(m) -> int:
    return len(rref(m)[1])


def kernel(m) -> list:
    """Basis of the right kernel of m, as a list of vectors."""
    r, c = mat_shape(m)
    red, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(c) if j not in pivset]
    basis = []
    for j in free:
        v = [ZERO] * c
        v[j] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][j]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class LinearSolution:
    solution: tuple
    kernel_basis: tuple


@dataclass(frozen=True)
class LinearInfeasible:
    """Certificate row combination: certificate @ A == 0 but certificate @ b != 0."""
    certificate: tuple


def solve_linear(a, b):
    """Solve a @ x == b exactly.

    Returns LinearSolution (particular solution with free variables 0, plus
    kernel basis) or LinearInfeasible with a left-nullspace certificate.
    """
    r, c = mat_shape(a)
    if len(b) != r:
        raise DimensionMismatch("rhs size mismatch")
    # augment with rhs and an identity block to track row operations
    aug = [list(a[i]) + [b[i]] + [ONE if j == i else ZERO for j in range(r)]
           for i in range(r)]
    red, pivots = rref(aug)
    for i, row in enumerate(red):
        lead = next((j for j, x in enumerate(row[:c + 1]) if not x.is_zero()), None)
        if lead == c:
            cert = tuple(row[c + 1:])
            return LinearInfeasible(certificate=cert)
    sol = [ZERO] * c
    coeff_pivots = [p for p in pivots if p < c]
    for i, p in enumerate(coeff_pivots):
        sol[p] = red[i][c]
    ker = kernel(a)
    return LinearSolution(solution=tuple(sol), kernel_basis=tuple(ker))


def inverse(m):
    n, c = mat_shape(m)
    if n != c:
        raise DimensionMismatch("inverse of non-square matrix")
    if n == 0:
        return ()
    aug = [list(m[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise LinalgError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def det(m) -> Scalar:
    n, c = mat_shape(m)
    if n != c:
        raise DimensionMismatch("determinant of non-square matrix")
    a = [list(r) for r in m]
    result = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        result = result * a[col][col]
        inv = ONE / a[col][col]
        for i in range(col + 1, n):
            if not a[i][col].is_zero():
                f = a[i][col] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return result


def independent_subset(vectors) -> list:
    """Indices of a maximal linearly independent subset, scanned in order."""
    chosen = []
    rows = []
    cur_rank = 0
    for idx, v in enumerate(vectors):
        trial = rows + [v]
        r = rank(trial)
        if r > cur_rank:
            chosen.append(idx)
            rows = trial
            cur_rank = r
    return chosen


def span_basis(vectors) -> list:
    """Row-echelon basis of the span of the given vectors."""
    red, pivots = rref(list(vectors))
    return [row for row in red[:len(pivots)]]


def in_span(vectors, v) -> bool:
    if is_zero_vector(v):
        return True
    return rank(list(vectors) + [v]) == rank(list(vectors))


# --- hermitian forms ------------------------------------------------


class HermitianForm:
    """Invertible hermitian Gram matrix on column vectors.

    inner(v, w) = conj(v)^T @ gram @ w  (conjugate-linear in the first slot).
    `definite` is decided exactly by positivity of all leading principal
    minors.
    """

    def __init__(self, gram):
        gram = matrix(gram)
        n, c = mat_shape(gram)
        if n != c:
            raise DimensionMismatch("gram matrix must be square")
        if not mat_eq(gram, conj_transpose(gram)):
            raise LinalgError("gram matrix is not hermitian")
        self.gram = gram
        self.dim = n
        if n > 0 and det(gram).is_zero():
            raise LinalgError("gram matrix is singular")
        self._gram_inv = inverse(gram)
        self.definite = self._leading_minors_positive()

    def _leading_minors_positive(self) -> bool:
        for k in range(1, self.dim + 1):
            sub = tuple(row[:k] for row in self.gram[:k])
            d = det(sub)
            # hermitian minors are real
            if not d.is_real() or d.re <= 0:
                return False
        return True

    def inner(self, v, w) -> Scalar:
        if len(v) != self.dim or len(w) != self.dim:
            raise DimensionMismatch("vector size does not match form")
        gw = mvmul(self.gram, w)
        return sum((a.conj() * b for a, b in zip(v, gw)), ZERO)

    def norm_sq(self, v) -> Scalar:
        return self.inner(v, v)

    def adjoint(self, m):
        """gram^-1 @ conj_transpose(m) @ gram."""
        if mat_shape(m) != (self.dim, self.dim):
            raise DimensionMismatch("matrix size does not match form")
        return mmul(self._gram_inv, mmul(conj_transpose(m), self.gram))

    def is_unitary(self, m) -> bool:
        return mat_eq(mmul(self.adjoint(m), m), identity(self.dim))

    def is_self_adjoint(self, m) -> bool:
        return mat_eq(self.adjoint(m), m)

    def projection(self, vectors):
        """Matrix of the orthogonal projection onto span(vectors).

        Requires a positive definite form.  Dependent or zero inputs are
        tolerated; an empty span gives the zero matrix.
        """
        if not self.definite:
            raise IndefiniteFormError("projection needs a positive definite form")
        vecs = [v for v in vectors if not is_zero_vector(v)]
        idx = independent_subset(vecs)
        basis = [vecs[i] for i in idx]
        if not basis:
            return zero_matrix(self.dim, self.dim)
        b = from_columns(basis, rows_hint=self.dim)
        bh = conj_transpose(b)
        m = mmul(bh, mmul(self.gram, b))
        minv = inverse(m)
        return mmul(b, mmul(minv, mmul(bh, self.gram)))

    def orthocomplement(self, vectors) -> list:
        """Basis of {v : inner(b, v) = 0 for all b in vectors}."""
        rows = [mvmul_conj_row(self.gram, bvec) for bvec in vectors]
        if not rows:
            return [tuple(ONE if i == j else ZERO for j in range(self.dim))
                    for i in range(self.dim)]
        return kernel(matrix(rows))

    def gram_of(self, vectors):
        """Gram matrix of the given vectors under this form."""
        return tuple(tuple(self.inner(v, w) for w in vectors) for v in vectors)

    def to_json(self):
        return {"gram": [[str(x) for x in row] for row in self.gram]}


def mvmul_conj_row(gram, b):
    """Row vector v -> inner(b, .) coefficients: conj(b)^T @ gram."""
    n = len(b)
    return tuple(sum((b[i].conj() * gram[i][j] for i in range(n)), ZERO)
                 for j in range(n))


def standard_form(n: int) -> HermitianForm:
    return HermitianForm(identity(n))


# --- exact PSD check ------------------------------------------------


@dataclass(frozen=True)
class PsdResult:
    psd: bool
    witness: tuple | None  # v with inner(v, G v) < 0 when not psd

    def witness_value(self, gram) -> Scalar | None:
        if self.witness is None:
            return None
        gv = mvmul(gram, self.witness)
        return sum((a.conj() * b for a, b in zip(self.witness, gv)), ZERO)


def psd_check(gram) -> PsdResult:
    """Exact positive semidefiniteness test for a hermitian matrix.

    Pivoted LDL-style congruence elimination; eigenvalues would leave the
    field, diagonal pivots do not.  On failure returns a witness vector v
    with conj(v)^T G v < 0.
    """
    g = matrix(gram)
    n, c = mat_shape(g)
    if n != c or not mat_eq(g, conj_transpose(g)):
        raise LinalgError("psd_check needs a hermitian matrix")
    work = [list(row) for row in g]
    # invariant: work == C @ G @ conj_transpose(C); witness maps back by conj_transpose(C)
    cmat = [list(row) for row in identity(n)]
    done = [False] * n

    def back_map(vcur):
        out = [ZERO] * n
        for i in range(n):
            if not vcur[i].is_zero():
                for j in range(n):
                    out[j] = out[j] + cmat[i][j].conj() * vcur[i]
        return tuple(out)

    while True:
        piv = None
        for j in range(n):
            if not done[j] and not work[j][j].is_zero():
                piv = j
                break
        if piv is None:
            break
        d = work[piv][piv]
        if not d.is_real():
            raise LinalgError("hermitian matrix has non-real diagonal")
        if d.re < 0:
            ecur = tuple(ONE if k == piv else ZERO for k in range(n))
            return PsdResult(psd=False, witness=back_map(ecur))
        for i in range(n):
            if i != piv and not done[i] and not work[i][piv].is_zero():
                f = work[i][piv] / d
                for k in range(n):
                    work[i][k] = work[i][k] - f * work[piv][k]
                    cmat[i][k] = cmat[i][k] - f * cmat[piv][k]
                for k in range(n):
                    work[k][i] = work[k][i] - f.conj() * work[k][piv]
        done[piv] = True
    # remaining block has zero diagonal; any nonzero entry is indefinite
    for i in range(n):
        if done[i]:
            continue
        for k in range(n):
            if done[k] or k == i:
                continue
            cval = work[i][k]
            if not cval.is_zero():
                vcur = [ZERO] * n
                vcur[i] = -cval
                vcur[k] = ONE
                return PsdResult(psd=False, witness=back_map(tuple(vcur)))
    return PsdResult(psd=True, witness=None)


# --- serialization helpers -----------------------------------------


def vector_to_json(v) -> list:
    return [str(x) for x in v]


def matrix_to_json(m) -> list:
    return [[str(x) for x in row] for row in m]


def vector_from_json(items) -> tuple:
    return tuple(Scalar.parse(x) for x in items)


def matrix_from_json(rows) -> tuple:
    return matrix([[Scalar.parse(x) for x in row] for row in rows])
