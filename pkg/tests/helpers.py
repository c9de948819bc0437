"""Independent reference arithmetic used to cross-check package results.

Everything in this module is deliberately naive.  Complex rationals are
plain (Fraction, Fraction) pairs, matrices are tuples of tuples of such
pairs, and words are evaluated letter by letter from the definitions.
Nothing here imports the package, so a bug in the package cannot leak
into the expected values these functions produce.  Conversion helpers at
the bottom only read .re/.im attributes off objects they are handed.
"""

from fractions import Fraction

CZERO = (Fraction(0), Fraction(0))
CONE = (Fraction(1), Fraction(0))
CI = (Fraction(0), Fraction(1))


def c(re, im=0):
    return (Fraction(re), Fraction(im))


def cadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def csub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def cneg(u):
    return (-u[0], -u[1])


def cmul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def cconj(u):
    return (u[0], -u[1])


def cdiv(u, v):
    d = v[0] * v[0] + v[1] * v[1]
    if d == 0:
        raise ZeroDivisionError("division by zero pair")
    return ((u[0] * v[0] + u[1] * v[1]) / d, (u[1] * v[0] - u[0] * v[1]) / d)


def cis_zero(u):
    return u[0] == 0 and u[1] == 0


def vadd(u, v):
    return tuple(cadd(a, b) for a, b in zip(u, v))


def vneg(u):
    return tuple(cneg(a) for a in u)


def vscale(s, u):
    return tuple(cmul(s, a) for a in u)


def zero_vec(n):
    return (CZERO,) * n


def mid(n):
    return tuple(tuple(CONE if i == j else CZERO for j in range(n))
                 for i in range(n))


def mmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = CZERO
            for t in range(k):
                s = cadd(s, cmul(a[i][t], b[t][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mvec(a, v):
    out = []
    for row in a:
        s = CZERO
        for x, y in zip(row, v):
            s = cadd(s, cmul(x, y))
        out.append(s)
    return tuple(out)


def minv(a):
    """Inverse by Gauss-Jordan elimination, exact arithmetic throughout."""
    n = len(a)
    work = [list(row) + list(ident_row)
            for row, ident_row in zip(a, mid(n))]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not cis_zero(work[r][col]):
                pivot = r
                break
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv_p = cdiv(CONE, work[col][col])
        work[col] = [cmul(inv_p, x) for x in work[col]]
        for r in range(n):
            if r != col and not cis_zero(work[r][col]):
                factor = work[r][col]
                work[r] = [csub(x, cmul(factor, y))
                           for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def naive_det(a):
    """Cofactor expansion along the first row."""
    n = len(a)
    if n == 0:
        return CONE
    if n == 1:
        return a[0][0]
    total = CZERO
    for j in range(n):
        minor = tuple(tuple(row[k] for k in range(n) if k != j)
                      for row in a[1:])
        term = cmul(a[0][j], naive_det(minor))
        total = cadd(total, term) if j % 2 == 0 else csub(total, term)
    return total


def inner(gram, u, v):
    """Sesquilinear form sum_ij conj(u_i) G_ij v_j, conjugate in slot one."""
    s = CZERO
    for i, ui in enumerate(u):
        for j, vj in enumerate(v):
            s = cadd(s, cmul(cmul(cconj(ui), gram[i][j]), vj))
    return s


def letter_matrix(images, letter):
    """Matrix of a single letter.

    Group letters carry a +1/-1 tag and inverse letters get the inverse
    matrix.  Star letters carry a 0/1 star tag and starred letters get
    the form-adjoint, which the caller supplies through `adjoints`.
    """
    name, tag = letter
    if tag == -1:
        return minv(images[name])
    return images[name]


def star_letter_matrix(images, gram, letter):
    name, tag = letter
    m = images[name]
    if tag == 0:
        return m
    g = gram
    ginv = minv(g)
    mstar = tuple(tuple(cconj(m[j][i]) for j in range(len(m)))
                  for i in range(len(m)))
    return mmul(ginv, mmul(mstar, g))


def eval_group_word(images, word):
    out = mid(len(next(iter(images.values())))) if images else mid(0)
    for letter in word:
        out = mmul(out, letter_matrix(images, letter))
    return out


def eta_letter(images, values, letter):
    name, tag = letter
    if tag == -1:
        return vneg(mvec(minv(images[name]), values[name]))
    return values[name]


def eta_word(images, values, word, dim):
    """Prefix-sum form: eta(w) = sum_j pi(w_1..w_{j-1}) eta(w_j)."""
    prefix = mid(dim)
    acc = zero_vec(dim)
    for letter in word:
        acc = vadd(acc, mvec(prefix, eta_letter(images, values, letter)))
        prefix = mmul(prefix, letter_matrix(images, letter))
    return acc


def psi_letter(psi_values, letter):
    name, tag = letter
    v = psi_values[name]
    if tag == -1:
        return cconj(v)
    return v


def psi_word(images, eta_values, psi_values, gram, word, dim):
    """Left fold of psi(gh) = psi(g) + <eta(g^-1), eta(h)> + psi(h)."""
    total = CZERO
    for i, letter in enumerate(word):
        suffix = word[i + 1:]
        inv = (letter[0], -letter[1])
        cross = inner(gram, eta_letter(images, eta_values, inv),
                      eta_word(images, eta_values, suffix, dim))
        total = cadd(total, cadd(psi_letter(psi_values, letter), cross))
    return total


def to_pair(scalar):
    return (Fraction(scalar.re), Fraction(scalar.im))


def to_pairs_vec(vec):
    return tuple(to_pair(x) for x in vec)


def to_pairs_mat(mat):
    return tuple(tuple(to_pair(x) for x in row) for row in mat)
