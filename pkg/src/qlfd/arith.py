"""Arithmetic substrate: prime fields, seeded randomness, exact and modular
linear algebra, univariate polynomials, and small sparse multivariate
polynomials.

Conventions used throughout the package:

* a matrix is a list of row lists; the 0x0 matrix is ``[]`` and has
  determinant 1 and rank 0;
* over a prime field of modulus ``p`` entries are ints in ``[0, p)``;
  exact matrices hold ints or :class:`fractions.Fraction`;
* a univariate polynomial is a coefficient list, constant term first,
  with trailing zeros trimmed (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction

# 2**62 - 57, the default modulus for all randomized checks.  62 bits keeps
# single Schwartz-Zippel error bounds below 2**-40 for every fixture degree
# occurring here while products still fit comfortably in native big ints.
DEFAULT_PRIME = 4611686018427387847

_MASK64 = (1 << 64) - 1

# Witnesses making Miller-Rabin deterministic for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all moduli used here (< 2**78)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """A prime field F_p; primality of the modulus is checked on construction."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class Rng:
    """SplitMix64 pseudo-random stream.

    Implemented in full here so that every report is reproducible bit for bit
    from its seed, independent of platform and Python version.  State update:
    ``s += 0x9E3779B97F4A7C15``; output: two xor-shift-multiply mixing rounds.
    """

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._state = self.seed

    def u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection to avoid modulo bias."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            x = self.u64()
            if x <= limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def split(self, *indices: int) -> "Rng":
        """Derive an independent stream; injective over the index tuple."""
        child = Rng(self.seed)
        for ix in indices:
            mixer = Rng((child.seed ^ (ix + 0x632BE59BD9B4E019)) & _MASK64)
            child = Rng(mixer.u64())
        return child


def derive_seed(seed: int, *indices: int) -> int:
    return Rng(seed).split(*indices).seed


# ---------------------------------------------------------------------------
# Modular linear algebra


def mat_copy(m):
    return [row[:] for row in m]


def mat_mul_mod(a, b, p):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = []
    for i in range(n):
        arow = a[i]
        row = [0] * cols
        for t in range(k):
            f = arow[t]
            if f:
                brow = b[t]
                for j in range(cols):
                    row[j] = (row[j] + f * brow[j]) % p
        out.append(row)
    return out


def det_mod(mat, p: int) -> int:
    """Determinant over F_p by Gaussian elimination with pivoting."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant of a non-square matrix")
    a = mat_copy(mat)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] % p), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        pk = a[k][k] % p
        det = det * pk % p
        inv = pow(pk, -1, p)
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] % p
            if f:
                f = f * inv % p
                rowi = a[i]
                a[i] = [(x - f * y) % p for x, y in zip(rowi, rowk)]
    return det % p


def rank_mod(mat, p: int) -> int:
    rows = len(mat)
    if rows == 0:
        return 0
    cols = len(mat[0])
    a = mat_copy(mat)
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        rowr = [x * inv % p for x in a[rank]]
        a[rank] = rowr
        for i in range(rank + 1, rows):
            f = a[i][c] % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], rowr)]
        rank += 1
        if rank == rows:
            break
    return rank


def inverse_mod(mat, p: int):
    """Matrix inverse over F_p, or None if singular."""
    n = len(mat)
    a = [row[:] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] % p), None)
        if piv is None:
            return None
        a[k], a[piv] = a[piv], a[k]
        inv = pow(a[k][k], -1, p)
        a[k] = [x * inv % p for x in a[k]]
        rowk = a[k]
        for i in range(n):
            if i != k and a[i][k] % p:
                f = a[i][k] % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], rowk)]
    return [row[n:] for row in a]


def det_exact(mat):
    """Exact determinant for int/Fraction entries.

    Rows are scaled to integers, then a fraction-free Bareiss elimination
    runs entirely in int arithmetic; the tracked scale is divided out at
    the end.
    """
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    a = []
    scale = Fraction(1)
    for row in mat:
        fr = [Fraction(x) for x in row]
        mult = 1
        for x in fr:
            if x.denominator != 1:
                mult = mult * x.denominator // _gcd(mult, x.denominator)
        scale *= mult
        a.append([int(x * mult) for x in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            rowi = a[i]
            rowk = a[k]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pk - f * rowk[j]) // prev
            rowi[k] = 0
        prev = pk
    return Fraction(sign * a[n - 1][n - 1], 1) / scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def rank_exact(mat) -> int:
    rows = len(mat)
    if rows == 0:
        return 0
    cols = len(mat[0])
    a = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(rank + 1, rows):
            if a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Univariate polynomials (coefficient lists, constant term first)


def poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_degree(f) -> int:
    """Degree, with the convention deg 0 = -1."""
    return len(f) - 1


def poly_add(f, g, p=None):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    if p is not None:
        out = [x % p for x in out]
    return poly_trim(out)


def poly_scale(f, c, p=None):
    out = [c * x for x in f]
    if p is not None:
        out = [x % p for x in out]
    return poly_trim(out)


def poly_mul(f, g, p=None):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    if p is not None:
        out = [x % p for x in out]
    return poly_trim(out)


def poly_eval(f, t, p=None):
    acc = 0
    for c in reversed(f):
        acc = acc * t + c
        if p is not None:
            acc %= p
    return acc


def poly_deriv(f, p=None):
    out = [i * c for i, c in enumerate(f)][1:]
    if p is not None:
        out = [x % p for x in out]
    return poly_trim(out)


def poly_monic(f, p=None):
    if not f:
        return []
    lead = f[-1]
    inv = pow(lead, -1, p) if p is not None else 1 / Fraction(lead)
    return poly_scale(f, inv, p)


def poly_divmod(f, g, p=None):
    """Quotient and remainder; field division (mod p or exact Fractions)."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p) if p is not None else 1 / Fraction(g[-1])
    while len(r) >= len(g):
        c = r[-1] * inv
        if p is not None:
            c %= p
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = r[k + i] - c * b
            if p is not None:
                r[k + i] %= p
        poly_trim(r)
        if not r:
            break
    return poly_trim(q), r


def poly_gcd(f, g, p=None):
    """Monic gcd via Euclid's algorithm; errors when both inputs are zero."""
    f, g = list(f), list(g)
    poly_trim(f)
    poly_trim(g)
    if not f and not g:
        raise ValueError("gcd(0, 0) is undefined")
    while g:
        _, r = poly_divmod(f, g, p)
        f, g = g, r
    return poly_monic(f, p)


def interpolate(points, p=None):
    """Lagrange interpolation through (t, f(t)) pairs.

    Over F_p when ``p`` is given, otherwise exact over Fractions.  Raises on
    duplicate abscissae.
    """
    ts = [t for t, _ in points]
    if len(set(ts)) != len(ts):
        raise ValueError("duplicate abscissa in interpolation data")
    result = []
    for i, (ti, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = [1]
        denom = 1
        for j, (tj, _) in enumerate(points):
            if j == i:
                continue
            basis = poly_mul(basis, [-tj, 1], p)
            denom = (denom * (ti - tj)) % p if p is not None else denom * (ti - tj)
        if p is not None:
            c = yi * pow(denom, -1, p) % p
        else:
            c = Fraction(yi, 1) / denom
        result = poly_add(result, poly_scale(basis, c, p), p)
    return result


# ---------------------------------------------------------------------------
# Characteristic polynomial and determinant of a matrix pencil


def charpoly_mod(mat, p: int):
    """Coefficients of det(t*I - A) over F_p, via Hessenberg reduction.

    One O(n^3) pass; used to read off det(M0 + t*M1) for an entire line in
    a single elimination instead of deg+1 separate determinants.
    """
    n = len(mat)
    h = mat_copy(mat)
    for k in range(n - 1):
        piv = next((i for i in range(k + 1, n) if h[i][k] % p), None)
        if piv is None:
            continue
        if piv != k + 1:
            h[k + 1], h[piv] = h[piv], h[k + 1]
            for row in h:
                row[k + 1], row[piv] = row[piv], row[k + 1]
        inv = pow(h[k + 1][k], -1, p)
        for i in range(k + 2, n):
            f = h[i][k] * inv % p
            if f:
                rowk1 = h[k + 1]
                h[i] = [(x - f * y) % p for x, y in zip(h[i], rowk1)]
                for row in h:
                    row[k + 1] = (row[k + 1] + f * row[i]) % p
    # char polys of leading principal minors of the Hessenberg form
    polys = [[1]]
    for k in range(1, n + 1):
        term = poly_mul(polys[k - 1], [(-h[k - 1][k - 1]) % p, 1], p)
        prod = 1
        for m in range(1, k):
            prod = prod * h[k - m][k - m - 1] % p
            coeff = h[k - 1 - m][k - 1] * prod % p
            if coeff:
                term = poly_add(term, poly_scale(polys[k - 1 - m], -coeff, p), p)
        polys.append(term)
    return polys[n]


def det_pencil_poly(m0, m1, p: int):
    """Coefficients of f(t) = det(M0 + t*M1) over F_p, or None.

    Uses the characteristic polynomial of -M1^{-1} M0 when M1 is invertible,
    the reversed trick through M0 when only M0 is, and random diagonal shifts
    t -> t + c otherwise.  Returns None when no invertible member is found
    (callers fall back to pointwise interpolation).
    """
    n = len(m0)
    if n == 0:
        return [1]
    inv1 = inverse_mod(m1, p)
    if inv1 is not None:
        b = mat_mul_mod(inv1, m0, p)
        chi = charpoly_mod([[(-x) % p for x in row] for row in b], p)
        d1 = det_mod(m1, p)
        return poly_trim([c * d1 % p for c in chi])
    inv0 = inverse_mod(m0, p)
    if inv0 is not None:
        c = mat_mul_mod(inv0, m1, p)
        chi = charpoly_mod([[(-x) % p for x in row] for row in c], p)
        d0 = det_mod(m0, p)
        coeffs = [0] * (n + 1)
        for k, ck in enumerate(chi):
            coeffs[n - k] = ck * d0 % p
        return poly_trim(coeffs)
    # shift t -> t + c so that M0 + c*M1 becomes invertible
    rng = Rng(0xC0FFEE)
    for _ in range(4):
        c = rng.below(p)
        shifted = [
            [(x + c * y) % p for x, y in zip(r0, r1)] for r0, r1 in zip(m0, m1)
        ]
        if det_mod(shifted, p):
            g = det_pencil_poly(shifted, m1, p)
            if g is None:
                return None
            # substitute t -> t - c
            out = []
            for k, gk in enumerate(reversed(g)):
                out = poly_add(poly_mul(out, [(-c) % p, 1], p), [gk], p)
            return out
    return None


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials over the integers (symbolic small cases)


def mp_zero():
    return {}


def mp_const(c: int, nvars: int):
    return {} if c == 0 else {(0,) * nvars: c}


def mp_var(i: int, nvars: int):
    exp = [0] * nvars
    exp[i] = 1
    return {tuple(exp): 1}


def mp_add(f, g):
    out = dict(f)
    for mono, c in g.items():
        s = out.get(mono, 0) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def mp_neg(f):
    return {m: -c for m, c in f.items()}


def mp_mul(f, g):
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def mp_equal_up_to_sign(f, g) -> bool:
    return f == g or f == mp_neg(g)


def mp_det(mat, nvars: int):
    """Determinant of a matrix of multivariate polynomials.

    Laplace expansion along the first remaining column, memoized on the row
    subset; intended for the small exact fixtures only.
    """
    n = len(mat)
    memo = {}

    def minor(rows):
        if not rows:
            return mp_const(1, nvars)
        if rows in memo:
            return memo[rows]
        col = n - len(rows)
        acc = mp_zero()
        for pos, r in enumerate(rows):
            cell = mat[r][col]
            if not cell:
                continue
            sub = minor(rows[:pos] + rows[pos + 1:])
            term = mp_mul(cell, sub)
            acc = mp_add(acc, term if pos % 2 == 0 else mp_neg(term))
        memo[rows] = acc
        return acc

    return minor(tuple(range(n)))
