"""Concrete matrix realizations over a field: representations, the defect
matrix of the fundamental exact sequence, the infinitesimal-action matrix
whose determinant is the discriminant's equation, and the middle term of an
extension.

A representation assigns to each arrow a d(head) x d(tail) matrix.  The
field is a prime field (``modulus`` an int, entries in [0, p)) or the exact
rationals (``modulus`` None, entries int/Fraction).
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Rng, det_exact, det_mod, mp_var, mp_zero, rank_exact, rank_mod
from .quiver import Quiver, is_acyclic, support, tits_form


def _zeros(rows: int, cols: int):
    return [[0] * cols for _ in range(rows)]


class Representation:
    """Per-arrow matrices of a fixed dimension vector over a fixed field."""

    def __init__(self, quiver: Quiver, dims, modulus: int | None, mats):
        self.quiver = quiver
        self.dims = tuple(int(x) for x in dims)
        self.modulus = modulus
        if len(self.dims) != quiver.node_count:
            raise ValueError("dimension vector length mismatch")
        if len(mats) != quiver.arrow_count:
            raise ValueError("one matrix per arrow required")
        for a, m in enumerate(mats):
            rows, cols = self.dims[quiver.heads[a]], self.dims[quiver.tails[a]]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(
                    f"matrix for arrow {quiver.arrows[a].name!r} must be {rows}x{cols}"
                )
        self.mats = [[list(row) for row in m] for m in mats]

    def mat(self, arrow_name: str):
        return self.mats[self.quiver.arrow_index[arrow_name]]

    def copy(self) -> "Representation":
        return Representation(self.quiver, self.dims, self.modulus, self.mats)

    def scale_first_coordinate(self, node: str, lam) -> "Representation":
        """Act by the group element that is diag(lam, 1, ..., 1) at ``node``
        and the identity elsewhere: V(a) -> g_head V(a) g_tail^{-1}."""
        x = self.quiver.index[node]
        p = self.modulus
        inv = pow(lam, -1, p) if p is not None else Fraction(1) / Fraction(lam)
        out = self.copy()
        for a in range(self.quiver.arrow_count):
            m = out.mats[a]
            if self.quiver.heads[a] == x and m:
                m[0] = [v * lam % p if p is not None else v * lam for v in m[0]]
            if self.quiver.tails[a] == x:
                for row in m:
                    if row:
                        row[0] = row[0] * inv % p if p is not None else row[0] * inv
        return out

    def __repr__(self) -> str:
        field = "QQ" if self.modulus is None else f"F_{self.modulus}"
        return f"Representation(d={self.dims}, {field})"


def zero_representation(q: Quiver, d, modulus: int | None) -> Representation:
    d = tuple(d)
    mats = [_zeros(d[q.heads[a]], d[q.tails[a]]) for a in range(q.arrow_count)]
    return Representation(q, d, modulus, mats)


def random_representation(
    q: Quiver, d, modulus: int | None, seed: int, avoid_zero: bool = False
) -> Representation:
    """Entries uniform over the field (or in [-9, 9] in exact mode), from the
    deterministic stream for ``seed``; ``avoid_zero`` excludes 0 entrywise."""
    rng = Rng(seed)
    d = tuple(d)

    def entry():
        if modulus is not None:
            return 1 + rng.below(modulus - 1) if avoid_zero else rng.below(modulus)
        while True:
            v = rng.randint(-9, 9)
            if v or not avoid_zero:
                return v

    mats = []
    for a in range(q.arrow_count):
        rows, cols = d[q.heads[a]], d[q.tails[a]]
        mats.append([[entry() for _ in range(cols)] for _ in range(rows)])
    return Representation(q, d, modulus, mats)


def _check_pair(w: Representation, v: Representation):
    if w.quiver != v.quiver:
        raise ValueError("representations live over different quivers")
    if w.modulus != v.modulus:
        raise ValueError("representations live over different fields")


def defect_matrix(w: Representation, v: Representation):
    """Matrix of the map sending node-wise linear maps (psi_x: W_x -> V_x) to
    their commutation defects psi_head W(a) - V(a) psi_tail along the arrows.

    Columns: node blocks in node order, psi_x entries row-major.  Rows: arrow
    blocks in arrow order, target entries row-major.  Its kernel consists of
    the morphisms W -> V; its cokernel is the space of extensions.
    """
    _check_pair(w, v)
    q = w.quiver
    e, d = w.dims, v.dims
    col_off = []
    total_cols = 0
    for x in range(q.node_count):
        col_off.append(total_cols)
        total_cols += d[x] * e[x]
    row_off = []
    total_rows = 0
    for a in range(q.arrow_count):
        row_off.append(total_rows)
        total_rows += e[q.tails[a]] * d[q.heads[a]]
    m = _zeros(total_rows, total_cols)
    for a in range(q.arrow_count):
        t, h = q.tails[a], q.heads[a]
        wa, va = w.mats[a], v.mats[a]
        for r in range(d[h]):
            for s in range(e[t]):
                row = row_off[a] + r * e[t] + s
                # + (psi_h W(a))[r, s]: coefficient W(a)[j, s] at psi_h[r, j]
                for j in range(e[h]):
                    m[row][col_off[h] + r * e[h] + j] += wa[j][s]
                # - (V(a) psi_t)[r, s]: coefficient -V(a)[r, i] at psi_t[i, s]
                for i in range(d[t]):
                    m[row][col_off[t] + i * e[t] + s] -= va[r][i]
    if w.modulus is not None:
        p = w.modulus
        m = [[x % p for x in row] for row in m]
    return m


def hom_ext_dims(w: Representation, v: Representation) -> tuple[int, int]:
    """(dim Hom, dim Ext^1) at the given pair, by rank of the defect matrix;
    their difference is the Euler form of the dimension vectors."""
    q = w.quiver
    m = defect_matrix(w, v)
    cols = sum(a * b for a, b in zip(w.dims, v.dims))
    rows = sum(w.dims[t] * v.dims[h] for t, h in zip(q.tails, q.heads))
    r = rank_mod(m, w.modulus) if w.modulus is not None else rank_exact(m)
    return cols - r, rows - r


def apply_defect(w: Representation, v: Representation, psi):
    """Image of a node-wise map tuple under the defect map: one
    d(head) x e(tail) matrix per arrow."""
    _check_pair(w, v)
    q = w.quiver
    e, d = w.dims, v.dims
    out = []
    for a in range(q.arrow_count):
        t, h = q.tails[a], q.heads[a]
        wa, va = w.mats[a], v.mats[a]
        block = _zeros(d[h], e[t])
        for r in range(d[h]):
            for s in range(e[t]):
                acc = 0
                for j in range(e[h]):
                    acc += psi[h][r][j] * wa[j][s]
                for i in range(d[t]):
                    acc -= va[r][i] * psi[t][i][s]
                block[r][s] = acc % w.modulus if w.modulus is not None else acc
        out.append(block)
    return out


def extension_middle_term(v: Representation, w: Representation, theta) -> Representation:
    """Representation on V_x + W_x with arrow blocks [[V(a), theta_a], [0, W(a)]].

    ``theta`` holds one d(head) x e(tail) matrix per arrow, indexed like the
    rows of the defect matrix; theta = 0 yields the direct sum, and theta in
    the image of the defect map yields a split extension.
    """
    _check_pair(w, v)
    q = v.quiver
    d, e = v.dims, w.dims
    dims = tuple(a + b for a, b in zip(d, e))
    mats = []
    for a in range(q.arrow_count):
        t, h = q.tails[a], q.heads[a]
        th = theta[a]
        if len(th) != d[h] or any(len(r) != e[t] for r in th):
            raise ValueError(f"theta block for arrow {q.arrows[a].name!r} has wrong shape")
        block = _zeros(dims[h], dims[t])
        for r in range(d[h]):
            for c in range(d[t]):
                block[r][c] = v.mats[a][r][c]
            for c in range(e[t]):
                block[r][d[t] + c] = th[r][c]
        for r in range(e[h]):
            for c in range(e[t]):
                block[d[h] + r][d[t] + c] = w.mats[a][r][c]
        mats.append(block)
    return Representation(q, dims, v.modulus, mats)


def direct_sum(v: Representation, w: Representation) -> Representation:
    q = v.quiver
    theta = [_zeros(v.dims[q.heads[a]], w.dims[q.tails[a]]) for a in range(q.arrow_count)]
    return extension_middle_term(v, w, theta)


# ---------------------------------------------------------------------------
# Representation-space coordinates and the infinitesimal action


class RepCoordinates:
    """Fixed bijection between arrow-matrix entries and coordinates 0..N-1:
    arrows in declaration order, entries row-major within each arrow."""

    def __init__(self, q: Quiver, d):
        self.quiver = q
        self.dims = tuple(int(x) for x in d)
        self.offsets = []
        n = 0
        for a in range(q.arrow_count):
            self.offsets.append(n)
            n += self.dims[q.tails[a]] * self.dims[q.heads[a]]
        self.total = n

    def index(self, arrow: int, r: int, c: int) -> int:
        return self.offsets[arrow] + r * self.dims[self.quiver.tails[arrow]] + c

    def flatten(self, v: Representation) -> list:
        out = []
        for m in v.mats:
            for row in m:
                out.extend(row)
        return out

    def unflatten(self, vec, modulus: int | None) -> Representation:
        q = self.quiver
        mats = []
        pos = 0
        for a in range(q.arrow_count):
            rows, cols = self.dims[q.heads[a]], self.dims[q.tails[a]]
            m = [[vec[pos + r * cols + c] for c in range(cols)] for r in range(rows)]
            pos += rows * cols
            mats.append(m)
        return Representation(q, self.dims, modulus, mats)


class LinearFormMatrix:
    """Square matrix whose entries are linear forms (with zero constant term)
    in the representation coordinates.

    Every cell here is empty or a single signed coordinate, stored sparsely
    as (coordinate, sign) against its (row, column) position.
    """

    def __init__(self, size: int, cells, coords: RepCoordinates, dropped):
        self.size = size
        self.cells = cells  # dict[(row, col)] -> list[(coord, sign)]
        self.coords = coords
        self.dropped = dropped  # (node, i, j) of the removed scalar direction

    def evaluate(self, vec, modulus: int | None):
        m = _zeros(self.size, self.size)
        for (r, c), terms in self.cells.items():
            acc = 0
            for k, sign in terms:
                acc += sign * vec[k]
            m[r][c] = acc % modulus if modulus is not None else acc
        return m

    def pencil(self, vec0, vec1, modulus: int | None):
        """(M0, M1) with M(t) = M0 + t*M1 the matrix along the line
        vec0 + t*vec1."""
        return self.evaluate(vec0, modulus), self.evaluate(vec1, modulus)

    def mpoly_matrix(self):
        n = self.coords.total
        m = [[mp_zero() for _ in range(self.size)] for _ in range(self.size)]
        for (r, c), terms in self.cells.items():
            acc = mp_zero()
            for k, sign in terms:
                for mono, coef in mp_var(k, n).items():
                    acc[mono] = acc.get(mono, 0) + sign * coef
            m[r][c] = {k: v for k, v in acc.items() if v}
        return m


def action_matrix(q: Quiver, d, drop_node: str | None = None) -> LinearFormMatrix:
    """Matrix of the infinitesimal group action on the representation space.

    Columns are indexed by the elementary-matrix directions E^{(x)}_{ij}
    (node order, entries row-major) with the single direction E_{11} at
    ``drop_node`` (default: first support node) removed; rows are indexed by
    the representation coordinates.  The determinant is the discriminant's
    equation up to a nonzero scalar.
    """
    d = tuple(int(x) for x in d)
    if not is_acyclic(q):
        raise ValueError("action_matrix needs an acyclic quiver")
    if tits_form(q, d) != 1:
        raise ValueError("action_matrix needs a dimension vector with q(d) = 1")
    supp = support(d)
    if not supp:
        raise ValueError("zero dimension vector")
    if drop_node is None:
        drop = supp[0]
    else:
        drop = q.index[drop_node]
        if d[drop] == 0:
            raise ValueError("dropped scalar direction must sit at a support node")
    coords = RepCoordinates(q, d)
    size = coords.total
    by_head = [[] for _ in range(q.node_count)]
    by_tail = [[] for _ in range(q.node_count)]
    for a in range(q.arrow_count):
        by_head[q.heads[a]].append(a)
        by_tail[q.tails[a]].append(a)
    cells: dict[tuple[int, int], list[tuple[int, int]]] = {}
    col = 0
    for x in range(q.node_count):
        for i in range(d[x]):
            for j in range(d[x]):
                if x == drop and i == 0 and j == 0:
                    continue
                # vector field of E^{(x)}_{ij}: + E_ij V(a) on arrows into x,
                # - V(a) E_ij on arrows out of x
                for a in by_head[x]:
                    t = q.tails[a]
                    for s in range(d[t]):
                        row = coords.index(a, i, s)
                        cells.setdefault((row, col), []).append((coords.index(a, j, s), 1))
                for a in by_tail[x]:
                    h = q.heads[a]
                    for r in range(d[h]):
                        row = coords.index(a, r, j)
                        cells.setdefault((row, col), []).append((coords.index(a, r, i), -1))
                col += 1
    if col != size:
        raise AssertionError("action matrix is not square despite q(d) = 1")
    return LinearFormMatrix(size, cells, coords, (q.nodes[drop], 0, 0))


def evaluate_action_matrix(q: Quiver, d, v: Representation, drop_node: str | None = None):
    if v.quiver != q or v.dims != tuple(d):
        raise ValueError("representation does not live in this space")
    lfm = action_matrix(q, d, drop_node)
    return lfm.evaluate(lfm.coords.flatten(v), v.modulus)


def discriminant_value(q: Quiver, d, v: Representation, drop_node: str | None = None):
    """Value of the discriminant's equation at V (up to the fixed scalar
    determined by the dropped direction)."""
    m = evaluate_action_matrix(q, d, v, drop_node)
    return det_mod(m, v.modulus) if v.modulus is not None else det_exact(m)
