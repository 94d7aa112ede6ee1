"""Determinantal semi-invariants of a representation space: weight formulas,
handles built from a generic witness representation, hard-coded block-matrix
recipes, degree recovery by interpolation, and operational weight checks.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Rng, det_exact, det_mod, interpolate, poly_degree
from .quiver import (
    Classification,
    Quiver,
    build_quiver,
    classify_underlying_graph,
    euler_form,
    euler_inverse,
    euler_matrix,
    in_out_degree,
)
from .repmatrix import Representation, defect_matrix, random_representation


def _row_times_matrix(v, m) -> tuple[int, ...]:
    n = len(v)
    return tuple(sum(v[i] * m[i][j] for i in range(n)) for j in range(n))


def weight_of_schofield(q: Quiver, e) -> tuple[int, ...]:
    """Weight of the witness semi-invariant for the orthogonal root e:
    -e E, equivalently -e + indeg_e."""
    e = tuple(int(x) for x in e)
    return tuple(-x for x in _row_times_matrix(e, euler_matrix(q)))


def discriminant_weight(q: Quiver, d) -> tuple[int, ...]:
    """Weight of the discriminant's equation: d (E^T - E) = indeg_d - outdeg_d."""
    indeg, outdeg = in_out_degree(q, d)
    return tuple(a - b for a, b in zip(indeg, outdeg))


def root_from_weight(q: Quiver, w) -> tuple[int, ...]:
    """Recover the orthogonal root from a weight: -w E^{-1}; inverse of
    weight_of_schofield.  Errors when the result has a negative entry."""
    w = tuple(int(x) for x in w)
    e = _row_times_matrix(tuple(-x for x in w), euler_inverse(q))
    if any(x < 0 for x in e):
        raise ValueError(f"weight {w} does not come from a dimension vector (got {e})")
    return e


# ---------------------------------------------------------------------------
# Handles


class SchofieldHandle:
    """Evaluatable polynomial V -> det(defect matrix(W, V)) for a fixed
    witness W over an orthogonal root; homogeneous of the cached degree."""

    kind = "schofield"

    def __init__(self, root, witness: Representation, ambient_dims, label: str = ""):
        self.root = tuple(root)
        self.witness = witness
        self.quiver = witness.quiver
        self.dims = tuple(ambient_dims)
        if euler_form(self.quiver, self.root, self.dims) != 0:
            raise ValueError("witness root is not orthogonal to the dimension vector")
        self.weight = weight_of_schofield(self.quiver, self.root)
        self.degree: int | None = None
        self.label = label
        # square by orthogonality
        self.degree_bound = sum(a * b for a, b in zip(self.root, self.dims))

    def evaluate(self, v: Representation):
        m = defect_matrix(self.witness, v)
        return det_mod(m, v.modulus) if v.modulus is not None else det_exact(m)

    def describe(self) -> str:
        return f"schofield(root={self.root})"


class BlockRecipe:
    """A grid of cells assembling a square matrix from arrow-path products.

    Cells are ``None`` (zero block), ``("ident", sign)``, or
    ``(sign, (arrow, ...))`` with the path written in composition order
    (leftmost applied last).  Row and column block sizes are declared and
    every cell is validated against them.
    """

    def __init__(self, q: Quiver, dims, row_sizes, col_sizes, cells):
        self.quiver = q
        self.dims = tuple(dims)
        self.row_sizes = tuple(row_sizes)
        self.col_sizes = tuple(col_sizes)
        if sum(self.row_sizes) != sum(self.col_sizes):
            raise ValueError("block recipe is not square")
        self.cells = tuple(tuple(row) for row in cells)
        if len(self.cells) != len(self.row_sizes) or any(
            len(r) != len(self.col_sizes) for r in self.cells
        ):
            raise ValueError("cell grid does not match declared block sizes")
        for i, row in enumerate(self.cells):
            for j, cell in enumerate(row):
                shape = self._cell_shape(cell)
                if shape is None:
                    continue
                if shape != (self.row_sizes[i], self.col_sizes[j]):
                    raise ValueError(f"cell ({i},{j}) has shape {shape}, grid expects "
                                     f"({self.row_sizes[i]}, {self.col_sizes[j]})")
        self.size = sum(self.row_sizes)

    def _cell_shape(self, cell):
        if cell is None:
            return None
        if cell[0] == "ident":
            return None  # square block, fits wherever row and column sizes agree
        _, path = cell
        q, d = self.quiver, self.dims
        for name in path:
            if name not in q.arrow_index:
                raise ValueError(f"unknown arrow {name!r} in block recipe path")
        for a, b in zip(path, path[1:]):
            if q.arrows[q.arrow_index[a]].tail != q.arrows[q.arrow_index[b]].head:
                raise ValueError(f"path {'.'.join(path)} is not composable")
        rows = d[q.heads[q.arrow_index[path[0]]]]
        cols = d[q.tails[q.arrow_index[path[-1]]]]
        return rows, cols

    def path_matrix(self, v: Representation, path):
        m = v.mat(path[-1])
        for name in reversed(path[:-1]):
            left = v.mat(name)
            p = v.modulus
            rows = len(left)
            inner = len(m)
            cols = len(m[0]) if m else 0
            out = [[0] * cols for _ in range(rows)]
            for i in range(rows):
                for k in range(inner):
                    f = left[i][k]
                    if f:
                        mk = m[k]
                        row = out[i]
                        for j in range(cols):
                            row[j] += f * mk[j]
            if p is not None:
                out = [[x % p for x in row] for row in out]
            m = out
        return m

    def assemble(self, v: Representation):
        n = self.size
        out = [[0] * n for _ in range(n)]
        r0 = 0
        for i, row in enumerate(self.cells):
            c0 = 0
            for j, cell in enumerate(row):
                h, w = self.row_sizes[i], self.col_sizes[j]
                if cell is not None:
                    if cell[0] == "ident":
                        sign = cell[1] % v.modulus if v.modulus is not None else cell[1]
                        for t in range(min(h, w)):
                            out[r0 + t][c0 + t] = sign
                    else:
                        sign, path = cell
                        block = self.path_matrix(v, path)
                        for r in range(h):
                            for c in range(w):
                                val = sign * block[r][c]
                                if v.modulus is not None:
                                    val %= v.modulus
                                out[r0 + r][c0 + c] = val
                c0 += w
            r0 += h
        return out

    def degree_bound(self) -> int:
        total = 0
        for j, w in enumerate(self.col_sizes):
            longest = 0
            for row in self.cells:
                cell = row[j]
                if cell is not None and cell[0] != "ident":
                    longest = max(longest, len(cell[1]))
            total += w * longest
        return total

    def to_dict(self):
        def enc(cell):
            if cell is None:
                return "0"
            if cell[0] == "ident":
                return f"{'+' if cell[1] > 0 else '-'}I"
            sign, path = cell
            return ("-" if sign < 0 else "") + "".join(path)

        return {
            "row_sizes": list(self.row_sizes),
            "col_sizes": list(self.col_sizes),
            "cells": [[enc(c) for c in row] for row in self.cells],
        }


class BlockHandle:
    """Semi-invariant realized by a hard-coded block-matrix recipe."""

    kind = "block"

    def __init__(self, recipe: BlockRecipe, weight, label: str = ""):
        self.recipe = recipe
        self.quiver = recipe.quiver
        self.dims = recipe.dims
        self.weight = tuple(weight)
        self.degree: int | None = None
        self.label = label
        self.degree_bound = recipe.degree_bound()

    def evaluate(self, v: Representation):
        m = self.recipe.assemble(v)
        return det_mod(m, v.modulus) if v.modulus is not None else det_exact(m)

    def describe(self) -> str:
        return f"block({self.recipe.to_dict()['cells']})"


def evaluate(handle, v: Representation):
    return handle.evaluate(v)


# ---------------------------------------------------------------------------
# Degree recovery, witness sampling, weight verification


class DegenerateWitnessError(RuntimeError):
    pass


def _scaled_representation(handle, v: Representation, t: int):
    p = v.modulus
    mats = []
    for m in v.mats:
        if p is not None:
            mats.append([[x * t % p for x in row] for row in m])
        else:
            mats.append([[x * t for x in row] for row in m])
    return Representation(v.quiver, v.dims, p, mats)


def degree_of(handle, prime: int | None, seed: int, retries: int = 4) -> int:
    """Total degree of the handle's polynomial, by Lagrange interpolation of
    t -> evaluate(t * V1) at degree_bound + 1 points for a random V1.

    Equals the degree of the restriction because the polynomial is
    homogeneous; the interpolant is asserted to be a monomial in t.  With
    ``prime`` None the interpolation runs over exact rationals.
    """
    bound = handle.degree_bound
    if prime is not None and prime <= 2 * max(bound, 1):
        raise ValueError("prime too small for degree interpolation")
    rng = Rng(seed)
    for attempt in range(retries):
        v1 = random_representation(
            handle.quiver, handle.dims, prime, rng.split(attempt).seed
        )
        # one-point rejection before paying for the full interpolation
        at_one = handle.evaluate(v1)
        if at_one == 0:
            continue
        points = [(1, at_one)]
        for t in range(bound + 1):
            if t == 1:
                continue
            val = handle.evaluate(_scaled_representation(handle, v1, t))
            points.append((t, val))
        poly = interpolate(points, prime)
        if poly:
            deg = poly_degree(poly)
            if any(c for c in poly[:-1]):
                raise AssertionError("restriction of a homogeneous handle is not a monomial")
            handle.degree = deg
            return deg
    raise DegenerateWitnessError("handle evaluates to zero along every sampled ray")


def sample_generic_witness(
    q: Quiver, e, d, prime: int | None, seed: int, retries: int = 8
) -> tuple[Representation, int]:
    """Random witness over the orthogonal root e, re-sampled until the handle
    is nonzero and two independent witnesses agree on the degree."""
    if euler_form(q, e, d) != 0:
        raise ValueError("sample_generic_witness needs an orthogonal root")
    rng = Rng(seed)
    for attempt in range(retries):
        w1 = random_representation(q, e, prime, rng.split(attempt, 0).seed)
        w2 = random_representation(q, e, prime, rng.split(attempt, 1).seed)
        try:
            d1 = degree_of(SchofieldHandle(e, w1, d), prime, rng.split(attempt, 2).seed)
            d2 = degree_of(SchofieldHandle(e, w2, d), prime, rng.split(attempt, 3).seed)
        except DegenerateWitnessError:
            continue
        if d1 == d2:
            return w1, d1
    raise DegenerateWitnessError(
        f"no generic witness found for root {tuple(e)} after {retries} attempts"
    )


def verify_weight(
    handle, declared, prime: int, seed: int, trials: int = 2, exact: bool = False
) -> bool:
    """Check the declared weight operationally: acting by the group element
    diag(lambda, 1, ..., 1) at node x must scale the value by lambda**w(x)."""
    q = handle.quiver
    d = handle.dims
    declared = tuple(declared)
    modulus = None if exact else prime
    rng = Rng(seed)
    for trial in range(trials):
        base = 0
        for attempt in range(6):
            v = random_representation(q, d, modulus, rng.split(trial, 0, attempt).seed)
            base = handle.evaluate(v)
            if base:
                break
        if not base:
            return False
        for x, node in enumerate(q.nodes):
            if d[x] == 0:
                continue
            if exact:
                lam = rng.split(trial, 1, x).randint(2, 19)
                scaled = v.scale_first_coordinate(node, lam)
                expect = Fraction(base) * Fraction(lam) ** declared[x]
                if Fraction(handle.evaluate(scaled)) != expect:
                    return False
            else:
                lam = 2 + rng.split(trial, 1, x).below(prime - 3)
                scaled = v.scale_first_coordinate(node, lam)
                expect = base * pow(lam, declared[x], prime) % prime
                if handle.evaluate(scaled) != expect:
                    return False
    return True


# ---------------------------------------------------------------------------
# Weight support types


def weight_support_type(q: Quiver, w):
    """Dynkin-type label of a weight: contract away zero-weight nodes, adding
    one composite arrow per (incoming, outgoing) pair, then classify.

    A contraction producing a loop, or parallel composite arrows, is reported
    as Other.
    """
    w = tuple(int(x) for x in w)
    nodes = list(q.nodes)
    arrows = [(a.name, a.tail, a.head) for a in q.arrows]
    weight = {x: w[i] for i, x in enumerate(nodes)}
    for y in list(nodes):
        if weight[y] != 0:
            continue
        ins = [a for a in arrows if a[2] == y and a[1] != y]
        outs = [a for a in arrows if a[1] == y and a[2] != y]
        if any(a[1] == y and a[2] == y for a in arrows):
            return Classification("other")
        composites = []
        for k, (_, t, _) in enumerate(ins):
            for m, (_, _, h) in enumerate(outs):
                if t == h:
                    return Classification("other")
                composites.append((f"via:{y}:{k}:{m}", t, h))
        arrows = [a for a in arrows if a[1] != y and a[2] != y] + composites
        nodes.remove(y)
    if not nodes:
        return Classification("other")
    pairs = {}
    for _, t, h in arrows:
        key = (min(t, h), max(t, h))
        pairs[key] = pairs.get(key, 0) + 1
    if any(c > 1 for c in pairs.values()):
        return Classification("other")
    contracted = build_quiver(nodes, arrows, allow_cycles=True)
    cls = classify_underlying_graph(contracted)
    if isinstance(cls, list):
        return Classification("other")
    return cls


def root_support_type(q: Quiver, e):
    """Dynkin-type label of the full subquiver on the support of e."""
    keep = [i for i, x in enumerate(e) if x]
    keep_set = set(keep)
    nodes = [q.nodes[i] for i in keep]
    arrows = [
        (a.name, a.tail, a.head)
        for a in q.arrows
        if q.index[a.tail] in keep_set and q.index[a.head] in keep_set
    ]
    sub = build_quiver(nodes, arrows, allow_cycles=True)
    cls = classify_underlying_graph(sub)
    if isinstance(cls, list):
        return Classification("other")
    return cls
