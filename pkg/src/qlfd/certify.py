"""End-to-end certification: decide whether the discriminant of non-rigid
representations is a linear free divisor and emit the component table.

Pipeline: support restriction, real-root check, orthogonal roots, semigroup
basis, witnesses, degrees and weights, multiplicity vector, factorization
verification, squarefree probe.  On a Dynkin support the component list is
guaranteed; on other acyclic supports the pipeline runs in advisory mode and
requires its two independent reducedness signals (integral multiplicities;
random-line squarefreeness) to agree, reporting inconclusive otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    DEFAULT_PRIME,
    PrimeField,
    Rng,
    derive_seed,
    det_exact,
    det_mod,
    det_pencil_poly,
    interpolate,
    poly_degree,
    poly_deriv,
    poly_gcd,
)
from .quiver import (
    Quiver,
    classify_underlying_graph,
    euler_matrix,
    is_acyclic,
    support_subquiver,
    tits_form,
)
from .repmatrix import (
    action_matrix,
    defect_matrix,
    random_representation,
)
from .roots import brick_probe, orthogonal_roots, semigroup_basis
from .semiinv import (
    DegenerateWitnessError,
    SchofieldHandle,
    discriminant_weight,
    root_support_type,
    sample_generic_witness,
    verify_weight,
    weight_of_schofield,
    weight_support_type,
)

DEFAULT_SEED = 1729

VERDICT_LFD = "linear-free-divisor"
VERDICT_NOT_REDUCED = "not-reduced"
VERDICT_INCONCLUSIVE = "inconclusive"


class CertifyError(RuntimeError):
    """Hard failure of a pipeline stage (inputs the pipeline cannot accept,
    or an internal consistency check that should never fail)."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass
class CertifyOptions:
    prime: int = DEFAULT_PRIME
    seed: int = DEFAULT_SEED
    ratio_trials: int = 20
    squarefree_lines: int = 5
    weight_trials: int = 1
    witness_retries: int = 8
    exact: bool = False  # exact rational evaluations; small Dynkin fixtures only
    # optional paranoia: repeat the factorization and squarefree checks under
    # a second prime and require agreement
    cross_check_prime: int | None = None


@dataclass
class Component:
    handle_id: str
    root: tuple
    weight: tuple
    degree: int
    multiplicity: int
    handle_kind: str
    type_root: str
    type_weight: str

    def to_dict(self):
        return {
            "id": self.handle_id,
            "root": list(self.root),
            "weight": list(self.weight),
            "minus_weight": [-x for x in self.weight],
            "degree": self.degree,
            "multiplicity": self.multiplicity,
            "handle": self.handle_kind,
            "type_root": self.type_root,
            "type_weight": self.type_weight,
        }


@dataclass
class VerificationStats:
    prime: int
    seed: int
    ratio_trials: int
    squarefree_lines: int
    mode: str = ""
    unit_ratio: int | str | None = None
    ratio_deviations: int | None = None
    ratio_point_bound_log2: float | None = None
    squarefree_votes: tuple = ()
    brick_endomorphism_dim: int | None = None
    brick_ext_dim: int | None = None
    notes: tuple = ()

    def to_dict(self):
        return {
            "prime": self.prime,
            "seed": self.seed,
            "ratio_trials": self.ratio_trials,
            "squarefree_lines": self.squarefree_lines,
            "mode": self.mode,
            "unit_ratio": self.unit_ratio,
            "ratio_deviations": self.ratio_deviations,
            "ratio_point_bound_log2": self.ratio_point_bound_log2,
            "squarefree_votes": list(self.squarefree_votes),
            "brick_endomorphism_dim": self.brick_endomorphism_dim,
            "brick_ext_dim": self.brick_ext_dim,
            "notes": list(self.notes),
        }


@dataclass
class LfdReport:
    quiver_name: str
    nodes: tuple
    dims: tuple
    dim_rep: int | None
    disc_weight: tuple
    components: list[Component]
    verdict: str
    reason: str | None
    stats: VerificationStats

    @property
    def definitive(self) -> bool:
        return self.verdict in (VERDICT_LFD, VERDICT_NOT_REDUCED)

    def to_dict(self):
        return {
            "schema_version": 1,
            "quiver": self.quiver_name,
            "nodes": list(self.nodes),
            "dimension_vector": list(self.dims),
            "dim_rep": self.dim_rep,
            "discriminant_weight": list(self.disc_weight),
            "discriminant_minus_weight": [-x for x in self.disc_weight],
            "components": [c.to_dict() for c in self.components],
            "verdict": self.verdict,
            "reason": self.reason,
            "stats": self.stats.to_dict(),
        }


# ---------------------------------------------------------------------------
# Stage operations (usable standalone)


def _random_coordinate_vector(lfm, prime: int, rng: Rng):
    return [rng.below(prime) for _ in range(lfm.coords.total)]


def _line_restriction_poly(lfm, prime: int, rng: Rng):
    """det of the action matrix along a random affine line, as a univariate
    polynomial mod prime; None if identically zero along this line."""
    vec0 = _random_coordinate_vector(lfm, prime, rng)
    vec1 = _random_coordinate_vector(lfm, prime, rng)
    m0, m1 = lfm.pencil(vec0, vec1, prime)
    poly = det_pencil_poly(m0, m1, prime)
    if poly is None:
        points = []
        for t in range(lfm.size + 1):
            vec = [(a + t * b) % prime for a, b in zip(vec0, vec1)]
            points.append((t, det_mod(lfm.evaluate(vec, prime), prime)))
        poly = interpolate(points, prime)
    return poly if poly else None


def discriminant_degree(
    q: Quiver, d, prime: int = DEFAULT_PRIME, seed: int = DEFAULT_SEED, exact: bool = False
) -> int:
    """Degree of the discriminant's equation: sum over arrows of
    d(tail) * d(head), cross-checked by interpolating the determinant along a
    random affine line."""
    d = tuple(int(x) for x in d)
    formula = sum(d[t] * d[h] for t, h in zip(q.tails, q.heads))
    lfm = action_matrix(q, d)
    if lfm.size != formula:
        raise CertifyError("discriminant-degree", "action matrix size mismatch")
    if formula == 0:
        return 0
    rng = Rng(seed)
    saw_poly = False
    for attempt in range(6):
        r = rng.split(attempt)
        if exact:
            vec0 = [r.randint(-99, 99) for _ in range(lfm.coords.total)]
            vec1 = [r.randint(-99, 99) for _ in range(lfm.coords.total)]
            points = []
            for t in range(formula + 1):
                vec = [a + t * b for a, b in zip(vec0, vec1)]
                points.append((t, det_exact(lfm.evaluate(vec, None))))
            poly = interpolate(points) or None
        else:
            poly = _line_restriction_poly(lfm, prime, r)
        if poly is not None:
            saw_poly = True
            if poly_degree(poly) == formula:
                return formula
    if not saw_poly:
        raise CertifyError(
            "discriminant-degree",
            "determinant vanishes along every sampled line; "
            "the dimension vector is likely not a Schur root",
        )
    raise CertifyError(
        "discriminant-degree",
        f"interpolated degree never reached the formula value {formula}",
    )


def multiplicity_vector(q: Quiver, d, weights) -> list[int]:
    """The unique solution a of sum a_i w_i = w(discriminant), asserted to be
    positive integers.  Errors on dependent weights or a non-integral or
    non-positive solution."""
    target = discriminant_weight(q, d)
    n = q.node_count
    s = len(weights)
    aug = [[Fraction(w[x]) for w in weights] + [Fraction(target[x])] for x in range(n)]
    pivots = []
    r = 0
    for col in range(s):
        piv = next((i for i in range(r, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if r < s:
        raise ValueError("weights are linearly dependent")
    for i in range(r, n):
        if any(x != 0 for x in aug[i]):
            raise ValueError("weight equation has no rational solution")
    out = []
    for i in range(s):
        v = aug[i][s]
        if v.denominator != 1:
            raise ValueError(f"non-integral multiplicity {v}")
        iv = int(v)
        if iv < 1:
            raise ValueError(f"non-positive multiplicity {iv}")
        out.append(iv)
    return out


def verify_factorization(
    q: Quiver,
    d,
    handles,
    mults,
    prime: int,
    trials: int,
    seed: int,
    exact: bool = False,
):
    """Ratio-constancy check of the discriminant determinant against the
    weighted product of the handle values, at random points where every
    factor is nonzero.  Returns (ok, unit_ratio, deviation_count), the last
    being the number of sampled points whose ratio differed from the first."""
    d = tuple(int(x) for x in d)
    lfm = action_matrix(q, d)
    rng = Rng(seed)
    ratios = []
    attempts = 0
    budget = 10 * trials + 20
    modulus = None if exact else prime
    while len(ratios) < trials and attempts < budget:
        v = random_representation(q, d, modulus, rng.split(attempts).seed)
        attempts += 1
        vals = [h.evaluate(v) for h in handles]
        if any(val == 0 for val in vals):
            continue
        mat = lfm.evaluate(lfm.coords.flatten(v), modulus)
        delta = det_mod(mat, prime) if not exact else det_exact(mat)
        if exact:
            prod = Fraction(1)
            for val, a in zip(vals, mults):
                prod *= Fraction(val) ** a
            ratios.append(Fraction(delta) / prod)
        else:
            prod = 1
            for val, a in zip(vals, mults):
                prod = prod * pow(val, a, prime) % prime
            ratios.append(delta * pow(prod, -1, prime) % prime)
    if len(ratios) < trials:
        raise CertifyError("factorization", "all sampled points degenerate")
    deviations = sum(1 for r in ratios if r != ratios[0])
    ok = ratios[0] != 0 and deviations == 0
    return ok, ratios[0], deviations


def squarefree_probe(
    q: Quiver,
    d,
    prime: int = DEFAULT_PRIME,
    trials: int = 5,
    seed: int = DEFAULT_SEED,
    exact: bool = False,
):
    """Majority verdict of gcd(f, f') = 1 for the discriminant determinant
    restricted to random affine lines.  Returns (squarefree, votes)."""
    d = tuple(int(x) for x in d)
    lfm = action_matrix(q, d)
    n = lfm.size
    if not exact and prime <= 2 * max(n, 1):
        raise ValueError("squarefree_probe needs a prime above twice the degree")
    if n == 0:
        return True, [True] * trials
    rng = Rng(seed)
    votes = []
    for trial in range(trials):
        best = None
        for attempt in range(8):
            r = rng.split(trial, attempt)
            if exact:
                vec0 = [r.randint(-99, 99) for _ in range(lfm.coords.total)]
                vec1 = [r.randint(-99, 99) for _ in range(lfm.coords.total)]
                points = []
                for t in range(n + 1):
                    vec = [a + t * b for a, b in zip(vec0, vec1)]
                    points.append((t, det_exact(lfm.evaluate(vec, None))))
                poly = interpolate(points) or None
            else:
                poly = _line_restriction_poly(lfm, prime, r)
            if poly is not None and poly_degree(poly) == n:
                best = poly
                break
            if poly is not None and best is None:
                best = poly
        if best is None:
            raise CertifyError("squarefree", "identically-zero line restrictions")
        deriv = poly_deriv(best, None if exact else prime)
        g = poly_gcd(best, deriv, None if exact else prime)
        votes.append(poly_degree(g) == 0)
    ok = 2 * sum(votes) > len(votes)
    return ok, votes


# ---------------------------------------------------------------------------
# Advisory-mode candidate roots


def _advisory_candidate_roots(q: Quiver, d) -> list[tuple[int, ...]]:
    """Orthogonal real-root candidates on a sincere non-Dynkin acyclic
    support, from the box 0 <= e_x <= d_x + max(d).

    The box is heuristic; completeness is validated downstream by the
    component-count check.  Soundness does not depend on it: candidates only
    enter the report after a nonzero witness value is observed.
    """
    n = q.node_count
    dmax = max(d)
    bounds = [d[x] + dmax for x in range(n)]
    e_mat = euler_matrix(q)
    coeff = [sum(e_mat[x][y] * d[y] for y in range(n)) for x in range(n)]
    pivot = max(range(n), key=lambda x: abs(coeff[x]))
    if coeff[pivot] == 0:
        raise CertifyError("orthogonal-roots", "degenerate Euler pairing with d")
    others = [x for x in range(n) if x != pivot]
    out = []
    vec = [0] * n

    def scan(k: int, partial: int):
        if k == len(others):
            num = -partial
            if num % coeff[pivot]:
                return
            val = num // coeff[pivot]
            if 0 <= val <= bounds[pivot]:
                vec[pivot] = val
                e = tuple(vec)
                if any(e) and tits_form(q, e) == 1:
                    out.append(e)
                vec[pivot] = 0
            return
        x = others[k]
        for v in range(bounds[x] + 1):
            vec[x] = v
            scan(k + 1, partial + coeff[x] * v)
        vec[x] = 0

    scan(0, 0)
    return sorted(out)


def _nonvanishing_filter(q: Quiver, d, candidates, prime: int, seed: int):
    """Keep candidates whose witness determinant is nonzero at some random
    point (a certain, one-sided check); two attempts per candidate."""
    rng = Rng(seed)
    kept = []
    for i, e in enumerate(candidates):
        for attempt in range(2):
            w = random_representation(q, e, prime, rng.split(i, attempt, 0).seed)
            v = random_representation(q, d, prime, rng.split(i, attempt, 1).seed)
            if det_mod(defect_matrix(w, v), prime):
                kept.append(e)
                break
    return kept


# ---------------------------------------------------------------------------
# The pipeline


def _embed(q: Quiver, sub: Quiver, vec) -> tuple[int, ...]:
    out = [0] * q.node_count
    for i, node in enumerate(sub.nodes):
        out[q.index[node]] = vec[i]
    return tuple(out)


def certify(q: Quiver, d, options: CertifyOptions | None = None) -> LfdReport:
    """Run the full pipeline and return the certified component table."""
    opts = options or CertifyOptions()
    PrimeField(opts.prime)
    d = tuple(int(x) for x in d)
    if len(d) != q.node_count or any(x < 0 for x in d):
        raise CertifyError("input", "invalid dimension vector")
    if not any(d):
        raise CertifyError("input", "zero dimension vector")
    prime, seed = opts.prime, opts.seed
    stats = VerificationStats(
        prime=prime,
        seed=seed,
        ratio_trials=opts.ratio_trials,
        squarefree_lines=opts.squarefree_lines,
    )
    notes: list[str] = []

    def report(verdict, reason=None, components=(), dim_rep=None, disc_w=None):
        stats.notes = tuple(notes)
        return LfdReport(
            quiver_name=q.name,
            nodes=q.nodes,
            dims=d,
            dim_rep=dim_rep,
            disc_weight=disc_w if disc_w is not None else (0,) * q.node_count,
            components=list(components),
            verdict=verdict,
            reason=reason,
            stats=stats,
        )

    # stage: support restriction
    q0, d0 = support_subquiver(q, d)

    # stage: real-root check
    qd = tits_form(q0, d0)
    if qd != 1:
        return report(VERDICT_INCONCLUSIVE, f"q(d) = {qd}, not a real root")
    cls = classify_underlying_graph(q0)
    if isinstance(cls, list):
        return report(
            VERDICT_INCONCLUSIVE, "support is disconnected, no indecomposable exists"
        )
    if not is_acyclic(q0):
        raise CertifyError("classify", "support contains an oriented cycle")
    dim_rep_formula = sum(d0[t] * d0[h] for t, h in zip(q0.tails, q0.heads))
    if cls.kind == "dynkin":
        mode = "dynkin"
        stats.mode = mode
    else:
        mode = "advisory"
        stats.mode = mode
        if opts.exact:
            raise CertifyError("exact", "exact mode requires a Dynkin support")
        cert = brick_probe(q0, d0, prime, derive_seed(seed, 101), trials=8)
        stats.brick_endomorphism_dim = cert.endomorphism_dim
        stats.brick_ext_dim = cert.ext_dim
        if cert.verdict != "brick":
            return report(
                VERDICT_INCONCLUSIVE,
                f"generic endomorphism dimension >= {cert.endomorphism_dim}; "
                "not a Schur root, the discriminant is the whole space",
                dim_rep=dim_rep_formula,
            )
    if opts.exact and dim_rep_formula > 24:
        raise CertifyError("exact", "oversize exact-mode request (dim Rep > 24)")

    # stage: discriminant degree (formula + interpolation cross-check)
    dim_rep = discriminant_degree(
        q0, d0, prime, derive_seed(seed, 1), exact=opts.exact
    )
    disc_w0 = discriminant_weight(q0, d0)
    disc_w = _embed(q, q0, disc_w0)

    # stage: orthogonal roots
    if mode == "dynkin":
        candidates = orthogonal_roots(q0, d0)
    else:
        scanned = _advisory_candidate_roots(q0, d0)
        candidates = _nonvanishing_filter(q0, d0, scanned, prime, derive_seed(seed, 2))
        notes.append(
            f"advisory candidate roots scanned: {len(scanned)}, "
            f"with nonzero witness values: {len(candidates)}"
        )
    if not candidates:
        if q0.node_count == 1:
            # zero-dimensional representation space: empty discriminant
            return report(VERDICT_LFD, None, [], dim_rep, disc_w)
        return report(
            VERDICT_INCONCLUSIVE, "no orthogonal roots found", [], dim_rep, disc_w
        )

    # stage: semigroup basis + witnesses (advisory mode may drop candidates
    # whose semi-invariant vanishes identically)
    modulus = None if opts.exact else prime
    cand = set(candidates)
    picked = []
    while True:
        basis = semigroup_basis(sorted(cand))
        picked = []
        failed = None
        for e in basis:
            try:
                w, deg = sample_generic_witness(
                    q0, e, d0, modulus, derive_seed(seed, 10, *e), opts.witness_retries
                )
            except DegenerateWitnessError:
                failed = e
                break
            picked.append((e, w, deg))
        if failed is None:
            break
        if mode == "dynkin":
            raise CertifyError(
                "witnesses", f"no generic witness for orthogonal root {failed}"
            )
        cand.discard(failed)
        notes.append(f"dropped candidate root {failed}: semi-invariant vanishes")
        if not cand:
            return report(
                VERDICT_INCONCLUSIVE, "all candidate roots degenerate", [], dim_rep, disc_w
            )

    expected = q0.node_count - 1
    if len(picked) != expected:
        msg = f"component count {len(picked)} != support size - 1 = {expected}"
        if mode == "dynkin":
            raise CertifyError("semigroup-basis", msg)
        return report(VERDICT_INCONCLUSIVE, msg, [], dim_rep, disc_w)

    # stage: degrees and weights
    handles = []
    weights0 = []
    degrees = []
    for i, (e, w, deg) in enumerate(picked):
        h = SchofieldHandle(e, w, d0)
        h.degree = deg
        w0 = weight_of_schofield(q0, e)
        if not verify_weight(
            h, w0, prime, derive_seed(seed, 20, i), trials=opts.weight_trials,
            exact=opts.exact,
        ):
            raise CertifyError("weights", f"weight check failed for root {e}")
        handles.append(h)
        weights0.append(w0)
        degrees.append(deg)

    # stage: multiplicity vector
    try:
        mults = multiplicity_vector(q0, d0, weights0)
    except ValueError as exc:
        msg = f"multiplicity solve failed: {exc}"
        if mode == "dynkin":
            raise CertifyError("multiplicities", msg)
        return report(VERDICT_INCONCLUSIVE, msg, [], dim_rep, disc_w)

    total = sum(a * deg for a, deg in zip(mults, degrees))
    if total != dim_rep:
        msg = f"weighted degree sum {total} != dim Rep = {dim_rep}"
        if mode == "dynkin":
            raise CertifyError("degrees", msg)
        return report(VERDICT_INCONCLUSIVE, msg, [], dim_rep, disc_w)

    # stage: factorization verification
    fact_ok, unit, deviations = verify_factorization(
        q0, d0, handles, mults, prime, opts.ratio_trials, derive_seed(seed, 30),
        exact=opts.exact,
    )
    stats.unit_ratio = str(unit) if opts.exact else unit
    stats.ratio_deviations = deviations
    bound_num = dim_rep + total
    stats.ratio_point_bound_log2 = (
        math.log2(bound_num) - math.log2(prime) if bound_num > 0 else None
    )

    # stage: squarefree probe
    sqf, votes = squarefree_probe(
        q0, d0, prime, opts.squarefree_lines, derive_seed(seed, 40), exact=opts.exact
    )
    stats.squarefree_votes = tuple(votes)

    # optional multi-prime consistency pass
    if opts.cross_check_prime is not None and not opts.exact:
        p2 = opts.cross_check_prime
        PrimeField(p2)
        handles2 = []
        for e, _, deg in picked:
            w2, deg2 = sample_generic_witness(
                q0, e, d0, p2, derive_seed(seed, 50, *e), opts.witness_retries
            )
            h2 = SchofieldHandle(e, w2, d0)
            h2.degree = deg2
            handles2.append((h2, deg, deg2))
        fact_ok2, _, _ = verify_factorization(
            q0, d0, [h for h, _, _ in handles2], mults, p2, opts.ratio_trials,
            derive_seed(seed, 51),
        )
        sqf2, _ = squarefree_probe(
            q0, d0, p2, opts.squarefree_lines, derive_seed(seed, 52)
        )
        degree_agree = all(a == b for _, a, b in handles2)
        if not (fact_ok2 == fact_ok and sqf2 == sqf and degree_agree):
            return report(
                VERDICT_INCONCLUSIVE,
                f"cross-check prime {p2} disagrees with {prime}",
                [],
                dim_rep,
                disc_w,
            )
        notes.append(f"cross-check prime {p2}: agreed")

    # assemble components in canonical order: by degree, then root
    order = sorted(range(len(handles)), key=lambda i: (degrees[i], picked[i][0]))
    components = []
    for rank, i in enumerate(order):
        e, _, deg = picked[i]
        components.append(
            Component(
                handle_id=f"P{rank + 1}",
                root=_embed(q, q0, e),
                weight=_embed(q, q0, weights0[i]),
                degree=deg,
                multiplicity=mults[i],
                handle_kind="schofield",
                type_root=root_support_type(q0, e).label,
                type_weight=weight_support_type(q0, weights0[i]).label,
            )
        )

    all_ones = all(a == 1 for a in mults)
    if not fact_ok:
        return report(
            VERDICT_INCONCLUSIVE,
            "factorization ratio not constant over sampled points",
            components,
            dim_rep,
            disc_w,
        )
    if all_ones and sqf:
        return report(VERDICT_LFD, None, components, dim_rep, disc_w)
    if not all_ones and not sqf:
        mult_desc = ",".join(str(a) for a in mults)
        return report(
            VERDICT_NOT_REDUCED,
            f"multiplicities ({mult_desc})",
            components,
            dim_rep,
            disc_w,
        )
    return report(
        VERDICT_INCONCLUSIVE,
        f"reducedness signals disagree: multiplicities all 1 = {all_ones}, "
        f"squarefree probe = {sqf}",
        components,
        dim_rep,
        disc_w,
    )
