import pytest

from qlfd.arith import DEFAULT_PRIME
from qlfd.certify import (
    CertifyError,
    CertifyOptions,
    certify,
    discriminant_degree,
    multiplicity_vector,
    squarefree_probe,
    verify_factorization,
)
from qlfd.fixtures import builtin
from qlfd.quiver import build_quiver, opposite_quiver
from qlfd.semiinv import SchofieldHandle, sample_generic_witness, weight_of_schofield

P = DEFAULT_PRIME


def test_discriminant_degree_fixtures(report_for):
    q6, d6 = builtin("e6-q1")
    assert discriminant_degree(q6, d6) == 22
    q7, d7 = builtin("e7-highroot")
    assert discriminant_degree(q7, d7) == 46


def test_discriminant_degree_detects_non_schur():
    q, d = builtin("tilde-d4-iv")
    with pytest.raises(CertifyError):
        discriminant_degree(q, d)


def test_multiplicity_vector_tilde_d4_ii():
    q, d = builtin("tilde-d4-ii")
    # components: the three degree-2 compositions and the degree-3 minor
    roots = [(0, 1, 0, 0, 1), (0, 0, 1, 0, 1), (0, 0, 0, 1, 1), (2, 1, 1, 1, 2)]
    weights = [weight_of_schofield(q, e) for e in roots]
    assert multiplicity_vector(q, d, weights) == [1, 1, 1, 2]
    # order independence
    perm = [weights[3], weights[0], weights[2], weights[1]]
    assert multiplicity_vector(q, d, perm) == [2, 1, 1, 1]


def test_multiplicity_vector_error_cases():
    q, d = builtin("a3")
    w1 = weight_of_schofield(q, (1, 0, 0))
    with pytest.raises(ValueError):
        multiplicity_vector(q, d, [w1, w1])  # dependent
    with pytest.raises(ValueError):
        # wrong single weight cannot reach the discriminant weight positively
        multiplicity_vector(q, d, [w1])


def test_verify_factorization_a3():
    q, d = builtin("a3")
    handles = []
    for e in [(1, 0, 0), (0, 1, 0)]:
        w, deg = sample_generic_witness(q, e, d, P, seed=3)
        h = SchofieldHandle(e, w, d)
        h.degree = deg
        handles.append(h)
    ok, unit, _ = verify_factorization(q, d, handles, [1, 1], P, 20, seed=4)
    assert ok
    assert unit in (1, P - 1)


def test_squarefree_probe_fixtures():
    qa, da = builtin("a3")
    ok, votes = squarefree_probe(qa, da, P, trials=5, seed=5)
    assert ok and all(votes)
    qii, dii = builtin("tilde-d4-ii")
    ok2, votes2 = squarefree_probe(qii, dii, P, trials=5, seed=6)
    assert not ok2 and not any(votes2)
    q6, d6 = builtin("e6-q1")
    ok3, _ = squarefree_probe(q6, d6, P, trials=5, seed=7)
    assert ok3


def test_certify_dynkin_real_roots_are_lfd(report_for):
    for name in ["a3", "a5", "d4-prop", "star2", "e6-q1"]:
        rep = report_for(name)
        assert rep.verdict == "linear-free-divisor", name
        assert rep.stats.mode == "dynkin"
        assert sum(c.degree * c.multiplicity for c in rep.components) == rep.dim_rep


def test_certify_a5_components(report_for):
    rep = report_for("a5")
    assert rep.dim_rep == 4
    assert [c.degree for c in rep.components] == [1, 1, 1, 1]
    assert all(c.multiplicity == 1 for c in rep.components)


def test_certify_dn_prop(report_for):
    for n in (4, 6):
        rep = report_for(f"d{n}-prop")
        assert rep.verdict == "linear-free-divisor"
        assert rep.dim_rep == 4 * n - 10
        expected = sorted([2] * (n - 3) + [n - 2, n - 2])
        assert sorted(c.degree for c in rep.components) == expected


def test_certify_q2_q3(report_for):
    rep2 = report_for("q2")
    assert rep2.verdict == "linear-free-divisor"
    assert rep2.dim_rep == 36
    assert rep2.stats.mode == "advisory"
    rep3 = report_for("q3")
    assert rep3.verdict == "not-reduced"
    doubled = [c for c in rep3.components if c.multiplicity == 2]
    assert len(doubled) == 1 and doubled[0].degree == 4
    assert sum(c.degree for c in rep3.components) == 32


def test_certify_non_schur_inconclusive(report_for):
    rep = report_for("tilde-d4-iv")
    assert rep.verdict == "inconclusive"
    assert rep.stats.brick_endomorphism_dim >= 2
    assert "Schur" in rep.reason


def test_certify_rejects_bad_input():
    q, _ = builtin("a3")
    with pytest.raises(CertifyError):
        certify(q, (0, 0, 0))
    rep = certify(q, (1, 2, 1))  # q(d) = 2: not a real root
    assert rep.verdict == "inconclusive" and "not a real root" in rep.reason


def test_certify_disconnected_support():
    q, _ = builtin("a3")
    # support {1, 3} is disconnected and q(d) = 2 there
    rep = certify(q, (1, 0, 1))
    assert rep.verdict == "inconclusive"


def test_certify_single_node_support():
    q, _ = builtin("a3")
    rep = certify(q, (0, 1, 0))
    assert rep.verdict == "linear-free-divisor"
    assert rep.dim_rep == 0 and rep.components == []


def test_certify_opposite_quiver_invariance(report_for):
    for name in ["a3", "d4-prop", "e6-q1"]:
        q, d = builtin(name)
        rep = report_for(name)
        opp = certify(opposite_quiver(q), d)
        assert opp.verdict == rep.verdict, name
        assert sorted(c.degree for c in opp.components) == sorted(
            c.degree for c in rep.components
        )


def test_certify_invariant_under_relabeling(report_for):
    q, d = builtin("d4-prop")
    perm = [2, 0, 3, 1]
    nodes = [q.nodes[i] for i in perm]
    arrows = [(a.name, a.tail, a.head) for a in q.arrows]
    q2 = build_quiver(nodes, arrows, name="d4-relabeled")
    d2 = tuple(d[q.index[x]] for x in nodes)
    rep = certify(q2, d2)
    base = report_for("d4-prop")
    assert rep.verdict == base.verdict
    assert sorted(c.degree for c in rep.components) == sorted(
        c.degree for c in base.components
    )


def test_certify_exact_mode_small_fixture():
    q, d = builtin("a4")
    rep = certify(q, d, CertifyOptions(exact=True))
    assert rep.verdict == "linear-free-divisor"
    assert rep.stats.unit_ratio in ("1", "-1")


def test_certify_exact_mode_guards():
    # non-Dynkin support is refused
    q, d = builtin("star4")
    with pytest.raises(CertifyError):
        certify(q, d, CertifyOptions(exact=True))
    # oversize request is refused (dim Rep = 46 > 24)
    q7, d7 = builtin("e7-highroot")
    with pytest.raises(CertifyError):
        certify(q7, d7, CertifyOptions(exact=True))


def test_report_serialization_shape(report_for):
    rep = report_for("e6-q1")
    doc = rep.to_dict()
    assert doc["schema_version"] == 1
    assert doc["verdict"] == "linear-free-divisor"
    assert len(doc["components"]) == 5
    for c in doc["components"]:
        assert set(c) >= {"id", "root", "weight", "minus_weight", "degree", "multiplicity"}
    assert doc["stats"]["prime"] == P


E6_Q1_TABLE = {
    # root -> (degree, -weight); derived from the weight formulas by hand and
    # confirmed by the operational weight check and the factorization identity
    (0, 0, 1, 1, 0, 0): (4, (0, 0, 0, 1, 0, -1)),
    (0, 1, 1, 0, 0, 0): (4, (0, 1, 0, 0, 0, -1)),
    (0, 1, 1, 1, 1, 1): (4, (0, 1, -1, 0, 1, 0)),
    (1, 1, 1, 1, 0, 1): (4, (1, 0, -1, 1, 0, 0)),
    (1, 1, 2, 1, 1, 1): (6, (1, 0, 0, 0, 1, -1)),
}

E6_Q2_TABLE = {
    (0, 0, 1, 1, 0, 0): (4, (0, 0, 1, 0, -1, -1)),
    (0, 1, 1, 0, 0, 1): (4, (0, 1, 0, -1, 0, 0)),
    (0, 1, 1, 1, 1, 0): (4, (0, 1, 0, 0, 0, -1)),
    (1, 1, 1, 1, 0, 1): (4, (1, 0, 0, 0, -1, 0)),
    (1, 1, 2, 1, 1, 1): (6, (1, 0, 1, -1, 0, -1)),
}


def test_certify_e6_component_tables(report_for):
    for name, table in [("e6-q1", E6_Q1_TABLE), ("e6-q2", E6_Q2_TABLE)]:
        rep = report_for(name)
        by_root = {c.root: c for c in rep.components}
        assert set(by_root) == set(table), name
        for root, (deg, minus_w) in table.items():
            assert by_root[root].degree == deg, (name, root)
            assert tuple(-x for x in by_root[root].weight) == minus_w, (name, root)


def test_certify_random_dynkin_roots_always_lfd():
    # every positive root of a Dynkin quiver is a real Schur root, so the
    # verdict must be linear-free-divisor regardless of orientation or
    # support; exercises support restriction on non-sincere roots
    from qlfd.arith import Rng
    from qlfd.roots import positive_roots

    rng = Rng(424242)
    for base in ["a5", "d5-prop", "e6-q1"]:
        q, _ = builtin(base)
        roots = positive_roots(q)
        for trial in range(6):
            mask = rng.below(1 << q.arrow_count)
            arrows = [
                (a.name, a.head, a.tail) if (mask >> i) & 1 else (a.name, a.tail, a.head)
                for i, a in enumerate(q.arrows)
            ]
            flipped = build_quiver(q.nodes, arrows, name=f"{base}-flip{mask}")
            d = roots[rng.below(len(roots))]
            rep = certify(flipped, d)
            assert rep.verdict == "linear-free-divisor", (base, mask, d)
            assert sum(c.degree * c.multiplicity for c in rep.components) == rep.dim_rep
            support_size = sum(1 for x in d if x)
            assert len(rep.components) == support_size - 1


def test_certify_kronecker_parallel_arrows():
    # parallel arrows: the 2-arrow quiver with d = (2, 1) has a single
    # component (Kac count 2 - 1), the 2x2 determinant, squared
    k2 = build_quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")], name="kronecker")
    rep = certify(k2, (2, 1))
    assert rep.verdict == "not-reduced"
    assert rep.dim_rep == 4
    assert [(c.root, c.degree, c.multiplicity) for c in rep.components] == [
        ((1, 0), 2, 2)
    ]
    assert not any(rep.stats.squarefree_votes)


def test_certify_multi_prime_cross_check():
    second = 2305843009213693967  # another 62-bit prime
    q, d = builtin("e6-q1")
    rep = certify(q, d, CertifyOptions(cross_check_prime=second))
    assert rep.verdict == "linear-free-divisor"
    assert any("agreed" in note for note in rep.stats.notes)
    qii, dii = builtin("tilde-d4-ii")
    rep2 = certify(qii, dii, CertifyOptions(cross_check_prime=second))
    assert rep2.verdict == "not-reduced"


def test_certify_verdicts_stable_across_seeds():
    for name, expect in [("tilde-d4-ii", "not-reduced"), ("star3", "linear-free-divisor")]:
        q, d = builtin(name)
        for seed in (1, 7, 1001, 2**40 + 5, 987654321):
            rep = certify(q, d, CertifyOptions(seed=seed))
            assert rep.verdict == expect, (name, seed, rep.reason)


def test_brick_probe_deterministic():
    from qlfd.roots import brick_probe

    q, d = builtin("e6-q1")
    a = brick_probe(q, d, P, seed=99, trials=4)
    b = brick_probe(q, d, P, seed=99, trials=4)
    assert a == b


def test_component_weights_orthogonal_to_d(report_for):
    # the defining linear relation: every component weight pairs to zero with d
    for name in ["a4", "d5-prop", "e6-q1", "q2", "tilde-d4-ii"]:
        rep = report_for(name)
        for c in rep.components:
            assert sum(w * x for w, x in zip(c.weight, rep.dims)) == 0, name
