import pytest

from hildenkit import alphabet as ab
from hildenkit.braid import exponent_sum, permutation_image
from hildenkit.errors import HildenkitError, IndexRangeError, ParseError
from hildenkit.hilden import (
    FAMILIES,
    P_FAMILIES,
    RelationInstance,
    generator_word,
    relation_instances,
    stabilizer_generators,
    stabilizer_image,
    verify_all,
    verify_instance,
)

G = ab.HildenGenerator


def test_generator_word_examples():
    assert generator_word(G("t", 1), 2).letters == (1,)
    assert generator_word(G("r", 2), 3).letters == (4, 3, 2, 1, -5, -4, -3, -2)
    assert generator_word(G("p", 1), 2).letters == (2, 1, -3, -2)


def test_generator_index_ranges():
    with pytest.raises(IndexRangeError):
        generator_word(G("p", 2), 2)
    with pytest.raises(IndexRangeError):
        generator_word(G("r", 2), 2)
    with pytest.raises(ParseError):
        ab.parse("q1")


def test_alphabet_words():
    w = ab.parse("p1 s2 t3^-1")
    assert ab.fmt(w) == "p1 s2 t3^-1"
    assert ab.fmt(ab.inverse(w)) == "t3 s2^-1 p1^-1"
    assert ab.free_reduce(ab.parse("p1 s1 s1^-1 p1^-1 t2")) == ab.parse("t2")
    assert ab.min_n(ab.parse("t3")) == 3
    assert ab.min_n(ab.parse("s2")) == 3


def test_relation_instance_examples():
    assert len(relation_instances("P14", 3)) == 3
    assert [x.params for x in relation_instances("P14", 3)] == [(1, 2), (1, 3), (2, 3)]
    assert [x.family for x in relation_instances("R2", 2)] == ["R2.1"]
    assert relation_instances("P1", 2) == []


def test_relation_instances_errors():
    with pytest.raises(IndexRangeError):
        relation_instances("P1", 1)
    with pytest.raises(HildenkitError):
        relation_instances("P99", 4)


def test_enumeration_deterministic():
    for fam in FAMILIES:
        assert relation_instances(fam, 5) == relation_instances(fam, 5)


def test_stabilizer_generator_examples():
    e1 = stabilizer_generators(1, 3)
    assert [ab.fmt(w) for w in e1.generators] == ["t2", "t3", "s1 s1 t1 t1", "s2 s1 s1 s2"]
    e2 = stabilizer_generators(2, 4)
    assert ab.parse("s3 s2 s1 s1 s2 s3") in e2.generators
    with pytest.raises(IndexRangeError):
        stabilizer_generators(2, 2)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("edge", [1, 2])
def test_stabilizer_conjugation_lands_in_vertex_alphabet(edge, n):
    """r_e w r_e^-1 equals a word in s and t only, checked as braids."""
    r = ab.parse(f"r{edge}")
    for w in stabilizer_generators(edge, n).generators:
        h = stabilizer_image(edge, w)
        assert all(x.gen.kind in "st" for x in h)
        inst = RelationInstance("stab", (), r + w + ab.inverse(r), h)
        assert verify_instance(inst, n).equal, ab.fmt(w)


def test_verify_instance_examples():
    r19 = relation_instances("R1.9", 3)
    assert len(r19) == 1 and verify_instance(r19[0], 3).equal
    p9 = relation_instances("P9", 2)
    assert p9[0].lhs == ab.parse("p1 t1 s1 p1") and p9[0].rhs == ab.parse("s1 t1")
    assert verify_instance(p9[0], 2).equal


def test_corrupted_instance_reports_exponent_sum():
    bad = RelationInstance("P0", (), ab.parse("p1"), ab.parse("s1"))
    rep = verify_instance(bad, 2)
    assert not rep.equal and rep.status == "FAIL"
    assert (rep.exp_lhs, rep.exp_rhs) == (0, 4)
    assert "exponent sum 0 vs 4" in rep.line()


def test_verify_all_n4():
    s = verify_all(4)
    assert s.ok
    for fam in [f"R1.{k}" for k in range(1, 13)] + ["R2.1", "R2.2", "R3.1", "R3.2", "R3.3"]:
        assert fam in s.counts
    # (R1 10) needs s_k with k > 3, so n >= 5
    assert s.skipped == ["R1.10"]
    assert "bridge r1=p1 PASS" in s.lines and "bridge r2=p2p1 PASS" in s.lines
    assert s.report().splitlines()[-1].startswith("# n=4 instances=")


def test_verify_all_n2_skips():
    s = verify_all(2)
    assert s.ok
    assert {"R1.9", "R2.2", "R3.1", "P1"} <= set(s.skipped)
    assert "bridge r2=p2p1 SKIP" in s.lines


def test_bridge_n3():
    inst = RelationInstance("bridge", (), ab.parse("r2"), ab.parse("p2 p1"))
    assert verify_instance(inst, 3).equal


def test_r1_10_at_n5():
    insts = relation_instances("R1.10", 5)
    assert insts and all(verify_instance(x, 5).equal for x in insts)


def test_r3_2_both_orderings():
    insts = relation_instances("R3.2", 4)
    assert len(insts) == 2
    assert all(verify_instance(x, 4).equal for x in insts)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_necessary_conditions_all_families(n):
    """Permutation images and exponent sums agree, independent of the normal form."""
    for fam in FAMILIES:
        for inst in relation_instances(fam, n):
            lhs, rhs = ab.to_braid(inst.lhs, n), ab.to_braid(inst.rhs, n)
            assert permutation_image(lhs) == permutation_image(rhs), str(inst)
            assert exponent_sum(lhs) == exponent_sum(rhs), str(inst)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_p_and_r0_families_hold(n):
    s = verify_all(n, P_FAMILIES + ["R0"])
    assert s.ok, s.failures
