from fractions import Fraction
from itertools import combinations

import pytest

from rootdual import build
from rootdual.chevalley import TorusPoint
from rootdual.galois_form import parse_spec
from rootdual.levi import (LeviError, _correct, is_relevant, lemma6_lift_check, literal_identity_holds,
                           p_prime_standardness, remark2_naturality, solve_t0, standard_levis)
from rootdual.weyl import WeylElement, longest_element, reflection_matrix

F = Fraction


def relevant_subsets(spec):
    return [L.subset for L in standard_levis(parse_spec(spec)) if L.relevant]


def test_standard_levis_counts():
    assert len(standard_levis(parse_spec("A2-sc@R"))) == 4
    assert all(L.relevant for L in standard_levis(parse_spec("A2-sc@R")))
    assert len(standard_levis(parse_spec("A2-sc@R"), proper=True)) == 3


def test_relevant_subsets_of_twisted_forms():
    assert relevant_subsets("2A3-sc@R") == [(), (1,), (0, 2), (0, 1, 2)]
    assert relevant_subsets("3D4-sc@Qp3") == [(), (1,), (0, 2, 3), (0, 1, 2, 3)]
    # flip-stable subsets of A3, by direct enumeration
    flip = {0: 2, 1: 1, 2: 0}
    expect = [S for k in range(4) for S in combinations(range(3), k) if {flip[i] for i in S} == set(S)]
    assert relevant_subsets("2A3-ad@Qp5") == expect


def brute_w_gw_m(brd, S):
    """w_G w_M by searching the group for the elements sending the simple
    roots of S (resp. all simple roots) to negative roots (oracle)."""
    def longest(sub):
        best = WeylElement.identity(brd)
        frontier = [best]
        seen = {best.matrix}
        while frontier:
            nxt = []
            for w in frontier:
                for i in sub:
                    v = WeylElement(brd, tuple(map(tuple, [[sum(a * b for a, b in zip(r, c))
                                                             for c in zip(*reflection_matrix(brd, i))]
                                                            for r in w.matrix])), ())
                    if v.matrix not in seen:
                        seen.add(v.matrix)
                        nxt.append(v)
            frontier = nxt
            if frontier:
                best = max(frontier + [best], key=lambda w: w.length())
        return best
    return longest(brd.simples) * longest(S)


@pytest.mark.parametrize("t", ["A2", "A3", "B3", "C3", "G2"])
def test_p_prime_against_brute_force(t):
    brd = build(t)
    for k in range(brd.nsimple + 1):
        for S in combinations(brd.simples, k):
            w, S2, bij = p_prime_standardness(brd, S)
            assert w.matrix == brute_w_gw_m(brd, S).matrix
            assert set(S2) <= set(brd.simples) and len(S2) == len(S)


def test_p_prime_examples():
    brd = build("A2")
    w, S2, bij = p_prime_standardness(brd, (0, 1))
    assert w.length() == 0 and S2 == (0, 1)
    assert p_prime_standardness(brd, (0,))[1] == (1,)
    c3 = build("C3")
    for k in range(4):
        for S in combinations(range(3), k):
            assert p_prime_standardness(c3, S)[1] == S


def test_t0_full_subset_is_trivial():
    sol = solve_t0(parse_spec("B3-sc@R"), (0, 1, 2))
    assert not any(sol.discrepancy.values()) and sol.t0.is_zero()


def test_t0_a2():
    sol = solve_t0(parse_spec("A2-sc@R"), (0,))
    assert set(sol.discrepancy) == {0}
    assert all((2 * v).denominator == 1 for v in sol.discrepancy.values())
    assert sol.maps_agree and sol.corrected_t0 == sol.t0


def test_literal_statement_fails_for_a2():
    # c_M fixes the root line of alpha_1 while Ad(n) o c_G moves it to alpha_1 + alpha_2
    assert not literal_identity_holds(parse_spec("A2-sc@R"), (0,))
    assert literal_identity_holds(parse_spec("A2-sc@R"), (0, 1))


def test_t0_2a3_pipeline():
    sol = solve_t0(parse_spec("2A3-sc@R"), (0, 2))
    assert sol.corrected_t0 is not None
    assert all(d.evaluate(parse_spec("2A3-sc@R").brd.dual(), 0) == 0 for d in sol.sigma_defect.values())


def test_t0_with_shifted_representative():
    form = parse_spec("A3-sc@R")
    shift = TorusPoint((F(1, 3), F(1, 5), F(1, 7)), "adjoint")
    sol = solve_t0(form, (0, 2), shift)
    d = form.brd.dual()
    assert any(sol.discrepancy.values())
    assert not sol.t0.is_zero()
    assert sol.corrected_t0 is not None


def test_correction_of_non_fixed_t0():
    # 3D4, Levi {alpha_2}: add a non-fixed point central in the Levi and recover a fixed one
    form = parse_spec("3D4-sc@Qp3")
    sol = solve_t0(form, (1,))
    bumped = sol.t0 + TorusPoint((F(1, 3), 0, F(2, 3), 0), "adjoint")
    defect = {}
    for g in form.gamma.generators:
        P = form.adjoint_perm_matrix(g)
        moved = TorusPoint(tuple(sum(P[i][j] * bumped.coords[j] for j in range(4)) for i in range(4)), "adjoint")
        defect[g] = moved - bumped
    assert any(not d.is_zero() for d in defect.values())
    fixed = _correct(form, bumped, sol.target, defect)
    assert fixed is not None and fixed.coords[1] == bumped.coords[1]


def test_irrelevant_subset_rejected():
    with pytest.raises(LeviError):
        solve_t0(parse_spec("2A3-sc@R"), (0,))


@pytest.mark.parametrize("spec", ["A3-sc@R", "2A3-sc@R", "2A4-ad@Qp3", "3D4-sc@Qp3", "6D4-sc@Qp5", "2E6-sc@R"])
def test_lemma6(spec):
    form = parse_spec(spec)
    ok, cocycle = lemma6_lift_check(form, longest_element(form.brd).reduced_word())
    assert ok and all(t.is_zero() for t in cocycle.values())
    for S in relevant_subsets(spec):
        assert lemma6_lift_check(form, longest_element(form.brd, S).reduced_word())[0]


def test_lemma6_rejects_non_invariant():
    form = parse_spec("2A3-sc@R")
    with pytest.raises(LeviError):
        lemma6_lift_check(form, (0,))


@pytest.mark.parametrize("spec", ["B2-sc@R", "A3-sc@R", "2A3-sc@R", "D4-sc@R", "SO8@R", "U4@R", "A3-ad@R"])
def test_remark2_naturality(spec):
    form = parse_spec(spec)
    for S in relevant_subsets(spec):
        assert remark2_naturality(form, S)
        assert remark2_naturality(form, S, [0] * form.brd.nsimple)


def test_relevance_helper():
    form = parse_spec("2E6-sc@R")
    assert is_relevant(form, (1,)) and not is_relevant(form, (0,))
