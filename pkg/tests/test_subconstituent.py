from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latin_terwilliger import corpus
from latin_terwilliger.exceptions import (
    InternalConsistencyError,
    NoRIP,
    NotALoop,
    NotMoufang,
    NotRightBol,
    OrderTooSmall,
)
from latin_terwilliger.quasigroup import loop_properties, loop_structure, parse_latin_square
from latin_terwilliger.scheme import orthogonal_array
from latin_terwilliger.search import random_latin_square
from latin_terwilliger.subconstituent import (
    CycleStructure,
    SubPermutation,
    WedderburnSignature,
    bol_pi_formula,
    cycle_structure,
    fixed_point_profile,
    identity_base_cycles,
    module_table,
    moufang_fixed_prediction,
    pi_of,
    pi_square_criterion,
    pi_via_division,
    predict,
    right_bol_certificate,
    root_label,
    roots_of_unity,
    wedderburn_signature,
)

from .conftest import cyclic, latin_squares

CS = CycleStructure.parse


# -- pi ----------------------------------------------------------------------

def test_fig1_pi(fig1):
    perm = pi_of(fig1, (1, 1, 1))
    assert str(perm) == "(2 3)"
    assert perm(2) == 3
    assert perm == pi_via_division(fig1, (1, 1, 1))


def test_fig2_walk_example(fig2):
    assert pi_of(fig2, (1, 2, 2))(3) == 5
    assert pi_via_division(fig2, (1, 2, 2))(3) == 5


def test_fig2_pi_at_identity(fig2):
    perm = pi_of(fig2, (1, 1, 1))
    assert str(perm) == "(2 4)(3 5)(6 7)"
    assert perm.fixed_points == [8]
    assert str(cycle_structure(perm)) == "1 2^3"


def test_order_one_pi():
    perm = pi_of(parse_latin_square("1"), (1, 1, 1))
    assert perm.domain == [] and str(perm) == "()"
    assert str(cycle_structure(perm)) == "-"


@given(latin_squares(min_order=2, max_order=7), st.data())
@settings(max_examples=40)
def test_walk_and_division_agree(L, data):
    X = orthogonal_array(L)
    p = X[data.draw(st.integers(0, len(X) - 1))]
    perm = pi_of(L, p)
    assert perm == pi_via_division(L, p)
    assert p.column not in perm.domain
    assert sorted(perm.domain) == sorted(set(L.symbols) - {p.column})


def test_bol_formula_examples(fig2):
    for r in fig2.symbols:
        perm = bol_pi_formula(fig2, (r, 1, r))
        inv = loop_structure(fig2).inverse
        assert all(perm(c) == inv(c) for c in perm.domain)
        assert str(perm) == "(2 4)(3 5)(6 7)"
    col8 = bol_pi_formula(fig2, (1, 8, 8))
    assert col8.fixed_points == [1] and str(col8) == "(2 4)(3 5)(6 7)"
    col2 = bol_pi_formula(fig2, (1, 2, 2))
    assert col2.fixed_points == [4, 6, 7] and str(col2) == "(1 8)(3 5)"


def test_bol_formula_needs_bol(fig3):
    with pytest.raises(NotRightBol):
        bol_pi_formula(fig3, (1, 1, 1))


def test_subpermutation_rejects_non_bijection():
    with pytest.raises(InternalConsistencyError):
        SubPermutation(1, {2: 3, 3: 3})


# -- cycle structures ----------------------------------------------------------

def test_cycle_structure_notation():
    assert str(CS("1^7")) == "1^7"
    assert str(CycleStructure.from_lengths([1] * 7)) == "1^7"
    assert CS("1 2^3") == CycleStructure.from_lengths([2, 1, 2, 2])
    assert CS("1^3 2^2").k == 5 and CS("1^3 2^2").size == 7 and CS("1^3 2^2").fixed == 3


def test_fig2_column1(fig2):
    for r in fig2.symbols:
        assert cycle_structure(pi_of(fig2, (r, 1, r))) == CS("1 2^3")


def test_fig3_boxed_point(fig3):
    assert cycle_structure(pi_of(fig3, (3, 1, 3))) == CS("2^3")


# -- module tables -------------------------------------------------------------

def entries(table):
    return [(e.dimension, e.multiplicity, e.label_str) for e in table.entries]


def test_module_table_fig2():
    t = module_table(8, CS("1 2^3"))
    assert entries(t) == [(5, 1, "primary"), (1, 23, "one-dim"), (6, 3, "-1"), (6, 3, "class-(iv)")]
    assert t.balance == 64


def test_module_table_fig3_boxed():
    t = module_table(7, CS("2^3"))
    assert entries(t) == [(5, 1, "primary"), (1, 14, "one-dim"), (6, 3, "-1"), (6, 2, "class-(iv)")]
    assert t.balance == 49


def test_module_table_fig3_other():
    t = module_table(7, CS("1^4 2"))
    assert entries(t) == [(5, 1, "primary"), (1, 14, "one-dim"), (6, 1, "-1"), (6, 4, "class-(iv)")]
    assert t.balance == 49


def test_single_six_cycle():
    t = module_table(7, CS("6"))
    assert len(t.roots) == 6 and t.k == 1
    sig = wedderburn_signature(t)
    assert sig.N == 5 and sig.dimension == 206
    assert "class-(iv)" not in [e.label for e in t.entries]


def test_identity_permutation_signature():
    sig = wedderburn_signature(module_table(8, CS("1^7")))
    assert sig.N == 1 and sig.summands == (5, 6, 1) and sig.dimension == 62


def test_signature_fig2(fig2):
    _, table, sig = predict(fig2, (1, 1, 1))
    assert table.k == 4
    assert table.roots == {Fraction(0), Fraction(1, 2)}
    assert sig.summands == (5, 6, 6, 1) and sig.dimension == 98 and sig.center_dimension == 4
    assert str(sig) == "M5 + M6^2 + M1"
    assert str(WedderburnSignature(1)) == "M5 + M6 + M1"


def test_module_table_small_order():
    with pytest.raises(OrderTooSmall):
        module_table(4, CS("1 2"))
    with pytest.raises(ValueError):
        module_table(6, CS("1 2"))


def test_root_labels():
    assert root_label(Fraction(0)) == "1"
    assert root_label(Fraction(1, 2)) == "-1"
    assert root_label(Fraction(1, 3)) == "e(1/3)"


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in partitions(n - part, part):
            yield (part,) + rest


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_module_table_against_eigenvalues(n):
    # a cycle of length m contributes each m-th root of unity once as an eigenvalue
    for parts in partitions(n - 1):
        cs = CycleStructure.from_lengths(parts)
        eig = Counter(Fraction(j, m) for m in parts for j in range(m))
        t = module_table(n, cs)
        assert t.roots == set(eig)
        for eps, count in eig.items():
            if eps != 0:
                assert t.multiplicity_of(eps) == count
        assert t.balance == n * n
        sig = wedderburn_signature(t)
        assert sig.dimension == 25 + 36 * sig.N + 1
        assert sig.N == len(eig) - (1 if len(parts) == 1 else 0)


def test_roots_of_unity():
    assert roots_of_unity(CS("2 3")) == {Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)}


# -- sweeps --------------------------------------------------------------------

FIG2_COLUMNS = ["1 2^3", "1^3 2^2", "1^3 2^2", "1^3 2^2", "1^3 2^2", "1^5 2", "1^5 2", "1 2^3"]


def test_fig2_profile(fig2):
    prof = fixed_point_profile(fig2)
    assert prof.row_constant
    assert prof.column_structures() == [CS(s) for s in FIG2_COLUMNS]
    assert all(row == [1, 3, 3, 3, 3, 5, 5, 1] for row in prof.fixed_counts)


def test_profile_parallel_matches_serial(fig3):
    assert fixed_point_profile(fig3, jobs=4) == fixed_point_profile(fig3, jobs=1)


def test_fig3_profile(fig3):
    prof = fixed_point_profile(fig3)
    boxed = corpus.load("fig3").boxed
    assert set(prof.cells_with(CS("2^3"))) == boxed
    assert len(prof.cells_with(CS("1^4 2"))) == 42
    assert not prof.row_constant
    assert sorted(r for r, _ in boxed) == list(range(1, 8))
    assert sorted(c for _, c in boxed) == list(range(1, 8))


def test_profile_needs_two_points():
    with pytest.raises(OrderTooSmall):
        fixed_point_profile(parse_latin_square("1"))


@pytest.mark.parametrize("name,expected", [("z5", 0), ("z2^3", 7), ("z4", 1), ("z6", 1), ("z8", 1)])
def test_moufang_fixed_prediction(name, expected):
    L = corpus.square(name)
    assert moufang_fixed_prediction(L) == expected
    prof = fixed_point_profile(L)
    assert all(c == expected for row in prof.fixed_counts for c in row)


def test_moufang12_fixed_counts():
    L = corpus.square("moufang12")
    s_minus_1 = moufang_fixed_prediction(L)
    assert {c for row in fixed_point_profile(L).fixed_counts for c in row} == {s_minus_1}


def test_moufang_prediction_rejects_non_moufang(fig2):
    with pytest.raises(NotMoufang):
        moufang_fixed_prediction(fig2)


def test_identity_base_cycles_fig2(fig2):
    recs = identity_base_cycles(fig2)
    assert all(r.two_sided and r.pi_is_inverse and r.cycle_length <= 2 for r in recs)


def test_identity_base_cycles_fig3(fig3):
    recs = {r.element: r for r in identity_base_cycles(fig3)}
    assert {c for c, r in recs.items() if r.cycle_length == 1} == {2, 4, 6, 7}
    assert recs[3].cycle_length == recs[5].cycle_length == 2
    assert all(r.two_sided for r in recs.values())
    assert str(pi_of(fig3, (1, 1, 1))) == "(3 5)"


@pytest.mark.parametrize("name", corpus.GROUPS)
def test_identity_base_cycles_groups(name):
    recs = identity_base_cycles(corpus.square(name))
    assert all(r.pi_is_inverse for r in recs)


def test_identity_base_cycles_needs_loop():
    with pytest.raises(NotALoop):
        identity_base_cycles(parse_latin_square("1 3 2\n3 2 1\n2 1 3"))


# -- pi squared and the certificate --------------------------------------------

def test_pi_square_criterion_fig2(fig2):
    assert pi_square_criterion(fig2, (1, 2, 2), 3) == (True, True)
    for p in orthogonal_array(fig2):
        for c in fig2.symbols:
            if c != p.column:
                assert pi_square_criterion(fig2, p, c) == (True, True)


def test_pi_square_criterion_guards(fig2, fig3):
    with pytest.raises(NoRIP):
        pi_square_criterion(fig3, (1, 1, 1), 2)
    with pytest.raises(ValueError):
        pi_square_criterion(fig2, (1, 2, 2), 2)


def test_certificates(fig2, fig3):
    assert str(right_bol_certificate(fig2)) == "certified-right-bol"
    cert = right_bol_certificate(fig3)
    assert str(cert) == "hypothesis-failed(NoRIP)"
    assert str(right_bol_certificate(corpus.square("z5"))) == "certified-right-bol"
    assert right_bol_certificate(corpus.square("steiner10")).reason == "PiFormulaMismatch"
    assert right_bol_certificate(parse_latin_square("1 3 2\n3 2 1\n2 1 3")).reason == "NotALoop"


def test_certificate_no_two_sided_inverse():
    # loop of order 5 in which 2 has left and right inverses that differ
    L = parse_latin_square("1 2 3 4 5\n2 4 1 5 3\n3 5 4 2 1\n4 1 5 3 2\n5 3 2 1 4")
    loop = loop_structure(L)
    assert loop is not None and not loop.all_two_sided
    assert right_bol_certificate(L).reason == "NoTwoSidedInverse"


@given(latin_squares(min_order=2, max_order=6))
@settings(max_examples=40)
def test_certificate_implies_right_bol(L):
    if right_bol_certificate(L).certified:
        assert loop_properties(L).is_right_bol


@pytest.mark.parametrize("name", corpus.names())
def test_certificate_consistent_on_corpus(name):
    L = corpus.square(name)
    cert = right_bol_certificate(L)
    assert cert.certified == loop_properties(L).is_right_bol


def test_predict_uses_cycle_type(fig2):
    perm, table, sig = predict(fig2, (3, 6, fig2.product(3, 6)))
    assert cycle_structure(perm) == CS("1^5 2")
    assert sig.dimension == 98


def test_random_isotope_profiles_are_seeded():
    a = random_latin_square(6, np.random.default_rng(5))
    b = random_latin_square(6, np.random.default_rng(5))
    assert a == b
