from fractions import Fraction

import pytest

import oracles
from walgebra import (
    C,
    VIRASORO,
    W22,
    W22_CENTERLESS,
    WITT,
    Element,
    H,
    InvalidCore,
    L,
    NotInClassifiedFamily,
    WindowTooSmall,
    classify,
    extract_parameters,
    inner_biderivation,
    inner_derivation,
    l_to_h_biderivation,
    nullspace,
    project_to_core,
    report_json,
    run_verification,
    solution_to_map,
)
from walgebra.maps import combine_bilinear, h_scaling_map
from walgebra.solver import (
    assemble_biderivation_system,
    assemble_commuting_system,
    assemble_derivation_system,
    assemble_symmetric_biderivation_system,
    vector_from_map,
)


def row_kernel_contains(system, vec):
    for row in system.rows:
        if sum(coef * vec.get(col, 0) for col, coef in row):
            return False
    return True


# ---------------------------------------------------------------------------
# assembly


def test_column_count_matches_hand_count():
    # 6 window symbols (5 L's and c) times 6 times 10 value symbols
    s = assemble_biderivation_system(VIRASORO, 2, 4)
    assert s.n_columns == 360
    assert len(s.arg_symbols) == 6
    assert len(s.out_symbols) == 10


def test_unknown_decoding_round_trip():
    s = assemble_derivation_system(W22, 1, 2)
    cols = s.columns()
    assert len(cols) == s.n_columns
    assert str(cols[0]) == "f(L(-1))->L(-2)"
    # column order is lexicographic in canonical symbol order
    keys = [c.sort_key() for c in cols]
    assert keys == sorted(keys)


def test_window_preconditions():
    with pytest.raises(WindowTooSmall):
        assemble_biderivation_system(VIRASORO, 0, 4)
    with pytest.raises(WindowTooSmall):
        assemble_biderivation_system(VIRASORO, 3, 5)


def test_row_provenance_readable():
    s = assemble_commuting_system(WITT, 1, 2)
    text = s.describe_row(0)
    assert "commuting" in text and "L(" in text


def test_zero_map_satisfies_every_row():
    s = assemble_biderivation_system(W22, 2, 4)
    assert row_kernel_contains(s, {})


# ---------------------------------------------------------------------------
# completeness: the named maps restricted to the window satisfy all rows


def test_named_biderivations_lie_in_row_kernel():
    for alg in (VIRASORO, WITT, W22, W22_CENTERLESS):
        s = assemble_biderivation_system(alg, 3, 6)
        cols = s.columns()
        vec = vector_from_map(cols, inner_biderivation(1, alg, 3))
        assert vec is not None and row_kernel_contains(s, vec)
        if alg.has_h:
            vec = vector_from_map(cols, l_to_h_biderivation(1, alg, 3))
            assert vec is not None and row_kernel_contains(s, vec)


def test_inner_derivations_lie_in_row_kernel():
    s = assemble_derivation_system(W22, 3, 6)
    cols = s.columns()
    for sym in (L(-3), L(0), L(3), H(-2), H(1)):
        vec = vector_from_map(cols, inner_derivation(Element.basis(sym), W22, 3))
        assert vec is not None and row_kernel_contains(s, vec)


def test_h_scaling_kernel_membership_depends_on_center():
    # centerless: a genuine derivation; centered: the shared central cocycle
    # on the mixed bracket knocks it out of the kernel
    s = assemble_derivation_system(W22_CENTERLESS, 3, 6)
    vec = vector_from_map(s.columns(), h_scaling_map(W22_CENTERLESS, 3))
    assert vec is not None and row_kernel_contains(s, vec)
    s = assemble_derivation_system(W22, 3, 6)
    vec = vector_from_map(s.columns(), h_scaling_map(W22, 3))
    assert vec is not None and not row_kernel_contains(s, vec)


def test_commuting_kernel_contains_central_valued_maps():
    s = assemble_commuting_system(VIRASORO, 2, 4)
    cols = s.columns()
    posmap = {(u.args[0], u.out): i for i, u in enumerate(cols)}
    vec = {posmap[(sym, C)]: Fraction(i + 1) for i, sym in enumerate(s.arg_symbols)}
    assert row_kernel_contains(s, vec)


# ---------------------------------------------------------------------------
# nullspace soundness


def test_window_nullspace_vectors_verify_as_maps():
    space = nullspace(assemble_biderivation_system(VIRASORO, 3, 6))
    assert space.dimension >= 1
    for i in range(space.dimension):
        m = solution_to_map(space, i)
        assert run_verification(m, "biderivation")["status"] == "pass"


def test_symmetric_rows_are_a_superset():
    sym = assemble_symmetric_biderivation_system(WITT, 2, 4)
    plain = assemble_biderivation_system(WITT, 2, 4)
    assert set(plain.rows) <= set(sym.rows)
    space = nullspace(sym)
    assert space.dimension == 0


# ---------------------------------------------------------------------------
# oracle cross-checks (plain elimination on residual-generated rows)


@pytest.mark.parametrize(
    "name,raw,core",
    [("vir", 9, 5), ("witt", 1, 1), ("w22", 17, 9), ("w22-centerless", 2, 2)],
)
def test_commuting_dimensions_match_oracle_n3(name, raw, core):
    from walgebra import algebra_by_name

    alg = algebra_by_name(name)
    n, rows = oracles.linear_rows(alg, 3, 6, "commuting")
    vecs = oracles.plain_nullspace(n, rows)
    assert len(vecs) == raw
    assert oracles.core_dimension(vecs, oracles.core_positions_linear(alg, 3, 6, 1)) == core
    rep = classify("commuting", alg, N=3, M=6, K=1)
    assert rep["raw_dimension"] == raw
    assert rep["core_dimension"] == core


@pytest.mark.parametrize(
    "name,raw", [("vir", 7), ("w22", 14), ("w22-centerless", 15)]
)
def test_derivation_dimensions_match_oracle_n3(name, raw):
    from walgebra import algebra_by_name

    alg = algebra_by_name(name)
    n, rows = oracles.linear_rows(alg, 3, 6, "derivation")
    assert len(oracles.plain_nullspace(n, rows)) == raw
    assert classify("derivation", alg, N=3, M=6, K=1)["raw_dimension"] == raw


@pytest.mark.parametrize("name", ["vir", "witt"])
def test_biderivation_dimensions_match_oracle_n3(name):
    from walgebra import algebra_by_name

    alg = algebra_by_name(name)
    n, rows = oracles.bilinear_rows(alg, 3, 6)
    vecs = oracles.plain_nullspace(n, rows)
    assert len(vecs) == 1
    assert oracles.core_dimension(vecs, oracles.core_positions_bilinear(alg, 3, 6, 1)) == 1
    rep = classify("biderivation", alg, N=3, M=6, K=1)
    assert rep["raw_dimension"] == 1 and rep["core_dimension"] == 1


# ---------------------------------------------------------------------------
# projection and parameter extraction


def test_project_to_core_validates_radius():
    space = nullspace(assemble_commuting_system(WITT, 2, 4))
    with pytest.raises(InvalidCore):
        project_to_core(space, 3)
    projected = project_to_core(space, 1)
    assert projected.window_radius == 1
    assert projected.dimension <= space.dimension


def test_extract_parameters_examples():
    f = combine_bilinear(
        inner_biderivation(3, W22, 2), l_to_h_biderivation(5, W22, 2)
    )
    assert extract_parameters(f) == (Fraction(3), Fraction(5))
    assert extract_parameters(inner_biderivation(0, W22, 2)) == (0, 0)
    assert extract_parameters(inner_biderivation(1, VIRASORO, 2)) == (1, 0)
    # scaling the map scales the parameters and nothing else
    g = combine_bilinear(
        inner_biderivation(Fraction(-9, 2), W22, 2),
        l_to_h_biderivation(Fraction(-15, 2), W22, 2),
    )
    assert extract_parameters(g) == (Fraction(-9, 2), Fraction(-15, 2))


def test_extract_parameters_rejects_foreign_maps():
    f = inner_biderivation(2, W22, 2)
    values = dict(f.values)
    values[(L(2), H(1))] = values[(L(2), H(1))] + Element.basis(H(3), 1)
    from walgebra.maps import BilinearMapWindow

    broken = BilinearMapWindow(W22, 2, values)
    with pytest.raises(NotInClassifiedFamily) as info:
        extract_parameters(broken)
    assert info.value.pair == (L(2), H(1))
    assert info.value.residual == Element.basis(H(3))


# ---------------------------------------------------------------------------
# classification reports


def test_classify_flags_windows_too_small_to_stabilize():
    # at N=1 nothing forces f(c,c) to vanish (the identities that do need
    # L(2) in the window), so the family match must fail loudly
    with pytest.raises(NotInClassifiedFamily):
        classify("biderivation", W22, N=1, M=2, K=1)
    # from N=2 on the biderivation picture is already exact
    rep = classify("biderivation", W22, N=2, M=4, K=1)
    assert rep["core_dimension"] == 2 and rep["residual_check"] == "pass"


def test_classify_rejects_bad_config():
    with pytest.raises(InvalidCore):
        classify("biderivation", VIRASORO, N=3, M=6, K=4)
    with pytest.raises(InvalidCore):
        classify("biderivation", VIRASORO, N=3, M=6, K=0)
    with pytest.raises(WindowTooSmall):
        classify("nonsense", VIRASORO)


def test_classify_report_is_deterministic_and_parallel_safe():
    a = classify("biderivation", W22, N=3, M=6, K=1)
    b = classify("biderivation", W22, N=3, M=6, K=1)
    c = classify("biderivation", W22, N=3, M=6, K=1, workers=3)
    assert report_json(a, strip_timings=True) == report_json(b, strip_timings=True)
    assert report_json(a, strip_timings=True) == report_json(c, strip_timings=True)
    assert a["timings_ms"]["total"] >= 0


def test_classify_biderivation_analysis_flags():
    rep = classify("biderivation", W22, N=4, M=8, K=2)
    assert rep["core_dimension"] == 2
    assert rep["analysis"]["graded"] is True
    assert rep["analysis"]["central_argument_values_zero"] is True
    assert rep["residual_check"] == "pass"
    lams = {(p["lambda"], p["mu"]) for p in rep["parameters"]}
    assert len(lams) == 2


def test_classify_core_maps_round_trip_through_files():
    import json

    from walgebra.maps import map_from_json

    rep = classify("biderivation", VIRASORO, N=4, M=8, K=2)
    blob = json.loads(report_json(rep))
    m = map_from_json(blob["core_basis"][0])
    assert run_verification(m, "biderivation")["status"] == "pass"
