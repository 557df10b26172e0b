import random
from fractions import Fraction

import pytest

from motivicdt.quivers import (
    Arrow,
    PathPolynomial,
    Potential,
    Quiver,
    QuiverSyntaxError,
    Representation,
    critical_check,
    cyclic_derivative,
    derivative_evaluated,
    euler_form,
    first_order_trace,
    gauge_transform,
    identity,
    mat_inverse,
    mat_mul,
    mat_rank,
    matrix,
    moduli_dim,
    nn_open_conditions,
    parse_potential,
    parse_quiver,
    preset,
    render_quiver_file,
    specialize,
    superpotential_relations,
    trace_pairing,
    trace_potential,
    validate_potential,
    zeros,
)

CONIFOLD_FILE = """\
# framed conifold
vertex 1
vertex 2
vertex inf framing
arrow a1: 1 -> 2
arrow a2: 1 -> 2
arrow b1: 2 -> 1
arrow b2: 2 -> 1
arrow iota: inf -> 1
potential: + a1 b1 a2 b2 - a1 b2 a2 b1
"""


def rand_matrix(rng, rows, cols):
    return matrix(
        [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
         for _ in range(rows)]
    )


def rand_invertible(rng, n):
    while True:
        m = rand_matrix(rng, n, n)
        try:
            mat_inverse(m)
            return m
        except ValueError:
            continue


def conifold_rep(rng, n):
    quiver, _ = preset("conifold-framed")
    dims = {"1": n + 1, "2": n, "inf": 1}
    maps = {a.name: rand_matrix(rng, dims[a.target], dims[a.source]) for a in quiver.arrows}
    return Representation(quiver, dims, maps)


# -- parsing ------------------------------------------------------------------


def test_parse_conifold_file():
    quiver = parse_quiver(CONIFOLD_FILE)
    assert quiver.framing == "inf"
    assert quiver.arrow("b2") == Arrow("b2", "2", "1")
    potential = parse_potential(CONIFOLD_FILE, quiver)
    assert potential == preset("conifold-framed")[1]


def test_parse_potential_rejects_noncyclic_word():
    quiver = parse_quiver(CONIFOLD_FILE)
    with pytest.raises(QuiverSyntaxError, match="cannot compose"):
        parse_potential("potential: + a1 a1", quiver)


def test_parse_reports_position_of_unknown_arrow():
    quiver = parse_quiver(CONIFOLD_FILE)
    with pytest.raises(QuiverSyntaxError) as info:
        parse_potential("potential: + a1 bogus", quiver)
    assert info.value.line == 1
    assert info.value.column == 17


def test_parse_rejects_duplicates():
    with pytest.raises(QuiverSyntaxError, match="duplicate vertex"):
        parse_quiver("vertex 1\nvertex 1")
    with pytest.raises(QuiverSyntaxError, match="duplicate arrow"):
        parse_quiver("vertex 1\narrow a: 1 -> 1\narrow a: 1 -> 1")


def test_parse_rejects_unknown_vertex():
    with pytest.raises(QuiverSyntaxError, match="unknown vertex"):
        parse_quiver("vertex 1\narrow a: 1 -> 2")


def test_render_parse_roundtrip_for_presets():
    for name in ("bbs", "conifold-framed", "q-r", "q-alpha:1,2", "q-alpha:1,1,3"):
        quiver, potential = preset(name)
        validate_potential(quiver, potential)
        text = render_quiver_file(quiver, potential, header=(name,))
        assert parse_quiver(text) == quiver
        assert parse_potential(text, quiver) == potential


def test_q_alpha_with_one_part_matches_q_r_shape():
    quiver, potential = preset("q-alpha:3")
    ref, ref_w = preset("q-r")
    assert len(quiver.arrows) == len(ref.arrows)
    assert len(potential.terms) == len(ref_w.terms)


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("nope")
    with pytest.raises(ValueError):
        preset("q-alpha:0,2")


# -- cyclic calculus -------------------------------------------------------------


def test_cyclic_derivative_of_conifold_potential():
    _, w = preset("conifold-framed")
    assert cyclic_derivative(w, "b1") == PathPolynomial(
        {("a2", "b2", "a1"): 1, ("a1", "b2", "a2"): -1}
    )


def test_cyclic_derivative_of_commutator_potential():
    _, w = preset("bbs")
    assert cyclic_derivative(w, "x") == PathPolynomial({("y", "z"): 1, ("z", "y"): -1})


def test_cyclic_derivative_of_absent_arrow_is_zero():
    _, w = preset("conifold-framed")
    assert cyclic_derivative(w, "iota").is_zero()


def test_cyclic_derivative_rotation_invariance():
    _, w = preset("conifold-framed")
    rotated = Potential(
        ((1, ("b1", "a2", "b2", "a1")), (-1, ("b2", "a2", "b1", "a1")))
    )
    for name in ("a1", "a2", "b1", "b2"):
        assert cyclic_derivative(w, name) == cyclic_derivative(rotated, name)


def _sign_normalized(p):
    word = sorted(p.terms)[0]
    if p.terms[word] < 0:
        return PathPolynomial({w: -c for w, c in p.terms.items()})
    return p


def test_reduced_quiver_relations_after_framing_arrow_vanishes():
    _, w = preset("q-r")
    rels = specialize(superpotential_relations(w), {"b1p"})
    got = sorted(str(_sign_normalized(r)) for r in rels)
    expected = sorted(
        str(_sign_normalized(PathPolynomial(t)))
        for t in (
            {("a2p", "a1pp"): 1, ("a1p", "a2pp"): -1},
            {("a1pp", "a2pp"): 1, ("a2pp", "a1pp"): -1},
            {("a1pp", "b1pp"): 1, ("b1pp", "a1pp"): -1},
            {("a2pp", "b1pp"): 1, ("b1pp", "a2pp"): -1},
        )
    )
    assert got == expected


def test_bbs_relations_are_commutators():
    _, w = preset("bbs")
    rels = specialize(superpotential_relations(w), set())
    assert sorted(str(_sign_normalized(r)) for r in rels) == sorted(
        str(_sign_normalized(PathPolynomial(t)))
        for t in (
            {("y", "z"): 1, ("z", "y"): -1},
            {("z", "x"): 1, ("x", "z"): -1},
            {("x", "y"): 1, ("y", "x"): -1},
        )
    )


def test_zero_potential_has_no_relations():
    assert specialize(superpotential_relations(Potential(())), set()) == []


# -- numeric forms ------------------------------------------------------------------


def test_euler_form_three_loop():
    quiver = Quiver(("1",), (Arrow("x", "1", "1"), Arrow("y", "1", "1"), Arrow("z", "1", "1")))
    assert euler_form(quiver, {"1": 1}, {"1": 1}) == -2
    n = 4
    assert euler_form(quiver, {"1": n}, {"1": n}) == n * n - 3 * n * n


def test_euler_form_unframed_conifold():
    quiver = Quiver(
        ("1", "2"),
        (Arrow("a1", "1", "2"), Arrow("a2", "1", "2"),
         Arrow("b1", "2", "1"), Arrow("b2", "2", "1")),
    )
    assert euler_form(quiver, {"1": 2, "2": 1}, {"1": 2, "2": 1}) == -3


def test_euler_form_no_arrows():
    quiver = Quiver(("1", "2"), ())
    assert euler_form(quiver, {"1": 2, "2": 3}, {"1": 4, "2": 5}) == 23


def test_euler_form_framing_flag():
    quiver, _ = preset("bbs")
    d = {"1": 2, "inf": 1}
    assert euler_form(quiver, d, d, include_framing=False) == 4 - 3 * 4
    assert euler_form(quiver, d, d, include_framing=True) == 5 - 3 * 4 - 2


def test_moduli_dims():
    con, _ = preset("conifold-framed")
    bbs, _ = preset("bbs")
    for n in range(51):
        assert moduli_dim(con, {"1": n + 1, "2": n, "inf": 1}) == 2 * n * n + 3 * n
        assert moduli_dim(bbs, {"1": n, "inf": 1}) == 2 * n * n + n
    assert moduli_dim(con, {"1": 1, "2": 0, "inf": 1}) == 0


def test_moduli_dim_requires_framing():
    quiver = Quiver(("1",), ())
    with pytest.raises(ValueError):
        moduli_dim(quiver, {"1": 1})


# -- representations -----------------------------------------------------------------


def test_zero_representation_is_critical():
    quiver, w = preset("conifold-framed")
    dims = {"1": 3, "2": 2, "inf": 1}
    maps = {a.name: zeros(dims[a.target], dims[a.source]) for a in quiver.arrows}
    rep = Representation(quiver, dims, maps)
    assert trace_potential(rep, w) == 0
    assert critical_check(rep, w)


def test_scalar_commutator_rep_is_critical():
    quiver, w = preset("bbs")
    rep = Representation(
        quiver,
        {"1": 1, "inf": 1},
        {"x": matrix([[2]]), "y": matrix([[3]]), "z": matrix([[5]]), "u": matrix([[1]])},
    )
    assert trace_potential(rep, w) == 0
    assert critical_check(rep, w)


def test_representation_shape_validation():
    quiver, _ = preset("bbs")
    with pytest.raises(ValueError, match="expected shape"):
        Representation(
            quiver,
            {"1": 2, "inf": 1},
            {"x": zeros(2, 2), "y": zeros(2, 2), "z": zeros(1, 2), "u": zeros(2, 1)},
        )


def test_directional_derivative_identity():
    rng = random.Random(21)
    quiver, w = preset("conifold-framed")
    for _ in range(50):
        n = rng.randint(1, 4)
        rep = conifold_rep(rng, n)
        arrow = rng.choice(quiver.arrows)
        direction = rand_matrix(rng, rep.dims[arrow.target], rep.dims[arrow.source])
        assert first_order_trace(rep, w, arrow.name, direction) == trace_pairing(
            rep, w, arrow.name, direction
        )


def test_gauge_invariance():
    rng = random.Random(22)
    _, w = preset("conifold-framed")
    for _ in range(50):
        n = rng.randint(1, 4)
        rep = conifold_rep(rng, n)
        value = trace_potential(rep, w)
        g = {"1": rand_invertible(rng, n + 1), "2": rand_invertible(rng, n)}
        assert trace_potential(gauge_transform(rep, g), w) == value


def test_critical_check_detects_noncritical_point():
    rng = random.Random(23)
    _, w = preset("conifold-framed")
    found = False
    for _ in range(20):
        rep = conifold_rep(rng, 2)
        vanishing = all(
            all(x == 0 for row in derivative_evaluated(rep, w, a) for x in row)
            for a in rep.quiver.arrow_names()
        )
        assert critical_check(rep, w) == vanishing
        found = found or not vanishing
    assert found


# -- open conditions -------------------------------------------------------------------


def _rep_with(b2, iota):
    quiver, _ = preset("conifold-framed")
    dims = {"1": 2, "2": 1, "inf": 1}
    maps = {
        "a1": zeros(1, 2),
        "a2": zeros(1, 2),
        "b1": zeros(2, 1),
        "b2": b2,
        "iota": iota,
    }
    return Representation(quiver, dims, maps)


def test_nn_conditions_good_point():
    rep = _rep_with(matrix([[1], [0]]), matrix([[0], [1]]))
    assert nn_open_conditions(rep) == (True, True)


def test_nn_conditions_degenerate_b2():
    rep = _rep_with(zeros(2, 1), matrix([[0], [1]]))
    injective, _spanning = nn_open_conditions(rep)
    assert not injective


def test_nn_conditions_non_spanning():
    rep = _rep_with(matrix([[1], [0]]), matrix([[1], [0]]))
    assert nn_open_conditions(rep) == (True, False)


def test_nn_conditions_dimension_check():
    quiver, _ = preset("conifold-framed")
    dims = {"1": 2, "2": 2, "inf": 1}
    maps = {a.name: zeros(dims[a.target], dims[a.source]) for a in quiver.arrows}
    with pytest.raises(ValueError):
        nn_open_conditions(Representation(quiver, dims, maps))


def test_mat_rank_and_inverse():
    m = matrix([[1, 2], [2, 4]])
    assert mat_rank(m) == 1
    inv = mat_inverse(matrix([[2, 1], [1, 1]]))
    assert mat_mul(inv, matrix([[2, 1], [1, 1]])) == identity(2)
