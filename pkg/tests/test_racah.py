import pytest

from simplexalg.errors import DegenerateParameter
from simplexalg.jacobi import level_indices
from simplexalg.params import ParamVector
from simplexalg.poly import MultiPoly
from simplexalg.racah import (
    FormFactor,
    PrintedCoefficient,
    RacahOp,
    RacahTerm,
    Summand,
    ZFraction,
    b12_operator,
    b123_operator,
    b134_operator,
    b23_operator,
    certificate_2d,
    explicit_3d_operator,
    parameter_maps,
    predicted_m_action,
    racah_coefficient,
    racah_kernel,
    racah_operator,
)
from simplexalg.scalar import Rat

G0_2 = ParamVector([0, 0, 0])
G0_3 = ParamVector([0, 0, 0, 0])
G_2 = ParamVector([Rat(1, 2), Rat(1, 3), Rat(1, 4)])
G_3 = ParamVector([Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(1, 5)])


# -- explicit operators -------------------------------------------------------


def test_b12_printed_values():
    op = b12_operator(G0_2)
    assert op.coefficient((-1, 1), (1, 0)) == Rat(3, 2)
    assert op.coefficient((0, 0), (1, 0)) == Rat(-3, 2)
    assert op.coefficient((1, -1), (0, 1)) == Rat(1, 2)
    assert op.coefficient((0, 0), (0, 1)) == Rat(-1, 2)


def test_b12_boundary_factors_vanish():
    op = b12_operator(G_2)
    for n2 in range(4):
        assert op.coefficient((-1, 1), (0, n2)) == 0
    for n1 in range(4):
        assert op.coefficient((1, -1), (n1, 0)) == 0


def test_b12_matrix_is_the_pinned_two_by_two():
    from simplexalg.linalg import ExactMatrix

    matrix = b12_operator(G0_2).matrix_on_level(1)
    assert matrix == ExactMatrix([[Rat(-3, 2), Rat(1, 2)], [Rat(3, 2), Rat(-1, 2)]])


def test_b23_printed_value():
    op = b23_operator(G0_3)
    assert op.coefficient((0, -1, 1), (0, 1, 0)) == Rat(3, 2)


def test_b123_structural_zeroes():
    op = b123_operator(G_3)
    for nu in [(2, 0, 1), (1, 1, 1), (3, 1, 0)]:
        assert op.coefficient((1, -2, 1), nu) == 0
    assert op.coefficient((1, -2, 1), (0, 2, 1)) != 0


def test_b134_structural_zeroes():
    op = b134_operator(G_3)
    for n2 in range(3):
        for n3 in range(3):
            assert op.coefficient((-1, 1, 0), (0, n2, n3)) == 0


def test_shift_conservation_enforced():
    with pytest.raises(ValueError):
        RacahOp(2, "bad", [RacahTerm((1, 0), None)])


def test_matrix_on_level_structure():
    op = b23_operator(G_3)
    for n in range(4):
        matrix = op.matrix_on_level(n)
        assert matrix.rows == matrix.cols == len(level_indices(n, 3))


def test_numerator_first_rule():
    # numerator vanishes together with the denominator -> the summand is 0
    # and the denominator must never be touched
    coef = PrintedCoefficient(
        "probe",
        [
            Summand(
                Rat(1),
                (FormFactor("nu1", lambda v: v[0], structural=True),),
                (FormFactor("nu1", lambda v: v[0]),),
            )
        ],
    )
    assert coef.eval((0, 5)) == 0
    # nonzero numerator over a vanishing denominator is degenerate
    bad = PrintedCoefficient(
        "probe2",
        [
            Summand(
                Rat(1),
                (FormFactor("one", lambda v: 1),),
                (FormFactor("nu1", lambda v: v[0]),),
            )
        ],
    )
    with pytest.raises(DegenerateParameter):
        bad.eval((0, 5))
    assert bad.eval((2, 5)) == Rat(1, 2)


def test_strict_scan_flags_b123_at_integer_parameters():
    # gamma = 0 makes (g34 + 2 nu3) vanish at nu3 = 0 while the structural
    # index factors do not; the strict pre-scan must reject it.
    problems = b123_operator(G0_3).scan_degenerate(2)
    assert problems
    assert b12_operator(G0_2).scan_degenerate(4) == []
    assert b123_operator(G_3).scan_degenerate(4) == []


def test_certificate_values():
    assert certificate_2d((1, 1), G0_2) == Rat(40, 3)
    assert certificate_2d((1, 1), ParamVector([Rat(1, 2)] * 3)) != 0
    with pytest.raises(ValueError):
        certificate_2d((0, 1), G0_2)
    for nu in [(1, 1), (2, 1), (1, 2), (3, 2)]:
        assert certificate_2d(nu, G_2) != 0


# -- kernels and general coefficients ----------------------------------------


def test_kernel_values():
    values = racah_kernel(0, [1], [0, 2])
    assert values["B00"] == Rat(7, 2)
    values = racah_kernel(1, [1], [0, 2, 0])
    assert values["b0"] == Rat(15, 2)
    assert values["b1"] == 5 * 4
    # B^{1,0} carries the factor (z_{i+1} - z_i)
    assert racah_kernel(1, [3, 3], [0, Rat(1, 2), Rat(1, 3)])["B10"] == 0


def test_racah_coefficient_matches_paper_product():
    # C_{1,(0)} = B_0^{00} B_1^{00} / b_1^0 as a rational function
    beta = [Rat(1, 2), Rat(1, 3), Rat(1, 5)]
    frac = racah_coefficient(1, (0,), beta)
    z = [Rat(3), Rat(7)]
    values = racah_kernel(0, z, beta)
    values1 = racah_kernel(1, z, beta)
    assert frac.evaluate(z) == values["B00"] * values1["B00"] / values1["b0"]
    # C_{1,(1)} = B_0^{01} B_1^{10} / b_1^1
    frac1 = racah_coefficient(1, (1,), beta)
    assert frac1.evaluate(z) == values["B01"] * values1["B10"] / values1["b1"]


def test_involution_is_an_involution():
    beta = [Rat(1, 2), Rat(1, 3), Rat(1, 5)]
    frac = racah_coefficient(1, (1,), beta)
    twice = frac.involution(1, beta[1]).involution(1, beta[1])
    assert twice.equals(frac)
    # and C_{1,(-1)} is the involution image of C_{1,(1)}
    assert racah_coefficient(1, (-1,), beta).equals(frac.involution(1, beta[1]))


def test_zfraction_reduce_and_add():
    z1 = MultiPoly.variable(2, 0)
    one = MultiPoly.const(2, 1)
    frac = ZFraction(2, (z1 - one) * (z1 + one)).div_linear(1, 1)
    reduced = frac.reduce()
    assert not reduced.den
    assert reduced.num == z1 + one
    with_pole = ZFraction(2, one).div_linear(1, 1)
    total = with_pole.add(ZFraction.from_const(2, 1))
    assert total.evaluate([3, 0]) == Rat(1, 2) + 1
    with pytest.raises(DegenerateParameter):
        with_pole.evaluate([1, 0])
    with pytest.raises(ValueError):
        with_pole.subs_const(1, 5)


def test_i_invariance_of_the_general_family():
    beta = [Rat(1, 2), Rat(1, 3), Rat(1, 5), Rat(1, 7)]
    op = racah_operator(2, beta)
    for k in (1, 2):
        assert op.apply_involution(k).equals(op)
    op1 = racah_operator(1, beta[:3])
    assert op1.apply_involution(1).equals(op1)


def _eval_padded(frac, point):
    """Evaluate at a lattice point, padding spectator variables with 0."""
    values = list(point)[: frac.nvars]
    values += [Rat(0)] * (frac.nvars - len(values))
    return frac.evaluate(values)


def _compose_on_delta(a, b, src, dst):
    """<delta_dst | a b | delta_src> on the integer lattice."""
    total = Rat(0)
    for sigma_a, frac_a in a.terms.items():
        mid = tuple(d + s for d, s in zip(dst, sigma_a + (0,) * (len(dst) - len(sigma_a))))
        coeff_a = _eval_padded(frac_a, dst)
        if coeff_a == 0:
            continue
        sigma_b = tuple(s - m for s, m in zip(src, mid))
        if any(v != 0 for v in sigma_b[b.j :]) or any(abs(v) > 1 for v in sigma_b[: b.j]):
            continue
        frac_b = b.terms.get(sigma_b[: b.j])
        if frac_b is None:
            continue
        total += coeff_a * _eval_padded(frac_b, mid)
    return total


@pytest.mark.parametrize("pair", [(1, 2), (1, 3), (2, 3)])
def test_pairwise_commutativity_on_grid(pair):
    beta = [Rat(1, 2), Rat(1, 3), Rat(1, 5), Rat(1, 7), Rat(1, 11)]
    ja, jb = pair
    a = racah_operator(ja, beta[: ja + 2])
    b = racah_operator(jb, beta[: jb + 2])
    dims = jb  # lattice dimension of the larger operator
    if dims == 2:
        grid = [(u, v) for u in range(4, 10) for v in range(11, 17)]
    else:
        grid = [(u, v, w) for u in range(4, 7) for v in range(8, 11) for w in range(12, 15)]
    for src in grid:
        for dst in grid:
            if sum(abs(x - y) for x, y in zip(src, dst)) > 4:
                continue
            left = _compose_on_delta(a, b, src, dst)
            right = _compose_on_delta(b, a, src, dst)
            assert left == right, (src, dst)


def test_general_operator_term_counts():
    beta = [Rat(1, 2), Rat(1, 3), Rat(1, 5), Rat(1, 7)]
    assert len(racah_operator(1, beta[:3]).terms) <= 3
    assert len(racah_operator(2, beta).terms) <= 9


def test_commutator_with_diagonal_has_printed_off_diagonal_terms():
    # [diag(lambda_2), B12] keeps only the two shifts, with coefficients
    # (lambda_2(nu_2 +- 1) - lambda_2(nu_2)) times the B12 coefficients
    from simplexalg.verify import eigenvalue

    gamma = G_2
    n = 4
    op = b12_operator(gamma)
    basis = level_indices(n, 2)
    index = {nu: i for i, nu in enumerate(basis)}
    b_matrix = op.matrix_on_level(n)
    diag = [eigenvalue(2, nu, gamma) for nu in basis]
    size = len(basis)
    comm = [
        [diag[r] * b_matrix[(r, c)] - b_matrix[(r, c)] * diag[c] for c in range(size)]
        for r in range(size)
    ]
    lam = lambda n2: -n2 * (n2 + gamma[2] + gamma[3] + 1)
    for c, nu in enumerate(basis):
        for r in range(size):
            expected = Rat(0)
            target = basis[r]
            if target == (nu[0] - 1, nu[1] + 1):
                expected = (lam(nu[1] + 1) - lam(nu[1])) * op.coefficient((-1, 1), nu)
            elif target == (nu[0] + 1, nu[1] - 1):
                expected = (lam(nu[1] - 1) - lam(nu[1])) * op.coefficient((1, -1), nu)
            assert comm[r][c] == expected, (target, nu)


# -- parameter maps and the predicted actions --------------------------------


def test_parameter_maps():
    plus, minus = parameter_maps(G0_3, 2, 3)
    assert list(minus.values) == [0, 1, 2, 3]
    # beta+_j = -(tail sum) - 2n - d + j = j - 7 here, with beta+_0 = gamma_1
    assert list(plus.values) == [0, -6, -5, -4]
    plus2, _ = parameter_maps(G_3, 1, 3)
    assert plus2[0] == G_3[1]
    assert plus2[1] == -(G_3[2] + G_3[3] + G_3[4]) - 2 - 3 + 1


def test_predicted_action_validation():
    with pytest.raises(ValueError):
        predicted_m_action("sideways", 2, 1, 2, G_2)
    with pytest.raises(ValueError):
        predicted_m_action("plus", 1, 1, 2, G_2)
    with pytest.raises(ValueError):
        predicted_m_action("plus", 3, 1, 2, G_2)


@pytest.mark.parametrize("n", range(5))
def test_predicted_minus_reproduces_b12(n):
    pred = predicted_m_action("minus", 2, n, 2, G_2)
    assert pred.matrix_on_level(n) == b12_operator(G_2).matrix_on_level(n)


@pytest.mark.parametrize(
    "which,variant,j",
    [("B23", "minus", 3), ("B123", "minus", 2), ("B134", "plus", 2)],
)
def test_predicted_reproduces_explicit_3d(which, variant, j):
    explicit = explicit_3d_operator(which, G_3)
    for n in range(4):
        pred = predicted_m_action(variant, j, n, 3, G_3)
        assert pred.matrix_on_level(n) == explicit.matrix_on_level(n), n


def test_predicted_coefficients_match_shift_by_shift():
    explicit = b23_operator(G_3)
    pred = predicted_m_action("minus", 3, 3, 3, G_3)
    shifts = set(explicit.shifts()) | set(pred.shifts())
    for nu in level_indices(3, 3):
        for shift in shifts:
            assert explicit.coefficient(shift, nu) == pred.coefficient(shift, nu), (
                nu,
                shift,
            )


def test_explicit_dispatch_validates():
    with pytest.raises(ValueError):
        explicit_3d_operator("B99", G_3)


def test_racah_json_shape():
    payload = b12_operator(G0_2).to_json(1)
    assert payload["name"] == "B12"
    assert {tuple(t["shift"]) for t in payload["terms"]} == {(-1, 1), (0, 0), (1, -1)}
    for term in payload["terms"]:
        assert all(set(s) == {"nu", "value"} for s in term["coef_at"])
