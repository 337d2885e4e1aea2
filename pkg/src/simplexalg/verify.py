"""Exact matrix representations and the identity-verification suites.

``ModuleContext`` fixes a cell (d, n, gamma) and caches the graded family
{P_mu : |mu| <= n} together with the inverse of its monomial-coordinate
matrix, so expanding an operator image in the P basis is a single exact
matrix product.  ``matrix_of`` returns the square block of a differential
operator on the top level {|nu| = n}; it solves against the *full* graded
family and asserts that nothing leaks into lower degrees, turning invariance
of the degree-n span into a tested postcondition.

Every verification below is an exact rational identity; a check result is
pass, fail (with a counterexample payload), or degenerate (a difference
operator denominator vanished for this gamma, recorded, never silently
skipped).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .diffops import DiffOp, commutator, f_combination, jm_recovered_generators, l_operator, l_total, m_operator
from .errors import DegenerateParameter, ExactAlgebraError
from .jacobi import graded_indices, jacobi_simplex, level_indices, monomials_upto
from .linalg import ExactMatrix, SpanBasis
from .moments import inner_product
from .params import ParamVector, require_valid
from .poly import MultiPoly
from .racah import (
    b12_operator,
    b123_operator,
    b134_operator,
    b23_operator,
    certificate_2d,
    predicted_m_action,
)
from .scalar import Rat, rat_str

SUITES = (
    "spectral",
    "racah",
    "f-relation",
    "kd",
    "orthogonality",
    "irreducibility",
    "separation",
    "relations",
)


def eigenvalue(j: int, nu: Sequence[int], gamma) -> Rat:
    """Joint eigenvalue of the commuting operator M_j on P_nu."""
    params = require_valid(gamma)
    d = len(nu)
    tail = sum(nu[j - 1 :])
    return -tail * (tail + params.tail_sum(j) + d + 1 - j)


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "degenerate"
    details: str = ""
    millis: int = 0

    def to_json(self, include_timing: bool = False) -> dict:
        out = {"name": self.name, "status": self.status, "details": self.details}
        if include_timing:
            out["millis"] = self.millis
        return out


@dataclass
class VerificationReport:
    d: int
    n: int
    gamma: ParamVector
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    @property
    def degenerate(self) -> bool:
        return any(c.status == "degenerate" for c in self.checks)

    def to_json(self, include_timing: bool = False) -> dict:
        # timing is excluded from persisted reports so identical runs are
        # byte-identical; pass include_timing=True for live diagnostics.
        return {
            "d": self.d,
            "n": self.n,
            "gamma": self.gamma.to_json(),
            "checks": [c.to_json(include_timing) for c in self.checks],
        }

    def json_bytes(self) -> bytes:
        return json.dumps(self.to_json(), indent=2, sort_keys=False).encode()


class ModuleInvarianceError(ExactAlgebraError):
    """An operator failed to preserve the degree-n span."""


class ModuleContext:
    """Cached exact data for one cell (d, n, gamma)."""

    def __init__(self, d: int, n: int, gamma):
        self.d = d
        self.n = n
        self.gamma = require_valid(gamma, d)
        self.level = level_indices(n, d)
        self.graded = graded_indices(n, d)
        self.monomials = monomials_upto(n, d)
        self._mono_index = {m: i for i, m in enumerate(self.monomials)}
        self.polys = {nu: jacobi_simplex(nu, self.gamma) for nu in self.graded}
        columns = [self._coords(self.polys[nu]) for nu in self.graded]
        self._basis_matrix = ExactMatrix.from_columns(columns)
        self._basis_inverse = self._basis_matrix.inverse()
        self._matrices: dict = {}

    def _coords(self, poly: MultiPoly) -> list:
        col = [Rat(0)] * len(self.monomials)
        for exponent, coefficient in poly.terms.items():
            col[self._mono_index[exponent]] = coefficient
        return col

    @property
    def level_polys(self) -> list:
        return [self.polys[nu] for nu in self.level]

    def expand(self, poly: MultiPoly) -> list:
        """Coefficients of ``poly`` in the graded family (exact)."""
        if poly.total_degree() > self.n:
            raise ModuleInvarianceError(
                f"degree {poly.total_degree()} image escapes the degree-{self.n} space"
            )
        return self._basis_inverse.matvec(self._coords(poly))

    def matrix_of(self, op: DiffOp, name: str | None = None) -> ExactMatrix:
        """Square matrix of ``op`` on {|nu| = n}; columns are images of P_nu.

        Raises ModuleInvarianceError when the image leaks below degree n.
        """
        if name is not None and name in self._matrices:
            return self._matrices[name]
        lower = len(self.graded) - len(self.level)
        columns = []
        for nu in self.level:
            coeffs = self.expand(op.apply(self.polys[nu]))
            for i in range(lower):
                if coeffs[i] != 0:
                    raise ModuleInvarianceError(
                        f"image of P_{nu} has coefficient {rat_str(coeffs[i])} "
                        f"on lower-degree index {self.graded[i]}"
                    )
            columns.append(coeffs[lower:])
        matrix = ExactMatrix.from_columns(columns)
        if name is not None:
            self._matrices[name] = matrix
        return matrix

    def generator_matrix(self, i: int, j: int) -> ExactMatrix:
        return self.matrix_of(
            l_operator(i, j, self.d, self.gamma), name=f"L:{min(i,j)},{max(i,j)}"
        )

    def m_matrix(self, j: int, variant: str = "plain") -> ExactMatrix:
        return self.matrix_of(
            m_operator(j, self.d, self.gamma, variant), name=f"M{variant}:{j}"
        )

    def all_generator_matrices(self) -> dict:
        return {
            (i, j): self.generator_matrix(i, j)
            for i, j in combinations(range(1, self.d + 2), 2)
        }


def matrix_of(op: DiffOp, ctx: ModuleContext) -> ExactMatrix:
    return ctx.matrix_of(op)


def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    start = time.perf_counter()
    result = fn()
    result.millis = int((time.perf_counter() - start) * 1000)
    return result


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def verify_spectral(ctx: ModuleContext) -> CheckResult:
    """M_j P_nu = lambda_j(nu) P_nu at the polynomial level, plus diagonality."""
    for j in range(1, ctx.d + 1):
        op = m_operator(j, ctx.d, ctx.gamma)
        for nu in ctx.level:
            expected = ctx.polys[nu].scale(eigenvalue(j, nu, ctx.gamma))
            if op.apply(ctx.polys[nu]) != expected:
                return CheckResult(
                    "spectral", "fail", f"M_{j} P_{nu} != lambda_{j}({nu}) P_{nu}"
                )
        matrix = ctx.m_matrix(j)
        for a, nu in enumerate(ctx.level):
            for b in range(len(ctx.level)):
                expected = eigenvalue(j, nu, ctx.gamma) if a == b else Rat(0)
                if matrix[(a, b)] != expected:
                    return CheckResult(
                        "spectral", "fail", f"matrix of M_{j} not diagonal at {ctx.level[b]}"
                    )
    return CheckResult("spectral", "pass", f"{ctx.d} commuting operators on {len(ctx.level)} indices")


def verify_separation(ctx: ModuleContext) -> CheckResult:
    """(lambda_1..lambda_d) separates the degree indices of the level."""
    seen = {}
    for nu in ctx.level:
        key = tuple(eigenvalue(j, nu, ctx.gamma) for j in range(1, ctx.d + 1))
        if key in seen:
            return CheckResult(
                "separation", "fail", f"indices {seen[key]} and {nu} share eigenvalues"
            )
        seen[key] = nu
    return CheckResult("separation", "pass", f"{len(ctx.level)} distinct eigenvalue tuples")


def verify_kd(d: int, gamma) -> CheckResult:
    """Pairwise commutativity relations among the generators, fully expanded."""
    params = require_valid(gamma, d)
    ops = {
        (i, j): l_operator(i, j, d, params) for i, j in combinations(range(1, d + 2), 2)
    }
    for (i, j), (k, l) in combinations(ops, 2):
        if len({i, j, k, l}) == 4:
            if not commutator(ops[(i, j)], ops[(k, l)]).is_zero():
                return CheckResult("kd", "fail", f"[L_{(i,j)}, L_{(k,l)}] != 0")
    for i, j, k in combinations(range(1, d + 2), 3):
        for a, b, c in ((i, j, k), (i, k, j), (j, k, i)):
            lhs = commutator(
                ops[(min(a, b), max(a, b))],
                ops[(min(a, c), max(a, c))] + ops[(min(b, c), max(b, c))],
            )
            if not lhs.is_zero():
                return CheckResult("kd", "fail", f"[L_{(a,b)}, L_{(a,c)}+L_{(b,c)}] != 0")
    for ji in range(1, d + 1):
        for jj in range(ji + 1, d + 1):
            mi = m_operator(ji, d, params)
            mj = m_operator(jj, d, params)
            if not commutator(mi, mj).is_zero():
                return CheckResult("kd", "fail", f"[M_{ji}, M_{jj}] != 0")
    return CheckResult("kd", "pass", f"all commutativity relations hold for d={d}")


def verify_matrix_commutation(ctx: ModuleContext) -> CheckResult:
    """Commutation relations at the level of exact module matrices."""
    d = ctx.d
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            a, b = ctx.m_matrix(i), ctx.m_matrix(j)
            if a @ b != b @ a:
                return CheckResult("kd-matrix", "fail", f"[M_{i}, M_{j}] != 0 on the module")
    pairs = list(combinations(range(1, d + 2), 2))
    for (i, j), (k, l) in combinations(pairs, 2):
        if len({i, j, k, l}) == 4:
            a = ctx.generator_matrix(i, j)
            b = ctx.generator_matrix(k, l)
            if a @ b != b @ a:
                return CheckResult(
                    "kd-matrix", "fail", f"[L_({i},{j}), L_({k},{l})] != 0 on the module"
                )
    return CheckResult("kd-matrix", "pass", "matrix commutation relations hold")


def _racah_pairs(ctx: ModuleContext, mode: str):
    """(label, differential DiffOp, RacahOp) triples to compare on this cell."""
    d, gamma = ctx.d, ctx.gamma
    pairs = []
    if d == 2:
        pairs.append(("L12=B12", l_operator(1, 2, 2, gamma), b12_operator(gamma)))
    if d == 3:
        pairs.append(("L23=B23", l_operator(2, 3, 3, gamma), b23_operator(gamma)))
        pairs.append(("L134=B134", m_operator(2, 3, gamma, "plus"), b134_operator(gamma)))
        pairs.append(("L123=B123", m_operator(2, 3, gamma, "minus"), b123_operator(gamma)))
    for j in range(2, d + 1):
        for variant, tag in (("plus", "+"), ("minus", "-")):
            pairs.append(
                (
                    f"M{tag}:{j}=R{tag}:{j}",
                    m_operator(j, d, gamma, variant),
                    predicted_m_action(variant, j, ctx.n, d, gamma),
                )
            )
    return pairs


def verify_difference_action(ctx: ModuleContext, mode: str = "strict") -> CheckResult:
    """Exact matrix equality of each differential operator and its difference form."""
    degenerate = []
    for label, diff_op, racah_op in _racah_pairs(ctx, mode):
        if mode == "strict":
            racah_matrix, problems = racah_op.assemble(ctx.n)
            if problems:
                degenerate.append(f"{label}: {problems[0]}")
                continue
        else:
            try:
                racah_matrix = racah_op.matrix_on_level(ctx.n)
            except DegenerateParameter as exc:
                degenerate.append(f"{label}: {exc}")
                continue
        diff_matrix = ctx.matrix_of(diff_op)
        if diff_matrix != racah_matrix:
            return CheckResult("racah", "fail", f"{label} matrices differ on level {ctx.n}")
    if degenerate:
        return CheckResult("racah", "degenerate", "; ".join(degenerate))
    return CheckResult(
        "racah", "pass", f"difference = differential for {len(_racah_pairs(ctx, mode))} operators"
    )


def _f_index_choices(d: int) -> list:
    choices = [(2, 3, 1, d + 1)]
    if d >= 3:
        choices.append((1, d + 1, 2, 3))
    if d >= 4:
        choices.append((2, 4, 1, d + 1))
        choices.append((1, 2, 3, 4))
    return choices


def verify_f_relation(ctx: ModuleContext, operator_level: bool = True) -> CheckResult:
    """(1-g_k^2)(1-g_l^2) L_{i,j} = F, as expanded operators and as matrices."""
    d, gamma = ctx.d, ctx.gamma
    if d < 3:
        return CheckResult("f-relation", "pass", "vacuous: needs four distinct indices")
    for i, j, k, l in _f_index_choices(d):
        factor = (1 - gamma[k] ** 2) * (1 - gamma[l] ** 2)
        f_op = f_combination(i, j, k, l, d, gamma)
        target = l_operator(i, j, d, gamma).scale(factor)
        if operator_level and f_op != target:
            return CheckResult(
                "f-relation", "fail", f"operator identity fails for (i,j,k,l)={(i,j,k,l)}"
            )
        f_matrix = ctx.matrix_of(f_op)
        if factor == 0:
            # divisibility consequence: the combination annihilates the module
            if not f_matrix.is_zero():
                return CheckResult(
                    "f-relation",
                    "fail",
                    f"F at (i,j,k,l)={(i,j,k,l)} nonzero although (1-g_k^2)(1-g_l^2)=0",
                )
            continue
        if f_matrix != ctx.generator_matrix(i, j).scale(factor):
            return CheckResult(
                "f-relation", "fail", f"matrix identity fails for (i,j,k,l)={(i,j,k,l)}"
            )
    return CheckResult("f-relation", "pass", f"{len(_f_index_choices(d))} index choices")


def verify_selfadjoint_orthogonal(ctx: ModuleContext) -> CheckResult:
    """Orthogonality of the family and self-adjointness of every generator."""
    gamma = ctx.gamma
    if not all(gamma[j] > -1 for j in range(1, ctx.d + 2)):
        return CheckResult(
            "orthogonality", "degenerate", "requires gamma_j > -1 for the integral form"
        )
    indices = ctx.graded
    polys = [ctx.polys[nu] for nu in indices]
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            if inner_product(polys[a], polys[b], gamma) != 0:
                return CheckResult(
                    "orthogonality", "fail", f"<P_{indices[a]}, P_{indices[b]}> != 0"
                )
    generators = [
        l_operator(i, j, ctx.d, gamma) for i, j in combinations(range(1, ctx.d + 2), 2)
    ]
    for op_index, op in enumerate(generators):
        images = [op.apply(p) for p in polys]
        for a in range(len(polys)):
            for b in range(a, len(polys)):
                left = inner_product(images[a], polys[b], gamma)
                right = inner_product(polys[a], images[b], gamma)
                if left != right:
                    return CheckResult(
                        "orthogonality",
                        "fail",
                        f"generator #{op_index} not self-adjoint at ({indices[a]}, {indices[b]})",
                    )
    # Gram-twisted symmetry on the top level: G A = A^T G with G diagonal
    gram = [inner_product(ctx.polys[nu], ctx.polys[nu], gamma) for nu in ctx.level]
    for i, j in combinations(range(1, ctx.d + 2), 2):
        a = ctx.generator_matrix(i, j)
        size = len(ctx.level)
        for r in range(size):
            for c in range(size):
                if gram[r] * a[(r, c)] != a[(c, r)] * gram[c]:
                    return CheckResult(
                        "orthogonality", "fail", f"Gram symmetry fails for L_({i},{j})"
                    )
    return CheckResult(
        "orthogonality", "pass", f"{len(indices)} family members, {len(generators)} generators"
    )


def orbit_closure_dimensions(ctx: ModuleContext) -> list:
    """Dimension of the generator orbit of each basis vector of the level."""
    size = len(ctx.level)
    generators = list(ctx.all_generator_matrices().values())
    dims = []
    for start in range(size):
        span = SpanBasis(size)
        seed = [Rat(0)] * size
        seed[start] = Rat(1)
        span.add(seed)
        frontier = [seed]
        while frontier:
            new_vectors = []
            for vector in frontier:
                for matrix in generators:
                    image = matrix.matvec(vector)
                    if span.add(image):
                        new_vectors.append(image)
            frontier = new_vectors
        dims.append(span.dim)
    return dims


def irreducibility_check(ctx: ModuleContext) -> CheckResult:
    """Orbit closure from every start vector reaches the full level dimension."""
    size = len(ctx.level)
    dims = orbit_closure_dimensions(ctx)
    bad = [ctx.level[i] for i, dim in enumerate(dims) if dim != size]
    if bad:
        return CheckResult(
            "irreducibility",
            "fail",
            f"orbit from {bad[0]} spans {dims[ctx.level.index(bad[0])]} < {size}",
        )
    details = f"full orbit closure from {size} start vectors"
    if ctx.d == 2 and ctx.n >= 2:
        for nu in ctx.level:
            if nu[0] > 0 and nu[1] > 0:
                certificate = certificate_2d(nu, ctx.gamma)
                if certificate == 0:
                    return CheckResult(
                        "irreducibility", "fail", f"certificate D vanishes at {nu}"
                    )
        details += "; interior certificates nonzero"
    return CheckResult("irreducibility", "pass", details)


def _diagonal_conjugacy(pairs: list, size: int) -> bool:
    """Is there one diagonal D with R = D S D^{-1} for every (R, S) pair?"""
    diag = [None] * size
    for seed in range(size):
        if diag[seed] is not None:
            continue
        diag[seed] = Rat(1)
        frontier = [seed]
        while frontier:
            b = frontier.pop()
            for r_matrix, s_matrix in pairs:
                for a in range(size):
                    if diag[a] is None and s_matrix[(a, b)] != 0:
                        if r_matrix[(a, b)] == 0:
                            return False
                        diag[a] = r_matrix[(a, b)] * diag[b] / s_matrix[(a, b)]
                        frontier.append(a)
                    if diag[a] is None and s_matrix[(b, a)] != 0:
                        if r_matrix[(b, a)] == 0:
                            return False
                        diag[a] = s_matrix[(b, a)] * diag[b] / r_matrix[(b, a)]
                        frontier.append(a)
    for r_matrix, s_matrix in pairs:
        for a in range(size):
            for b in range(size):
                if r_matrix[(a, b)] * diag[b] != diag[a] * s_matrix[(a, b)]:
                    return False
    return True


def submodule_diagnostic(ctx: ModuleContext) -> CheckResult:
    """Restrictions to {nu_1 = k} and {nu_3 = ... = nu_d = 0} reproduce the
    lower-dimensional modules (up to a diagonal rescaling for the first)."""
    d, n, gamma = ctx.d, ctx.n, ctx.gamma
    if d < 3:
        return CheckResult("submodules", "pass", "vacuous for d = 2")
    level_pos = {nu: i for i, nu in enumerate(ctx.level)}

    # {nu_1 = k}: invariant under generators not involving index 1, and
    # diagonally conjugate to the (d-1)-variable module with gamma^(2).
    tail_gamma = ParamVector(gamma.gamma[1:])
    for k in range(n + 1):
        block = [nu for nu in ctx.level if nu[0] == k]
        rows = [level_pos[nu] for nu in block]
        row_set = set(rows)
        sub_ctx = ModuleContext(d - 1, n - k, tail_gamma)
        assert [nu[1:] for nu in block] == sub_ctx.level
        pairs = []
        for i, j in combinations(range(2, d + 2), 2):
            big = ctx.generator_matrix(i, j)
            for c in rows:
                for r in range(len(ctx.level)):
                    if r not in row_set and big[(r, c)] != 0:
                        return CheckResult(
                            "submodules",
                            "fail",
                            f"L_({i},{j}) leaks out of the block nu_1={k}",
                        )
            restricted = ExactMatrix([[big[(r, c)] for c in rows] for r in rows])
            lower = sub_ctx.generator_matrix(i - 1, j - 1)
            pairs.append((restricted, lower))
        if not _diagonal_conjugacy(pairs, len(block)):
            return CheckResult(
                "submodules", "fail", f"block nu_1={k} is not conjugate to the d-1 module"
            )

    # {nu_3 = ... = nu_d = 0}: exactly the two-variable module with
    # gamma~ = (gamma_1, gamma_2, gamma_3+...+gamma_{d+1} + d - 2).
    block = [nu for nu in ctx.level if all(v == 0 for v in nu[2:])]
    rows = [level_pos[nu] for nu in block]
    row_set = set(rows)
    hat_gamma = ParamVector([gamma[1], gamma[2], gamma.tail_sum(3) + d - 2])
    hat_ctx = ModuleContext(2, n, hat_gamma)
    assert [nu[:2] for nu in block] == hat_ctx.level
    hats = [
        (l_operator(1, 2, d, gamma), hat_ctx.generator_matrix(1, 2)),
        (
            sum(
                (l_operator(1, j, d, gamma) for j in range(4, d + 2)),
                l_operator(1, 3, d, gamma),
            ),
            hat_ctx.generator_matrix(1, 3),
        ),
        (
            sum(
                (l_operator(2, j, d, gamma) for j in range(4, d + 2)),
                l_operator(2, 3, d, gamma),
            ),
            hat_ctx.generator_matrix(2, 3),
        ),
    ]
    for hat_op, lower in hats:
        big = ctx.matrix_of(hat_op)
        for c in rows:
            for r in range(len(ctx.level)):
                if r not in row_set and big[(r, c)] != 0:
                    return CheckResult(
                        "submodules", "fail", "hat operator leaks out of the nu_3..nu_d=0 block"
                    )
        restricted = ExactMatrix([[big[(r, c)] for c in rows] for r in rows])
        if restricted != lower:
            return CheckResult(
                "submodules", "fail", "restricted hat operator differs from the 2-variable module"
            )
    return CheckResult("submodules", "pass", f"{n + 1} tail blocks and the plane block verified")


def generator_rank(d: int, gamma, degree: int = 3) -> int:
    """Exact rank of the generators as operators on polynomials of degree <= 3."""
    params = require_valid(gamma, d)
    monomials = monomials_upto(degree, d)
    index = {m: i for i, m in enumerate(monomials)}
    span = SpanBasis(len(monomials) ** 2)
    rank = 0
    for i, j in combinations(range(1, d + 2), 2):
        op = l_operator(i, j, d, params)
        flat = []
        for exponent in monomials:
            image = op.apply(MultiPoly.monomial(d, exponent))
            column = [Rat(0)] * len(monomials)
            for e, c in image.terms.items():
                column[index[e]] = c
            flat.extend(column)
        if span.add(flat):
            rank += 1
    return rank


def verify_relations(ctx: ModuleContext) -> CheckResult:
    """Linear structure: recovery from the commuting family, the dependence
    identity, matrix-level closure, and the exact generator rank."""
    d, gamma = ctx.d, ctx.gamma
    recovered = jm_recovered_generators(d, gamma)
    for (i, j), op in recovered.items():
        if op != l_operator(i, j, d, gamma):
            return CheckResult("relations", "fail", f"recovery of L_({i},{j}) fails")
        if ctx.matrix_of(op) != ctx.generator_matrix(i, j):
            return CheckResult("relations", "fail", f"matrix recovery of L_({i},{j}) fails")
    dependence = (
        m_operator(1, d, gamma)
        - m_operator(2, d, gamma)
        - m_operator(2, d, gamma, "minus")
        + (m_operator(3, d, gamma, "minus") if d >= 3 else DiffOp.zero(d))
        - m_operator(d, d, gamma, "plus")
    )
    if not dependence.is_zero():
        return CheckResult("relations", "fail", "dependence identity fails")
    if d == 3:
        m_ = {
            "L": ctx.matrix_of(l_total(d, gamma), name="Ltot"),
            "L234": ctx.m_matrix(2),
            "L34": ctx.m_matrix(3),
            "L134": ctx.m_matrix(2, "plus"),
            "L123": ctx.m_matrix(2, "minus"),
            "L23": ctx.m_matrix(3, "minus"),
        }
        closure = [
            (ctx.generator_matrix(1, 2), m_["L"] - m_["L134"] - m_["L234"] + m_["L34"]),
            (
                ctx.generator_matrix(1, 3),
                m_["L123"] + m_["L134"] + m_["L234"] - m_["L"] - m_["L23"] - m_["L34"],
            ),
            (ctx.generator_matrix(1, 4), m_["L"] - m_["L123"] - m_["L234"] + m_["L23"]),
            (ctx.generator_matrix(2, 4), m_["L234"] - m_["L23"] - m_["L34"]),
        ]
        for got, expected in closure:
            if got != expected:
                return CheckResult("relations", "fail", "three-variable closure fails")
    rank = generator_rank(d, gamma)
    expected_rank = comb(d + 1, 2)
    if rank != expected_rank:
        return CheckResult(
            "relations", "fail", f"generator rank {rank} != C(d+1,2) = {expected_rank}"
        )
    return CheckResult(
        "relations", "pass", f"recovery, dependence, closure, rank {rank} verified"
    )


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------


def run_suites(
    d: int,
    n: int,
    gamma,
    suites: Sequence[str] = SUITES,
    mode: str = "strict",
) -> VerificationReport:
    params = require_valid(gamma, d)
    report = VerificationReport(d, n, params)
    ctx = ModuleContext(d, n, params)
    for suite in suites:
        if suite == "spectral":
            report.checks.append(_timed(lambda: verify_spectral(ctx)))
        elif suite == "racah":
            report.checks.append(_timed(lambda: verify_difference_action(ctx, mode)))
        elif suite == "f-relation":
            report.checks.append(_timed(lambda: verify_f_relation(ctx)))
        elif suite == "kd":
            report.checks.append(_timed(lambda: verify_kd(d, params)))
            report.checks.append(_timed(lambda: verify_matrix_commutation(ctx)))
        elif suite == "orthogonality":
            report.checks.append(_timed(lambda: verify_selfadjoint_orthogonal(ctx)))
        elif suite == "irreducibility":
            report.checks.append(_timed(lambda: irreducibility_check(ctx)))
            report.checks.append(_timed(lambda: submodule_diagnostic(ctx)))
        elif suite == "separation":
            report.checks.append(_timed(lambda: verify_separation(ctx)))
        elif suite == "relations":
            report.checks.append(_timed(lambda: verify_relations(ctx)))
        else:
            raise ValueError(f"unknown suite {suite!r}")
    return report
