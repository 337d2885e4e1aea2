"""Jacobi polynomials on the simplex.

One-variable Jacobi polynomials are defined through the terminating
hypergeometric sum

    p_n^(a,b)(t) = ((a+1)_n / (b+1)_n) *
                   sum_{k=0}^n  (-n)_k (n+a+b+1)_k / (k! (a+1)_k) * ((1-t)/2)^k,

normalized so that every coefficient is an exact rational.  The d-variable
family attached to gamma = (gamma_1..gamma_{d+1}) is the product

    P_nu(x) = prod_{k=1}^d (1-|x_{<k}|)^{nu_k} p_{nu_k}^(a_k, gamma_k)( 2x_k/(1-|x_{<k}|) - 1 ),

    a_k = gamma_{k+1}+...+gamma_{d+1} + 2(nu_{k+1}+...+nu_d) + d - k,

where |x_{<k}| = x_1+...+x_{k-1}.  Each factor is expanded directly into a
polynomial: with s = 1-|x_{<k}|, the composite s^n p_n(2x_k/s - 1) equals
lead * sum_k c_k s^(n-k) (s-x_k)^k, so no rational-function intermediate is
ever formed.

Degree indices nu with |nu| = n are enumerated in descending lexicographic
order ((n,0,...,0) first); this fixed order is used everywhere a basis of the
degree-n space appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidParameter
from .linalg import ExactMatrix
from .params import ParamVector, check_jacobi_params, require_valid
from .poly import MultiPoly
from .scalar import Rat, as_rat, pochhammer

DegreeIndex = "tuple[int, ...]"


def jacobi1d(n: int, alpha, beta) -> MultiPoly:
    """One-variable Jacobi polynomial of degree n as a polynomial in t (dim 1)."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    alpha, beta = as_rat(alpha), as_rat(beta)
    violations = check_jacobi_params(alpha, beta)
    if violations:
        raise InvalidParameter("; ".join(violations))
    u = MultiPoly(1, {(0,): Rat(1, 2), (1,): Rat(-1, 2)})  # (1-t)/2
    lead = pochhammer(alpha + 1, n) / pochhammer(beta + 1, n)
    result = MultiPoly.zero(1)
    u_power = MultiPoly.const(1, 1)
    for k in range(n + 1):
        c = (
            pochhammer(-n, k)
            * pochhammer(n + alpha + beta + 1, k)
            / (pochhammer(1, k) * pochhammer(alpha + 1, k))
        )
        result = result + u_power.scale(c)
        if k < n:
            u_power = u_power * u
    result = result.scale(lead)
    assert result.total_degree() == n, "degree drop: admissibility conditions violated"
    return result


def jacobi1d_coeffs(n: int, alpha, beta) -> list:
    """Coefficients c_0..c_n of p_n^(a,b) in powers of (1-t)/2, including the lead factor."""
    alpha, beta = as_rat(alpha), as_rat(beta)
    lead = pochhammer(alpha + 1, n) / pochhammer(beta + 1, n)
    return [
        lead
        * pochhammer(-n, k)
        * pochhammer(n + alpha + beta + 1, k)
        / (pochhammer(1, k) * pochhammer(alpha + 1, k))
        for k in range(n + 1)
    ]


def a_param(j: int, nu: Sequence[int], gamma: ParamVector) -> Rat:
    """Inner Jacobi parameter a_j for the d-variable product formula."""
    d = gamma.d
    return gamma.tail_sum(j + 1) + 2 * sum(nu[j:]) + d - j


def jacobi_simplex(nu: Sequence[int], gamma) -> MultiPoly:
    """The d-variable polynomial P_nu(x; gamma), fully expanded."""
    params = require_valid(gamma)
    d = params.d
    nu = tuple(int(v) for v in nu)
    if len(nu) != d or any(v < 0 for v in nu):
        raise ValueError(f"degree index {nu} must have {d} nonnegative entries")

    result = MultiPoly.const(d, 1)
    for k in range(1, d + 1):
        n_k = nu[k - 1]
        alpha = a_param(k, nu, params)
        beta = params[k]
        violations = check_jacobi_params(alpha, beta)
        if violations:  # unreachable for valid gamma; kept as a hard guard
            raise InvalidParameter(f"factor {k}: " + "; ".join(violations))
        if n_k == 0:
            continue
        # s = 1 - x_1 - ... - x_{k-1}; factor = sum_i c_i s^(n_k-i) (s - x_k)^i
        s = MultiPoly.const(d, 1)
        for i in range(k - 1):
            s = s - MultiPoly.variable(d, i)
        s_minus_x = s - MultiPoly.variable(d, k - 1)
        coeffs = jacobi1d_coeffs(n_k, alpha, beta)
        factor = MultiPoly.zero(d)
        for i, c in enumerate(coeffs):
            factor = factor + (s ** (n_k - i) * s_minus_x ** i).scale(c)
        result = result * factor
    return result


def level_indices(n: int, d: int) -> list:
    """All nu with |nu| = n, in descending lexicographic order."""
    if d == 0:
        return [()] if n == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for v in range(remaining, -1, -1):
            rec(prefix + (v,), remaining - v, slots - 1)

    rec((), n, d)
    return out


def graded_indices(n: int, d: int) -> list:
    """All nu with |nu| <= n: degree ascending, descending lex within a degree."""
    out = []
    for m in range(n + 1):
        out.extend(level_indices(m, d))
    return out


def monomials_upto(n: int, d: int) -> list:
    """All exponent tuples of total degree <= n (same enumeration as indices)."""
    return graded_indices(n, d)


@dataclass(frozen=True)
class BasisSet:
    """The ordered basis {P_nu : |nu| = n} of the degree-n space."""

    d: int
    n: int
    gamma: ParamVector
    elements: tuple  # of (nu, MultiPoly) pairs

    @classmethod
    def build(cls, n: int, d: int, gamma) -> "BasisSet":
        params = require_valid(gamma, d)
        if n < 0:
            raise ValueError("n must be >= 0")
        elements = tuple(
            (nu, jacobi_simplex(nu, params)) for nu in level_indices(n, d)
        )
        basis = cls(d, n, params, elements)
        rank = basis.coefficient_matrix().rank()
        if rank != len(elements):  # unreachable for valid gamma
            raise InvalidParameter(
                f"basis of level {n} has rank {rank} < {len(elements)}"
            )
        return basis

    @property
    def indices(self) -> list:
        return [nu for nu, _ in self.elements]

    @property
    def polys(self) -> list:
        return [p for _, p in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def coefficient_matrix(self) -> ExactMatrix:
        """Monomial-coordinate matrix (rows = monomials of degree <= n, cols = P_nu)."""
        monomials = monomials_upto(self.n, self.d)
        index = {m: i for i, m in enumerate(monomials)}
        columns = []
        for _, poly in self.elements:
            col = [Rat(0)] * len(monomials)
            for exponent, coefficient in poly.terms.items():
                col[index[exponent]] = coefficient
            columns.append(col)
        return ExactMatrix.from_columns(columns)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "gamma": self.gamma.to_json(),
            "elements": [
                {"nu": list(nu), "poly": poly.to_json_terms()}
                for nu, poly in self.elements
            ],
        }
