"""Differential operators of the simplex symmetry algebra.

A ``DiffOp`` in d variables is a finite sum of polynomial coefficients times
mixed partial derivatives, stored fully expanded as a map from derivative
multi-indices to ``MultiPoly`` coefficients.  The generators are

    L_{i,j} = x_i x_j (d_i - d_j)^2 + ((g_i+1) x_j - (g_j+1) x_i)(d_i - d_j)
                                                   for 1 <= i < j <= d,
    L_{j,d+1} = x_j (1-|x|) d_j^2 + ((g_j+1)(1-|x|) - (g_{d+1}+1) x_j) d_j,

symmetric in the index pair.  Their sum L over all pairs has the closed form

    L = sum_k x_k(1-x_k) d_k^2 - 2 sum_{k<j} x_k x_j d_k d_j
        + sum_k (g_k + 1 - (|g|+d+1) x_k) d_k,

and the Jucys-Murphy sums M_j = sum_{j<=k<l<=d+1} L_{k,l} form a commuting
family; M_j^+/M_j^- apply the cyclic index shift tau = (1,2,...,d+1) or its
inverse to every pair.  Compositions use the Leibniz rule, so commutator and
anticommutator identities become literal equality of expanded data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Mapping

from .errors import DimensionMismatch, ExactAlgebraError
from .params import require_valid
from .poly import MultiPoly
from .scalar import as_rat


class DiffOp:
    """Finite sum of MultiPoly coefficients times partial derivatives."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping = ()):
        canonical = {}
        for deriv, coefficient in dict(terms).items():
            deriv = tuple(int(e) for e in deriv)
            if len(deriv) != dim or any(e < 0 for e in deriv):
                raise ValueError(f"bad derivative index {deriv} for dim {dim}")
            if not isinstance(coefficient, MultiPoly):
                coefficient = MultiPoly.const(dim, coefficient)
            if coefficient.dim != dim:
                raise DimensionMismatch("coefficient dimension mismatch")
            if not coefficient.is_zero():
                canonical[deriv] = coefficient
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "DiffOp":
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> "DiffOp":
        return cls(dim, {(0,) * dim: MultiPoly.const(dim, 1)})

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def _check_dim(self, other: "DiffOp"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"operators in {self.dim} and {other.dim} variables")

    # -- linear algebra ----------------------------------------------------

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check_dim(other)
        out = dict(self.terms)
        for deriv, coefficient in other.terms.items():
            if deriv in out:
                out[deriv] = out[deriv] + coefficient
            else:
                out[deriv] = coefficient
        return DiffOp(self.dim, out)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.dim, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, value) -> "DiffOp":
        value = as_rat(value)
        return DiffOp(self.dim, {a: c.scale(value) for a, c in self.terms.items()})

    def __mul__(self, value) -> "DiffOp":
        return self.scale(value)

    __rmul__ = __mul__

    # -- composition and action --------------------------------------------

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        """Operator composition (self after other) via the Leibniz rule."""
        self._check_dim(other)
        out: dict = {}
        for alpha, p in self.terms.items():
            deltas = [range(a + 1) for a in alpha]
            for beta, q in other.terms.items():
                for delta in product(*deltas):
                    dq = q.deriv_multi(delta)
                    if dq.is_zero():
                        continue
                    factor = 1
                    for a, dlt in zip(alpha, delta):
                        factor *= comb(a, dlt)
                    coefficient = p * dq if factor == 1 else (p * dq).scale(factor)
                    deriv = tuple(a - dlt + b for a, dlt, b in zip(alpha, delta, beta))
                    if deriv in out:
                        out[deriv] = out[deriv] + coefficient
                    else:
                        out[deriv] = coefficient
        return DiffOp(self.dim, out)

    def apply(self, poly: MultiPoly) -> MultiPoly:
        if poly.dim != self.dim:
            raise DimensionMismatch(f"operator dim {self.dim}, polynomial dim {poly.dim}")
        result = MultiPoly.zero(self.dim)
        for deriv, coefficient in self.terms.items():
            dp = poly.deriv_multi(deriv)
            if not dp.is_zero():
                result = result + coefficient * dp
        return result

    def preserves_degree_upto(self, n: int) -> bool:
        """True iff deg(apply(p)) <= deg(p) for every monomial p of degree <= n."""
        from .jacobi import monomials_upto  # local import to avoid a cycle

        for exponent in monomials_upto(n, self.dim):
            image = self.apply(MultiPoly.monomial(self.dim, exponent))
            if image.total_degree() > sum(exponent):
                return False
        return True

    def to_json(self) -> dict:
        ordered = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        return {
            "d": self.dim,
            "terms": [
                {"deriv": list(deriv), "coef_poly": coefficient.to_json_terms()}
                for deriv, coefficient in ordered
            ],
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for deriv, coefficient in sorted(self.terms.items()):
            ds = "".join(f"d{i + 1}^{e}" if e > 1 else f"d{i + 1}" for i, e in enumerate(deriv) if e)
            parts.append(f"({coefficient!r}){ds or ''}")
        return " + ".join(parts)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return (a @ b) - (b @ a)


def anticommutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return (a @ b) + (b @ a)


# -- symbolic expressions over named generators -----------------------------


@dataclass(frozen=True)
class OperatorExpr:
    """Composition tree over named generators.

    Nodes: gen(name), sum, scale, compose, commutator, anticommutator.
    ``evaluate`` expands the tree to a canonical DiffOp; the result does not
    depend on association order of sums and compositions.
    """

    kind: str
    args: tuple

    @staticmethod
    def gen(name: str) -> "OperatorExpr":
        return OperatorExpr("gen", (name,))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr("sum", (self, other))

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr("sum", (self, other.scale(-1)))

    def scale(self, value) -> "OperatorExpr":
        return OperatorExpr("scale", (as_rat(value), self))

    def __matmul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr("compose", (self, other))

    @staticmethod
    def comm(a: "OperatorExpr", b: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr("commutator", (a, b))

    @staticmethod
    def anti(a: "OperatorExpr", b: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr("anticommutator", (a, b))

    def evaluate(self, env: Mapping[str, DiffOp]) -> DiffOp:
        if self.kind == "gen":
            return env[self.args[0]]
        if self.kind == "sum":
            left, right = (child.evaluate(env) for child in self.args)
            return left + right
        if self.kind == "scale":
            value, child = self.args
            return child.evaluate(env).scale(value)
        if self.kind == "compose":
            left, right = (child.evaluate(env) for child in self.args)
            return left @ right
        if self.kind == "commutator":
            left, right = (child.evaluate(env) for child in self.args)
            return commutator(left, right)
        if self.kind == "anticommutator":
            left, right = (child.evaluate(env) for child in self.args)
            return anticommutator(left, right)
        raise ValueError(f"unknown node kind {self.kind}")


def op_algebra(a: DiffOp, b: DiffOp, kind: str) -> DiffOp:
    """compose | commutator | anticommutator of two expanded operators."""
    if kind == "compose":
        return a @ b
    if kind == "commutator":
        return commutator(a, b)
    if kind == "anticommutator":
        return anticommutator(a, b)
    raise ValueError(f"unknown kind {kind!r}")


# -- the generators ----------------------------------------------------------


def l_operator(i: int, j: int, d: int, gamma) -> DiffOp:
    """The second-order generator L_{i,j}, 1 <= i < j <= d+1 (order-symmetric)."""
    params = require_valid(gamma, d)
    if i == j:
        raise ValueError("indices must be distinct")
    i, j = min(i, j), max(i, j)
    if not (1 <= i < j <= d + 1):
        raise ValueError(f"index pair ({i},{j}) out of range for d = {d}")
    x = [MultiPoly.variable(d, k) for k in range(d)]
    if j <= d:
        xi, xj = x[i - 1], x[j - 1]
        quad = xi * xj
        lin = xj.scale(params[i] + 1) - xi.scale(params[j] + 1)
        ei, ej = [0] * d, [0] * d
        ei[i - 1], ej[j - 1] = 1, 1
        terms = {
            tuple(2 * a for a in ei): quad,
            tuple(2 * a for a in ej): quad,
            tuple(a + b for a, b in zip(ei, ej)): quad.scale(-2),
            tuple(ei): lin,
            tuple(ej): -lin,
        }
        return DiffOp(d, terms)
    # j = d + 1 case: the remaining coordinate is 1 - |x|
    one_minus = MultiPoly.const(d, 1)
    for k in range(d):
        one_minus = one_minus - x[k]
    xi = x[i - 1]
    quad = xi * one_minus
    lin = one_minus.scale(params[i] + 1) - xi.scale(params[d + 1] + 1)
    ei = [0] * d
    ei[i - 1] = 1
    return DiffOp(d, {tuple(2 * a for a in ei): quad, tuple(ei): lin})


def l_total(d: int, gamma) -> DiffOp:
    """Sum of all generators; built from the closed form and cross-checked
    against the literal pair sum (the two must agree term for term)."""
    params = require_valid(gamma, d)
    x = [MultiPoly.variable(d, k) for k in range(d)]
    total_gamma = params.total()
    terms: dict = {}
    for k in range(d):
        e2 = [0] * d
        e2[k] = 2
        terms[tuple(e2)] = x[k] * (MultiPoly.const(d, 1) - x[k])
        e1 = [0] * d
        e1[k] = 1
        terms[tuple(e1)] = MultiPoly.const(d, params[k + 1] + 1) - x[k].scale(
            total_gamma + d + 1
        )
    for k in range(d):
        for j in range(k + 1, d):
            e = [0] * d
            e[k] = 1
            e[j] = 1
            terms[tuple(e)] = (x[k] * x[j]).scale(-2)
    closed = DiffOp(d, terms)
    summed = DiffOp.zero(d)
    for i, j in combinations(range(1, d + 2), 2):
        summed = summed + l_operator(i, j, d, params)
    if closed != summed:
        raise ExactAlgebraError("closed form of the total operator disagrees with the pair sum")
    return closed


def _cycle(index: int, d: int, power: int) -> int:
    """tau^power applied to an index in {1..d+1}, tau = (1,2,...,d+1)."""
    return (index - 1 + power) % (d + 1) + 1


def m_operator(j: int, d: int, gamma, variant: str = "plain") -> DiffOp:
    """Jucys-Murphy sum M_j (variant plain) or its cyclic images M_j^+/M_j^-."""
    if not 1 <= j <= d:
        raise ValueError(f"index {j} out of range for d = {d}")
    power = {"plain": 0, "plus": 1, "minus": -1}[variant]
    params = require_valid(gamma, d)
    result = DiffOp.zero(d)
    for k, l in combinations(range(j, d + 2), 2):
        result = result + l_operator(_cycle(k, d, power), _cycle(l, d, power), d, params)
    return result


def jm_recovered_generators(d: int, gamma) -> dict:
    """Generators recovered from the commuting family and its cyclic images:

        L_{1,j}   = M^+_{j-1} + M_{j+1} - M_j - M^+_j      (j = 2..d+1)
        L_{i,d+1} = M_i + M^-_{i+2} - M^-_{i+1} - M_{i+1}  (i = 1..d)

    with M_k = M^+_k = M^-_k = 0 for k = d+1, d+2.  Returns a dict keyed by
    the recovered index pair.
    """
    params = require_valid(gamma, d)

    def m(j: int, variant: str) -> DiffOp:
        if j > d:
            return DiffOp.zero(d)
        return m_operator(j, d, params, variant)

    out = {}
    for j in range(2, d + 2):
        out[(1, j)] = m(j - 1, "plus") + m(j + 1, "plain") - m(j, "plain") - m(j, "plus")
    for i in range(1, d + 1):
        out[(i, d + 1)] = (
            m(i, "plain") + m(i + 2, "minus") - m(i + 1, "minus") - m(i + 1, "plain")
        )
    return out


def f_combination(i: int, j: int, k: int, l: int, d: int, gamma) -> DiffOp:
    """The fourth-order combination F(L_{i,k}, L_{i,l}, L_{j,k}, L_{j,l}, L_{k,l}).

    Satisfies (1 - g_k^2)(1 - g_l^2) L_{i,j} = F as an operator identity, so it
    recovers L_{i,j} from the five generators involving indices k and l.
    """
    if len({i, j, k, l}) != 4:
        raise ValueError("indices i, j, k, l must be distinct")
    params = require_valid(gamma, d)
    for index in (i, j, k, l):
        if not 1 <= index <= d + 1:
            raise ValueError(f"index {index} out of range for d = {d}")
    gi, gj, gk, gl = params[i], params[j], params[k], params[l]

    gen = OperatorExpr.gen
    comm, anti = OperatorExpr.comm, OperatorExpr.anti
    ik, il, jk, jl, kl = gen("ik"), gen("il"), gen("jk"), gen("jl"), gen("kl")

    expr = anti(comm(jk, kl), comm(ik, kl))
    expr = expr - anti(kl, comm(ik, comm(jk, kl)))
    expr = expr - anti(kl, ik @ jl).scale(2)
    expr = expr + comm(ik, comm(kl, jl)).scale((1 + gk) * (1 + gl))
    expr = expr + anti(ik, kl).scale((1 + gj) * (1 + gl))
    expr = expr + anti(ik, jk).scale(1 - gl * gl)
    expr = expr + anti(il, jl).scale(1 - gk * gk)
    expr = expr + anti(jl, kl).scale((1 + gi) * (1 + gk))
    expr = expr - (jk @ il).scale(4)
    expr = expr + (jl @ ik).scale(2 * (-1 + gk + gl + gk * gl))
    expr = expr - ik.scale(2 * gk * (1 + gj) * (1 + gl))
    expr = expr + il.scale((1 + gj) * (1 + gk) * (1 + gk - gl + gk * gl))
    expr = expr + jk.scale((1 + gi) * (1 + gl) * (1 - gk + gl + gk * gl))
    expr = expr - jl.scale(2 * (1 + gi) * (1 + gk) * gl)
    expr = expr - kl.scale((1 + gi) * (1 + gj) * (1 + gk) * (1 + gl))

    env = {
        "ik": l_operator(i, k, d, params),
        "il": l_operator(i, l, d, params),
        "jk": l_operator(j, k, d, params),
        "jl": l_operator(j, l, d, params),
        "kl": l_operator(k, l, d, params),
    }
    return expr.evaluate(env)
