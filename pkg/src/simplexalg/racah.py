"""Racah difference operators acting on degree indices.

Two layers live here.

*Explicit low-dimensional operators.*  The three-term operators on two and
three variables (``B12``, ``B23``, ``B134``) and the nine-term ``B123`` are
transcribed coefficient by coefficient.  Each printed coefficient is a sum of
summands of the form const * (numerator factors) / (denominator factors);
evaluation is numerator-first: if the numerator product vanishes the summand
is 0 and the denominator is never touched, otherwise a vanishing denominator
raises ``DegenerateParameter`` naming the linear form.

*The general family.*  ``racah_operator(j, beta)`` builds the I-invariant
difference operator

    B_j(z; beta) = sum_{p in {-1,0,1}^j} C_{j,p}(z) E_z^p
                   - ( z_{j+1}(z_{j+1}+beta_{j+1}) + (beta_0+1)(beta_{j+1}-1)/2 ) Id

whose coefficients C_{j,p} are rational functions of z_1..z_{j+1} assembled
from the quadratic kernels B_i^{a,b} and the univariate-linear denominators
b_i^{0/1}; sign patterns with -1 entries are obtained by applying the
involutions I_k : z_k -> -z_k - beta_k.  Coefficients are kept as exact
fractions whose denominators are products of univariate linear factors; the
removable factors are cancelled symbolically (synthetic division), which is
essential: pointwise numerator-first evaluation of the *general* family would
assign 0 to coefficients whose true value is a finite nonzero limit.

``predicted_m_action`` maps the general family onto the degree indices nu and
produces the difference operators representing the cyclic Jucys-Murphy
operators M_j^+ and M_j^- on the span of {P_nu : |nu| = n}: the plus variant
is conjugated by g(nu) = (1+gamma_1)_{nu_1} / (|gamma|+2n+d-nu_1)_{nu_1} and
shifted by the constant n(n + beta^+_j - beta^+_0 - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .errors import DegenerateParameter, DimensionMismatch
from .jacobi import level_indices
from .linalg import ExactMatrix
from .params import require_valid
from .poly import MultiPoly
from .scalar import Rat, as_rat, rat_str

# ---------------------------------------------------------------------------
# exact fractions with univariate-linear denominators
# ---------------------------------------------------------------------------


def divide_linear(poly: MultiPoly, var: int, root) -> "tuple[MultiPoly, MultiPoly]":
    """Divide by (z_var - root): returns (quotient, remainder).

    ``var`` is 0-based; the remainder is poly evaluated at z_var = root,
    a polynomial in the remaining variables (zero iff divisible).
    """
    root = as_rat(root)
    by_power: dict = {}
    max_pow = 0
    for exponent, coefficient in poly.terms.items():
        p = exponent[var]
        rest = exponent[:var] + (0,) + exponent[var + 1 :]
        by_power.setdefault(p, {})
        by_power[p][rest] = by_power[p].get(rest, 0) + coefficient
        max_pow = max(max_pow, p)
    levels = [
        MultiPoly._raw(poly.dim, by_power.get(p, {})) for p in range(max_pow + 1)
    ]
    quotient_levels = [MultiPoly.zero(poly.dim)] * max(max_pow, 0)
    carry = MultiPoly.zero(poly.dim)
    for p in range(max_pow, 0, -1):
        carry = levels[p] + carry.scale(root)
        quotient_levels[p - 1] = carry
    remainder = (levels[0] if levels else MultiPoly.zero(poly.dim)) + carry.scale(root)
    quotient_terms: dict = {}
    for p, level in enumerate(quotient_levels):
        for exponent, coefficient in level.terms.items():
            quotient_terms[exponent[:var] + (p,) + exponent[var + 1 :]] = coefficient
    return MultiPoly._raw(poly.dim, quotient_terms), remainder


class ZFraction:
    """num / prod (z_k - root)^mult with an exact polynomial numerator.

    ``den`` maps (k, root) -> multiplicity with k the 1-based z index.  The
    class is closed under products, sums, the involutions z_k -> -z_k - b,
    and constant substitution; ``reduce`` cancels every denominator factor
    that divides the numerator.
    """

    __slots__ = ("nvars", "num", "den")

    def __init__(self, nvars: int, num: MultiPoly, den: dict | None = None):
        self.nvars = nvars
        self.num = num
        self.den = {k: m for k, m in (den or {}).items() if m}

    @classmethod
    def from_const(cls, nvars: int, value) -> "ZFraction":
        return cls(nvars, MultiPoly.const(nvars, value))

    def copy(self) -> "ZFraction":
        return ZFraction(self.nvars, self.num, dict(self.den))

    def mul_poly(self, poly: MultiPoly) -> "ZFraction":
        return ZFraction(self.nvars, self.num * poly, dict(self.den))

    def mul_scalar(self, value) -> "ZFraction":
        return ZFraction(self.nvars, self.num.scale(value), dict(self.den))

    def div_linear(self, var: int, root) -> "ZFraction":
        """Divide by the monic factor (z_var - root), var 1-based."""
        den = dict(self.den)
        key = (var, as_rat(root))
        den[key] = den.get(key, 0) + 1
        return ZFraction(self.nvars, self.num, den)

    def mul_frac(self, other: "ZFraction") -> "ZFraction":
        den = dict(self.den)
        for key, mult in other.den.items():
            den[key] = den.get(key, 0) + mult
        return ZFraction(self.nvars, self.num * other.num, den)

    def den_poly(self) -> MultiPoly:
        out = MultiPoly.const(self.nvars, 1)
        for (var, root), mult in self.den.items():
            factor = MultiPoly.variable(self.nvars, var - 1) - MultiPoly.const(
                self.nvars, root
            )
            out = out * factor ** mult
        return out

    def add(self, other: "ZFraction") -> "ZFraction":
        """Exact sum over the least common denominator, then reduce."""
        if self.nvars != other.nvars:
            raise DimensionMismatch("fractions over different variable counts")
        common: dict = dict(self.den)
        for key, mult in other.den.items():
            common[key] = max(common.get(key, 0), mult)
        left = self.num
        right = other.num
        for key, mult in common.items():
            var, root = key
            factor = MultiPoly.variable(self.nvars, var - 1) - MultiPoly.const(
                self.nvars, root
            )
            deficit = mult - self.den.get(key, 0)
            if deficit:
                left = left * factor ** deficit
            deficit = mult - other.den.get(key, 0)
            if deficit:
                right = right * factor ** deficit
        return ZFraction(self.nvars, left + right, common).reduce()

    def add_const(self, value) -> "ZFraction":
        return self.add(ZFraction.from_const(self.nvars, value))

    def reduce(self) -> "ZFraction":
        num = self.num
        den = dict(self.den)
        for key in list(den):
            var, root = key
            while den.get(key, 0) > 0:
                # cheap divisibility test first: the remainder of division by
                # (z_var - root) is the substitution z_var := root
                if not num.subs_value(var - 1, root).is_zero():
                    break
                quotient, remainder = divide_linear(num, var - 1, root)
                assert remainder.is_zero()
                num = quotient
                den[key] -= 1
            if den.get(key, 0) == 0:
                den.pop(key, None)
        return ZFraction(self.nvars, num, den)

    def involution(self, k: int, beta_k) -> "ZFraction":
        """Apply z_k -> -z_k - beta_k (k 1-based)."""
        beta_k = as_rat(beta_k)
        num = self.num.subs_affine(k - 1, -1, -beta_k)
        den: dict = {}
        sign = 1
        for (var, root), mult in self.den.items():
            if var == k:
                # (-z_k - beta_k - root) = -(z_k - (-beta_k - root))
                den_key = (var, -beta_k - root)
                sign *= (-1) ** mult
            else:
                den_key = (var, root)
            den[den_key] = den.get(den_key, 0) + mult
        if sign == -1:
            num = num.scale(-1)
        return ZFraction(self.nvars, num, den)

    def subs_const(self, var: int, value) -> "ZFraction":
        """Fix z_var to a constant (must not occur in the denominator)."""
        if any(v == var for (v, _) in self.den):
            raise ValueError(f"z_{var} occurs in the denominator")
        return ZFraction(self.nvars, self.num.subs_value(var - 1, value), dict(self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def equals(self, other: "ZFraction") -> bool:
        """Exact equality as rational functions (cross multiplication)."""
        return (self.num * other.den_poly()) == (other.num * self.den_poly())

    def evaluate(self, zvals: Sequence) -> Rat:
        zvals = [as_rat(v) for v in zvals]
        den_value = Rat(1)
        for (var, root), mult in self.den.items():
            factor = zvals[var - 1] - root
            if factor == 0:
                raise DegenerateParameter(
                    f"denominator factor (z_{var} - {rat_str(root)}) vanishes at "
                    f"z = ({', '.join(rat_str(v) for v in zvals)})"
                )
            den_value *= factor ** mult
        return self.num.evaluate(zvals) / den_value


# ---------------------------------------------------------------------------
# the general I-invariant family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RacahParamVector:
    """beta_0..beta_d attached to a gamma vector, tagged plus or minus."""

    values: tuple
    variant: str

    def __getitem__(self, i: int) -> Rat:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict:
        return {"variant": self.variant, "values": [rat_str(v) for v in self.values]}


def parameter_maps(gamma, n: int, d: int) -> "tuple[RacahParamVector, RacahParamVector]":
    """The two parameter sets feeding the general family:

        beta+_0 = gamma_1,  beta+_j = -(gamma_{j+1}+...+gamma_{d+1}) - 2n - d + j,
        beta-_j = gamma_{d+1-j}+...+gamma_{d+1} + j.
    """
    params = require_valid(gamma, d)
    plus = [params[1]] + [
        -params.tail_sum(j + 1) - 2 * n - d + j for j in range(1, d + 1)
    ]
    minus = [params.tail_sum(d + 1 - j) + j for j in range(0, d + 1)]
    return (
        RacahParamVector(tuple(plus), "plus"),
        RacahParamVector(tuple(minus), "minus"),
    )


def _zvar(nvars: int, k: int) -> MultiPoly:
    """z_k as a polynomial, with the convention z_0 = 0."""
    if k == 0:
        return MultiPoly.zero(nvars)
    return MultiPoly.variable(nvars, k - 1)


def kernel_poly(i: int, bit1: int, bit2: int, beta, nvars: int) -> MultiPoly:
    """The quadratic kernel B_i^{bit1,bit2} as a polynomial in z_1..z_nvars."""
    b_i, b_i1 = as_rat(beta[i]), as_rat(beta[i + 1])
    zi, zi1 = _zvar(nvars, i), _zvar(nvars, i + 1)
    if (bit1, bit2) == (0, 0):
        return zi * (zi + b_i) + zi1 * (zi1 + b_i1) + MultiPoly.const(
            nvars, (b_i + 1) * (b_i1 - 1) / 2
        )
    if (bit1, bit2) == (0, 1):
        return (zi1 + zi + b_i1) * (zi1 - zi + b_i1 - b_i)
    if (bit1, bit2) == (1, 0):
        return (zi1 - zi) * (zi1 + zi + b_i1)
    if (bit1, bit2) == (1, 1):
        return (zi1 + zi + b_i1) * (zi1 + zi + b_i1 + 1)
    raise ValueError("bits must be 0 or 1")


def _b_denominator(i: int, bit: int, beta) -> "tuple[Rat, list]":
    """b_i^bit as (constant, [(var, root), ...]) with monic linear factors."""
    b_i = as_rat(beta[i])
    if bit == 0:
        # (2z+b+1)(2z+b-1)/2 = 2 (z - r1)(z - r2)
        return Rat(2), [(i, -(b_i + 1) / 2), (i, -(b_i - 1) / 2)]
    # (2z+b+1)(2z+b) = 4 (z - r1)(z - r2)
    return Rat(4), [(i, -(b_i + 1) / 2), (i, -b_i / 2)]


def racah_kernel(i: int, z: Sequence, beta) -> dict:
    """The six kernel values at a concrete point (z_0 = 0 convention)."""
    nvars = max(len(z), i + 1)
    zvals = [as_rat(v) for v in z] + [Rat(0)] * (nvars - len(z))
    values = {}
    for bits in ((0, 0), (0, 1), (1, 0), (1, 1)):
        values[f"B{bits[0]}{bits[1]}"] = kernel_poly(i, *bits, beta, nvars).evaluate(zvals)
    for bit in (0, 1):
        const, factors = _b_denominator(i, bit, beta)
        value = const
        for var, root in factors:
            value *= zvals[var - 1] - root
        values[f"b{bit}"] = value
    return values


def racah_coefficient(j: int, pattern: Sequence[int], beta) -> ZFraction:
    """C_{j,pattern} as an exact fraction in z_1..z_{j+1}.

    ``pattern`` has entries in {-1, 0, 1}; entries equal to -1 are produced
    from the all-nonnegative pattern by the involutions I_k.
    """
    pattern = tuple(int(p) for p in pattern)
    if len(pattern) != j or any(p not in (-1, 0, 1) for p in pattern):
        raise ValueError(f"pattern {pattern} must lie in {{-1,0,1}}^{j}")
    nvars = j + 1
    base = tuple(abs(p) for p in pattern)
    padded = (0,) + base + (0,)  # pattern_0 = pattern_{j+1} = 0
    num = MultiPoly.const(nvars, 1)
    for k in range(j + 1):
        num = num * kernel_poly(k, padded[k], padded[k + 1], beta, nvars)
    frac = ZFraction(nvars, num)
    for k in range(1, j + 1):
        const, factors = _b_denominator(k, base[k - 1], beta)
        frac = frac.mul_scalar(1 / const)
        for var, root in factors:
            frac = frac.div_linear(var, root)
    for k in range(1, j + 1):
        if pattern[k - 1] == -1:
            frac = frac.involution(k, beta[k])
    return frac.reduce()


@dataclass
class ZShiftOp:
    """Difference operator in z_1..z_j with ZFraction coefficients."""

    j: int
    nvars: int
    beta: tuple
    terms: dict  # shift pattern in {-1,0,1}^j -> ZFraction

    def apply_involution(self, k: int) -> "ZShiftOp":
        """I_k: flip the k-th shift and transform every coefficient."""
        out = {}
        for sigma, frac in self.terms.items():
            flipped = tuple(-s if idx == k - 1 else s for idx, s in enumerate(sigma))
            out[flipped] = frac.involution(k, self.beta[k]).reduce()
        return ZShiftOp(self.j, self.nvars, self.beta, out)

    def equals(self, other: "ZShiftOp") -> bool:
        shifts = set(self.terms) | set(other.terms)
        zero = ZFraction.from_const(self.nvars, 0)
        return all(
            self.terms.get(s, zero).equals(other.terms.get(s, zero)) for s in shifts
        )

    def coefficient_at(self, sigma, zvals) -> Rat:
        frac = self.terms.get(tuple(sigma))
        if frac is None:
            return Rat(0)
        return frac.evaluate(zvals)

    def apply_to_grid_delta(self, source, point) -> Rat:
        """Matrix element <delta_point | self | delta_source> on the z lattice."""
        sigma = tuple(s - p for s, p in zip(source, point))
        if any(abs(s) > 1 for s in sigma):
            return Rat(0)
        zvals = list(point) + [Rat(0)] * (self.nvars - len(point))
        return self.coefficient_at(sigma, zvals)


def racah_operator(j: int, beta, boundary=None) -> ZShiftOp:
    """The I-invariant operator B_j(z;beta); beta supplies beta_0..beta_{j+1}.

    When ``boundary`` is given, the spectator variable z_{j+1} is fixed to
    that value before the coefficients are reduced (its value is constant on
    the index sets this operator ultimately acts on).
    """
    beta = tuple(as_rat(b) for b in beta)
    return _racah_operator_cached(j, beta[: j + 2], boundary)


def _racah_operator_cached(j: int, beta, boundary) -> ZShiftOp:
    key = (j, beta, boundary)
    cached = _RACAH_CACHE.get(key)
    if cached is not None:
        return cached
    op = _build_racah_operator(j, beta, boundary)
    if len(_RACAH_CACHE) > 64:
        _RACAH_CACHE.clear()
    _RACAH_CACHE[key] = op
    return op


_RACAH_CACHE: dict = {}


def _build_racah_operator(j: int, beta, boundary) -> ZShiftOp:
    if j < 1:
        raise ValueError("j must be >= 1")
    beta = [as_rat(b) for b in beta]
    if len(beta) < j + 2:
        raise ValueError(f"need beta_0..beta_{j + 1}")
    nvars = j + 1
    terms = {}
    for base in product((0, 1), repeat=j):
        padded = (0,) + base + (0,)
        num = MultiPoly.const(nvars, 1)
        for k in range(j + 1):
            num = num * kernel_poly(k, padded[k], padded[k + 1], beta, nvars)
        frac = ZFraction(nvars, num)
        for k in range(1, j + 1):
            const, factors = _b_denominator(k, base[k - 1], beta)
            frac = frac.mul_scalar(1 / const)
            for var, root in factors:
                frac = frac.div_linear(var, root)
        terms[base] = frac.reduce()
    # patterns with -1 entries: one involution from the pattern with that
    # slot flipped to +1 (already built, ordered by the number of -1 slots)
    mixed = sorted(
        (p for p in product((-1, 0, 1), repeat=j) if p not in terms),
        key=lambda p: sum(1 for s in p if s == -1),
    )
    for pattern in mixed:
        k = next(i for i, s in enumerate(pattern) if s == -1)
        parent = pattern[:k] + (1,) + pattern[k + 1 :]
        terms[pattern] = terms[parent].involution(k + 1, beta[k + 1]).reduce()
    zj1 = _zvar(nvars, j + 1)
    id_sub = zj1 * (zj1 + beta[j + 1]) + MultiPoly.const(
        nvars, (beta[0] + 1) * (beta[j + 1] - 1) / 2
    )
    zero_shift = (0,) * j
    terms[zero_shift] = terms[zero_shift].add(
        ZFraction(nvars, id_sub.scale(-1))
    )
    op = ZShiftOp(j, nvars, tuple(beta[: j + 2]), terms)
    if boundary is not None:
        op = ZShiftOp(
            j,
            nvars,
            op.beta,
            {
                sigma: frac.subs_const(j + 1, boundary).reduce()
                for sigma, frac in op.terms.items()
            },
        )
    return op


# ---------------------------------------------------------------------------
# difference operators on degree indices
# ---------------------------------------------------------------------------


class CoefficientEvaluator:
    """Interface: exact coefficient of one shift, as a function of nu."""

    def eval(self, nu) -> Rat:  # pragma: no cover - interface
        raise NotImplementedError

    def describe(self) -> str:  # pragma: no cover - interface
        raise NotImplementedError

    def scan(self, nu) -> "str | None":
        """Degeneracy description at nu for the strict pre-scan, else None."""
        try:
            self.eval(nu)
        except DegenerateParameter as exc:
            return str(exc)
        return None

    def strict_value(self, nu):
        """(value, None) under strict semantics, or (None, problem)."""
        message = self.scan(nu)
        if message:
            return None, message
        try:
            return self.eval(nu), None
        except DegenerateParameter as exc:
            return None, str(exc)


@dataclass(frozen=True)
class RacahTerm:
    shift: tuple
    coef: CoefficientEvaluator


class RacahOp:
    """Difference operator on functions of nu that preserves |nu|."""

    def __init__(self, d: int, name: str, terms: Sequence[RacahTerm]):
        for term in terms:
            if len(term.shift) != d:
                raise DimensionMismatch(f"shift {term.shift} has length != {d}")
            if sum(term.shift) != 0:
                raise ValueError(f"shift {term.shift} does not preserve |nu|")
        self.d = d
        self.name = name
        self.terms = tuple(terms)

    def shifts(self) -> list:
        return [term.shift for term in self.terms]

    def coefficient(self, shift, nu) -> Rat:
        shift = tuple(shift)
        total = Rat(0)
        for term in self.terms:
            if term.shift == shift:
                total += term.coef.eval(tuple(nu))
        return total

    def scan_degenerate(self, n: int) -> list:
        """Strict pre-scan over the whole level |nu| = n."""
        return self.assemble(n)[1]

    def assemble(self, n: int) -> "tuple[ExactMatrix | None, list]":
        """One evaluation pass: (matrix, []) or (None, degeneracy reports).

        Coefficients of shifts that would leave the nonnegative range must
        evaluate to zero; a nonzero escaping coefficient is an error.
        """
        basis = level_indices(n, self.d)
        index = {nu: i for i, nu in enumerate(basis)}
        size = len(basis)
        entries = [[Rat(0)] * size for _ in range(size)]
        problems = []
        for col, nu in enumerate(basis):
            for term in self.terms:
                value, problem = term.coef.strict_value(nu)
                if problem:
                    problems.append(f"shift {term.shift} at nu={nu}: {problem}")
                    continue
                if value == 0:
                    continue
                target = tuple(a + b for a, b in zip(nu, term.shift))
                if any(t < 0 for t in target):
                    raise ValueError(
                        f"{self.name}: nonzero coefficient {rat_str(value)} escapes the "
                        f"range at nu={nu}, shift {term.shift}"
                    )
                entries[index[target]][col] += value
        if problems:
            return None, problems
        return ExactMatrix(entries), []

    def matrix_on_level(self, n: int) -> ExactMatrix:
        """Matrix on {|nu| = n} in descending-lex basis order (columns = images).

        Evaluates with the numerator-first rule only (no strict pre-scan);
        raises DegenerateParameter when a value cannot be resolved.
        """
        basis = level_indices(n, self.d)
        index = {nu: i for i, nu in enumerate(basis)}
        size = len(basis)
        entries = [[Rat(0)] * size for _ in range(size)]
        for col, nu in enumerate(basis):
            for term in self.terms:
                value = term.coef.eval(nu)
                if value == 0:
                    continue
                target = tuple(a + b for a, b in zip(nu, term.shift))
                if any(t < 0 for t in target):
                    raise ValueError(
                        f"{self.name}: nonzero coefficient {rat_str(value)} escapes the "
                        f"range at nu={nu}, shift {term.shift}"
                    )
                entries[index[target]][col] += value
        return ExactMatrix(entries)

    def to_json(self, n: int) -> dict:
        samples = level_indices(n, self.d)
        return {
            "name": self.name,
            "d": self.d,
            "terms": [
                {
                    "shift": list(term.shift),
                    "coef_at": [
                        {"nu": list(nu), "value": rat_str(term.coef.eval(nu))}
                        for nu in samples
                    ],
                }
                for term in self.terms
            ],
        }


# -- printed-coefficient evaluators (numerator-first) ------------------------


@dataclass(frozen=True)
class FormFactor:
    """A named scalar form of nu; ``structural`` marks pure index factors."""

    label: str
    fn: Callable
    structural: bool = False

    def __call__(self, nu) -> Rat:
        return as_rat(self.fn(nu))


@dataclass(frozen=True)
class Summand:
    const: Rat
    numerator: tuple
    denominator: tuple = ()

    def eval(self, nu) -> Rat:
        value = self.const
        for factor in self.numerator:
            value *= factor(nu)
            if value == 0:
                return Rat(0)
        for factor in self.denominator:
            f = factor(nu)
            if f == 0:
                raise DegenerateParameter(
                    f"denominator form {factor.label} vanishes at nu={tuple(nu)}"
                )
            value /= f
        return value

    def scan(self, nu) -> "str | None":
        for factor in self.numerator:
            if factor.structural and factor(nu) == 0:
                return None
        for factor in self.denominator:
            if factor(nu) == 0:
                return f"denominator form {factor.label} vanishes"
        return None


class PrintedCoefficient(CoefficientEvaluator):
    def __init__(self, label: str, summands: Sequence[Summand]):
        self.label = label
        self.summands = tuple(summands)

    def eval(self, nu) -> Rat:
        return sum((s.eval(nu) for s in self.summands), Rat(0))

    def scan(self, nu) -> "str | None":
        for summand in self.summands:
            message = summand.scan(nu)
            if message:
                return message
        return None

    def describe(self) -> str:
        return self.label


def _ff(label: str, fn, structural: bool = False) -> FormFactor:
    return FormFactor(label, fn, structural)


def b12_operator(gamma) -> RacahOp:
    """Three-term operator on (nu_1, nu_2) representing L_{1,2} for d = 2."""
    params = require_valid(gamma, 2)
    g1, g2, g3 = params[1], params[2], params[3]
    g23 = g2 + g3

    c_mp = PrintedCoefficient(
        "c(-1,+1)",
        [
            Summand(
                Rat(1),
                (
                    _ff("nu1", lambda v: v[0], structural=True),
                    _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                    _ff("g2+g3+nu2+1", lambda v: g23 + v[1] + 1),
                    _ff("|g|+nu1+2nu2+2", lambda v: g1 + g23 + v[0] + 2 * v[1] + 2),
                ),
                (
                    _ff("g2+g3+2nu2+1", lambda v: g23 + 2 * v[1] + 1),
                    _ff("g2+g3+2nu2+2", lambda v: g23 + 2 * v[1] + 2),
                ),
            )
        ],
    )
    c_pm = PrintedCoefficient(
        "c(+1,-1)",
        [
            Summand(
                Rat(1),
                (
                    _ff("nu2", lambda v: v[1], structural=True),
                    _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                    _ff("g3+nu2", lambda v: g3 + v[1]),
                    _ff("g2+g3+nu1+2nu2+1", lambda v: g23 + v[0] + 2 * v[1] + 1),
                ),
                (
                    _ff("g2+g3+2nu2", lambda v: g23 + 2 * v[1]),
                    _ff("g2+g3+2nu2+1", lambda v: g23 + 2 * v[1] + 1),
                ),
            )
        ],
    )
    c_00 = PrintedCoefficient(
        "c(0,0)",
        [
            Summand(
                Rat(-1),
                (
                    _ff(
                        "nu1+nu2+2nu1nu2+nu2 g1+nu1 g2",
                        lambda v: v[0] + v[1] + 2 * v[0] * v[1] + v[1] * g1 + v[0] * g2,
                    ),
                ),
            ),
            Summand(
                Rat(1),
                (
                    _ff("nu1+1", lambda v: v[0] + 1),
                    _ff("nu2", lambda v: v[1], structural=True),
                    _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                    _ff("g2+nu2", lambda v: g2 + v[1]),
                ),
                (_ff("g2+g3+2nu2", lambda v: g23 + 2 * v[1]),),
            ),
            Summand(
                Rat(-1),
                (
                    _ff("nu1", lambda v: v[0], structural=True),
                    _ff("nu2+1", lambda v: v[1] + 1),
                    _ff("g1+nu1", lambda v: g1 + v[0]),
                    _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                ),
                (_ff("g2+g3+2nu2+2", lambda v: g23 + 2 * v[1] + 2),),
            ),
        ],
    )
    return RacahOp(
        2,
        "B12",
        [
            RacahTerm((-1, 1), c_mp),
            RacahTerm((0, 0), c_00),
            RacahTerm((1, -1), c_pm),
        ],
    )


def b23_operator(gamma) -> RacahOp:
    """Three-term operator on nu representing L_{2,3} for d = 3."""
    params = require_valid(gamma, 3)
    g2, g3, g4 = params[2], params[3], params[4]
    g34 = g3 + g4
    g234 = g2 + g34

    down = PrintedCoefficient(
        "b(0,-1,1)",
        [
            Summand(
                Rat(1),
                (
                    _ff("nu2", lambda v: v[1], structural=True),
                    _ff("g3+nu3+1", lambda v: g3 + v[2] + 1),
                    _ff("g34+nu3+1", lambda v: g34 + v[2] + 1),
                    _ff("g234+nu2+2nu3+2", lambda v: g234 + v[1] + 2 * v[2] + 2),
                ),
                (
                    _ff("g34+2nu3+1", lambda v: g34 + 2 * v[2] + 1),
                    _ff("g34+2nu3+2", lambda v: g34 + 2 * v[2] + 2),
                ),
            )
        ],
    )
    up = PrintedCoefficient(
        "b(0,1,-1)",
        [
            Summand(
                Rat(1),
                (
                    _ff("nu3", lambda v: v[2], structural=True),
                    _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                    _ff("g4+nu3", lambda v: g4 + v[2]),
                    _ff("g34+nu2+2nu3+1", lambda v: g34 + v[1] + 2 * v[2] + 1),
                ),
                (
                    _ff("g34+2nu3", lambda v: g34 + 2 * v[2]),
                    _ff("g34+2nu3+1", lambda v: g34 + 2 * v[2] + 1),
                ),
            )
        ],
    )
    diag = PrintedCoefficient(
        "b(0,0,0)",
        [
            Summand(
                Rat(-1),
                (
                    _ff(
                        "nu2+nu3+2nu2nu3+nu2 g3+nu3 g2",
                        lambda v: v[1] + v[2] + 2 * v[1] * v[2] + v[1] * g3 + v[2] * g2,
                    ),
                ),
            ),
            Summand(
                Rat(1),
                (
                    _ff("nu2+1", lambda v: v[1] + 1),
                    _ff("nu3", lambda v: v[2], structural=True),
                    _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                    _ff("g3+nu3", lambda v: g3 + v[2]),
                ),
                (_ff("g34+2nu3", lambda v: g34 + 2 * v[2]),),
            ),
            Summand(
                Rat(-1),
                (
                    _ff("nu2", lambda v: v[1], structural=True),
                    _ff("nu3+1", lambda v: v[2] + 1),
                    _ff("g2+nu2", lambda v: g2 + v[1]),
                    _ff("g3+nu3+1", lambda v: g3 + v[2] + 1),
                ),
                (_ff("g34+2nu3+2", lambda v: g34 + 2 * v[2] + 2),),
            ),
        ],
    )
    return RacahOp(
        3,
        "B23",
        [
            RacahTerm((0, -1, 1), down),
            RacahTerm((0, 0, 0), diag),
            RacahTerm((0, 1, -1), up),
        ],
    )


def b134_operator(gamma) -> RacahOp:
    """Three-term operator on nu representing L_{1,3}+L_{1,4}+L_{3,4} for d = 3."""
    params = require_valid(gamma, 3)
    g1, g2, g3, g4 = params[1], params[2], params[3], params[4]
    g34 = g3 + g4
    g234 = g2 + g34
    g134 = g1 + g34
    g1234 = g1 + g234

    def n23(v):
        return v[1] + v[2]

    plus_minus = PrintedCoefficient(
        "b(1,-1,0)",
        [
            Summand(
                Rat(-1),
                (
                    _ff("nu2", lambda v: v[1], structural=True),
                    _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                    _ff("g34+nu2+2nu3+1", lambda v: g34 + v[1] + 2 * v[2] + 1),
                    _ff("g234+nu1+2nu23+2", lambda v: g234 + v[0] + 2 * n23(v) + 2),
                ),
                (
                    _ff("g234+2nu23+1", lambda v: g234 + 2 * n23(v) + 1),
                    _ff("g234+2nu23+2", lambda v: g234 + 2 * n23(v) + 2),
                ),
            )
        ],
    )
    minus_plus = PrintedCoefficient(
        "b(-1,1,0)",
        [
            Summand(
                Rat(-1),
                (
                    _ff("nu1", lambda v: v[0], structural=True),
                    _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                    _ff("g234+nu2+2nu3+2", lambda v: g234 + v[1] + 2 * v[2] + 2),
                    _ff("g1234+nu1+2nu23+3", lambda v: g1234 + v[0] + 2 * n23(v) + 3),
                ),
                (
                    _ff("g234+2nu23+2", lambda v: g234 + 2 * n23(v) + 2),
                    _ff("g234+2nu23+3", lambda v: g234 + 2 * n23(v) + 3),
                ),
            )
        ],
    )
    diag = PrintedCoefficient(
        "b(0,0,0)",
        [
            Summand(
                Rat(-1),
                (
                    _ff("nu13", lambda v: v[0] + v[2]),
                    _ff("g134+nu13+2", lambda v: g134 + v[0] + v[2] + 2),
                ),
            ),
            Summand(
                Rat(1),
                (
                    _ff("nu1", lambda v: v[0], structural=True),
                    _ff("nu2+1", lambda v: v[1] + 1),
                    _ff("g1+nu1", lambda v: g1 + v[0]),
                    _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                ),
                (_ff("g234+2nu23+3", lambda v: g234 + 2 * n23(v) + 3),),
            ),
            Summand(
                Rat(-1),
                (
                    _ff("nu1+1", lambda v: v[0] + 1),
                    _ff("nu2", lambda v: v[1], structural=True),
                    _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                    _ff("g2+nu2", lambda v: g2 + v[1]),
                ),
                (_ff("g234+2nu23+1", lambda v: g234 + 2 * n23(v) + 1),),
            ),
        ],
    )
    return RacahOp(
        3,
        "B134",
        [
            RacahTerm((1, -1, 0), plus_minus),
            RacahTerm((0, 0, 0), diag),
            RacahTerm((-1, 1, 0), minus_plus),
        ],
    )


def b123_operator(gamma) -> RacahOp:
    """Nine-term operator on nu representing L_{1,2}+L_{1,3}+L_{2,3} for d = 3."""
    params = require_valid(gamma, 3)
    g1, g2, g3, g4 = params[1], params[2], params[3], params[4]
    g34 = g3 + g4
    g234 = g2 + g34
    g1234 = g1 + g234

    def n23(v):
        return v[1] + v[2]

    def n123(v):
        return v[0] + v[1] + v[2]

    # shared denominator forms
    d_g34 = _ff("g34+2nu3", lambda v: g34 + 2 * v[2])
    d_g34_1 = _ff("g34+2nu3+1", lambda v: g34 + 2 * v[2] + 1)
    d_g34_2 = _ff("g34+2nu3+2", lambda v: g34 + 2 * v[2] + 2)
    d_g234_1 = _ff("g234+2nu23+1", lambda v: g234 + 2 * n23(v) + 1)
    d_g234_2 = _ff("g234+2nu23+2", lambda v: g234 + 2 * n23(v) + 2)
    d_g234_3 = _ff("g234+2nu23+3", lambda v: g234 + 2 * n23(v) + 3)
    # shared bracket forms
    br_nu3 = _ff("2nu3(g34+nu3+1)+(g4+1)g34", lambda v: 2 * v[2] * (g34 + v[2] + 1) + (g4 + 1) * g34)
    br_nu1 = _ff(
        "2nu1(g1234+nu1+2nu23+3)+(g234+2nu23+3)(g1234+2nu23+2)",
        lambda v: 2 * v[0] * (g1234 + v[0] + 2 * n23(v) + 3)
        + (g234 + 2 * n23(v) + 3) * (g1234 + 2 * n23(v) + 2),
    )

    terms = []

    terms.append(
        RacahTerm(
            (-1, 0, 1),
            PrintedCoefficient(
                "b(-1,0,1)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu1", lambda v: v[0], structural=True),
                            _ff("g3+nu3+1", lambda v: g3 + v[2] + 1),
                            _ff("g34+nu3+1", lambda v: g34 + v[2] + 1),
                            _ff("g234+nu2+2nu3+2", lambda v: g234 + v[1] + 2 * v[2] + 2),
                            _ff("g234+nu2+2nu3+3", lambda v: g234 + v[1] + 2 * v[2] + 3),
                            _ff("g1234+nu1+2nu23+3", lambda v: g1234 + v[0] + 2 * n23(v) + 3),
                        ),
                        (d_g34_1, d_g34_2, d_g234_2, d_g234_3),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (-1, 2, -1),
            PrintedCoefficient(
                "b(-1,2,-1)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu1", lambda v: v[0], structural=True),
                            _ff("nu3", lambda v: v[2], structural=True),
                            _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                            _ff("g2+nu2+2", lambda v: g2 + v[1] + 2),
                            _ff("g4+nu3", lambda v: g4 + v[2]),
                            _ff("g1234+nu1+2nu23+3", lambda v: g1234 + v[0] + 2 * n23(v) + 3),
                        ),
                        (d_g34, d_g34_1, d_g234_2, d_g234_3),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (1, -2, 1),
            PrintedCoefficient(
                "b(1,-2,1)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu2-1", lambda v: v[1] - 1, structural=True),
                            _ff("nu2", lambda v: v[1], structural=True),
                            _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                            _ff("g3+nu3+1", lambda v: g3 + v[2] + 1),
                            _ff("g34+nu3+1", lambda v: g34 + v[2] + 1),
                            _ff("g234+nu1+2nu23+2", lambda v: g234 + v[0] + 2 * n23(v) + 2),
                        ),
                        (d_g34_1, d_g34_2, d_g234_1, d_g234_2),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (1, 0, -1),
            PrintedCoefficient(
                "b(1,0,-1)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu3", lambda v: v[2], structural=True),
                            _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                            _ff("g4+nu3", lambda v: g4 + v[2]),
                            _ff("g34+nu2+2nu3", lambda v: g34 + v[1] + 2 * v[2]),
                            _ff("g34+nu2+2nu3+1", lambda v: g34 + v[1] + 2 * v[2] + 1),
                            _ff("g234+nu1+2nu23+2", lambda v: g234 + v[0] + 2 * n23(v) + 2),
                        ),
                        (d_g34, d_g34_1, d_g234_1, d_g234_2),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (0, -1, 1),
            PrintedCoefficient(
                "b(0,-1,1)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu2", lambda v: v[1], structural=True),
                            _ff("g3+nu3+1", lambda v: g3 + v[2] + 1),
                            _ff("g34+nu3+1", lambda v: g34 + v[2] + 1),
                            _ff("g234+nu2+2nu3+2", lambda v: g234 + v[1] + 2 * v[2] + 2),
                            _ff(
                                "2nu123(g1234+nu123+3)+2nu23(g234+nu23+2)+(g234+3)(g1234+2)",
                                lambda v: 2 * n123(v) * (g1234 + n123(v) + 3)
                                + 2 * n23(v) * (g234 + n23(v) + 2)
                                + (g234 + 3) * (g1234 + 2),
                            ),
                        ),
                        (d_g34_1, d_g34_2, d_g234_1, d_g234_3),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (0, 1, -1),
            PrintedCoefficient(
                "b(0,1,-1)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu3", lambda v: v[2], structural=True),
                            _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                            _ff("g4+nu3", lambda v: g4 + v[2]),
                            _ff("g34+nu2+2nu3+1", lambda v: g34 + v[1] + 2 * v[2] + 1),
                            br_nu1,
                        ),
                        (d_g34, d_g34_1, d_g234_1, d_g234_3),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (-1, 1, 0),
            PrintedCoefficient(
                "b(-1,1,0)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu1", lambda v: v[0], structural=True),
                            _ff("g2+nu2+1", lambda v: g2 + v[1] + 1),
                            _ff("g234+nu2+2nu3+2", lambda v: g234 + v[1] + 2 * v[2] + 2),
                            _ff("g1234+nu1+2nu23+3", lambda v: g1234 + v[0] + 2 * n23(v) + 3),
                            br_nu3,
                        ),
                        (d_g34, d_g34_2, d_g234_2, d_g234_3),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (1, -1, 0),
            PrintedCoefficient(
                "b(1,-1,0)",
                [
                    Summand(
                        Rat(1),
                        (
                            _ff("nu2", lambda v: v[1], structural=True),
                            _ff("g1+nu1+1", lambda v: g1 + v[0] + 1),
                            _ff("g34+nu2+2nu3+1", lambda v: g34 + v[1] + 2 * v[2] + 1),
                            _ff("g234+nu1+2nu23+2", lambda v: g234 + v[0] + 2 * n23(v) + 2),
                            br_nu3,
                        ),
                        (d_g34, d_g34_2, d_g234_1, d_g234_2),
                    )
                ],
            ),
        )
    )
    terms.append(
        RacahTerm(
            (0, 0, 0),
            PrintedCoefficient(
                "b(0,0,0)",
                [
                    Summand(
                        Rat(-1),
                        (
                            _ff("nu123", lambda v: n123(v)),
                            _ff("g1234+nu123+3", lambda v: g1234 + n123(v) + 3),
                        ),
                    ),
                    Summand(
                        Rat(-1, 2),
                        (
                            _ff("g4+1", lambda v: g4 + 1),
                            _ff("g1234+2", lambda v: g1234 + 2),
                        ),
                    ),
                    Summand(
                        Rat(1, 2),
                        (
                            br_nu3,
                            _ff(
                                "2nu2(g234+nu2+2nu3+2)+(g34+2nu3+2)(g234+2nu3+1)",
                                lambda v: 2 * v[1] * (g234 + v[1] + 2 * v[2] + 2)
                                + (g34 + 2 * v[2] + 2) * (g234 + 2 * v[2] + 1),
                            ),
                            br_nu1,
                        ),
                        (d_g34, d_g34_2, d_g234_1, d_g234_3),
                    ),
                ],
            ),
        )
    )
    return RacahOp(3, "B123", terms)


def explicit_3d_operator(which: str, gamma) -> RacahOp:
    """Dispatch for the printed three-variable operators."""
    builders = {"B23": b23_operator, "B134": b134_operator, "B123": b123_operator}
    if which not in builders:
        raise ValueError(f"unknown operator {which!r}; expected one of {sorted(builders)}")
    return builders[which](gamma)


def certificate_2d(nu, gamma) -> Rat:
    """The 2D irreducibility certificate

        D = 2 c(-1,+1)(nu) c(+1,-1)(nu) (1 + 2 nu_2 + gamma_2 + gamma_3),

    nonzero at every interior index (nu_1 > 0 and nu_2 > 0) of a valid family.
    """
    params = require_valid(gamma, 2)
    nu = tuple(int(v) for v in nu)
    if len(nu) != 2 or nu[0] <= 0 or nu[1] <= 0:
        raise ValueError(f"certificate needs an interior index, got {nu}")
    op = b12_operator(params)
    c_mp = op.coefficient((-1, 1), nu)
    c_pm = op.coefficient((1, -1), nu)
    return 2 * c_mp * c_pm * (1 + 2 * nu[1] + params[2] + params[3])


# -- the general family specialized to degree indices ------------------------


class ZMappedCoefficient(CoefficientEvaluator):
    """A ZFraction read through a nu -> z change of variables."""

    def __init__(self, frac: ZFraction, z_of_nu: Callable, label: str):
        self.frac = frac
        self.z_of_nu = z_of_nu
        self.label = label

    def eval(self, nu) -> Rat:
        try:
            return self.frac.evaluate(self.z_of_nu(tuple(nu)))
        except DegenerateParameter as exc:
            raise DegenerateParameter(f"{exc} [nu={tuple(nu)}]") from None

    def strict_value(self, nu):
        # the fraction is fully reduced, so evaluation and strict scanning
        # coincide; one pass suffices
        try:
            return self.eval(nu), None
        except DegenerateParameter as exc:
            return None, str(exc)

    def describe(self) -> str:
        return self.label


def predicted_m_action(variant: str, j: int, n: int, d: int, gamma) -> RacahOp:
    """Difference operator representing M_j^+ (plus) or M_j^- (minus) on |nu| = n."""
    if variant not in ("plus", "minus"):
        raise ValueError("variant must be 'plus' or 'minus'")
    if not 2 <= j <= d:
        raise ValueError(f"j must satisfy 2 <= j <= {d}")
    params = require_valid(gamma, d)
    beta_plus, beta_minus = parameter_maps(params, n, d)

    if variant == "plus":
        m = j - 1
        beta = beta_plus
        boundary = n if j == d else None
        zop = racah_operator(m, beta.values[: m + 2], boundary=boundary)

        # fold the diagonal conjugation by g(nu) into each coefficient:
        # shifts with sigma_1 = +1 gain (1+g_1+z_1)/(A-1-z_1), sigma_1 = -1
        # gain (A-z_1)/(g_1+z_1), where A = |gamma| + 2n + d.
        A = params.total() + 2 * n + d
        nvars = zop.nvars
        z1 = MultiPoly.variable(nvars, 0)
        folded = {}
        for sigma, frac in zop.terms.items():
            if m >= 1 and sigma[0] == 1:
                # g(nu+mu)/g(nu) = (z_1 + g_1 + 1) / (A - 1 - z_1)
                frac = frac.mul_poly(z1 + MultiPoly.const(nvars, params[1] + 1))
                frac = frac.mul_scalar(-1).div_linear(1, A - 1)
            elif m >= 1 and sigma[0] == -1:
                # g(nu+mu)/g(nu) = (A - z_1) / (z_1 + g_1)
                frac = frac.mul_poly(z1.scale(-1) + MultiPoly.const(nvars, A))
                frac = frac.div_linear(1, -params[1])
            folded[sigma] = frac.reduce()
        constant = n * (n + beta[j] - beta[0] - 1)
        zero = (0,) * m
        folded[zero] = folded[zero].add_const(constant)

        def z_of_nu(nu):
            return tuple(sum(nu[:l]) for l in range(1, m + 2))

        def shift_of(sigma):
            mu = [0] * d
            for l, s in enumerate(sigma, start=1):
                mu[l - 1] += s
                mu[l] -= s
            return tuple(mu)

        name = f"R+:{j}"
        terms_src = folded
    else:
        m = d + 1 - j
        beta = beta_minus
        boundary = n if j == 2 else None
        zop = racah_operator(m, beta.values[: m + 2], boundary=boundary)

        def z_of_nu(nu):
            return tuple(sum(nu[d - l :]) for l in range(1, m + 2))

        def shift_of(sigma):
            mu = [0] * d
            for l, s in enumerate(sigma, start=1):
                mu[d - l] += s
                mu[d - l - 1] -= s
            return tuple(mu)

        name = f"R-:{j}"
        terms_src = zop.terms

    terms = [
        RacahTerm(
            shift_of(sigma),
            ZMappedCoefficient(frac, z_of_nu, f"{name} shift {shift_of(sigma)}"),
        )
        for sigma, frac in terms_src.items()
    ]
    return RacahOp(d, name, terms)
