"""Exact verification of the conformal algebra so(4,2) in a vector-field representation.

Generators are first-order differential operators with polynomial
coefficients over the rationals, acting on polynomials in ``x^0..x^3``::

    P_μ = ∂_μ
    J_μν = x_μ ∂_ν - x_ν ∂_μ
    D   = s_D x^ν ∂_ν
    C_μ = s_C (2 x_μ x^ν ∂_ν - x² ∂_μ)

with indices lowered by ``diag(1, -1, -1, -1)``. The signs ``s_D`` and
``s_C`` are not fixed by the bracket table alone; :func:`find_signs`
searches the four combinations and the default generators use the one
that reproduces the table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

Exponent = tuple[int, int, int, int]

METRIC = (1, -1, -1, -1)
INDEX_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
GENERATOR_NAMES = (
    [f"P{m}" for m in range(4)]
    + [f"J{m}{n}" for m, n in INDEX_PAIRS]
    + ["D"]
    + [f"C{m}" for m in range(4)]
)


class RationalPoly:
    """Sparse polynomial in four variables with :class:`~fractions.Fraction` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Exponent, object]] = None):
        clean = {}
        for exp, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                exp = tuple(int(e) for e in exp)
                if len(exp) != 4 or min(exp) < 0:
                    raise ValueError(f"bad exponent {exp}")
                clean[exp] = clean.get(exp, Fraction(0)) + coef
                if not clean[exp]:
                    del clean[exp]
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def _from_clean(cls, terms: dict) -> "RationalPoly":
        obj = cls.__new__(cls)
        obj.terms = dict(sorted(terms.items()))
        return obj

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, mu: int, coef=1) -> "RationalPoly":
        e = [0, 0, 0, 0]
        e[mu] = 1
        return cls({tuple(e): coef})

    @classmethod
    def monomial(cls, exp: Exponent, coef=1) -> "RationalPoly":
        return cls({tuple(exp): coef})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly.const(other)
        return isinstance(other, RationalPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return RationalPoly(out)

    def __neg__(self):
        return RationalPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            other = Fraction(other)
            return RationalPoly({e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for (e1, c1), (e2, c2) in itertools.product(self.terms.items(), other.terms.items()):
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
        return RationalPoly(out)

    __rmul__ = __mul__

    def diff(self, mu: int) -> "RationalPoly":
        out = {}
        for e, c in self.terms.items():
            if e[mu]:
                e2 = list(e)
                e2[mu] -= 1
                out[tuple(e2)] = c * e[mu]
        return RationalPoly(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"x{i}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


ZERO = RationalPoly()


def lowered_var(mu: int) -> RationalPoly:
    """``x_μ = η_μν x^ν``."""
    return RationalPoly.var(mu, METRIC[mu])


def minkowski_square() -> RationalPoly:
    return sum((RationalPoly.var(m) * lowered_var(m) for m in range(4)), ZERO)


@dataclass(frozen=True)
class DiffOperator:
    """``c^μ(x) ∂_μ + m(x)`` with exact polynomial coefficients."""

    coeffs: tuple = field(default_factory=lambda: (ZERO,) * 4)
    mult: RationalPoly = ZERO

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("a DiffOperator needs four vector-field coefficients")

    def apply(self, f: RationalPoly) -> RationalPoly:
        acc: dict = {}
        for e1, c1 in self.mult.terms.items():
            for e2, c2 in f.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                acc[e] = acc.get(e, 0) + c1 * c2
        for mu, c in enumerate(self.coeffs):
            if not c.terms:
                continue
            for e2, c2 in f.terms.items():
                p = e2[mu]
                if not p:
                    continue
                d = list(e2)
                d[mu] -= 1
                for e1, c1 in c.terms.items():
                    e = (e1[0] + d[0], e1[1] + d[1], e1[2] + d[2], e1[3] + d[3])
                    acc[e] = acc.get(e, 0) + c1 * c2 * p
        return RationalPoly._from_clean({e: c for e, c in acc.items() if c})

    def is_zero(self) -> bool:
        return self.mult.is_zero() and all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.mult + other.mult
        )

    def __neg__(self):
        return DiffOperator(tuple(-c for c in self.coeffs), -self.mult)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "DiffOperator":
        return DiffOperator(tuple(c * s for c in self.coeffs), self.mult * s)

    def __eq__(self, other):
        return (
            isinstance(other, DiffOperator)
            and self.coeffs == other.coeffs
            and self.mult == other.mult
        )

    def __hash__(self):
        return hash((self.coeffs, self.mult))

    def vector(self) -> dict:
        """Flat coefficient map ``(slot, exponent) -> Fraction``; slot 4 is the multiplier."""
        out = {}
        for slot, poly in enumerate(self.coeffs + (self.mult,)):
            for e, c in poly.terms.items():
                out[(slot, e)] = c
        return out


def commutator(A: DiffOperator, B: DiffOperator) -> DiffOperator:
    """``A∘B - B∘A``; second derivatives cancel, so the result is first order."""
    coeffs = tuple(A.apply(B.coeffs[nu]) - B.apply(A.coeffs[nu]) for nu in range(4))
    vfA = DiffOperator(A.coeffs)
    vfB = DiffOperator(B.coeffs)
    mult = vfA.apply(B.mult) - vfB.apply(A.mult)
    return DiffOperator(coeffs, mult)


def _euler() -> DiffOperator:
    return DiffOperator(tuple(RationalPoly.var(n) for n in range(4)))


def _generator(name: str, s_D: int, s_C: int) -> DiffOperator:
    if name.startswith("P") and len(name) == 2:
        mu = int(name[1])
        return DiffOperator(tuple(RationalPoly.const(1) if n == mu else ZERO for n in range(4)))
    if name.startswith("J") and len(name) == 3:
        mu, nu = int(name[1]), int(name[2])
        coeffs = [ZERO] * 4
        coeffs[nu] = coeffs[nu] + lowered_var(mu)
        coeffs[mu] = coeffs[mu] - lowered_var(nu)
        return DiffOperator(tuple(coeffs))
    if name == "D":
        return _euler().scale(s_D)
    if name.startswith("C") and len(name) == 2:
        mu = int(name[1])
        x2 = minkowski_square()
        xm = lowered_var(mu)
        coeffs = [xm * RationalPoly.var(n) * 2 for n in range(4)]
        coeffs[mu] = coeffs[mu] - x2
        return DiffOperator(tuple(coeffs)).scale(s_C)
    raise ValueError(f"unknown generator {name!r}")


# signs that reproduce the bracket table under the A∘B - B∘A convention
DEFAULT_SIGNS = (-1, 1)


def generator(name: str, signs: tuple[int, int] = DEFAULT_SIGNS) -> DiffOperator:
    """Differential operator for ``P0..P3``, ``J01..J23``, ``D`` or ``C0..C3``."""
    if name not in GENERATOR_NAMES:
        from .errors import InvalidInputError

        raise InvalidInputError(f"unknown generator {name!r}; expected one of {GENERATOR_NAMES}")
    return _generator(name, *signs)


def generators(signs: tuple[int, int] = DEFAULT_SIGNS) -> dict[str, DiffOperator]:
    return {n: _generator(n, *signs) for n in GENERATOR_NAMES}


# -- the bracket table -------------------------------------------------------

Combination = dict  # generator name -> Fraction


def _add(combo: Combination, name: str, coef) -> None:
    """Accumulate ``coef * name``, normalizing ``J_νμ = -J_μν`` and ``J_μμ = 0``."""
    if name.startswith("J"):
        mu, nu = int(name[1]), int(name[2])
        if mu == nu:
            return
        if mu > nu:
            name, coef = f"J{nu}{mu}", -coef
    if coef:
        combo[name] = combo.get(name, Fraction(0)) + Fraction(coef)
        if not combo[name]:
            del combo[name]


def _eta(a: int, b: int) -> int:
    return METRIC[a] if a == b else 0


def _kind(name: str):
    return name[0], tuple(int(c) for c in name[1:])


def expected_bracket(name_a: str, name_b: str) -> Combination:
    """Linear combination of generators that ``(A, B)`` should equal."""
    ka, ia = _kind(name_a)
    kb, ib = _kind(name_b)
    out: Combination = {}
    pair = (ka, kb)
    if pair in {("P", "P"), ("C", "C"), ("D", "J"), ("J", "D")}:
        return out
    if pair == ("J", "P"):
        (m, n), (r,) = ia, ib
        _add(out, f"P{m}", _eta(n, r))
        _add(out, f"P{n}", -_eta(m, r))
    elif pair == ("J", "J"):
        (m, n), (r, s) = ia, ib
        _add(out, f"J{m}{s}", _eta(n, r))
        _add(out, f"J{n}{r}", _eta(m, s))
        _add(out, f"J{n}{s}", -_eta(m, r))
        _add(out, f"J{m}{r}", -_eta(n, s))
    elif pair == ("D", "P"):
        _add(out, name_b, 1)
    elif pair == ("P", "C"):
        (m,), (n,) = ia, ib
        _add(out, "D", -2 * _eta(m, n))
        _add(out, f"J{m}{n}", -2)
    elif pair == ("J", "C"):
        (m, n), (r,) = ia, ib
        _add(out, f"C{m}", _eta(n, r))
        _add(out, f"C{n}", -_eta(m, r))
    elif pair == ("D", "C"):
        _add(out, name_b, -1)
    else:
        # reversed order of a tabulated pair: antisymmetry
        return {k: -v for k, v in expected_bracket(name_b, name_a).items()}
    return out


def combination_operator(combo: Mapping[str, Fraction], basis: Mapping[str, DiffOperator]) -> DiffOperator:
    out = DiffOperator()
    for name, coef in combo.items():
        out = out + basis[name].scale(coef)
    return out


def _solve_square(rows: list) -> list:
    """Invert a square Fraction matrix by Gauss-Jordan elimination."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


class _Decomposer:
    """Exact coordinates in a linearly independent operator basis.

    Picks one coefficient key per basis element where the restricted matrix
    is invertible, solves there, then confirms the reconstruction on all keys.
    """

    def __init__(self, basis: Mapping[str, DiffOperator]):
        self.names = list(basis)
        self.ops = [basis[n] for n in self.names]
        vecs = [op.vector() for op in self.ops]
        keys = sorted(set().union(*vecs))
        chosen: list = []
        rows: list = []
        # greedy row selection keeps the selected rows independent
        reduced: list = []
        for k in keys:
            row = [v.get(k, Fraction(0)) for v in vecs]
            r = list(row)
            for piv_col, prow in reduced:
                if r[piv_col] != 0:
                    f = r[piv_col] / prow[piv_col]
                    r = [x - f * y for x, y in zip(r, prow)]
            col = next((c for c, x in enumerate(r) if x != 0), None)
            if col is not None:
                reduced.append((col, r))
                chosen.append(k)
                rows.append(row)
            if len(chosen) == len(vecs):
                break
        if len(chosen) != len(vecs):
            raise ValueError("basis operators are linearly dependent")
        self.keys = chosen
        self.inverse = _solve_square(rows)

    def __call__(self, op: DiffOperator) -> Optional[Combination]:
        t = op.vector()
        rhs = [t.get(k, Fraction(0)) for k in self.keys]
        coords = [sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in self.inverse]
        combo = {n: c for n, c in zip(self.names, coords) if c}
        if combination_operator(combo, dict(zip(self.names, self.ops))).vector() != t:
            return None
        return combo


def decompose(op: DiffOperator, basis: Mapping[str, DiffOperator]) -> Optional[Combination]:
    """Exact coordinates of ``op`` in the span of ``basis``, or ``None`` if outside it."""
    return _Decomposer(basis)(op)


def monomials(max_degree: int = 3) -> list[RationalPoly]:
    out = []
    for e in itertools.product(range(max_degree + 1), repeat=4):
        if sum(e) <= max_degree:
            out.append(RationalPoly.monomial(e))
    return out


_MONOMIALS = monomials(3)


def operators_equal(A: DiffOperator, B: DiffOperator, basis_polys: Iterable[RationalPoly] = _MONOMIALS) -> bool:
    """Equality by action on all monomials up to total degree 3."""
    return all(A.apply(f) == B.apply(f) for f in basis_polys)


def format_combination(combo: Mapping[str, Fraction]) -> str:
    if not combo:
        return "0"
    parts = []
    for name in GENERATOR_NAMES:
        if name in combo:
            c = combo[name]
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(f"{coef}{name}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class BracketResult:
    bracket: str
    expected: str
    computed: str
    passed: bool

    def as_row(self) -> list:
        return [self.bracket, self.expected, self.computed, "pass" if self.passed else "fail"]


@dataclass(frozen=True)
class StructureReport:
    convention: str
    signs: tuple[int, int]
    results: list

    @property
    def n_pass(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def n_total(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> list:
        return [r.bracket for r in self.results if not r.passed]

    @property
    def all_pass(self) -> bool:
        return self.n_pass == self.n_total


def _check(signs, convention, overrides) -> StructureReport:
    reference = generators(signs)
    operands = dict(reference)
    operands.update(overrides or {})
    decomposer = _Decomposer(reference)
    results = []
    for a, b in itertools.combinations(GENERATOR_NAMES, 2):
        br = commutator(operands[a], operands[b])
        if convention == "BA-AB":
            br = -br
        combo = expected_bracket(a, b)
        want = combination_operator(combo, reference)
        got = decomposer(br)
        ok = operators_equal(br, want)
        results.append(
            BracketResult(
                f"({a},{b})",
                format_combination(combo),
                "outside algebra" if got is None else format_combination(got),
                ok,
            )
        )
    return StructureReport(convention, tuple(signs), results)


def find_signs(convention: str = "AB-BA") -> list[tuple[int, int]]:
    """All ``(s_D, s_C)`` for which every bracket matches the table."""
    return [
        s for s in itertools.product((1, -1), repeat=2) if _check(s, convention, None).all_pass
    ]


def check_structure_constants(
    overrides: Optional[Mapping[str, DiffOperator]] = None,
    signs: Optional[tuple[int, int]] = None,
) -> StructureReport:
    """Compare all 105 brackets among the 15 generators against the table.

    ``overrides`` substitutes operators for the bracket *operands* only; the
    expected combinations are still built from the reference generators.
    This is how a perturbed generator is exercised, with the default signs
    and ordering. Otherwise both bracket orderings and all sign choices are
    tried; the first fully passing report is returned, or the best one.
    """
    if overrides:
        return _check(signs or DEFAULT_SIGNS, "AB-BA", overrides)
    candidates = []
    for convention in ("AB-BA", "BA-AB"):
        options = [DEFAULT_SIGNS] + [
            s for s in itertools.product((1, -1), repeat=2) if s != DEFAULT_SIGNS
        ]
        for s in [signs] if signs else options:
            report = _check(s, convention, None)
            if report.all_pass:
                return report
            candidates.append(report)
    return max(candidates, key=lambda r: r.n_pass)
