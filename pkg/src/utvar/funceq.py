"""Equality of polynomial functions over a semiring.

Two formal polynomials can induce the same evaluation function; which
pairs do depends on the semiring.  Each shipped semiring carries a
strategy tag:

- formal: distinct formal polynomials are distinct functions (naturals,
  free idempotent semiring), so formal comparison decides and an explicit
  separating point is constructed for unequal pairs.
- exhaustive: finite carriers, decided by full evaluation (capped).
- tropical-dominance: max-plus, decided monomial-by-monomial through an
  exact rational linear feasibility kernel.
- boolean-support: monotone support antichains.
- interval-breakpoint: one-variable polynomials over the capped interval
  semiring, decided on the finite breakpoint set.

Unsupported semiring/shape combinations raise; nothing here ever guesses,
samples, or uses a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .poly import FormalPoly, Monomial
from .semirings import (
    BOOLEAN_SUPPORT,
    EXHAUSTIVE,
    FORMAL,
    INTERVAL_BREAKPOINT,
    MINUS_INF,
    TROPICAL_DOMINANCE,
    Elem,
    FreeIdempotentSemiring,
    NaturalSemiring,
    require_same,
)

EXHAUSTIVE_CAP = 10_000_000


class StrategyUnavailableError(RuntimeError):
    """The semiring's strategy cannot decide this comparison."""


class ExhaustiveCapError(StrategyUnavailableError):
    """The finite evaluation space exceeds the exhaustive cap."""


@dataclass(frozen=True)
class EqWitness:
    """A point separating two polynomial functions."""

    point: dict

    def __repr__(self):
        inner = ", ".join(f"{v.text()}={val!r}" for v, val in
                          sorted(self.point.items()))
        return f"EqWitness({inner})"


# ---------------------------------------------------------------------------
# Exact rational linear feasibility (phase-1 simplex, Bland's rule).

@dataclass(frozen=True)
class FeasibilitySystem:
    """The system  sum_j L_j b_j = a,  sum_j L_j = 1,  sum_j L_j d_j >= c,
    L >= 0,  over exact rationals."""

    generators: tuple  # tuple of exponent vectors b_j (tuples of Fraction)
    target: tuple  # a
    gen_offsets: tuple  # d_j
    target_offset: Fraction  # c


def _phase1(A: list, b: list) -> tuple[bool, list]:
    """Feasibility of {Ax = b, x >= 0} by phase-1 simplex over Fraction.

    Returns (True, x) with a feasible point or (False, y) with a Farkas
    certificate: y.A <= 0 componentwise while y.b > 0.  Bland's rule makes
    termination unconditional; arithmetic is exact throughout.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows, rhs, flip = [], [], []
    for i in range(m):
        if b[i] < 0:
            rows.append([-x for x in A[i]])
            rhs.append(-b[i])
            flip.append(Fraction(-1))
        else:
            rows.append([Fraction(x) for x in A[i]])
            rhs.append(Fraction(b[i]))
            flip.append(Fraction(1))

    zero = Fraction(0)
    width = n + m
    T = [rows[i] + [Fraction(1) if j == i else zero for j in range(m)]
         + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs for the phase-1 objective (artificial cost 1, rest 0)
    obj = [(zero if j < n else Fraction(1)) - sum(T[i][j] for i in range(m))
           for j in range(width)]
    obj.append(-sum(rhs))  # negated objective value

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), -1)
        if enter < 0:
            break
        leave, best = -1, None
        for i in range(m):
            coef = T[i][enter]
            if coef > 0:
                ratio = T[i][-1] / coef
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best, leave = ratio, i
        if leave < 0:
            raise RuntimeError("phase-1 objective unbounded: malformed system")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        pivot_row = T[leave]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                factor = T[i][enter]
                T[i] = [vi - factor * vp for vi, vp in zip(T[i], pivot_row)]
        factor = obj[enter]
        if factor != 0:
            obj = [vo - factor * vp for vo, vp in zip(obj, pivot_row)]
        basis[leave] = enter

    objective = -obj[-1]
    if objective == 0:
        x = [zero] * n
        for i, bi in enumerate(basis):
            if bi < n:
                x[bi] = T[i][-1]
        return True, x
    # infeasible: multipliers from the artificial columns' reduced costs
    y = [(Fraction(1) - obj[n + i]) * flip[i] for i in range(m)]
    return False, y


def feasible(system: FeasibilitySystem) -> tuple[bool, tuple]:
    """Exact feasibility verdict with a certificate.

    Feasible: ("combination", weights).  Infeasible: ("separating", y)
    where y splits as (u over the exponent rows, v for the weight-sum row,
    t for the offset row) and satisfies the Farkas inequalities.
    """
    k = len(system.target)
    m = len(system.generators)
    # columns: m weights + 1 slack for the offset inequality
    A = []
    b = []
    for r in range(k):
        A.append([Fraction(g[r]) for g in system.generators] + [Fraction(0)])
        b.append(Fraction(system.target[r]))
    A.append([Fraction(1)] * m + [Fraction(0)])
    b.append(Fraction(1))
    A.append([Fraction(d) for d in system.gen_offsets] + [Fraction(-1)])
    b.append(Fraction(system.target_offset))
    ok, cert = _phase1(A, b)
    if ok:
        return True, ("combination", tuple(cert[:m]))
    return False, ("separating", tuple(cert))


# ---------------------------------------------------------------------------
# Tropical strategy.

def _exponent_vector(mono: Monomial, variables: tuple) -> tuple:
    exps = dict(mono)
    return tuple(Fraction(exps.get(v, 0)) for v in variables)


def tropical_dominated(mono: Monomial, coeff: Elem, g: FormalPoly) -> bool:
    """Whether c + a.x <= max_j (d_j + b_j.x) holds for all real x.

    Decided exactly: the inequality holds iff (a, c) is below the upper
    hull of the (b_j, d_j), i.e. iff the associated weight system is
    feasible.
    """
    held, _ = _tropical_dominated_cert(mono, coeff, g)
    return held


def _tropical_dominated_cert(mono, coeff, g):
    if g.is_zero():
        return False, None
    variables = tuple(sorted(set(g.vars()) | set(mono.vars())))
    system = FeasibilitySystem(
        generators=tuple(_exponent_vector(m, variables) for m in g.terms),
        target=_exponent_vector(mono, variables),
        gen_offsets=tuple(Fraction(c) for c in g.terms.values()),
        target_offset=Fraction(coeff),
    )
    ok, cert = feasible(system)
    if ok:
        return True, None
    return False, (variables, system, cert[1])


def _tropical_separating_point(mono, coeff, g, variables, system, y):
    """Turn a Farkas certificate into a rational point where the monomial
    beats g.  With t > 0 the point is u/t; with t = 0 the direction u is
    scaled until the linear growth wins."""
    k = len(variables)
    u, t = y[:k], y[k + 1]
    if t > 0:
        coords = [ui / t for ui in u]
    else:
        a = system.target
        scale = Fraction(1)
        for b_j, d_j in zip(system.generators, system.gen_offsets):
            growth = sum(ui * (ai - bi) for ui, ai, bi in zip(u, a, b_j))
            # growth > 0 is guaranteed by the certificate when t = 0
            need = (d_j - system.target_offset) / growth
            if need + 1 > scale:
                scale = need + 1
        coords = [ui * scale for ui in u]
    return {v: c for v, c in zip(variables, coords)}


def _tropical_equal(f, g):
    if f.is_zero() and g.is_zero():
        return True, None
    if f.is_zero() or g.is_zero():
        nonzero = g if f.is_zero() else f
        point = {v: Fraction(0) for v in nonzero.vars()}
        return False, EqWitness(point)
    for small, large in ((f, g), (g, f)):
        for mono, coeff in small.sorted_terms():
            held, data = _tropical_dominated_cert(mono, coeff, large)
            if not held:
                variables, system, y = data
                point = _tropical_separating_point(
                    mono, coeff, large, variables, system, y)
                for v in set(f.vars()) | set(g.vars()):
                    point.setdefault(v, Fraction(0))
                if f.evaluate(point) == g.evaluate(point):
                    raise AssertionError(
                        "tropical separating point failed to separate")
                return False, EqWitness(point)
    return True, None


def _tropical_canonical(f):
    """Iteratively drop monomials dominated by the rest.

    The survivors are the vertices of the lifted Newton polyhedron, which
    are present in every representation of the function, so the result is
    canonical and order-independent."""
    keep = dict(f.terms)
    for mono, coeff in f.sorted_terms():
        if len(keep) <= 1:
            break
        rest = FormalPoly(f.semiring,
                          {m: c for m, c in keep.items() if m != mono})
        if tropical_dominated(mono, coeff, rest):
            del keep[mono]
    return FormalPoly(f.semiring, keep)


# ---------------------------------------------------------------------------
# Boolean strategy: monotone functions via minimal-support antichains.

def _support_antichain(f):
    supports = {frozenset(m.vars()) for m in f.terms}
    return frozenset(
        s for s in supports if not any(t < s for t in supports))


def _boolean_point(variables, on):
    return {v: (1 if v in on else 0) for v in variables}


def _boolean_equal(f, g):
    fa, ga = _support_antichain(f), _support_antichain(g)
    if fa == ga:
        return True, None
    variables = tuple(sorted(set(f.vars()) | set(g.vars())))
    probe = min(fa ^ ga, key=lambda s: (len(s), sorted(s)))
    other_chain = ga if probe in fa else fa
    cover = sorted((s for s in other_chain if s <= probe),
                   key=lambda s: (len(s), sorted(s)))
    on = probe if not cover else cover[0]
    point = _boolean_point(variables, on)
    if f.evaluate(point) == g.evaluate(point):
        raise AssertionError("boolean separating point failed to separate")
    return False, EqWitness(point)


def _boolean_canonical(f):
    return FormalPoly(
        f.semiring,
        {Monomial.from_pairs((v, 1) for v in sorted(s)): f.semiring.one
         for s in _support_antichain(f)})


# ---------------------------------------------------------------------------
# Exhaustive strategy for finite carriers.

def _exhaustive_points(semiring, variables):
    elems = tuple(semiring.elements())
    total = len(elems) ** len(variables) if variables else 1
    if total > EXHAUSTIVE_CAP:
        raise ExhaustiveCapError(
            f"{total} evaluation points exceed the exhaustive cap")
    for combo in product(elems, repeat=len(variables)):
        yield dict(zip(variables, combo))


def _exhaustive_equal(f, g):
    variables = tuple(sorted(set(f.vars()) | set(g.vars())))
    for point in _exhaustive_points(f.semiring, variables):
        if f.evaluate(point) != g.evaluate(point):
            return False, EqWitness(point)
    return True, None


def _finite_key(f):
    """Value table restricted to the variables the function depends on."""
    S = f.semiring
    elems = tuple(S.elements())
    variables = tuple(sorted(f.vars()))
    table = {}
    for point in _exhaustive_points(S, variables):
        table[tuple(point[v] for v in variables)] = f.evaluate(point)
    relevant = []
    for idx, v in enumerate(variables):
        for key, val in table.items():
            for alt in elems:
                if alt == key[idx]:
                    continue
                other = key[:idx] + (alt,) + key[idx + 1:]
                if table[other] != val:
                    break
            else:
                continue
            relevant.append(idx)
            break
    rel_vars = tuple(variables[i] for i in relevant)
    base = {v: elems[0] for v in variables}
    values = []
    for combo in product(elems, repeat=len(rel_vars)):
        point = dict(base)
        point.update(zip(rel_vars, combo))
        values.append(f.evaluate(point))
    return (rel_vars, tuple(values))


# ---------------------------------------------------------------------------
# Formal strategy witnesses (naturals and the free idempotent semiring).

def _nat_witness(f, g):
    variables = tuple(sorted(set(f.vars()) | set(g.vars())))
    if not variables:
        return EqWitness({})
    radius = 0
    while radius <= 10_000:
        for combo in product(range(radius + 1), repeat=len(variables)):
            if max(combo, default=0) != radius:
                continue
            point = dict(zip(variables, combo))
            if f.evaluate(point) != g.evaluate(point):
                return EqWitness(point)
        radius += 1
    raise AssertionError("distinct formal polynomials over the naturals "
                         "must differ within the search box")


def _freeidpt_witness(f, g):
    """Separate distinct formal polynomials over the free idempotent
    semiring by substituting powers of one symbol, exponent-encoded so the
    substitution is injective on (coefficient monomial, term) pairs."""
    S = f.semiring
    variables = tuple(sorted(set(f.vars()) | set(g.vars())))
    coeff_deg = 0
    term_deg = 0
    for poly in (f, g):
        for mono, coeff in poly.terms.items():
            term_deg = max(term_deg, max((e for _, e in mono), default=0))
            for cm in coeff:
                coeff_deg = max(coeff_deg, cm[0])
    gap = coeff_deg + 1
    base = term_deg + 1
    point = {}
    for r, v in enumerate(variables):
        exps = [0] * S.k
        exps[0] = gap * base ** r
        point[v] = frozenset({tuple(exps)})
    return EqWitness(point)


def _formal_equal(f, g):
    if f == g:
        return True, None
    S = f.semiring
    if isinstance(S, NaturalSemiring):
        witness = _nat_witness(f, g)
    elif isinstance(S, FreeIdempotentSemiring):
        witness = _freeidpt_witness(f, g)
    else:
        return False, None
    if f.evaluate(witness.point) == g.evaluate(witness.point):
        raise AssertionError("formal separating point failed to separate")
    return False, witness


# ---------------------------------------------------------------------------
# Interval strategy: one-variable breakpoint analysis.

def _interval_lines(poly, var):
    lines = []
    for mono, coeff in poly.terms.items():
        exps = dict(mono)
        lines.append((Fraction(coeff), exps.get(var, 0)))
    return lines


def _interval_equal(f, g):
    variables = tuple(sorted(set(f.vars()) | set(g.vars())))
    if len(variables) > 1:
        raise StrategyUnavailableError(
            "interval function equality is decided for one variable only")
    if not variables:
        empty = {}
        if f.evaluate(empty) == g.evaluate(empty):
            return True, None
        return False, EqWitness(empty)
    var = variables[0]
    lines = _interval_lines(f, var) + _interval_lines(g, var)
    candidates = {Fraction(0), Fraction(1)}
    for c, e in lines:
        if e > 0 and 0 < (1 - c) / e < 1:
            candidates.add((1 - c) / e)
    for i, (c1, e1) in enumerate(lines):
        for c2, e2 in lines[i + 1:]:
            if e1 != e2:
                t = (c2 - c1) / Fraction(e1 - e2)
                if 0 < t < 1:
                    candidates.add(t)
    for t in sorted(candidates):
        point = {var: t}
        if f.evaluate(point) != g.evaluate(point):
            return False, EqWitness(point)
    point = {var: MINUS_INF}
    if f.evaluate(point) != g.evaluate(point):
        return False, EqWitness(point)
    return True, None


# ---------------------------------------------------------------------------
# Public surface.

def func_equal(f: FormalPoly, g: FormalPoly) -> tuple[bool, Optional[EqWitness]]:
    """Decide whether two formal polynomials induce the same function.

    Returns (verdict, witness): the witness is a separating point for
    unequal pairs.  Raises StrategyUnavailableError when the semiring's
    strategy cannot decide the comparison.
    """
    require_same(f.semiring, g.semiring)
    if f == g:
        return True, None
    strategy = f.semiring.eq_strategy
    if strategy == FORMAL:
        return _formal_equal(f, g)
    if strategy == EXHAUSTIVE:
        return _exhaustive_equal(f, g)
    if strategy == TROPICAL_DOMINANCE:
        return _tropical_equal(f, g)
    if strategy == BOOLEAN_SUPPORT:
        return _boolean_equal(f, g)
    if strategy == INTERVAL_BREAKPOINT:
        return _interval_equal(f, g)
    raise StrategyUnavailableError(
        f"no function-equality strategy for semiring {f.semiring.name}")


def canonicalize(f: FormalPoly) -> FormalPoly:
    """A function-equal canonical representative, where the strategy
    supports canonical forms (boolean, tropical, finite, formal)."""
    strategy = f.semiring.eq_strategy
    if strategy == FORMAL or strategy == EXHAUSTIVE:
        return f
    if strategy == TROPICAL_DOMINANCE:
        return _tropical_canonical(f)
    if strategy == BOOLEAN_SUPPORT:
        return _boolean_canonical(f)
    raise StrategyUnavailableError(
        f"no canonical form for semiring {f.semiring.name}")


def canonical_key(f: FormalPoly):
    """A hashable key equal across exactly the function-equal polynomials."""
    strategy = f.semiring.eq_strategy
    if strategy == FORMAL:
        return frozenset(f.terms.items())
    if strategy == EXHAUSTIVE:
        return _finite_key(f)
    if strategy == TROPICAL_DOMINANCE:
        return frozenset(_tropical_canonical(f).terms.items())
    if strategy == BOOLEAN_SUPPORT:
        return _support_antichain(f)
    raise StrategyUnavailableError(
        f"no canonical key for semiring {f.semiring.name}")


def is_zero_function(f: FormalPoly) -> bool:
    """Whether f is the constant-zero function."""
    if f.is_zero():
        return True
    if f.semiring.eq_strategy == EXHAUSTIVE:
        return func_equal(f, FormalPoly.zero(f.semiring))[0]
    # For the other shipped strategies a formally nonzero polynomial never
    # collapses to the zero function.
    return False
