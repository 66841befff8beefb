"""Shared helpers and independent oracles for the test suite.

Oracles here intentionally avoid the library code paths they validate:
scattered-subword counting is a direct DP on words, finite-semiring
function fingerprints are raw evaluation sweeps, and bicyclic products
are word rewriting.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from random import Random

from utvar.poly import FormalPoly, Monomial, Var
from utvar.semirings import (
    BooleanSemiring,
    FreeIdempotentSemiring,
    IntegersModSemiring,
    IntervalSemiring,
    NaturalSemiring,
    TropicalSemiring,
)


def make_semirings():
    return {
        "tropical": TropicalSemiring(),
        "boolean": BooleanSemiring(),
        "nat": NaturalSemiring(),
        "zmod:2": IntegersModSemiring(2),
        "zmod:3": IntegersModSemiring(3),
        "interval": IntervalSemiring(),
        "freeidpt:1": FreeIdempotentSemiring(1),
        "freeidpt:2": FreeIdempotentSemiring(2),
    }


def scattered_subword_count(pattern: str, word: str) -> int:
    """Number of occurrences of `pattern` as a scattered subword of
    `word`; straight DP on prefixes."""
    counts = [1] + [0] * len(pattern)
    for ch in word:
        for k in range(len(pattern) - 1, -1, -1):
            if pattern[k] == ch:
                counts[k + 1] += counts[k]
    return counts[len(pattern)]


def words_over(alphabet: str, max_len: int, min_len: int = 0):
    for length in range(min_len, max_len + 1):
        for combo in product(alphabet, repeat=length):
            yield "".join(combo)


def poly_fingerprint(poly: FormalPoly) -> tuple:
    """Raw value table of a polynomial over a finite semiring, evaluated
    over the full point grid of its variables (sorted)."""
    semiring = poly.semiring
    elems = tuple(semiring.elements())
    variables = tuple(sorted(poly.vars()))
    values = []
    for combo in product(elems, repeat=len(variables)):
        values.append(poly.evaluate(dict(zip(variables, combo))))
    return (variables, tuple(values))


def algebra_function_fingerprint(elem) -> frozenset:
    """Function-level fingerprint of a path algebra element over a finite
    semiring: raw value tables per path, relabelled to the variables that
    matter by probing every variable directly."""
    semiring = elem.semiring
    elems = tuple(semiring.elements())
    entries = []
    for path, poly in elem.coeffs.items():
        variables = tuple(sorted(poly.vars()))
        table = {}
        for combo in product(elems, repeat=len(variables)):
            table[combo] = poly.evaluate(dict(zip(variables, combo)))
        relevant = []
        for idx in range(len(variables)):
            for combo, val in table.items():
                if any(table[combo[:idx] + (alt,) + combo[idx + 1:]] != val
                       for alt in elems if alt != combo[idx]):
                    relevant.append(idx)
                    break
        rel_vars = tuple(variables[i] for i in relevant)
        base = {v: elems[0] for v in variables}
        values = []
        for combo in product(elems, repeat=len(rel_vars)):
            point = dict(base)
            point.update(zip(rel_vars, combo))
            values.append(poly.evaluate(point))
        if rel_vars or values != [semiring.zero]:
            entries.append((path, rel_vars, tuple(values)))
    return frozenset(entries)


def random_tropical_poly(rng: Random, variables, max_terms=4, max_exp=3,
                         even_exponents=False) -> FormalPoly:
    semiring = TropicalSemiring()
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        pairs = []
        for v in variables:
            e = rng.randint(0, max_exp)
            if even_exponents:
                e *= 2
            if e:
                pairs.append((v, e))
        mono = Monomial.from_pairs(pairs)
        coeff = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        if mono not in terms or coeff > terms[mono]:
            terms[mono] = coeff
    return FormalPoly(semiring, terms)


def variables(letters: str, vertices) -> list[Var]:
    return [Var(v, ch) for ch in letters for v in vertices]
