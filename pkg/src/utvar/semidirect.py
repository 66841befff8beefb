"""The 2x2 semidirect-product representation.

For n = 2 the reduced word images live over variables at vertex 1 only,
identified with the letters themselves.  Each image is determined by the
coefficient of the empty path at vertex 1 (a monomial function, the
abelianized word) together with the coefficients of the length-1 paths,
packaged as an element of the semidirect product of the additive
polynomial-function semigroup (one coordinate per letter) acted on by the
multiplicative monoid of monomial functions:

    (f, b) (g, c) = (f + b g, b c)

with identity (0, 1).  The packaging map is a monoid morphism on reduced
word images and is injective there, so its image is the free object of
the corresponding monoid variety.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from . import funceq
from .poly import FormalPoly
from .quiver import Path, PathAlgebraElem, reduce_top_vertex, word_image
from .semirings import Semiring, require_same


class SemidirectElem:
    """A pair (coordinate polynomials over the alphabet, monomial scale)."""

    __slots__ = ("semiring", "alphabet", "bvec", "scale")

    def __init__(self, semiring: Semiring, alphabet: tuple[str, ...],
                 bvec: Mapping[str, FormalPoly], scale: FormalPoly):
        self.semiring = semiring
        self.alphabet = tuple(alphabet)
        missing = set(self.alphabet) - set(bvec)
        if missing:
            raise ValueError(f"coordinate map misses letters {sorted(missing)}")
        self.bvec = {a: bvec[a] for a in self.alphabet}
        if not scale.is_monomial():
            raise ValueError("scale component must be a monomial function")
        self.scale = scale

    @classmethod
    def identity(cls, semiring: Semiring,
                 alphabet: Iterable[str]) -> "SemidirectElem":
        letters = tuple(sorted(alphabet))
        zero = FormalPoly.zero(semiring)
        return cls(semiring, letters, {a: zero for a in letters},
                   FormalPoly.unit(semiring))

    def _check_compatible(self, other: "SemidirectElem"):
        require_same(self.semiring, other.semiring)
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __mul__(self, other: "SemidirectElem") -> "SemidirectElem":
        self._check_compatible(other)
        bvec = {a: self.bvec[a] + self.scale * other.bvec[a]
                for a in self.alphabet}
        return SemidirectElem(self.semiring, self.alphabet, bvec,
                              self.scale * other.scale)

    def __eq__(self, other):
        # Formal equality; use `equal` for function-level comparison.
        return (isinstance(other, SemidirectElem)
                and self.semiring.name == other.semiring.name
                and self.alphabet == other.alphabet
                and self.bvec == other.bvec
                and self.scale == other.scale)

    def __hash__(self):
        return hash((self.semiring.name, self.alphabet,
                     tuple(self.bvec[a] for a in self.alphabet), self.scale))

    def equal(self, other: "SemidirectElem") -> bool:
        """Function-level equality, coordinatewise and on the scale."""
        self._check_compatible(other)
        if not funceq.func_equal(self.scale, other.scale)[0]:
            return False
        return all(funceq.func_equal(self.bvec[a], other.bvec[a])[0]
                   for a in self.alphabet)

    def text(self) -> str:
        coords = ", ".join(
            f"{a} -> {self.bvec[a].text(letters_only=True)}"
            for a in self.alphabet)
        return f"(({coords}), {self.scale.text(letters_only=True)})"

    def json(self) -> dict:
        return {
            "coords": {a: self.bvec[a].text(letters_only=True)
                       for a in self.alphabet},
            "scale": self.scale.text(letters_only=True),
        }

    def __repr__(self):
        return f"SemidirectElem[{self.semiring.name}]{self.text()}"


def to_semidirect(elem: PathAlgebraElem,
                  alphabet: Iterable[str]) -> SemidirectElem:
    """Package a reduced 2x2 word image as a semidirect-product element.

    The coordinate at each letter is the coefficient of the length-1 path
    with that label; the scale is the coefficient of the empty path at
    vertex 1, which must be a monomial (inputs outside the image of the
    reduction are rejected)."""
    if elem.n != 2:
        raise ValueError("the semidirect packaging is defined for n = 2")
    letters = tuple(sorted(set(alphabet)))
    S = elem.semiring
    scale = elem.coeffs.get(Path.empty(1), FormalPoly.zero(S))
    if not scale.is_monomial():
        raise ValueError("vertex-1 coefficient is not a monomial: the "
                         "element is outside the reduced image")
    bvec = {a: elem.coefficient(Path((1, 2), a)) for a in letters}
    return SemidirectElem(S, letters, bvec, scale)


def from_semidirect(g: SemidirectElem) -> PathAlgebraElem:
    """The unique reduced word image packaged as `g`.

    The empty path at vertex 2 always carries the unit in a reduced word
    image, so the element is fully determined."""
    S = g.semiring
    coeffs = {
        Path.empty(1): g.scale,
        Path.empty(2): FormalPoly.unit(S),
    }
    for a in g.alphabet:
        poly = g.bvec[a]
        if not poly.is_zero():
            coeffs[Path((1, 2), a)] = poly
    return PathAlgebraElem(2, S, coeffs)


def letter_generator(letter: str, semiring: Semiring,
                     alphabet: Iterable[str]) -> SemidirectElem:
    """The free-object generator for one letter: the packaged reduced
    image of that letter."""
    return to_semidirect(
        reduce_top_vertex(word_image(letter, 2, semiring)), alphabet)


def generators(semiring: Semiring,
               alphabet: Iterable[str]) -> dict[str, SemidirectElem]:
    """The free-object generating family, one element per letter."""
    letters = tuple(sorted(set(alphabet)))
    return {a: letter_generator(a, semiring, letters) for a in letters}


def word_element(word: str, semiring: Semiring,
                 alphabet: Iterable[str]) -> SemidirectElem:
    """The packaged reduced image of a word (n = 2)."""
    letters = tuple(sorted(set(alphabet) | set(word)))
    return to_semidirect(
        reduce_top_vertex(word_image(word, 2, semiring)), letters)
