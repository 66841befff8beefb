from fractions import Fraction
from itertools import product
from random import Random

import pytest

from conftest import algebra_function_fingerprint, make_semirings, words_over
from utvar.analysis import (
    ADJAN_LHS,
    ADJAN_RHS,
    BICYCLIC_IDENTITY,
    BicyclicElem,
    EnumerationLimitError,
    adjan_identity,
    bicyclic_embed,
    bicyclic_mul,
    bicyclic_satisfies,
    enumerate_free,
    local_finiteness_report,
    power_images_profile,
    prefix_abelianization_embed,
    torsion_from_identity,
    torsion_search,
    verify_bicyclic_embedding,
)
from utvar.funceq import canonical_key, func_equal
from utvar.poly import FormalPoly, Monomial, Var, abelianize
from utvar.quiver import word_image
from utvar.semirings import MINUS_INF
from utvar.variety import Identity, check_identity, oracle_check

SEMIRINGS = make_semirings()


# ---------------------------------------------------------------------------
# Torsion search.

def test_torsion_search_finite_examples():
    w = torsion_search(SEMIRINGS["boolean"])
    assert w.found and (w.i, w.j) == (1, 2)
    w = torsion_search(SEMIRINGS["zmod:2"])
    assert w.found and (w.i, w.j) == (1, 2)
    w = torsion_search(SEMIRINGS["zmod:3"])
    assert w.found and (w.i, w.j) == (1, 3)


def test_torsion_search_interval_falsifier_values():
    w = torsion_search(SEMIRINGS["interval"], bound=10)
    assert not w.found
    for (i, j), elem in w.falsified.items():
        assert elem == Fraction(1, j)
        S = SEMIRINGS["interval"]
        assert S.power(elem, i) != S.power(elem, j)


@pytest.mark.parametrize("name", ["tropical", "nat", "freeidpt:1"])
def test_torsion_search_infinite_none_up_to_bound(name):
    S = SEMIRINGS[name]
    w = torsion_search(S, bound=10)
    assert not w.found
    assert set(w.falsified) == {(i, j) for i in range(1, 10)
                                for j in range(i + 1, 11)}
    for (i, j), elem in w.falsified.items():
        assert S.power(elem, i) != S.power(elem, j)


def test_torsion_from_identity_transformer():
    assert torsion_from_identity("xx", "x") == (1, 2)
    assert torsion_from_identity("xxy", "xyy") == (4, 5)
    with pytest.raises(ValueError):
        torsion_from_identity("xy", "yx")
    # confirmed by function equality over the finite semirings where the
    # source identity holds multiplicatively (checked via 1x1 matrices)
    for name in ("boolean", "zmod:2"):
        S = SEMIRINGS[name]
        assert oracle_check(Identity("xx", "x"), 1, S).holds
        i, j = torsion_from_identity("xx", "x")
        x = Var(1, "x")
        fi = FormalPoly.monomial(S, Monomial.from_pairs([(x, i)]))
        fj = FormalPoly.monomial(S, Monomial.from_pairs([(x, j)]))
        assert func_equal(fi, fj)[0]


# ---------------------------------------------------------------------------
# Local finiteness reports.

def test_report_locally_finite_cases():
    rep = local_finiteness_report(SEMIRINGS["boolean"], 2)
    assert rep["verdict"] == "locally finite"
    assert (rep["torsion"]["i"], rep["torsion"]["j"]) == (1, 2)
    assert rep["rank1"]["collision"] == (2, 3)
    rep = local_finiteness_report(SEMIRINGS["zmod:2"], 3)
    assert rep["verdict"] == "locally finite"
    assert (rep["torsion"]["i"], rep["torsion"]["j"]) == (1, 2)


def test_report_not_locally_finite_cases():
    for name in ("tropical", "interval", "nat", "freeidpt:1"):
        rep = local_finiteness_report(SEMIRINGS[name], 2, powers=12)
        assert rep["verdict"] == "not locally finite"
        assert not rep["torsion"]["found"]
        assert rep["rank1"]["distinct"] == 13
        assert rep["rank1"]["collision"] is None


def test_power_profile_boolean():
    profile = power_images_profile(SEMIRINGS["boolean"], 2, 10)
    assert profile == {"distinct": 3, "collision": (2, 3), "count": 10}
    profile = power_images_profile(SEMIRINGS["zmod:2"], 2, 10)
    assert profile == {"distinct": 4, "collision": (2, 4), "count": 10}


# ---------------------------------------------------------------------------
# Enumeration.

def powers_dedup_oracle(S, n, top=64):
    """Independent free-object size oracle for one generator: dedup of the
    images of a^m by raw exhaustive evaluation."""
    seen = set()
    for m in range(top + 1):
        seen.add(algebra_function_fingerprint(word_image("a" * m, n, S)))
    return len(seen)


def test_enumerate_free_rank1_sizes_match_oracle():
    t = enumerate_free(1, SEMIRINGS["boolean"], 1, mode="monoid")
    assert t.size == 2 and t.words == ["", "a"]
    for name in ("boolean", "zmod:2", "zmod:3"):
        S = SEMIRINGS[name]
        table = enumerate_free(2, S, 1, mode="monoid")
        assert table.size == powers_dedup_oracle(S, 2)


def test_enumerate_free_table_structure():
    table = enumerate_free(2, SEMIRINGS["boolean"], 1, mode="monoid")
    assert table.size == 3
    assert table.table == [[1], [2], [2]]
    assert table.words == ["", "a", "aa"]
    csv = table.csv()
    assert csv.splitlines()[0] == "index,word,gen:a"
    assert csv.splitlines()[1] == "0,<empty>,1"
    payload = table.json()
    assert payload["size"] == 3
    assert payload["elements"][1]["word"] == "a"


def test_enumerate_free_semigroup_mode():
    table = enumerate_free(2, SEMIRINGS["boolean"], 1, mode="semigroup")
    assert table.size == 2 and table.words == ["a", "aa"]
    table = enumerate_free(2, SEMIRINGS["boolean"], 2, mode="semigroup",
                           limit=200)
    assert table.size == 18  # monoid closure minus the identity


def test_enumerate_free_rank2_terminates_on_finite_semirings():
    # locally finite coefficient semirings give finite rank-2 free objects
    for name in ("boolean", "zmod:2"):
        table = enumerate_free(2, SEMIRINGS[name], 2, mode="monoid",
                               limit=2000)
        assert 0 < table.size < 2000
        # the table is closed: every product lands on a valid index
        for row in table.table:
            assert all(0 <= idx < table.size for idx in row)


def test_enumerate_free_limit_exceeded():
    with pytest.raises(EnumerationLimitError):
        enumerate_free(2, SEMIRINGS["tropical"], 1, limit=6)
    with pytest.raises(EnumerationLimitError):
        enumerate_free(2, SEMIRINGS["nat"], 1, limit=10)


def test_closure_of_small_algebra_generating_sets_terminates():
    # finitely generated multiplicative subsemigroups of the path algebra
    # stay finite over a locally finite coefficient semiring
    S = SEMIRINGS["boolean"]
    gens = [word_image(w, 2, S) for w in ("a", "ab", "ba")]
    assert all(len(g.coeffs) <= 4 for g in gens)

    def key_of(elem):
        return frozenset(
            (path, canonical_key(poly)) for path, poly in elem.coeffs.items()
            if not func_equal(poly, FormalPoly.zero(S))[0])

    seen = {key_of(g): g for g in gens}
    frontier = list(seen.values())
    rounds = 0
    while frontier and rounds < 50:
        rounds += 1
        fresh = []
        for x in frontier:
            for g in gens:
                prod = x * g
                k = key_of(prod)
                if k not in seen:
                    seen[k] = prod
                    fresh.append(prod)
        frontier = fresh
        assert len(seen) < 500
    assert not frontier  # closure reached a fixed point


# ---------------------------------------------------------------------------
# Bicyclic monoid.

def rewrite_oracle(word: str) -> BicyclicElem:
    chars = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(chars) - 1):
            if chars[k] == "p" and chars[k + 1] == "q":
                del chars[k:k + 2]
                changed = True
                break
    split = 0
    while split < len(chars) and chars[split] == "q":
        split += 1
    assert all(c == "p" for c in chars[split:])
    return BicyclicElem(split, len(chars) - split)


def test_bicyclic_mul_examples():
    assert bicyclic_mul(BicyclicElem(0, 1), BicyclicElem(1, 0)) == \
        BicyclicElem(0, 0)
    assert bicyclic_mul(BicyclicElem(1, 0), BicyclicElem(0, 1)) == \
        BicyclicElem(1, 1)
    assert bicyclic_mul(BicyclicElem(2, 1), BicyclicElem(3, 4)) == \
        BicyclicElem(4, 4)
    assert rewrite_oracle("qqp" + "qqqpppp") == BicyclicElem(4, 4)


def test_bicyclic_mul_matches_rewriting_oracle():
    for i, j, k, l in product(range(5), repeat=4):
        x, y = BicyclicElem(i, j), BicyclicElem(k, l)
        word = x.text().replace("1", "") + y.text().replace("1", "")
        assert bicyclic_mul(x, y) == rewrite_oracle(word)


def test_bicyclic_identity_and_associativity():
    rng = Random(5)
    for _ in range(200):
        x = BicyclicElem(rng.randint(0, 9), rng.randint(0, 9))
        y = BicyclicElem(rng.randint(0, 9), rng.randint(0, 9))
        z = BicyclicElem(rng.randint(0, 9), rng.randint(0, 9))
        assert bicyclic_mul(BICYCLIC_IDENTITY, x) == x
        assert bicyclic_mul(x, BICYCLIC_IDENTITY) == x
        assert bicyclic_mul(bicyclic_mul(x, y), z) == \
            bicyclic_mul(x, bicyclic_mul(y, z))


def test_bicyclic_embedding_validation():
    assert bicyclic_embed(BICYCLIC_IDENTITY).rows == (
        (Fraction(0), Fraction(0)), (MINUS_INF, Fraction(0)))
    result = verify_bicyclic_embedding(bound=8)
    assert result["ok"]
    assert result["morphism_checked"] == 9 ** 4
    assert result["injective_checked"] == 9 ** 2


def test_adjan_identity_in_bicyclic():
    ident = adjan_identity()
    assert ident.lhs == ADJAN_LHS and ident.rhs == ADJAN_RHS
    assert bicyclic_satisfies(ident, samples=10_000, exhaustive_bound=4)
    assert not bicyclic_satisfies(Identity("xy", "yx"), samples=200)


def test_adjan_pinned_pair_checks():
    assert check_identity(adjan_identity(), 2, SEMIRINGS["tropical"]).holds
    assert not check_identity(adjan_identity(), 2, SEMIRINGS["nat"]).holds


def test_adjan_across_semirings():
    adjan = adjan_identity()
    # no identity at all holds over semirings with the distinct-formal-
    # polynomials property
    assert not check_identity(adjan, 2, SEMIRINGS["freeidpt:1"]).holds
    # finite coefficients: decision procedure agrees with the exhaustive
    # sweep on the pinned pair as well
    z2_checker = check_identity(adjan, 2, SEMIRINGS["zmod:2"]).holds
    z2_oracle = oracle_check(adjan, 2, SEMIRINGS["zmod:2"]).holds
    assert z2_checker == z2_oracle is True
    # the randomized matrix oracle never contradicts a holding verdict
    assert oracle_check(adjan, 2, SEMIRINGS["tropical"], budget=2000,
                        seed=3).holds


# ---------------------------------------------------------------------------
# Prefix abelianization.

def test_prefix_abelianization_examples():
    prefixes, total = prefix_abelianization_embed("ab")
    assert prefixes == frozenset({abelianize("a", 1), abelianize("ab", 1)})
    assert total == abelianize("ab", 1)
    other = prefix_abelianization_embed("ba")
    assert other[1] == total
    assert other[0] != prefixes
    aa = prefix_abelianization_embed("aa")
    assert aa == (frozenset({abelianize("a", 1), abelianize("aa", 1)}),
                  abelianize("aa", 1))
    with pytest.raises(ValueError):
        prefix_abelianization_embed("")


def test_prefix_abelianization_injective_on_short_words():
    images = {}
    for word in words_over("ab", 5, min_len=1):
        image = prefix_abelianization_embed(word)
        assert image not in images.values()
        images[word] = image
