"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` for the summary section, or execute
this file directly to print the lines as each criterion finishes.
"""

import random
import time
from contextlib import contextmanager
from itertools import combinations, combinations_with_replacement, permutations, product

from oracles import lie_poly, lyndon_brute, lyndon_coordinates, magnus, poly_comm, witt, word_letters

from andreadakis.autf import random_word
from andreadakis.braid import (
    PureBraidWord,
    braid_commutator,
    braid_images,
    braids_equal,
    comb,
    kernel_commutator,
    parse_braid,
    random_braid,
    sample_braid,
    table_value,
)
from andreadakis.degree import min_degree
from andreadakis.dk import (
    DKElement,
    braid_class_to_dk,
    derive_delta,
    delta_table,
    dk_bracket,
    spanned_dimensions,
)
from andreadakis.errors import BudgetExceededError
from andreadakis.freegroup import Word, left_normed_commutator
from andreadakis.freelie import LieElement, bracket, lyndon_words, witt_dimension
from andreadakis.harness import VerificationConfig, run_verification
from andreadakis.magnus import expand, gamma_degree

RESULTS: list[str] = []


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    info = {}
    try:
        yield info
    except BaseException:
        RESULTS.append(f"FAIL  {number:>2}. {title}")
        print(RESULTS[-1])
        raise
    detail = f" ({info['detail']})" if "detail" in info else ""
    RESULTS.append(f"PASS  {number:>2}. {title}{detail} [{time.perf_counter() - start:.1f}s]")
    print(RESULTS[-1])


def _run(target, n, depth, samples, seed):
    report = run_verification(VerificationConfig(target, n, depth, samples, seed))
    assert report.failed == 0, [r for r in report.records if r["verdict"] == "fail"][:3]
    return report


def _nontrivial_determinate(records):
    return [r for r in records if r["verdict"] == "pass" and r["gamma_degree"] not in ("inf", "-")]


# 1 ------------------------------------------------------------------------------------


def test_01_witt_dimensions():
    with criterion(1, "Witt dimensions: Lyndon enumeration vs Moebius formula, n <= 4, k <= 7") as info:
        start = time.perf_counter()
        for n in range(1, 5):
            for k in range(1, 8):
                words = list(lyndon_words(n, k))
                assert len(words) == witt(n, k) == witt_dimension(n, k)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, elapsed
        # the enumeration itself is checked against brute force where that is cheap
        for n in range(1, 4):
            for k in range(1, 7):
                assert list(lyndon_words(n, k)) == lyndon_brute(n, k)
        info["detail"] = f"enumeration {elapsed * 1000:.0f} ms"


# 2 ------------------------------------------------------------------------------------


def test_02_magnus_correctness():
    with criterion(2, "Magnus: multiplicativity on 1000 pairs; left-normed commutators of length <= 5") as info:
        rng = random.Random(2)
        for _ in range(1000):
            u = random_word(3, rng.randint(0, 10), rng)
            v = random_word(3, rng.randint(0, 10), rng)
            assert expand(u * v, 5) == expand(u, 5) * expand(v, 5)
            assert expand(u, 5).coeffs == magnus(word_letters(u), 5)
        exact = degenerate = 0
        for length in range(1, 6):
            for idx in product(range(1, 4), repeat=length):
                c = left_normed_commutator([Word.generator(3, i) for i in idx])
                lie = {(idx[-1],): 1}
                for i in reversed(idx[:-1]):
                    lie = poly_comm({(i,): 1}, lie)
                d = gamma_degree(c, 5)
                assert d.at_least(length)
                if lie:
                    assert d.value == length, idx
                    exact += 1
                else:
                    degenerate += 1
        info["detail"] = f"{exact} commutators of exact degree, {degenerate} with vanishing bracket"


# 3 ------------------------------------------------------------------------------------


def test_03_bracket_vs_embedding_oracle():
    with criterion(3, "Free Lie bracket vs associative embedding: basis pairs, degree <= 5, n <= 3") as info:
        pairs = 0
        for n in (1, 2, 3):
            basis = [w for k in range(1, 5) for w in lyndon_words(n, k)]
            for u, v in combinations_with_replacement(basis, 2):
                if len(u) + len(v) > 5:
                    continue
                got = bracket(LieElement.basis(n, u), LieElement.basis(n, v))
                expected = lyndon_coordinates(poly_comm(lie_poly(u), lie_poly(v)), n, len(u) + len(v))
                assert dict(got.terms) == expected, (n, u, v)
                pairs += 1
        info["detail"] = f"{pairs} pairs"


# 4, 5 ---------------------------------------------------------------------------------


def _equality_protocol(target, seed):
    determinate, degrees = 0, set()
    for n in (2, 3, 4):
        report = _run(target, n, 5, 300, seed)
        good = _nontrivial_determinate(report.records)
        for r in good:
            assert r["gamma_degree"] == r["andreadakis_degree"]
        determinate += len(good)
        degrees |= {int(r["gamma_degree"]) for r in good}
    assert determinate >= 500, determinate
    assert {1, 2, 3, 4} <= degrees, degrees
    return determinate, degrees


def test_04_triangular_equality():
    with criterion(4, "Triangular automorphisms: gamma-degree equals A-degree, n in {2,3,4}, D = 5") as info:
        count, degrees = _equality_protocol("triangular", 4)
        info["detail"] = f"{count} nontrivial determinate samples, degrees {sorted(degrees)}, 0 failures"


def test_05_mccool_equality():
    with criterion(5, "McCool subgroup: same protocol on gamma_i-trivial samples") as info:
        count, degrees = _equality_protocol("mccool", 5)
        info["detail"] = f"{count} nontrivial determinate samples, degrees {sorted(degrees)}, 0 failures"


# 6 ------------------------------------------------------------------------------------


def test_06_pure_braid_equality():
    with criterion(6, "Pure braids: combing gamma-degree equals Artin A-degree, n in {3,4,5}, D = 5") as info:
        determinate = 0
        for n in (3, 4, 5):
            report = _run("braid", n, 5, 150, 6)
            for r in report.records:
                beta = parse_braid(r["input"], n)
                assert sum(abs(e) for _, e in beta.syllables) <= 12
            good = _nontrivial_determinate(report.records)
            assert all(r["gamma_degree"] == r["andreadakis_degree"] for r in good)
            determinate += len(good)
        assert determinate >= 300, determinate
        info["detail"] = f"{determinate} nontrivial determinate samples, 0 failures"


# 7 ------------------------------------------------------------------------------------


def test_07_comb_round_trip_and_faithfulness():
    with criterion(7, "Combing round trip on 1000 braids; faithfulness on all n = 3 words of length <= 3") as info:
        rng = random.Random(7)
        for _ in range(1000):
            n = rng.randint(2, 5)
            beta = random_braid(n, rng.randint(0, 12), rng)
            assert braids_equal(comb(beta).to_braid(), beta)
        letters = [((i, j), e) for j in (2, 3) for i in range(1, j) for e in (1, -1)]
        braids = [PureBraidWord(3)]
        for length in (1, 2, 3):
            for raw in product(letters, repeat=length):
                if any(a[0] == b[0] and a[1] == -b[1] for a, b in zip(raw, raw[1:])):
                    continue
                braids.append(PureBraidWord.from_letters(3, raw))
        # combed normal forms decide equality independently of the action
        classes = {}
        for beta in braids:
            classes.setdefault(comb(beta).factors, []).append(braid_images(beta))
        images = [group[0] for group in classes.values()]
        assert len(set(images)) == len(classes)
        assert all(len(set(group)) == 1 for group in classes.values())
        info["detail"] = f"{len(braids)} words, {len(classes)} distinct braids, {len(classes)} distinct automorphisms"


# 8 ------------------------------------------------------------------------------------


def test_08_relation_table():
    with criterion(8, "Relation table for [A(r,s), A(i,n)]: exact automorphism identities, n <= 5") as info:
        cases = 0
        for n in (3, 4, 5):
            for r, s, i in product(range(1, n), repeat=3):
                if r < s:
                    assert kernel_commutator(r, s, i, n) == table_value(r, s, i, n), (r, s, i, n)
                    cases += 1
        info["detail"] = f"{cases} cases"


# 9 ------------------------------------------------------------------------------------


def _random_dk(n, rng):
    out = DKElement.zero(n)
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(2, n)
        words = lyndon_words(m - 1, rng.randint(1, 2))
        if words:
            out = out + rng.randint(-2, 2) * DKElement(n, {m: LieElement.basis(m - 1, rng.choice(words))})
    return out


def _braid_degree(beta, depth):
    return min_degree(gamma_degree(w, depth) for w in comb(beta, budget=5000).factors)


def test_09_drinfeld_kohno():
    with criterion(9, "Drinfeld-Kohno: relations, Jacobi, graded dimensions, braid classes") as info:
        for n in range(2, 7):
            t = lambda i, j: DKElement.generator(i, j, n)  # noqa: E731
            for i, j, k in permutations(range(1, n + 1), 3):
                assert dk_bracket(t(i, j), t(i, k) + t(j, k)).is_zero()
            for (i, j), (k, l) in combinations(combinations(range(1, n + 1), 2), 2):
                if not {i, j} & {k, l}:
                    assert dk_bracket(t(i, j), t(k, l)).is_zero()
        assert derive_delta(5) == delta_table(5)
        rng = random.Random(9)
        br = dk_bracket
        for _ in range(1000):
            n = rng.randint(3, 5)
            a, b, c = (_random_dk(n, rng) for _ in range(3))
            assert (br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()
        for n in range(2, 6):
            expected = [sum(witt(m - 1, k) for m in range(2, n + 1)) for k in range(1, 6)]
            assert spanned_dimensions(n, 5) == expected
        pairs = nonzero = 0
        while pairs < 100:
            n = rng.randint(3, 4)
            a, b = sample_braid(n, rng, 6), sample_braid(n, rng, 6)
            try:
                da, db = _braid_degree(a, 6), _braid_degree(b, 6)
                if not (da.is_exact and db.is_exact) or da.value + db.value > 6:
                    continue
                c = braid_commutator(a, b)
                expected = dk_bracket(braid_class_to_dk(a, 6), braid_class_to_dk(b, 6))
                dc = _braid_degree(c, 6)
            except BudgetExceededError:
                continue
            if expected.is_zero():
                assert dc.at_least(da.value + db.value + 1)
            else:
                assert braid_class_to_dk(c, 6) == expected
                nonzero += 1
            pairs += 1
        info["detail"] = f"{pairs} braid pairs, {nonzero} with nonzero bracket"


# 10 -----------------------------------------------------------------------------------


def test_10_word_lemma():
    with criterion(10, "Word lemma: predicted exponent m found in every sampled case, D = 6") as info:
        total = 0
        for n, samples in ((2, 60), (3, 70), (4, 70)):
            report = _run("word-lemma", n, 6, samples, 10)
            assert report.passed == samples
            total += samples
        assert total == 200
        info["detail"] = f"{total} instances"


# 11 -----------------------------------------------------------------------------------


def test_11_disjointness():
    expected = {"ia_kernel": False, "ia_complement": True, "braid_kernel": False, "braid_complement": True}
    with criterion(11, "Johnson image on x_n: kernel factors nonzero, complement factors zero") as info:
        # a kernel factor deep in the filtration can outrun the truncation; such
        # samples are indeterminate and are not counted
        report = _run("disjointness", 4, 5, 220, 11)
        good = [r for r in report.records if r["verdict"] == "pass"]
        assert len(good) >= 200, len(good)
        assert all(r["kills_last"] == expected for r in good)
        extra = sum(_run("disjointness", n, 5, 60, 11).passed for n in (3, 5))
        info["detail"] = f"{len(good)} determinate samples at n = 4, {extra} more at n = 3, 5, 0 failures"


# 12 -----------------------------------------------------------------------------------


def test_12_strong_centrality():
    with criterion(12, "Strong centrality: A-degree of [sigma, tau] >= p + q") as info:
        good = 0
        for n in (3, 4):
            report = _run("strong-centrality", n, 5, 130, 12)
            good += sum(
                r["verdict"] == "pass" and r["p"] not in ("inf",) and r["q"] not in ("inf",)
                for r in report.records
            )
        assert good >= 200, good
        info["detail"] = f"{good} nontrivial determinate pairs, 0 failures"


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
