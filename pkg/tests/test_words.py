import random

import pytest

from transword.freegroup import EMPTY, FreeWord, Letter, rank_letter_set, reduce_free
from transword.schema import Entry, K, Schema, affine
from transword.setspec import EvPeriodic, PrefixCode
from transword.words import (
    EMPTY_WORD,
    FiniteBlock,
    SchematicWord,
    Stream,
    block,
    canonicalize,
    concat,
    cut_points,
    equal_up_to,
    gamma_recode,
    heg_equal,
    invert,
    is_reduced,
    occurrences,
    proj_rank,
    project_finite,
    ra_retract,
    reduce,
    split_word,
    stream_word,
)
from transword.randwords import (
    default_rng,
    random_reduced_word,
    random_word,
    shuffle_presentation,
)
from oracles import project_oracle, scan_reduce

EVENS = EvPeriodic("", "10")
UT = stream_word(True, 0, [Entry("a", K, 1)])
TEL = stream_word(True, 0, [Entry("a", K, 1), Entry("a", affine(1, 1), -1)])


def us(spec=EVENS, n=0):
    return stream_word(True, n, [Entry(spec, K, 1)])


def L(fam, i, s=1):
    return Letter(fam, i, s)


# -- canonical form ----------------------------------------------------------

def test_head_absorption():
    w = SchematicWord(
        (FiniteBlock(FreeWord((L("a", 5),))), Stream(True, 6, Schema((Entry("a", K, 1),))))
    )
    c = canonicalize(w)
    # absorbed into the stream: same canonical form as the length-5 tail
    assert c == canonicalize(stream_word(True, 5, [Entry("a", K, 1)]))
    assert len(c.segments) == 1 and isinstance(c.segments[0], Stream)
    for N in range(17):
        assert proj_rank(w, N) == proj_rank(c, N)


def test_canonicalize_empty_and_merge():
    assert canonicalize(EMPTY_WORD) == EMPTY_WORD
    two = SchematicWord(
        (FiniteBlock(FreeWord((L("a", 0),))), FiniteBlock(FreeWord((L("a", 1),))))
    )
    assert canonicalize(two) == block(L("a", 0), L("a", 1))


def test_backward_absorption_mirror():
    st = Stream(False, 6, Schema((Entry("a", K, 1),)))
    w = SchematicWord((st, FiniteBlock(FreeWord((L("a", 5, -1),)))))
    assert canonicalize(w) == canonicalize(
        SchematicWord((Stream(False, 5, Schema((Entry("a", K, 1),))),))
    )
    assert len(canonicalize(w).segments) == 1


def test_concat_examples():
    joined = concat(us(), invert(us()))
    assert len(joined.segments) == 2  # no canonical merge across the junction
    assert concat(EMPTY_WORD, UT) == UT
    w = concat(block(L("a", 0)), block(L("a", 0, -1)))
    assert w == block(L("a", 0), L("a", 0, -1))  # concat does not reduce


def test_invert():
    assert invert(block(L("a", 0), L("a", 1))) == block(L("a", 1, -1), L("a", 0, -1))
    assert invert(EMPTY_WORD) == EMPTY_WORD
    v = invert(us())
    assert isinstance(v.segments[0], Stream) and not v.segments[0].forward
    rng = random.Random(3)
    for _ in range(60):
        w = random_word(rng)
        assert canonicalize(invert(invert(w))) == canonicalize(w)


# -- occurrences and projections ---------------------------------------------

def test_occurrences_telescope():
    # solve k = 1 on the first entry and k+1 = 1 on the second
    assert occurrences(TEL, ("a", 1)) == [(0, 1), (0, 2)]


def test_occurrences_selector():
    assert occurrences(us(), ("c", 1)) == [(0, 1)]
    assert occurrences(us(), ("b", 2)) == [(0, 2)]
    assert occurrences(us(), ("c", 2)) == []
    assert occurrences(us(), ("a", 3)) == []


def test_project_telescope():
    assert project_finite(TEL, {("a", 0), ("a", 1)}) == FreeWord((L("a", 0),))


def test_project_selector():
    got = project_finite(us(), {("b", 0), ("b", 1), ("c", 0), ("c", 1)})
    assert got == FreeWord((L("b", 0), L("c", 1)))
    assert project_finite(EMPTY_WORD, {("a", 0)}) == EMPTY


def test_projection_matches_oracle():
    rng = random.Random(21)
    for _ in range(120):
        w = random_word(rng)
        keep = rank_letter_set(rng.randrange(1, 14))
        assert project_finite(w, keep) == project_oracle(w, keep)


def test_projection_lattice_small():
    rng = random.Random(8)
    for _ in range(100):
        w = random_word(rng)
        for n in (3, 7, 12):
            pn = proj_rank(w, n)
            for m in (2, 5, 12):
                filtered = reduce_free(
                    FreeWord(tuple(l for l in pn if l.rank < m))
                )
                assert filtered == proj_rank(w, min(m, n))


# -- reduction ----------------------------------------------------------------

def test_reduce_cancels_inverse_pairs():
    assert reduce(concat(invert(us()), us())) == EMPTY_WORD
    assert reduce(concat(us(), invert(us()))) == EMPTY_WORD
    assert reduce(block(L("a", 0), L("a", 0, -1))) == EMPTY_WORD


def test_reduce_partial_stream_cancellation():
    w = concat(us(EVENS, 1), invert(us(EVENS, 3)))
    # members of the evens set: u(1) = c1, u(2) = b2
    assert reduce(w) == block(L("c", 1), L("b", 2))


def test_reduce_junction_block():
    w = concat(block(L("a", 0, -1)), UT)
    assert reduce(w) == canonicalize(stream_word(True, 1, [Entry("a", K, 1)]))


def test_reduce_backward_forward_partial():
    s1 = EvPeriodic("1101", "1")  # disagrees with all-ones exactly at 2
    w = concat(invert(us(s1)), us(EvPeriodic("", "1")))
    r = reduce(w)
    # the junction run cancels the two agreeing letters, then stalls
    assert r == concat(invert(us(s1, 2)), us(EvPeriodic("", "1"), 2))
    assert len(r.segments) == 2
    for N in range(17):
        assert proj_rank(r, N) == proj_rank(w, N)


def test_reduce_soundness_random():
    rng = random.Random(41)
    for _ in range(150):
        w = random_word(rng)
        r = reduce(w)
        assert is_reduced(r)
        for N in (4, 9, 16):
            assert equal_up_to(w, r, N)


def test_normal_form_unique_under_shuffles():
    rng = random.Random(42)
    for _ in range(120):
        w = random_word(rng)
        base = reduce(w)
        assert reduce(w, rng) == base
        assert reduce(shuffle_presentation(w, rng)) == base


def test_homomorphism_shape():
    rng = random.Random(43)
    for _ in range(80):
        w1 = random_reduced_word(rng)
        w2 = random_reduced_word(rng)
        r = reduce(concat(w1, w2))
        assert is_reduced(r)
        glued = SchematicWord(w1.segments + w2.segments)
        for N in (4, 9, 16):
            assert equal_up_to(r, glued, N)


def test_ww_inverse_dies():
    rng = random.Random(44)
    for _ in range(60):
        w = random_word(rng)
        assert reduce(concat(w, invert(w))) == EMPTY_WORD


def test_equal_up_to_telescope():
    # under the interleaved rank convention a1 has rank 3, so the first
    # disagreeing level is 4
    for N in (1, 2, 3):
        assert equal_up_to(UT, TEL, N)
    assert not equal_up_to(UT, TEL, 4)
    assert equal_up_to(UT, UT, 12)


def test_equal_up_to_shuffled_presentation():
    rng = random.Random(45)
    for _ in range(60):
        w = random_word(rng)
        assert equal_up_to(w, shuffle_presentation(w, rng), 16)


def test_heg_equal():
    rng = random.Random(46)
    w = random_word(rng)
    assert heg_equal(concat(w, invert(w)), EMPTY_WORD)
    assert not heg_equal(us(PrefixCode("", "0")), us(PrefixCode("", "1")))
    assert not heg_equal(TEL, UT)
    assert heg_equal(TEL, block(L("a", 0)))  # the collapsed telescope


def test_mixed_pattern_rejected():
    p1, p2 = PrefixCode("", "0"), PrefixCode("", "1")
    with pytest.raises(ValueError):
        Stream(True, 0, Schema((Entry(p1, K, 1), Entry(p2, K, -1))))


def test_isolated_root_pattern_reduces():
    # 2k against (k+1)^-1 collide exactly at k=1
    w = stream_word(True, 0, [Entry("a", affine(2, 0), 1), Entry("a", affine(1, 1), -1)])
    r = reduce(w)
    assert is_reduced(r)
    for N in (6, 12, 16):
        assert equal_up_to(w, r, N)


# -- recoding and retraction ---------------------------------------------------

def test_gamma_block():
    w = block(L("a", 0), L("a", 1), L("a", 2))
    assert gamma_recode(w, "encode") == block(L("a", 0), L("b", 0), L("c", 0))


def test_gamma_stream_affine():
    w = stream_word(True, 0, [Entry("a", affine(3, 1), 1)])
    assert gamma_recode(w, "encode") == stream_word(True, 0, [Entry("b", K, 1)])


def test_gamma_roundtrip_random():
    rng = random.Random(47)
    for _ in range(150):
        w = random_word(rng, pure_a=True)
        w = canonicalize(w)
        assert gamma_recode(gamma_recode(w, "encode"), "decode") == w


def test_gamma_preserves_rank_projections():
    rng = random.Random(48)
    for _ in range(60):
        w = random_word(rng, pure_a=True)
        enc = gamma_recode(w, "encode")
        # ranks interleave exactly: the a-world index equals the abc-rank
        for N in (5, 9, 14):
            src = reduce_free(
                FreeWord(
                    tuple(
                        Letter(("a", "b", "c")[l.index % 3], l.index // 3, l.sign)
                        for l in project_finite(w, {("a", i) for i in range(N)})
                    )
                )
            )
            assert src == proj_rank(enc, N)


def test_gamma_errors():
    with pytest.raises(ValueError):
        gamma_recode(block(L("b", 0)), "encode")
    with pytest.raises(ValueError):
        gamma_recode(us(), "decode")


def test_ra_retract():
    assert ra_retract(us()) == EMPTY_WORD
    assert ra_retract(concat(UT, us())) == UT
    assert ra_retract(block(L("a", 0), L("b", 3), L("a", 1))) == block(L("a", 0), L("a", 1))
    rng = random.Random(49)
    for _ in range(60):
        w = random_word(rng)
        assert ra_retract(ra_retract(w)) == ra_retract(w)


# -- cutting -------------------------------------------------------------------

def test_split_word_recomposes():
    rng = random.Random(50)
    for _ in range(80):
        w = random_reduced_word(rng)
        pts = cut_points(w)
        cut = pts[rng.randrange(len(pts))]
        w0, w1 = split_word(w, cut)
        for N in (6, 16):
            assert proj_rank(concat(w0, w1), N) == proj_rank(w, N)
