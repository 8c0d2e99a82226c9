import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dkt.band_calculus import (
    BandPresentation,
    ReductionTrace,
    SmnToken,
    SummandMultiset,
    TorusToken,
    band_matrix,
    canonicalize_counts,
    random_presentation,
    reduce,
    smn_to_torus,
    torus_tokens,
    twist_reduce,
    unlink_bands,
)
from dkt.band_calculus.summands import TORUS_WEIGHTS
from dkt.band_calculus.trace import digest
from dkt.coloured_invariant import classify, cu
from dkt.errors import InconsistencyError, NotColourableError, ValidationError
from oracles import cu_oracle

A5L, B5L, A5R, B5R = (TorusToken(5, h, d) for h in ("left", "right") for d in (1, 2))
T3L, T3R = TorusToken(3, "left"), TorusToken(3, "right")


def test_band_matrix_shape():
    assert band_matrix([1, 2], [[0, 0], [0, 0]]) == [[1, 1], [0, 2]]
    assert band_matrix([0, 0, 0, 0], [[0, 0, 5, 0], [0, 0, 0, 0], [5, 0, 0, 0], [0, 0, 0, 0]])[2][0] == 5


def test_presentation_validation():
    ok = BandPresentation.of(3, [1, 1], [[0, 0], [0, 0]], [(0, 1, 2, 0), (1, 2, 0, 1)])
    assert ok.index == (1, 1) and ok.genus == 1
    with pytest.raises(ValidationError, match="indices"):
        BandPresentation.of(3, [1, 1], [[0, 0], [0, 0]], [(0, 1, 0, 0), (0, 1, 0, 1)])
    with pytest.raises(ValidationError, match="colouring"):
        BandPresentation.of(3, [1, 1], [[0, 0], [0, 0]], [(0, 1, 0, 1), (0, 2, 0, 2)])
    with pytest.raises(ValidationError, match="symmetric"):
        BandPresentation.of(3, [1, 1], [[0, 1], [0, 0]], [(0, 1, 0, 1)] * 2)
    with pytest.raises(ValidationError, match="pairs"):
        BandPresentation.of(3, [1], [[0]], [(0, 1, 0, 1)])
    with pytest.raises(NotColourableError):
        BandPresentation.of(3, [1, 1], [[0, 0], [0, 0]], [(0, 0, 1, 1)] * 2).coloured


def test_unlink_already_split():
    b = BandPresentation.of(3, [1, 1], [[0, 0], [0, 0]], [(0, 1, 0, 1)] * 2)
    toks, trace = unlink_bands(b)
    assert toks == [SmnToken(3, 1, 1, (1, 1))]
    assert trace.moves() == []


def test_unlink_one_inter_pair_link():
    link = [[0, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]]
    b = BandPresentation.of(3, [0, 1, 0, 1], link, [(0, 1, 0, 1)] * 4)
    toks, trace = unlink_bands(b)
    assert len(toks) == 2
    assert trace.moves().count("unlink-equal") == 1
    assert sum(t.cu() for t in toks) % 3 == cu(b.coloured).value


def test_unlink_excises_trivial_pair():
    b = BandPresentation.of(5, [-1, 1, 3, 7], [[0] * 4 for _ in range(4)], [(0, 1, 0, 1), (0, 2, 0, 2), (1, 1, 3, 3), (2, 2, 0, 0)])
    toks, trace = unlink_bands(b)
    assert trace.moves()[0] == "excise-pair"
    assert toks == [SmnToken(5, -1, 1, (1, 2))]


def test_twist_reduce_examples():
    t, extra, trace = twist_reduce(SmnToken(3, 4, 1, (1, 1)))
    assert t == SmnToken(3, 1, 1, (1, 1)) and extra == [T3L]
    assert cu_oracle([[4, 1], [0, 1]], (1, 1), 3) == (cu_oracle([[1, 1], [0, 1]], (1, 1), 3) + T3L.cu()) % 3 == 1
    same, none, empty = twist_reduce(SmnToken(3, 1, 1, (1, 1)))
    assert same == SmnToken(3, 1, 1, (1, 1)) and none == [] and len(empty) == 0
    t, extra, _ = twist_reduce(SmnToken(5, -3, 2, (1, 1)))
    assert (t.m, t.n) == (2, 2) and len(extra) == 2
    assert (t.cu() + sum(x.cu() for x in extra)) % 5 == SmnToken(5, -3, 2, (1, 1)).cu()


@given(st.sampled_from([3, 5]), st.integers(-12, 12), st.integers(-12, 12), st.integers(1, 4))
def test_twist_reduce_bounds_and_idempotence(p, m, n, c):
    if (4 * m * n - 1) % p:
        return
    from dkt.coloured_invariant import default_colouring
    from dkt.seifert import smn

    v = default_colouring(smn(m, n), p).scaled(c % p or 1).v.entries
    tok = SmnToken(p, m, n, v)
    red, extra, trace = twist_reduce(tok)
    half = (p - 1) // 2
    assert abs(red.m) <= half and abs(red.n) <= half
    assert trace.is_sound()
    assert (red.cu() + sum(x.cu() for x in extra)) % p == tok.cu()
    again, more, _ = twist_reduce(red)
    assert again == red and more == []


def test_smn_to_torus_examples():
    assert smn_to_torus(SmnToken(3, 1, 1, (1, 1))).counts == Counter({T3L: 1})
    assert smn_to_torus(SmnToken(3, -1, -1, (1, 2))).counts == Counter({T3R: 1})
    ms = smn_to_torus(SmnToken(5, -1, 1, (1, 2)))
    assert ms.size == 5 and ms.counts == Counter({B5L: 1, A5L: 4})
    assert ms.cu() == SmnToken(5, -1, 1, (1, 2)).cu()
    with pytest.raises(NotColourableError):
        smn_to_torus(SmnToken(3, 0, 1, (1, 1)))
    with pytest.raises(ValidationError):
        smn_to_torus(SmnToken(3, 4, 1, (1, 1)))


@pytest.mark.parametrize("m, n", [(-1, 1), (1, -1), (2, 2), (-2, -2)])
@pytest.mark.parametrize("c", [1, 2, 3, 4])
def test_smn_to_torus_preserves_cu_p5(m, n, c):
    from dkt.coloured_invariant import default_colouring
    from dkt.seifert import smn

    tok = SmnToken(5, m, n, default_colouring(smn(m, n), 5).scaled(c).v.entries)
    ms = smn_to_torus(tok)
    assert ms.is_torus_only() and ms.cu() == tok.cu()
    assert canonicalize_counts(ms).n == classify(tok.coloured()).n


def test_canonicalize_examples():
    assert canonicalize_counts(SummandMultiset.of(3, [T3L] * 4)).n == 1
    assert canonicalize_counts(SummandMultiset.of(3, [T3R])).n == 2
    assert canonicalize_counts(SummandMultiset.of(5, [B5L])).n == 4
    with pytest.raises(NotColourableError):
        canonicalize_counts(SummandMultiset(5))
    with pytest.raises(ValidationError):
        canonicalize_counts(SummandMultiset.of(5, [SmnToken(5, -1, 1, (1, 2))]))


@pytest.mark.parametrize("p", [3, 5])
def test_torus_weights_agree_with_cu(p):
    ref = TorusToken(p, "left").cu()
    for tok in torus_tokens(p):
        assert tok.cu() == TORUS_WEIGHTS[p][(tok.handedness, tok.orbit)] * ref % p


@given(st.sampled_from([3, 5]), st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_canonicalize_is_a_monoid_homomorphism(p, a, b):
    toks = torus_tokens(p)
    x = SummandMultiset.of(p, [t for t, k in zip(toks, a) for _ in range(k)])
    y = SummandMultiset.of(p, [t for t, k in zip(toks, b) for _ in range(k)])
    if not x.size or not y.size:
        return
    n = canonicalize_counts(x | y).n
    assert n % p == (canonicalize_counts(x).n + canonicalize_counts(y).n) % p


def test_multiset_guards():
    ms = SummandMultiset(3)
    with pytest.raises(ValidationError):
        ms.add(A5L)
    with pytest.raises(ValidationError):
        ms.add(T3L, -1)
    assert str(ms) == "unknot"
    ms.add(T3L, 2)
    assert str(ms) == "2x3_1L"
    with pytest.raises(ValidationError):
        TorusToken(5, "left", 3)


def test_token_names():
    assert str(A5L) == "5_1L(A)" and str(B5R) == "5_1R(B)" and str(T3R) == "3_1R"
    assert A5L.mirror == A5R
    assert str(SmnToken(5, -1, 1, (1, 2))) == "S(-1,1)[v=1,2]"


def test_reduce_is_checked_and_traced():
    b = BandPresentation.of(3, [4, 1], [[0, 0], [0, 0]], [(0, 1, 0, 1)] * 2)
    label, trace = reduce(b)
    assert label.n == 2 == classify(b.coloured).n
    assert trace.moves() == ["twist-shift", "torus-conversion"]
    assert trace.is_sound()
    with pytest.raises(ValidationError):
        reduce(BandPresentation.of(7, [2, 1], [[0, 0], [0, 0]], [(0, 1, 0, 1), (0, 5, 0, 5)]))


def test_reduce_s_minus3_2():
    from dkt.coloured_invariant import default_colouring
    from dkt.seifert import smn

    c = default_colouring(smn(-3, 2), 5)
    label, trace = reduce(BandPresentation.from_seifert(c))
    assert label.n == classify(c).n
    assert "twist-shift" in trace.moves()


def test_trace_rejects_cu_change():
    t = ReductionTrace(3)
    t.record("x", "r", "a", "b", 1, 1)
    with pytest.raises(InconsistencyError):
        t.record("y", "r", "b", "c", 1, 2)
    assert len(t) == 1 and t.lines()[0].startswith("step 1 | move x")
    assert digest((1, 2)) == digest((1, 2)) != digest((2, 1))


@pytest.mark.parametrize("p", [3, 5])
def test_random_presentations_are_valid(p):
    rng = random.Random(p)
    for _ in range(20):
        b = random_presentation(p, rng.randint(1, 3), rng)
        assert max(map(abs, b.twists)) <= 9
        assert all(abs(x) <= 3 for r in b.linking for x in r)
        assert cu(b.coloured).value == cu_oracle(b.seifert.M.tolist(), b.index, p)
