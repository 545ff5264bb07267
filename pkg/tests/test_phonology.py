import pytest
from hypothesis import given, settings, strategies as st

from garble.inventory import KIRSCHENBAUM, XSAMPA, default_inventory
from garble.phonology import (
    EmptyInput,
    NoNucleus,
    PhonUtterance,
    UnknownSymbol,
    convert,
    emit,
    emit_word,
    parse,
    parse_word,
    rhyme_key,
    syllabify,
)

from vectors import GOLDEN

_INV = default_inventory()


def ids(word):
    return list(word.phoneme_ids)


class TestParse:
    def test_table_command(self):
        u = parse(KIRSCHENBAUM, "sm'0ts k'aI sp'eIm")
        assert len(u.words) == 3
        onsets = [[p.id for p in w.syllables[0].onset] for w in u.words]
        assert onsets == [["s", "m"], ["k"], ["s", "p"]]
        nuclei = [w.syllables[0].nucleus.id for w in u.words]
        assert nuclei == ["Q", "aI", "eI"]
        assert all(w.syllables[0].stressed for w in u.words)

    def test_five_word_xsampa_with_syllabic_l(self):
        u = parse(XSAMPA, "t'eI D'u:bl= s'3:n Z'Qn j'aIt")
        assert len(u.words) == 5
        second = u.words[1]
        assert second.syllables[-1].nucleus.id == "l="

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            parse(KIRSCHENBAUM, "")

    def test_unknown_symbol_position(self):
        with pytest.raises(UnknownSymbol) as err:
            parse(KIRSCHENBAUM, "t'3:n x7d l'aIt")
        assert err.value.position == 6

    def test_stress_must_precede_nucleus(self):
        with pytest.raises(UnknownSymbol):
            parse(KIRSCHENBAUM, "'st3:n")

    def test_double_stress_rejected(self):
        with pytest.raises(UnknownSymbol):
            parse(KIRSCHENBAUM, "t'3:n'aI")

    def test_unknown_alphabet(self):
        with pytest.raises(ValueError):
            parse("arpabet", "t")


class TestEmit:
    def test_inverse_of_parse(self):
        s = "h'3:n z'0f j'aIt"
        assert emit(parse(KIRSCHENBAUM, s), KIRSCHENBAUM) == s

    def test_cross_alphabet_identity_string(self):
        u = parse(KIRSCHENBAUM, "str'3:n j'aIt str'Ed")
        assert emit(u, XSAMPA) == "str'3:n j'aIt str'Ed"

    def test_syllabic_l_rendering(self):
        word = parse_word("g'u:t@L", KIRSCHENBAUM)
        assert emit_word(word, KIRSCHENBAUM) == "g'u:t@L"
        assert emit_word(word, XSAMPA) == "g'u:tl="


class TestConvert:
    # expected values follow the published alphabet charts: the LOT vowel is
    # Kirschenbaum "0" vs X-SAMPA "Q", syllabic l "@L" vs "l="
    def test_lot_vowel(self):
        assert convert("h'0n", KIRSCHENBAUM, XSAMPA) == "h'Qn"

    def test_syllabic_l(self):
        assert convert("d'u:b@L", KIRSCHENBAUM, XSAMPA) == "d'u:bl="

    def test_identity_for_shared_symbols(self):
        s = "str'3:n j'aIt str'Ed"
        assert convert(s, KIRSCHENBAUM, XSAMPA) == s

    def test_propagates_parse_errors(self):
        with pytest.raises(UnknownSymbol):
            convert("h'Qn", KIRSCHENBAUM, XSAMPA)  # Q is not a Kirschenbaum symbol


class TestSyllabify:
    def test_single_syllable_cluster(self):
        word = syllabify([_INV.get(i) for i in ("s", "p", "eI", "m")], stressed_index=2)
        assert len(word.syllables) == 1
        s = word.syllables[0]
        assert [p.id for p in s.onset] == ["s", "p"]
        assert s.nucleus.id == "eI"
        assert [p.id for p in s.coda] == ["m"]

    def test_bare_vowel(self):
        word = syllabify([_INV.get("aI")])
        assert len(word.syllables) == 1
        assert word.syllables[0].onset == ()
        assert word.syllables[0].coda == ()

    def test_maximal_onset_two_syllables(self):
        # derived by hand: the medial consonant joins the second onset
        word = syllabify([_INV.get(i) for i in ("g", "u:", "t", "l=")], stressed_index=1)
        assert [[p.id for p in s.onset] for s in word.syllables] == [["g"], ["t"]]
        assert [s.nucleus.id for s in word.syllables] == ["u:", "l="]

    def test_medial_cluster_split(self):
        # "str" is a legal onset, so all three consonants move right
        word = syllabify([_INV.get(i) for i in ("E", "s", "t", "r", "eI")])
        assert [p.id for p in word.syllables[0].coda] == []
        assert [p.id for p in word.syllables[1].onset] == ["s", "t", "r"]

    def test_illegal_cluster_splits_to_coda(self):
        # "ns" is not an onset; "s" is, so "n" stays in the first coda
        word = syllabify([_INV.get(i) for i in ("E", "n", "s", "eI")])
        assert [p.id for p in word.syllables[0].coda] == ["n"]
        assert [p.id for p in word.syllables[1].onset] == ["s"]

    def test_no_nucleus(self):
        with pytest.raises(NoNucleus):
            syllabify([_INV.get("s"), _INV.get("t")])


class TestRhymeKey:
    def test_rhyme_from_first_nucleus(self):
        assert list(rhyme_key(parse_word("sm'0ts", KIRSCHENBAUM))) == ["Q", "t", "s"]

    def test_rhyme_equality_defines_rhyme(self):
        what_s = parse_word("w'0ts", KIRSCHENBAUM)
        smots = parse_word("sm'0ts", KIRSCHENBAUM)
        assert rhyme_key(what_s) == rhyme_key(smots)
        assert rhyme_key(parse_word("j'aIt", KIRSCHENBAUM)) == rhyme_key(
            parse_word("l'aIt", KIRSCHENBAUM)
        )

    def test_open_syllable_key_is_nucleus(self):
        assert list(rhyme_key(parse_word("k'aI", KIRSCHENBAUM))) == ["aI"]

    def test_stress_ignored(self):
        assert rhyme_key(parse_word("l'aIt", KIRSCHENBAUM)) == rhyme_key(
            parse_word("laIt", KIRSCHENBAUM)
        )


class TestGoldenRoundTrip:
    @pytest.mark.parametrize("cmd", GOLDEN, ids=lambda c: c.adversarial)
    def test_byte_exact(self, cmd):
        assert emit(parse(cmd.alphabet, cmd.adversarial), cmd.alphabet) == cmd.adversarial


# -- property tests ---------------------------------------------------------

_consonants = [p for p in _INV.phonemes if p.is_consonant and p.id != "l="]
_vowels = [p for p in _INV.phonemes if p.is_vowel]


@st.composite
def phoneme_words(draw):
    """Random flat phoneme sequences with >= 1 nucleus, built syllable-wise."""
    n_syllables = draw(st.integers(1, 3))
    phonemes = []
    for _ in range(n_syllables):
        phonemes.extend(draw(st.lists(st.sampled_from(_consonants), max_size=2)))
        phonemes.append(draw(st.sampled_from(_vowels)))
    phonemes.extend(draw(st.lists(st.sampled_from(_consonants), max_size=2)))
    nuclei = [i for i, p in enumerate(phonemes) if p.nucleus_capable]
    stressed = draw(st.sampled_from(nuclei + [None]))
    return phonemes, stressed


@st.composite
def valid_strings(draw, alphabet):
    words = []
    for _ in range(draw(st.integers(1, 3))):
        phonemes, stressed = draw(phoneme_words())
        words.append(emit_word(syllabify(phonemes, stressed), alphabet))
    return " ".join(words)


@given(valid_strings(KIRSCHENBAUM))
@settings(max_examples=150, deadline=None)
def test_string_roundtrip_kirschenbaum(s):
    assert emit(parse(KIRSCHENBAUM, s), KIRSCHENBAUM) == s


@given(valid_strings(XSAMPA))
@settings(max_examples=150, deadline=None)
def test_string_roundtrip_xsampa(s):
    assert emit(parse(XSAMPA, s), XSAMPA) == s


@given(valid_strings(KIRSCHENBAUM))
@settings(max_examples=150, deadline=None)
def test_conversion_involution(s):
    there = convert(s, KIRSCHENBAUM, XSAMPA)
    assert convert(there, XSAMPA, KIRSCHENBAUM) == s


@given(valid_strings(KIRSCHENBAUM))
@settings(max_examples=100, deadline=None)
def test_object_roundtrip_on_parsed_utterances(s):
    u = parse(KIRSCHENBAUM, s)
    assert parse(KIRSCHENBAUM, emit(u, KIRSCHENBAUM)) == u
