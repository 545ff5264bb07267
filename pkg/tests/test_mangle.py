import pytest
from hypothesis import given, settings, strategies as st

from garble.inventory import KIRSCHENBAUM
from garble.lexicon import MappingG2P, build_lexicon
from garble.mangle import (
    CandidateCommand,
    InventoryExhausted,
    OnsetInventory,
    REAL_WORD,
    Rejected,
    SAME_AS_ORIGINAL,
    combine,
    generate_batch,
    mangle_wake,
    mangle_word,
    read_manifest,
    targets,
    validate_candidate,
    wake_target,
    who_am_i_target,
    write_manifest,
)
from garble.phonology import PhonUtterance, emit, parse, parse_word, rhyme_key

from vectors import GOLDEN_COMBINED, GOLDEN_COMMAND, GOLDEN_WAKE


class QueuedRandom:
    """rng stub whose choice() pops pre-scripted draws."""

    def __init__(self, draws):
        self.draws = list(draws)

    def choice(self, seq):
        want = self.draws.pop(0)
        for item in seq:
            if item == want:
                return item
        raise AssertionError(f"{want!r} not in population")


def onset(*ids):
    return tuple(ids)


class TestTargets:
    def test_exactly_the_five_shipped_commands(self):
        assert [(t.text, t.action_id) for t in targets()] == [
            ("what's my name", "GetUserName"),
            ("turn on light", "LightOn"),
            ("turn off light", "LightOff"),
            ("turn light red", "SetColorRed"),
            ("turn light blue", "SetColorBlue"),
        ]

    def test_categories_cover_all_three(self):
        assert {t.category for t in targets()} == {
            "information_extraction",
            "cyber_physical",
            "data_input",
        }

    def test_who_am_i_not_in_defaults(self):
        assert who_am_i_target().text not in [t.text for t in targets()]


class TestOnsetInventory:
    def test_covers_published_onsets(self, onsets):
        # every onset appearing in the golden adversarial commands
        needed = [
            "S", "j", "t", "g", "Z", "d", "h", "z", "k", "p", "D", "s",
        ]
        for single in needed:
            assert (single,) in onsets.onsets, single
        for cluster in [
            ("g", "l"), ("s", "k", "w"), ("s", "t", "r"), ("s", "m"),
            ("s", "p"), ("k", "l"), ("t", "r"), ("T", "r"), ("p", "r"), ("s", "w"),
        ]:
            assert cluster in onsets.onsets, cluster

    def test_le_consonants(self, onsets):
        assert set(onsets.le_consonants) == {"b", "d", "f", "g", "k", "p", "t", "s", "z"}

    def test_inventory_size(self, onsets):
        assert len(onsets.onsets) == 51

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            OnsetInventory((("s",), ("s",)), ("b",))


class TestMangleWord:
    def test_accepted_draw(self, onsets, lexicon):
        word = parse_word("n'eIm", KIRSCHENBAUM)
        rng = QueuedRandom([onset("s", "p")])
        result = mangle_word(word, rng, onsets, lexicon)
        assert emit(PhonUtterance((result,)), KIRSCHENBAUM) == "sp'eIm"
        assert rhyme_key(result) == rhyme_key(word)

    def test_vowel_initial_gets_prefix(self, onsets, lexicon):
        word = parse_word("'0n", KIRSCHENBAUM)
        rng = QueuedRandom([onset("h")])
        result = mangle_word(word, rng, onsets, lexicon)
        assert emit(PhonUtterance((result,)), KIRSCHENBAUM) == "h'0n"

    def test_real_word_rejected(self, onsets, lexicon):
        word = parse_word("l'aIt", KIRSCHENBAUM)
        rng = QueuedRandom([onset("n")])
        result = mangle_word(word, rng, onsets, lexicon)
        assert result == Rejected(REAL_WORD)  # n'aIt is "night"

    def test_identity_rejected(self, onsets, lexicon):
        word = parse_word("t'3:n", KIRSCHENBAUM)
        rng = QueuedRandom([onset("t")])
        assert mangle_word(word, rng, onsets, lexicon) == Rejected(SAME_AS_ORIGINAL)


class TestMangleWake:
    def test_published_examples(self, onsets, lexicon):
        rng = QueuedRandom([onset("S"), onset("j"), "b"])
        result = mangle_wake(rng, onsets, lexicon)
        assert emit(result, KIRSCHENBAUM) == "S'eI j'u:b@L"

        rng = QueuedRandom([onset("t"), onset("g"), "t"])
        result = mangle_wake(rng, onsets, lexicon)
        assert emit(result, KIRSCHENBAUM) == "t'eI g'u:t@L"

    def test_identity_draws_rejected(self, onsets, lexicon):
        rng = QueuedRandom([onset("h"), onset("g"), "g"])
        assert mangle_wake(rng, onsets, lexicon) == Rejected(SAME_AS_ORIGINAL)

    def test_unchanged_google_rejected(self, onsets, lexicon):
        rng = QueuedRandom([onset("S"), onset("g"), "g"])
        assert mangle_wake(rng, onsets, lexicon) == Rejected(SAME_AS_ORIGINAL)

    def test_real_word_collision_rejected(self, onsets, lexicon):
        # d'u:d@L is "doodle"
        rng = QueuedRandom([onset("S"), onset("d"), "d"])
        assert mangle_wake(rng, onsets, lexicon) == Rejected(REAL_WORD)


class TestGenerateBatch:
    def test_batch_of_100_valid_distinct_deterministic(self, onsets, lexicon):
        wake = wake_target()
        batch = generate_batch(wake, 100, seed=7)
        assert len(batch) == 100
        assert len({c.kirschenbaum for c in batch}) == 100
        for c in batch:
            assert c.nonsense_verified
            assert validate_candidate(c.utterance, wake, lexicon, onsets) == []
            assert len(c.utterance.words) == 2
        again = generate_batch(wake, 100, seed=7)
        assert [c.kirschenbaum for c in again] == [c.kirschenbaum for c in batch]

    def test_command_batch_word_count(self, onsets, lexicon):
        target = targets()[3]
        batch = generate_batch(target, 50, seed=11)
        for c in batch:
            assert len(c.utterance.words) == 3
            assert validate_candidate(c.utterance, target, lexicon, onsets) == []

    def test_known_seed_reproduces_published_candidate(self, lexicon):
        # found by search: this seed's first draws are str / j / str
        target = targets()[3]
        batch = generate_batch(target, 1, seed=SEED_STRURN)
        assert batch[0].kirschenbaum == "str'3:n j'aIt str'Ed"

    def test_replacement_provenance(self):
        target = targets()[1]  # turn on light
        batch = generate_batch(target, 5, seed=2)
        for c in batch:
            by_word = {r.word_index for r in c.replacements}
            assert by_word == {0, 1, 2}
            assert all(r.position == "initial" for r in c.replacements)
            assert all(r.new != r.original for r in c.replacements)

    def test_pigeonhole_exhaustion(self, lexicon):
        tiny = OnsetInventory((("s",), ("t",)), ("b",))
        with pytest.raises(InventoryExhausted):
            generate_batch(targets()[0], 10, seed=1, inv=tiny, lex=lexicon)

    def test_retry_cap_exhaustion(self):
        # a lexicon containing every possible mangle of "name"
        tiny = OnsetInventory((("s",), ("t",), ("k",)), ("b",))
        table = {f"w{i}": f"{prefix}'eIm" for i, prefix in enumerate(["s", "t", "k"])}
        lex = build_lexicon(list(table), MappingG2P(table)).lexicon
        with pytest.raises(InventoryExhausted):
            generate_batch(_one_word_target(), 2, seed=1, inv=tiny, lex=lex)


def _one_word_target():
    from garble.mangle import TargetCommand

    return TargetCommand("name", parse(KIRSCHENBAUM, "n'eIm"), "GetUserName", "test")


class TestCombine:
    def test_cartesian_product_order(self):
        wake = generate_batch(wake_target(), 15, seed=7)
        cmds = generate_batch(targets()[3], 15, seed=9)
        combos = combine(wake, cmds)
        assert len(combos) == 225
        assert combos[0].wake is wake[0] and combos[0].command is cmds[0]
        assert combos[14].wake is wake[0] and combos[14].command is cmds[14]
        assert combos[15].wake is wake[1]

    def test_single_pair(self):
        wake = generate_batch(wake_target(), 1, seed=7)
        cmds = generate_batch(targets()[0], 1, seed=9)
        assert len(combine(wake, cmds)) == 1

    def test_action_carried_through(self):
        wake = generate_batch(wake_target(), 15, seed=7)
        cmds = generate_batch(targets()[3], 3, seed=9)
        combos = combine(wake, cmds)
        assert len(combos) == 45
        assert all(c.command.target.action_id == "SetColorRed" for c in combos)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            combine([], [])


class TestGoldenValidity:
    @pytest.mark.parametrize("cmd", GOLDEN_WAKE, ids=lambda c: c.adversarial)
    def test_wake_vectors(self, cmd, lexicon, onsets):
        u = parse(cmd.alphabet, cmd.adversarial)
        assert validate_candidate(u, wake_target(), lexicon, onsets) == []

    @pytest.mark.parametrize("cmd", GOLDEN_COMMAND, ids=lambda c: c.adversarial)
    def test_command_vectors(self, cmd, lexicon, onsets):
        u = parse(cmd.alphabet, cmd.adversarial)
        target = next(t for t in targets() if t.text == cmd.target)
        assert validate_candidate(u, target, lexicon, onsets) == []

    @pytest.mark.parametrize("cmd", GOLDEN_COMBINED, ids=lambda c: c.adversarial)
    def test_combined_vectors(self, cmd, lexicon, onsets):
        u = parse(cmd.alphabet, cmd.adversarial)
        wake_part = PhonUtterance(u.words[:2])
        cmd_part = PhonUtterance(u.words[2:])
        target = next(t for t in targets() if cmd.target.endswith(t.text))
        assert validate_candidate(wake_part, wake_target(), lexicon, onsets) == []
        assert validate_candidate(cmd_part, target, lexicon, onsets) == []


class TestManifest:
    def test_roundtrip(self, tmp_path):
        batch = generate_batch(wake_target(), 5, seed=3)
        path = tmp_path / "candidates.jsonl"
        write_manifest(batch, path)
        rows = read_manifest(path)
        assert len(rows) == 5
        assert rows[0]["candidate_id"] == batch[0].candidate_id
        assert rows[0]["kirschenbaum"] == batch[0].kirschenbaum
        assert rows[0]["nonsense_verified"] is True


# -- properties --------------------------------------------------------------


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_rhyme_preserved_and_nonsense_guaranteed(seed):
    from garble.lexicon import default_lexicon

    lexicon = default_lexicon()
    target = targets()[seed % len(targets())]
    batch = generate_batch(target, 10, seed=seed)
    for c in batch:
        for mangled, original in zip(c.utterance.words, target.phonetic.words):
            assert rhyme_key(mangled) == rhyme_key(original)
            assert not lexicon.contains(mangled.phoneme_ids)


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_wake_batch_preserves_le_ending(seed):
    from garble.lexicon import default_lexicon

    lexicon = default_lexicon()
    batch = generate_batch(wake_target(), 10, seed=seed)
    for c in batch:
        hey, google = c.utterance.words
        assert rhyme_key(hey) == ("eI",)
        assert google.phoneme_ids[-1] == "l="
        assert not lexicon.contains(google.phoneme_ids)


# found by offline search: Random(f"{seed}:0") draws str / j / str
SEED_STRURN = 35244
