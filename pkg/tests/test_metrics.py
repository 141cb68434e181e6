import math

import pytest

from dyckstream import (
    Metrics,
    check_one_pass,
    check_two_pass,
    emit,
    gen_random_member,
    make_params,
    parse_line,
)
from dyckstream.words import Verdict

PARAMS = make_params(1 << 12, seed=13)


def test_record_events_track_peak_and_checks():
    m = Metrics(algo="onepass", n=8)
    assert m.peak_stack_items == 0
    m.record_push()
    m.record_push()
    m.record_pop()
    m.record_push()
    m.record_check()
    assert m.peak_stack_items == 2
    assert m.checks_performed == 1
    with pytest.raises(ValueError):
        Metrics(algo="onepass", n=0).record_pop()


def test_padded_n_defaults_to_n():
    m = Metrics(algo="oracle", n=12)
    assert m.padded_n == 12
    m = Metrics(algo="twopass", n=12, padded_n=16)
    assert m.padded_n == 16


def test_space_bits():
    m = Metrics(algo="onepass", n=8, peak_stack_items=3, item_bits=66)
    assert m.space_bits() == 198


def test_emit_line_shape():
    m = Metrics(
        algo="twopass",
        n=6,
        padded_n=8,
        peak_stack_items=4,
        item_bits=69,
        letters_read=16,
        hash_mults=20,
        checks_performed=5,
        verdict=Verdict(True, "none"),
        pass_count=2,
        buffered_reverse=False,
    )
    line = emit(m)
    assert line == (
        "record=dyckstream-metrics/1 algo=twopass n=6 padded_n=8"
        " peak_stack_items=4 item_bits=69 letters_read=16 hash_mults=20"
        " checks_performed=5 verdict=accept reason=none pass_count=2"
        " buffered_reverse=false"
    )


def test_emit_requires_verdict():
    with pytest.raises(ValueError):
        emit(Metrics(algo="onepass", n=4))


def test_parse_line_round_trip():
    m = Metrics(
        algo="onepass",
        n=10,
        letters_read=10,
        verdict=Verdict(False, "mismatched"),
        pass_count=1,
    )
    fields = parse_line(emit(m))
    assert fields["algo"] == "onepass"
    assert fields["n"] == 10
    assert fields["verdict"] == "reject"
    assert fields["reason"] == "mismatched"
    assert fields["pass_count"] == 1
    with pytest.raises(ValueError):
        parse_line("record=other/1 algo=x")
    with pytest.raises(ValueError):
        parse_line("no fields here")


def test_driver_counters_match_event_route_one_pass():
    word = gen_random_member(300, seed=21)
    mirror = Metrics(algo="onepass", n=600)

    def tracer(event):
        kind = event[0]
        if kind == "push":
            mirror.record_push()
        elif kind == "check":
            mirror.record_check()
            if event[2] == 0:
                mirror.record_pop()

    verdict, metrics = check_one_pass(word, PARAMS, backend="python", tracer=tracer)
    assert verdict.accepted
    assert mirror.peak_stack_items == metrics.peak_stack_items
    assert mirror.checks_performed == metrics.checks_performed


def test_driver_counters_match_event_route_two_pass():
    word = gen_random_member(300, seed=22)
    mirrors = []

    def tracer(event):
        kind = event[0]
        if kind == "pass":
            mirrors.append(Metrics(algo="twopass", n=600))
        elif kind == "push":
            mirrors[-1].record_push()
        elif kind == "merge":
            mirrors[-1].record_pop()
        elif kind == "check":
            mirrors[-1].record_check()
            if event[2] == 0:
                mirrors[-1].record_pop()

    verdict, metrics = check_two_pass(word, PARAMS, backend="python", tracer=tracer)
    assert verdict.accepted
    assert len(mirrors) == 2
    assert max(m.peak_stack_items for m in mirrors) == metrics.peak_stack_items
    assert sum(m.checks_performed for m in mirrors) == metrics.checks_performed


def test_letters_read_and_bounds_on_complete_runs():
    for pairs, seed in ((64, 0), (256, 1), (512, 2)):
        word = gen_random_member(pairs, seed=seed)
        n = 2 * pairs
        _, one = check_one_pass(word, PARAMS)
        assert one.letters_read == n
        assert one.peak_stack_items <= math.ceil(math.sqrt(n)) + 1
        _, two = check_two_pass(word, PARAMS)
        assert two.letters_read == 2 * two.padded_n
        assert two.peak_stack_items <= 2 * math.ceil(math.log2(two.padded_n))


def test_hash_mults_stay_logarithmic_per_letter():
    for pairs in (32, 128, 512, 2048):
        word = gen_random_member(pairs, seed=7)
        n = 2 * pairs
        _, one = check_one_pass(word, PARAMS)
        _, two = check_two_pass(word, PARAMS)
        for metrics in (one, two):
            assert metrics.hash_mults <= metrics.letters_read * (2 * math.log2(n) + 2)
