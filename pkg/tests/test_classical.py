import numpy as np
import pytest

from seqsim.classical import (boundary_term, brute_force_zero_crossings, format_sequence,
                              generate_sequence, parse_sequence, zero_crossings_closed_form,
                              zero_crossings_recurrence, zero_crossings_trace)
from seqsim.core import BitString, parity
from seqsim.exceptions import ContractViolation, ResourceError

from conftest import TABLE1_COUNTS, TABLE1_SEQUENCES, all_secrets, naive_sequence, naive_sign_changes


def bs(text):
    return BitString.parse(text)


@pytest.mark.parametrize("secret,expected", sorted(TABLE1_SEQUENCES.items()))
def test_table1_sequences(secret, expected):
    assert tuple(generate_sequence(bs(secret))) == expected


def test_generate_sequence_matches_naive():
    for n in range(1, 7):
        for s in all_secrets(n):
            assert list(generate_sequence(s)) == naive_sequence(s.value, n)


def test_sequence_starts_positive():
    for n in range(1, 9):
        for s in all_secrets(n):
            assert generate_sequence(s)[0] == 1


def test_brute_force_examples():
    assert brute_force_zero_crossings(generate_sequence(bs("101"))) == 6
    assert brute_force_zero_crossings([1] * 8) == 0
    assert brute_force_zero_crossings(generate_sequence(bs("001"))) == 7


def test_brute_force_table1_order():
    counts = tuple(brute_force_zero_crossings(generate_sequence(s)) for s in all_secrets(3))
    assert counts == TABLE1_COUNTS


def test_brute_force_rejects_bad_sequences():
    with pytest.raises(ContractViolation):
        brute_force_zero_crossings([1, 0, 1, 1])
    with pytest.raises(ContractViolation):
        brute_force_zero_crossings([1, -1, 1])


def test_sequence_length_cap():
    with pytest.raises(ResourceError):
        generate_sequence(BitString(1, 21))
    assert generate_sequence(BitString(1, 21), max_bits=21).size == 2 ** 21


class TestRecurrence:
    def test_example_trace(self):
        assert zero_crossings_trace(bs("101")) == [1, 3, 6]
        assert zero_crossings_recurrence(bs("101")) == 6

    def test_base_case(self):
        assert zero_crossings_recurrence(bs("1")) == 1
        assert zero_crossings_recurrence(bs("0")) == 0

    def test_0110_matches_brute(self):
        s = bs("0110")
        expected = naive_sign_changes(naive_sequence(s.value, 4))
        assert zero_crossings_recurrence(s) == expected == brute_force_zero_crossings(generate_sequence(s))

    def test_trace_entries_are_truncated_counts(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 13))
            s = BitString(int(rng.integers(0, 2 ** n)), n)
            trace = zero_crossings_trace(s)
            for m, z in enumerate(trace, start=1):
                sm = BitString(s.value & ((1 << m) - 1), m)
                assert z == brute_force_zero_crossings(generate_sequence(sm))


def test_closed_form_examples():
    assert zero_crossings_closed_form(bs("101")) == 6
    assert zero_crossings_closed_form(bs("000")) == 0
    assert zero_crossings_closed_form(bs("111")) == 5


@pytest.mark.parametrize("n", range(1, 11))
def test_three_way_agreement_exhaustive(n):
    for s in all_secrets(n):
        brute = brute_force_zero_crossings(generate_sequence(s))
        assert zero_crossings_recurrence(s) == brute
        assert zero_crossings_closed_form(s) == brute


def test_three_way_agreement_sampled(rng):
    for _ in range(1000):
        n = int(rng.integers(11, 21))
        s = BitString(int(rng.integers(0, 2 ** n)), n)
        brute = brute_force_zero_crossings(generate_sequence(s))
        assert zero_crossings_recurrence(s) == brute == zero_crossings_closed_form(s)


@pytest.mark.parametrize("n", range(1, 11))
def test_range_and_extremes(n):
    top = 2 ** n - 1
    for s in all_secrets(n):
        z = zero_crossings_closed_form(s)
        assert 0 <= z <= top
        assert (z == 0) == (s.value == 0)
        assert (z == top) == (s.value == 1)


def test_boundary_term_identity(rng):
    for _ in range(500):
        n = int(rng.integers(2, 21))
        s = BitString(int(rng.integers(0, 2 ** n)), n)
        m = int(rng.integers(2, n + 1))
        assert boundary_term(s, m) == parity(s.value & ((1 << m) - 1))
        # the same term straight from the two signs in the middle of the prefix
        head = parity(s.value & ((1 << (m - 1)) - 1))
        left, right = (-1) ** s[m - 1], (-1) ** head
        assert abs(left - right) // 2 == parity(s.value & ((1 << m) - 1))


def test_boundary_term_range():
    with pytest.raises(ContractViolation):
        boundary_term(bs("101"), 1)


def test_sequence_text_round_trip():
    seq = generate_sequence(bs("101"))
    text = format_sequence(seq)
    assert text == "+1,-1,+1,-1,-1,+1,-1,+1"
    assert np.array_equal(parse_sequence(text), seq)
    with pytest.raises(ContractViolation):
        parse_sequence("+1,x")
