import itertools
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from hermfold.decode_verify import (
    FoldedWord,
    folded_hamming_distance,
    is_monotone,
    list_decode_exhaustive,
    list_size_profile,
    low_weight_pattern_count,
    low_weight_patterns,
    pauli_channel_trial,
    plant_and_recover_all,
    product_bound_check,
    quantum_list_decode,
    quantum_list_profile,
    run_trials,
    same_logical_class,
    syndrome,
    verify_list_decodable,
)
from hermfold.errors import BudgetExceededError
from hermfold.folding import fold_hermitian
from hermfold.linear_code import codeword_count, iter_codewords

GOLDEN = Path(__file__).parent / "golden" / "list_profile_q2.csv"


def _codewords(fc):
    return np.vstack([np.asarray(chunk, dtype=np.int64) for chunk in iter_codewords(fc.code)])


def test_folded_hamming_distance():
    a = FoldedWord.from_flat([1, 2, 3, 0, 0, 1], 2)
    assert folded_hamming_distance(a, a) == 0
    b = FoldedWord.from_flat([1, 2, 3, 1, 0, 1], 2)
    assert folded_hamming_distance(a, b) == 1
    with pytest.raises(ValueError):
        folded_hamming_distance(a, FoldedWord.from_flat([1, 2, 3, 0, 0, 1], 3))


def test_folded_distance_between_unfolded_bounds():
    rng = np.random.default_rng(3)
    for _ in range(50):
        x, y = rng.integers(0, 4, size=8), rng.integers(0, 4, size=8)
        d = int(np.count_nonzero(x != y))
        folded = folded_hamming_distance(FoldedWord.from_flat(x, 2), FoldedWord.from_flat(y, 2))
        assert -(-d // 2) <= folded <= d


def test_codeword_decodes_to_itself(folded_c1):
    word = FoldedWord.from_flat(_codewords(folded_c1)[37], 2)
    assert list_decode_exhaustive(folded_c1, word, 0) == [word]


def test_unique_decoding_regime(curve2, chains2):
    # folded C(D, 2P_inf) has block distance 3
    fc = fold_hermitian(curve2, 2, chains2)
    codeword = _codewords(fc)[5]
    received = codeword.copy()
    received[2:4] = (received[2:4] + 1) % 4
    found = list_decode_exhaustive(fc, FoldedWord.from_flat(received, 2), 1)
    assert found == [FoldedWord.from_flat(codeword, 2)]


def test_list_decoding_shape_mismatch(folded_c1):
    with pytest.raises(ValueError):
        list_decode_exhaustive(folded_c1, FoldedWord.from_flat(np.zeros(8), 4), 1)


def test_exhaustive_profile_matches_golden(folded_c1):
    golden = pd.read_csv(GOLDEN)
    profile = list_size_profile(folded_c1, golden["radius"], mode="exhaustive")
    assert list(profile["max_list_size"]) == list(golden["max_list_size"])
    assert is_monotone(profile)
    assert profile["certified"].all()


def test_coset_profile_matches_exhaustive(folded_c1):
    golden = pd.read_csv(GOLDEN)
    profile = list_size_profile(folded_c1, golden["radius"], mode="coset")
    assert list(profile["max_list_size"]) == list(golden["max_list_size"])


def test_full_radius_returns_every_codeword(folded_c1):
    report = verify_list_decodable(folded_c1, folded_c1.N, mode="coset")
    assert report.max_list_size == codeword_count(folded_c1.code)


def test_sampled_mode_is_a_lower_bound(folded_c1):
    report = verify_list_decodable(folded_c1, 2, mode="sampled", trials=20, seed=1)
    assert not report.certified
    assert 1 <= report.max_list_size <= 19
    assert "lower bound on L" in str(report)


def test_exhaustive_mode_budget(folded_c1):
    with pytest.raises(BudgetExceededError):
        verify_list_decodable(folded_c1, 1, mode="exhaustive", budget=1000)
    with pytest.raises(ValueError):
        verify_list_decodable(folded_c1, 1, mode="magic")


def test_low_weight_patterns(curve2):
    patterns = np.asarray(low_weight_patterns(8, 2, curve2.field, 2))
    assert len(patterns) == low_weight_pattern_count(4, 2, 4, 2) == 1 + 4 * 15 + 6 * 225
    weights = np.any(patterns.reshape(-1, 4, 2) != 0, axis=2).sum(axis=1)
    assert weights.max() == 2
    assert np.all(np.diff(weights) >= 0)
    assert len(np.unique(patterns, axis=0)) == len(patterns)


def test_syndrome(folded_c1):
    code = folded_c1.code
    gf = code.field.gf
    assert not np.any(np.asarray(syndrome(code, np.zeros(8, dtype=np.int64))) != 0)
    word = _codewords(folded_c1)[11]
    assert not np.any(np.asarray(syndrome(code, word)) != 0)
    unit = np.zeros(8, dtype=np.int64)
    unit[5] = 1
    shifted = np.asarray(gf(word) + gf(unit), dtype=np.int64)
    assert np.array_equal(np.asarray(syndrome(code, shifted)), np.asarray(code.parity_check[:, 5]))
    with pytest.raises(ValueError):
        syndrome(code, np.zeros(6, dtype=np.int64))


def test_zero_syndromes_contain_identity(small_fqhc):
    css, _ = small_fqhc
    sx = np.zeros(css.c1.code.parity_check.shape[0], dtype=np.int64)
    sz = np.zeros(css.c2.code.parity_check.shape[0], dtype=np.int64)
    for radius in (0, 1):
        candidates = quantum_list_decode(css, sx, sz, radius)
        assert any(not c.x.any() and not c.z.any() for c in candidates)
    assert len(quantum_list_decode(css, sx, sz, 0)) == 1


def test_quantum_candidates_are_logically_distinct(small_fqhc):
    css, _ = small_fqhc
    x = np.zeros(8, dtype=np.int64)
    z = np.zeros(8, dtype=np.int64)
    x[0], z[3] = 1, 2
    sx = np.asarray(syndrome(css.c1.code, x), dtype=np.int64)
    sz = np.asarray(syndrome(css.c2.code, z), dtype=np.int64)
    candidates = quantum_list_decode(css, sx, sz, 2)
    assert candidates
    for a, b in itertools.combinations(candidates, 2):
        assert not same_logical_class(css, a, b)


def test_quantum_list_bounded_by_product_of_classical_lists(small_fqhc):
    css, _ = small_fqhc
    for radius in (0, 1, 2):
        result = product_bound_check(css, radius)
        assert result["holds"], result


def test_quantum_list_profile(small_fqhc):
    css, _ = small_fqhc
    pairs = quantum_list_profile(css, 1)
    assert {"x_classes", "z_classes", "list_size"} <= set(pairs.columns)
    assert (pairs["list_size"] == pairs["x_classes"] * pairs["z_classes"]).all()
    assert pairs["list_size"].min() >= 1


def test_plant_and_recover(small_fqhc):
    css, _ = small_fqhc
    tried, missed, largest = plant_and_recover_all(css, 0)
    assert (tried, missed, largest) == (1, 0, 1)
    tried, missed, _ = plant_and_recover_all(css, 1)
    assert tried == 1 + 4 * 255
    assert missed == 0


def test_pauli_channel_trial(small_fqhc):
    css, _ = small_fqhc
    trial = pauli_channel_trial(css, 0, seed=4)
    assert trial.recovered and trial.list_size == 1
    assert pauli_channel_trial(css, 1, seed=9) == pauli_channel_trial(css, 1, seed=9)
    assert pauli_channel_trial(css, 1, seed=9).recovered
    assert pauli_channel_trial(css, 1, seed=9).record().startswith("9 1 ")
    with pytest.raises(ValueError):
        pauli_channel_trial(css, 5, seed=0)


def test_high_weight_trials_run_without_error(small_fqhc):
    css, _ = small_fqhc
    trials = run_trials(css, 3, trials=2, seed=0, radius=1)
    assert len(trials) == 2
    assert list(trials.columns) == ["seed", "weight", "list_size", "recovered"]


def test_run_trials(small_fqhc):
    css, _ = small_fqhc
    trials = run_trials(css, [0, 1], trials=3, seed=100)
    assert list(trials["seed"]) == list(range(100, 106))
    assert list(trials["weight"]) == [0, 0, 0, 1, 1, 1]
    assert trials["recovered"].all()
