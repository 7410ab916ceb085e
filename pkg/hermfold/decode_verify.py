import abc
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from hermfold.config import DEFAULT_DISTANCE_BUDGET, DEFAULT_ENUMERATION_BUDGET
from hermfold.errors import BudgetExceededError
from hermfold.linear_code import codeword_count, iter_codewords, message_digits

log = logging.getLogger(__name__)

# cap on booleans materialised at once by the exhaustive scans
COMPARISON_CHUNK = 2**22


@dataclass(frozen=True, eq=False)
class FoldedWord:
    """N blocks of m element codes, held as an (N, m) integer array."""

    blocks: np.ndarray

    @classmethod
    def from_flat(cls, values, m):
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim != 1 or arr.size % m:
            raise ValueError(f"cannot cut a word of length {arr.size} into blocks of {m}")
        return cls(arr.reshape(-1, m))

    @property
    def N(self):
        return self.blocks.shape[0]

    @property
    def m(self):
        return self.blocks.shape[1]

    def flat(self):
        return self.blocks.reshape(-1)

    def __eq__(self, other):
        if not isinstance(other, FoldedWord):
            return NotImplemented
        return self.blocks.shape == other.blocks.shape and np.array_equal(self.blocks, other.blocks)

    __hash__ = None


def folded_hamming_distance(a, b):
    """Number of blocks in which the two words differ."""
    if a.blocks.shape != b.blocks.shape:
        raise ValueError(f"shape mismatch: {a.blocks.shape} and {b.blocks.shape}")
    return int(np.count_nonzero(np.any(a.blocks != b.blocks, axis=1)))


def _all_codewords(code, budget):
    return np.vstack([np.asarray(chunk, dtype=np.int64) for chunk in iter_codewords(code, budget)])


def _block_distances(received, codewords, m):
    """(len(received), len(codewords)) matrix of folded distances."""
    # (received, codeword, coordinate) mismatches
    diff = received[:, np.newaxis, :] != codewords[np.newaxis, :, :]
    # a block counts once if any of its m symbols differ
    return diff.reshape(len(received), len(codewords), -1, m).any(axis=3).sum(axis=2)


class ListDecoder(abc.ABC):
    """Returns every codeword of a folded code within a block radius of a word."""

    @abc.abstractmethod
    def decode(self, fc, y, radius):
        """List of FoldedWord codewords c with folded_hamming_distance(c, y) <= radius."""


class ExhaustiveListDecoder(ListDecoder):
    """Reference decoder that walks the whole message space."""

    def __init__(self, budget=DEFAULT_DISTANCE_BUDGET):
        self.budget = budget

    def decode(self, fc, y, radius):
        if (y.N, y.m) != (fc.N, fc.m):
            raise ValueError(f"word has shape {(y.N, y.m)}, code expects {(fc.N, fc.m)}")
        target = y.flat()[np.newaxis, :]
        found = []
        for chunk in iter_codewords(fc.code, self.budget):
            words = np.asarray(chunk, dtype=np.int64)
            close = _block_distances(target, words, fc.m)[0] <= radius
            found.extend(FoldedWord.from_flat(word, fc.m) for word in words[close])
        return found


def list_decode_exhaustive(fc, y, radius, budget=DEFAULT_DISTANCE_BUDGET):
    return ExhaustiveListDecoder(budget).decode(fc, y, radius)


def low_weight_pattern_count(N, m, order, radius):
    nonzero_blocks = order**m - 1
    return sum(math.comb(N, w) * nonzero_blocks**w for w in range(min(radius, N) + 1))


def low_weight_patterns(n, m, field, radius, budget=DEFAULT_ENUMERATION_BUDGET):
    """Every vector of length n with at most `radius` nonzero m-blocks, lightest first.

    Returns:
        Field array of shape (count, n)
    """
    if n % m:
        raise ValueError(f"block size {m} does not divide n={n}")
    N, order = n // m, field.order
    total = low_weight_pattern_count(N, m, order, radius)
    if total > budget:
        raise BudgetExceededError(total, budget, what=f"error patterns of block weight <= {radius}")

    nonzero_blocks = order**m - 1
    # weight 0: the zero pattern
    parts = [np.zeros((1, n), dtype=np.int64)]
    for weight in range(1, min(radius, N) + 1):
        # block values 1..order^m-1 for each chosen block, spelled out as m digits
        values = message_digits(0, nonzero_blocks**weight, weight, nonzero_blocks) + 1
        digits = (values[..., np.newaxis] // order ** np.arange(m)) % order
        for support in itertools.combinations(range(N), weight):
            patterns = np.zeros((len(values), N, m), dtype=np.int64)
            # every nonzero assignment on this support, zeros elsewhere
            patterns[:, list(support), :] = digits
            parts.append(patterns.reshape(len(values), n))
    return field.gf(np.vstack(parts))


def syndrome(code, e):
    """H e with H the generator of the dual; zero exactly on codewords."""
    vector = code.field.array(e)
    if vector.shape[-1] != code.n:
        raise ValueError(f"length mismatch: vector has {vector.shape[-1]} coordinates, code has {code.n}")
    return vector @ code.parity_check.T


def _max_group_size(keys):
    if keys.shape[1] == 0:
        return keys.shape[0]
    _, counts = np.unique(np.asarray(keys), axis=0, return_counts=True)
    return int(counts.max())


@dataclass(frozen=True)
class ListSizeReport:
    radius: int
    max_list_size: int
    mode: str
    certified: bool

    def __str__(self):
        label = "L" if self.certified else "lower bound on L"
        return f"radius {self.radius}: {label} = {self.max_list_size} ({self.mode})"


def verify_list_decodable(fc, radius, mode="exhaustive", trials=100, seed=0, budget=DEFAULT_DISTANCE_BUDGET):
    """Largest list any received word produces at the given block radius.

    Args:
        fc: FoldedCode
        radius: Absolute radius in blocks
        mode: "exhaustive" scans every received word, "coset" counts light
            vectors per syndrome (same value), "sampled" only gives a lower bound
        trials: Received words drawn in sampled mode
        seed: Seed for sampled mode
        budget: Cap on comparisons (exhaustive) or enumerated vectors

    Returns:
        ListSizeReport
    """
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    order, n = fc.code.field.order, fc.code.n

    if mode == "exhaustive":
        received_total = order**n
        cost = received_total * codeword_count(fc.code)
        if cost > budget:
            raise BudgetExceededError(cost, budget, what="exhaustive list-size scan")
        codewords = _all_codewords(fc.code, budget)
        step = max(1, COMPARISON_CHUNK // (len(codewords) * n))
        best = 0
        for start in range(0, received_total, step):
            received = message_digits(start, min(start + step, received_total), n, order)
            counts = (_block_distances(received, codewords, fc.m) <= radius).sum(axis=1)
            best = max(best, int(counts.max()))
        report = ListSizeReport(radius, best, mode, True)

    elif mode == "coset":
        # codewords within radius of y <-> light e with H e = H y
        patterns = low_weight_patterns(n, fc.m, fc.code.field, radius, budget)
        report = ListSizeReport(radius, _max_group_size(patterns @ fc.code.parity_check.T), mode, True)

    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        gf = fc.code.field.gf
        decoder = ExhaustiveListDecoder(budget)
        best = 0
        weight = min(radius, fc.N)
        for _ in range(trials):
            message = gf(rng.integers(0, order, size=fc.code.k))
            error = np.zeros((fc.N, fc.m), dtype=np.int64)
            support = rng.choice(fc.N, size=weight, replace=False)
            error[support] = rng.integers(0, order, size=(weight, fc.m))
            y = np.asarray(message @ fc.code.generator + gf(error.reshape(-1)), dtype=np.int64)
            best = max(best, len(decoder.decode(fc, FoldedWord.from_flat(y, fc.m), radius)))
        report = ListSizeReport(radius, best, mode, False)

    else:
        raise ValueError(f"unknown mode '{mode}'")

    log.info("%s: %s", fc, report)
    return report


def list_size_profile(fc, radii, mode="exhaustive", **kwargs):
    """DataFrame with one verify_list_decodable row per radius."""
    records = []
    for radius in radii:
        report = verify_list_decodable(fc, radius, mode=mode, **kwargs)
        records.append(
            {
                "radius": report.radius,
                "max_list_size": report.max_list_size,
                "mode": report.mode,
                "certified": report.certified,
            }
        )
    return pd.DataFrame(records)


def is_monotone(profile):
    return bool(profile.sort_values("radius")["max_list_size"].is_monotonic_increasing)


@dataclass(frozen=True, eq=False)
class PauliCandidate:
    """X-part and Z-part error vectors (element codes) of one logical class."""

    x: np.ndarray
    z: np.ndarray
    weight: int
    representative: bool = True


def combined_block_weight(x, z, m):
    support = (np.asarray(x) != 0) | (np.asarray(z) != 0)
    return int(np.count_nonzero(support.reshape(-1, m).any(axis=1)))


def _class_representatives(patterns, check, target, classes):
    """Lightest pattern of each class (kernel of `classes`) among those with check-syndrome `target`."""
    syndromes = np.asarray(patterns @ check.T)
    matching = patterns[np.all(syndromes == np.asarray(target), axis=1)]
    if len(matching) == 0:
        return matching
    if classes.shape[0] == 0:
        return matching[:1]
    _, first = np.unique(np.asarray(matching @ classes.T), axis=0, return_index=True)
    return matching[np.sort(first)]


def _check_syndrome(name, s, rows):
    if np.asarray(s).shape != (rows,):
        raise ValueError(f"{name} has shape {np.asarray(s).shape}, expected ({rows},)")


def quantum_list_decode(css, sx, sz, radius, budget=DEFAULT_ENUMERATION_BUDGET, patterns=None):
    """All logically distinct Pauli errors of folded weight <= radius matching both syndromes.

    The X list holds one vector per class modulo C2^perp with H1 e = sX,
    the Z list one per class modulo C1^perp with H2 e = sZ; the output is
    their full product. An unreachable syndrome gives an empty list.
    """
    c1, c2 = css.c1.code, css.c2.code
    h1, h2 = c1.parity_check, c2.parity_check
    _check_syndrome("sX", sx, h1.shape[0])
    _check_syndrome("sZ", sz, h2.shape[0])
    if patterns is None:
        patterns = low_weight_patterns(c1.n, css.m, c1.field, radius, budget)

    xs = _class_representatives(patterns, h1, sx, c2.generator)
    zs = _class_representatives(patterns, h2, sz, c1.generator)
    candidates = []
    for x, z in itertools.product(xs, zs):
        x, z = np.asarray(x, dtype=np.int64), np.asarray(z, dtype=np.int64)
        candidates.append(PauliCandidate(x=x, z=z, weight=combined_block_weight(x, z, css.m)))
    log.debug("quantum list: %d X classes x %d Z classes -> %d candidates", len(xs), len(zs), len(candidates))
    return candidates


def same_logical_class(css, a, b):
    """X-parts differ by an element of C2^perp and Z-parts by one of C1^perp."""
    gf = css.c1.code.field.gf
    dx = gf(np.asarray(a.x, dtype=np.int64)) - gf(np.asarray(b.x, dtype=np.int64))
    dz = gf(np.asarray(a.z, dtype=np.int64)) - gf(np.asarray(b.z, dtype=np.int64))
    return not np.any(np.asarray(css.c2.code.generator @ dx) != 0) and not np.any(np.asarray(css.c1.code.generator @ dz) != 0)


def _class_counts(patterns, check, classes):
    """Number of distinct classes per reachable syndrome, as a DataFrame."""
    syndromes = np.asarray(patterns @ check.T)
    # equal keys: the difference is orthogonal to `classes`, so both patterns share a class
    keys = np.asarray(patterns @ classes.T)
    table = np.hstack([syndromes, keys])
    # one row per (syndrome, class) pair; an empty table keeps a single row
    distinct = np.unique(table, axis=0) if table.shape[1] else table[:1]
    # syndrome bytes as the group key
    frame = pd.DataFrame({"syndrome": [row[: syndromes.shape[1]].tobytes() for row in distinct]})
    return frame.groupby("syndrome").size().rename("classes").reset_index()


def quantum_list_profile(css, radius, budget=DEFAULT_ENUMERATION_BUDGET):
    """Quantum list size for every pair of reachable syndromes.

    Returns:
        DataFrame with x_classes, z_classes and list_size per (sX, sZ) pair
    """
    c1, c2 = css.c1.code, css.c2.code
    patterns = low_weight_patterns(c1.n, css.m, c1.field, radius, budget)
    x_counts = _class_counts(patterns, c1.parity_check, c2.generator).add_prefix("x_")
    z_counts = _class_counts(patterns, c2.parity_check, c1.generator).add_prefix("z_")
    pairs = x_counts.merge(z_counts, how="cross")
    pairs["list_size"] = pairs["x_classes"] * pairs["z_classes"]
    return pairs


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    weight: int
    list_size: int
    recovered: bool

    def record(self):
        return f"{self.seed} {self.weight} {self.list_size} {int(self.recovered)}"


def sample_pauli_error(n, m, order, weight, rng):
    """Random (x, z) whose combined support covers exactly `weight` blocks."""
    N = n // m
    x = np.zeros((N, m), dtype=np.int64)
    z = np.zeros((N, m), dtype=np.int64)
    support = rng.choice(N, size=weight, replace=False)
    for block in support:
        # nonzero joint block drawn uniformly from order^(2m) - 1 values
        value = int(rng.integers(1, order ** (2 * m)))
        digits = (value // order ** np.arange(2 * m)) % order
        x[block], z[block] = digits[:m], digits[m:]
    return x.reshape(-1), z.reshape(-1)


def pauli_channel_trial(css, weight, seed, radius=None, budget=DEFAULT_ENUMERATION_BUDGET):
    """Plant a random Pauli error of the given folded weight and try to recover its class."""
    c1, c2 = css.c1.code, css.c2.code
    if not 0 <= weight <= css.N:
        raise ValueError(f"weight {weight} outside [0, {css.N}]")
    radius = weight if radius is None else radius
    rng = np.random.default_rng(seed)
    x, z = sample_pauli_error(c1.n, css.m, c1.field.order, weight, rng)

    sx = np.asarray(syndrome(c1, x), dtype=np.int64)
    sz = np.asarray(syndrome(c2, z), dtype=np.int64)
    candidates = quantum_list_decode(css, sx, sz, radius, budget)
    planted = PauliCandidate(x=x, z=z, weight=weight)
    recovered = any(same_logical_class(css, planted, candidate) for candidate in candidates)
    return TrialRecord(seed=seed, weight=weight, list_size=len(candidates), recovered=recovered)


def run_trials(css, weights, trials, seed=0, radius=None, budget=DEFAULT_ENUMERATION_BUDGET):
    """One row per (weight, trial); seeds run consecutively from `seed`."""
    if isinstance(weights, int):
        weights = [weights]
    records = []
    offset = 0
    for weight in weights:
        for _ in range(trials):
            trial = pauli_channel_trial(css, weight, seed + offset, radius=radius, budget=budget)
            records.append(vars(trial))
            offset += 1
    return pd.DataFrame(records, columns=["seed", "weight", "list_size", "recovered"])


def product_bound_check(css, radius, budget=DEFAULT_ENUMERATION_BUDGET):
    """Worst quantum list against the product of the two classical list sizes.

    Returns:
        Dictionary with the quantum maximum, L1, L2 and whether the product bound holds
    """
    profile = quantum_list_profile(css, radius, budget)
    l1 = verify_list_decodable(css.c1, radius, mode="coset", budget=budget).max_list_size
    l2 = verify_list_decodable(css.c2, radius, mode="coset", budget=budget).max_list_size
    worst = int(profile["list_size"].max())
    return {
        "radius": radius,
        "quantum_max": worst,
        "L1": l1,
        "L2": l2,
        "holds": worst <= l1 * l2 <= max(l1, l2) ** 2,
    }


def plant_and_recover_all(css, weight, budget=DEFAULT_ENUMERATION_BUDGET):
    """Decode every Pauli error of folded weight <= `weight` at radius `weight`.

    Returns:
        Tuple (errors tried, errors whose class was missed, largest list seen)
    """
    c1, c2 = css.c1.code, css.c2.code
    patterns = low_weight_patterns(c1.n, css.m, c1.field, weight, budget)
    pairs = len(patterns) ** 2
    if pairs > budget:
        raise BudgetExceededError(pairs, budget, what="planted Pauli errors")
    tried = missed = largest = 0
    for x, z in itertools.product(patterns, patterns):
        planted = PauliCandidate(x=np.asarray(x, dtype=np.int64), z=np.asarray(z, dtype=np.int64), weight=0)
        if combined_block_weight(planted.x, planted.z, css.m) > weight:
            continue
        sx = np.asarray(x @ c1.parity_check.T, dtype=np.int64)
        sz = np.asarray(z @ c2.parity_check.T, dtype=np.int64)
        candidates = quantum_list_decode(css, sx, sz, weight, patterns=patterns)
        tried += 1
        largest = max(largest, len(candidates))
        if not any(same_logical_class(css, planted, c) for c in candidates):
            missed += 1
    return tried, missed, largest
