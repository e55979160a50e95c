import io
import json
import random
import statistics
from dataclasses import replace

import pytest

from softaug.classifier import TrainConfig
from softaug.errors import DomainError
from softaug.policy import PolicySpace, sample_policy, validate_policy
from softaug.search import SearchConfig, TrialRecord, objective, optimize, suggest
from softaug.textops import load_bundled_lexicon

LEX = load_bundled_lexicon()
SPACE = PolicySpace()

TRAIN = [
    ("the movie was great and wonderful", 1),
    ("an excellent touching story with fine acting", 1),
    ("a delightful clever film", 1),
    ("truly amazing and enjoyable", 1),
    ("a terrible boring film", 0),
    ("the plot felt weak and predictable", 0),
    ("awful dialogue and a dull ending", 0),
    ("disappointing messy and bland", 0),
]
VAL = [
    ("a wonderful enjoyable movie", 1),
    ("great fine acting", 1),
    ("boring terrible plot", 0),
    ("weak bland dialogue", 0),
]

FAST = SearchConfig(
    n_trials=3, n_startup=2, runs_per_trial=1,
    train=TrainConfig(max_epochs=2, patience=2),
)


def synthetic_record(policy, score, index):
    return TrialRecord(policy, score, (score,), index, index)


def synthetic_history(space, n, score_fn, seed=0):
    rng = random.Random(seed)
    history = []
    for i in range(n):
        p = sample_policy(space, rng)
        history.append(synthetic_record(p, score_fn(p), i))
    return history


class TestSuggest:
    def test_startup_returns_valid_prior_draw(self):
        cfg = SearchConfig()
        p = suggest([], SPACE, cfg, random.Random(0))
        assert validate_policy(p) == []

    def test_tpe_branch_returns_valid_policy(self):
        history = synthetic_history(SPACE, 30, lambda p: -((p.p_aug - 0.7) ** 2))
        cfg = SearchConfig()
        for seed in range(20):
            p = suggest(history, SPACE, cfg, random.Random(seed))
            assert validate_policy(p) == []

    def test_smoothing_clamp_in_both_branches(self):
        cfg = SearchConfig(fix_smoothing_to_zero=True)
        p = suggest([], SPACE, cfg, random.Random(0))
        assert p.eps_ori == 0.0 and p.eps_aug == 0.0
        history = synthetic_history(SPACE, 30, lambda p: -((p.p_aug - 0.7) ** 2))
        p = suggest(history, SPACE, cfg, random.Random(1))
        assert p.eps_ori == 0.0 and p.eps_aug == 0.0

    def test_concentrates_near_known_optimum(self):
        # 1-D effective objective: only p_aug matters, optimum at 0.7
        history = synthetic_history(SPACE, 30, lambda p: -((p.p_aug - 0.7) ** 2))
        cfg = SearchConfig()
        rng = random.Random(42)
        suggested = [suggest(history, SPACE, cfg, rng).p_aug for _ in range(200)]
        assert abs(statistics.median(suggested) - 0.7) < 0.15

    def test_config_invariants(self):
        with pytest.raises(DomainError):
            SearchConfig(n_trials=5, n_startup=5)
        with pytest.raises(DomainError):
            SearchConfig(gamma=0.0)
        with pytest.raises(DomainError):
            SearchConfig(runs_per_trial=0)


class TestObjective:
    def test_run_scores_aggregation(self):
        policy = sample_policy(SPACE, random.Random(0))
        cfg = replace(FAST, runs_per_trial=3)
        run_scores, score = objective(policy, TRAIN, VAL, 2, LEX, cfg, random.Random(1))
        assert len(run_scores) == 3
        assert score == pytest.approx(sum(run_scores) / 3)

    def test_deterministic_under_seed(self):
        policy = sample_policy(SPACE, random.Random(2))
        a = objective(policy, TRAIN, VAL, 2, LEX, FAST, random.Random(3))
        b = objective(policy, TRAIN, VAL, 2, LEX, FAST, random.Random(3))
        assert a == b

    def test_invalid_policy_rejected(self):
        bad = replace(sample_policy(SPACE, random.Random(0)), n_aug=0)
        with pytest.raises(DomainError):
            objective(bad, TRAIN, VAL, 2, LEX, FAST, random.Random(0))


class TestOptimize:
    def test_single_trial_budget(self):
        cfg = replace(FAST, n_trials=1, n_startup=1)
        best, log = optimize(TRAIN, VAL, 2, SPACE, LEX, cfg)
        assert len(log) == 1
        assert best == log[0].policy

    def test_trial_log_bookkeeping(self):
        best, log = optimize(TRAIN, VAL, 2, SPACE, LEX, FAST)
        assert [r.trial_index for r in log] == list(range(FAST.n_trials))
        assert max(r.score for r in log) == next(
            r.score for r in log if r.policy == best
        )
        assert all(validate_policy(r.policy) == [] for r in log)

    def test_reproducible_trial_log(self):
        _, log1 = optimize(TRAIN, VAL, 2, SPACE, LEX, FAST)
        _, log2 = optimize(TRAIN, VAL, 2, SPACE, LEX, FAST)
        assert log1 == log2

    def test_trial_log_stream_and_round_trip(self):
        stream = io.StringIO()
        _, log = optimize(TRAIN, VAL, 2, SPACE, LEX, FAST, trial_log=stream)
        lines = stream.getvalue().strip().splitlines()
        assert len(lines) == FAST.n_trials
        parsed = [TrialRecord.from_dict(json.loads(line)) for line in lines]
        assert parsed == log

    def test_no_label_smoothing_ablation(self):
        cfg = replace(FAST, fix_smoothing_to_zero=True)
        _, log = optimize(TRAIN, VAL, 2, SPACE, LEX, cfg)
        assert all(r.policy.eps_ori == 0.0 and r.policy.eps_aug == 0.0 for r in log)


def synthetic_score(p):
    return -((p.p_aug - 0.6) ** 2) - ((p.eps_aug - 0.2) ** 2)


def run_tpe(cfg, seed):
    rng = random.Random(seed)
    history = []
    for t in range(cfg.n_trials):
        policy = suggest(history, SPACE, cfg, rng)
        history.append(synthetic_record(policy, synthetic_score(policy), t))
    return max(r.score for r in history)


def run_random(n_trials, seed):
    rng = random.Random(seed)
    return max(synthetic_score(sample_policy(SPACE, rng)) for _ in range(n_trials))


def test_tpe_beats_random_search_paired():
    # paired-comparison oracle on a known 2-term quadratic objective
    cfg = SearchConfig(n_trials=20, n_startup=5)
    wins = sum(
        1 for rep in range(20) if run_tpe(cfg, 1000 + rep) >= run_random(20, 2000 + rep)
    )
    assert wins >= 13
