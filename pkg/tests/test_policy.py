import numpy as np
import pytest
from hypothesis import given, strategies as st

from tttsvd.evaluation import EvalTensor, zeros
from tttsvd.game import GameState, IllegalMoveError, apply_move, encode
from tttsvd.policy import (
    MoveDistribution,
    PolicyConfig,
    make_rng,
    move_distribution,
    sample_move,
    softmax,
)

S6 = GameState.from_marks(circles=(1, 6, 8), crosses=(2, 5, 7))
# Seven marks, no line: cross to move, cells 7 and 9 empty.
TWO_LEFT = GameState.from_marks(circles=(1, 3, 6, 8), crosses=(2, 4, 5))

scores = st.lists(st.floats(-1, 1, allow_nan=False), min_size=1, max_size=9)


def tensor_with(entries):
    values = np.zeros(3**9)
    for code, v in entries.items():
        values[code] = v
    return EvalTensor(values, "svd", 1)


def test_w_zero_is_uniform(exact):
    dist = move_distribution(exact, GameState(), PolicyConfig(w=0))
    assert dist.moves == tuple(range(1, 10))
    np.testing.assert_allclose(dist.probs, np.full(9, 1 / 9), atol=1e-15)


def test_equal_scores_split_evenly():
    children = [encode(apply_move(TWO_LEFT, c)) for c in (7, 9)]
    t = tensor_with({c: 1.0 for c in children})
    for w in (0.0, 1.0, 10.0, 1e3):
        dist = move_distribution(t, TWO_LEFT, PolicyConfig(w=w, side="second"))
        assert dist.moves == (7, 9)
        np.testing.assert_allclose(dist.probs, [0.5, 0.5], atol=1e-15)


def test_worked_example_distribution(exact):
    dist = move_distribution(exact, S6, PolicyConfig(w=10))
    assert dist.moves == (3, 4, 9)
    expected = np.exp([5.0, -5.0, 0.0])
    expected /= expected.sum()
    np.testing.assert_allclose(dist.probs, expected, rtol=1e-12)
    assert dist.probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_second_player_negates(exact):
    first = move_distribution(exact, S6, PolicyConfig(w=10, side="first"))
    second = move_distribution(exact, S6, PolicyConfig(w=10, side="second"))
    np.testing.assert_allclose(first.probs, softmax([0.5, -0.5, 0.0], 10))
    np.testing.assert_allclose(second.probs, softmax([-0.5, 0.5, 0.0], 10))


def test_terminal_state_rejected(exact):
    with pytest.raises(IllegalMoveError):
        move_distribution(exact, GameState.from_marks(circles=(1, 2, 3), crosses=(4, 5)), PolicyConfig())


def test_config_validation():
    with pytest.raises(ValueError):
        PolicyConfig(w=-1)
    with pytest.raises(ValueError):
        PolicyConfig(w=float("inf"))
    with pytest.raises(ValueError):
        PolicyConfig(side="both")


@given(scores, st.floats(-5, 5), st.floats(0, 50))
def test_softmax_shift_invariant(alpha, shift, w):
    a = softmax(alpha, w)
    b = softmax(np.asarray(alpha) + shift, w)
    np.testing.assert_allclose(a, b, atol=1e-12)
    assert a.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(a > 0)


@given(st.lists(st.integers(-100, 100), min_size=2, max_size=9, unique=True),
       st.floats(0.1, 20), st.floats(0.1, 20))
def test_argmax_invariant_under_w_rescaling(ints, w1, w2):
    alpha = np.array(ints) / 100
    assert np.argmax(softmax(alpha, w1)) == np.argmax(softmax(alpha, w2))


def test_softmax_no_overflow_at_large_w():
    p = softmax([1.0, -1.0, 0.99], 1e6)
    assert np.all(np.isfinite(p))
    assert p[0] == pytest.approx(1.0)


def test_point_mass_sampling():
    dist = MoveDistribution((3, 4, 9), np.array([0.0, 1.0, 0.0]))
    rng = make_rng(1)
    assert {sample_move(dist, rng) for _ in range(200)} == {4}


def test_sampling_reproducible():
    dist = MoveDistribution((3, 4, 9), np.full(3, 1 / 3))
    r1, r2 = make_rng(5), PolicyConfig(rng_seed=5).rng()
    seq1 = [sample_move(dist, r1) for _ in range(50)]
    seq2 = [sample_move(dist, r2) for _ in range(50)]
    assert seq1 == seq2
    assert set(seq1) == {3, 4, 9}


def test_empirical_frequencies_within_three_sigma(exact):
    dist = move_distribution(exact, S6, PolicyConfig(w=1.0))
    rng = make_rng(2024)
    n = 100_000
    draws = np.array([sample_move(dist, rng) for _ in range(n)])
    for move, p in zip(dist.moves, dist.probs):
        count = np.sum(draws == move)
        assert abs(count - n * p) <= 3 * np.sqrt(n * p * (1 - p))


def test_large_w_concentrates_on_best_child():
    children = [encode(apply_move(TWO_LEFT, c)) for c in (7, 9)]
    # cross to move: score = -value, so the lower value wins
    t = tensor_with({children[0]: 0.30, children[1]: 0.315})
    dist = move_distribution(t, TWO_LEFT, PolicyConfig(w=1e3, side="second"))
    rng = make_rng(9)
    picks = [sample_move(dist, rng) for _ in range(10_000)]
    assert np.mean(np.array(picks) == 7) > 0.999


def test_zero_tensor_gives_uniform_play():
    dist = move_distribution(zeros("svd", 0), S6, PolicyConfig(w=10, side="second"))
    np.testing.assert_allclose(dist.probs, np.full(3, 1 / 3))
