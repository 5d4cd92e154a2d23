import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_positions
from naive_network import naive_forward
from zhengine.encoding import N_ACTIONS, PolicyTarget, encode_position, legal_move_mask
from zhengine.errors import DomainError, FormatError, ShapeMismatch
from zhengine.nn import (
    MaterialEvaluator, NetworkConfig, NetworkEvaluator, NetworkWeights, UniformEvaluator,
    forward, forward_batch, layer_shapes, load_weights, mse, poisson_nll, save_weights,
)
from zhengine.nn.network import residual_block
from zhengine.rules import initial_position, parse_fen

TINY = NetworkConfig(blocks=1, channels=4, policy_head_planes=2, value_head_planes=2)


def nested(weights):
    return {k: v.astype(np.float64).tolist() for k, v in weights.tensors.items()}


def test_default_config():
    assert NetworkConfig().as_tuple() == (12, 256, 16, 8)


@pytest.mark.parametrize("kwargs", [{"blocks": 0}, {"channels": 0}, {"policy_head_planes": -1},
                                    {"value_head_planes": 0}, {"blocks": 1.5}])
def test_config_rejects_nonpositive(kwargs):
    with pytest.raises(ValueError):
        NetworkConfig(**kwargs)


def test_layer_order_starts_and_ends_as_documented():
    names = [n for n, _ in layer_shapes(TINY)]
    assert names[0] == "input.conv.weight"
    assert names[-2:] == ["value.fc.weight", "value.fc.bias"]
    assert dict(layer_shapes(TINY))["policy.fc.weight"] == (N_ACTIONS, 2 * 64)


@pytest.mark.parametrize("seed", range(3))
def test_forward_matches_naive_oracle(seed):
    weights = NetworkWeights.random(TINY, seed=seed, scale=0.3)
    for pos in random_positions(3, seed=seed, max_plies=30)[1:]:
        t = encode_position(pos)
        fast = forward(TINY, weights, t)
        policy, value = naive_forward(TINY.blocks, nested(weights), t.astype(float).tolist())
        assert np.max(np.abs(fast.policy - np.array(policy))) < 1e-5
        assert abs(fast.value - value) < 1e-5


def test_zero_convs_give_softmax_of_bias():
    weights = NetworkWeights.zeros(TINY)
    rng = np.random.default_rng(1)
    pb = rng.normal(size=N_ACTIONS).astype(np.float32)
    weights.tensors["policy.fc.bias"] = pb
    weights.tensors["value.fc.bias"] = np.array([0.7], dtype=np.float32)
    out = forward(TINY, weights, encode_position(initial_position()))
    expected = np.exp(pb - pb.max())
    expected /= expected.sum()
    assert np.allclose(out.policy, expected, atol=1e-12)
    assert out.value == pytest.approx((math.tanh(0.7) + 1) / 2, abs=1e-7)


def test_all_zero_weights_are_input_independent():
    weights = NetworkWeights.zeros(TINY)
    outs = [forward(TINY, weights, encode_position(p)) for p in random_positions(5, seed=3)]
    for out in outs:
        assert np.allclose(out.policy, 1 / N_ACTIONS)
        assert out.value == 0.5


def test_residual_block_identity_when_convs_zeroed():
    config = NetworkConfig(blocks=1, channels=3, policy_head_planes=1, value_head_planes=1)
    weights = NetworkWeights.zeros(config)
    for j in (1, 2):
        weights.tensors[f"blocks.0.bn{j}.weight"] = np.ones(3, np.float32)
    x = np.random.default_rng(0).normal(size=(1, 3, 8, 8))
    assert np.allclose(residual_block(x, weights, 0), np.maximum(x, 0))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_outputs_are_distributions(seed):
    weights = NetworkWeights.random(TINY, seed=seed % 97, scale=1.0)
    pos = random_positions(1, seed=seed)[0]
    out = forward(TINY, weights, encode_position(pos))
    assert np.all(out.policy >= 0)
    assert abs(out.policy.sum() - 1) < 1e-6
    assert 0 <= out.value <= 1


def test_forward_is_deterministic_and_batch_consistent():
    weights = NetworkWeights.random(TINY, seed=5)
    tensors = np.stack([encode_position(p) for p in random_positions(4, seed=2)])
    p1, v1 = forward_batch(TINY, weights, tensors)
    p2, v2 = forward_batch(TINY, weights, tensors)
    assert np.array_equal(p1, p2) and np.array_equal(v1, v2)
    single = forward(TINY, weights, tensors[2])
    assert np.allclose(single.policy, p1[2]) and single.value == pytest.approx(v1[2])


def test_wrong_shapes_raise():
    weights = NetworkWeights.random(TINY)
    weights.tensors["input.conv.weight"] = np.zeros((4, 15, 1, 1), np.float32)
    with pytest.raises(ShapeMismatch):
        forward(TINY, weights, encode_position(initial_position()))
    bad_var = NetworkWeights.random(TINY)
    bad_var.tensors["input.bn.running_var"][0] = 0.0
    with pytest.raises(ShapeMismatch):
        bad_var.validate(TINY)


# -- weights file -------------------------------------------------------------

def test_weights_round_trip_bitwise(tmp_path):
    weights = NetworkWeights.random(TINY, seed=11)
    path = tmp_path / "w.zhnn"
    save_weights(path, TINY, weights)
    config, loaded = load_weights(path)
    assert config == TINY
    for name, _ in layer_shapes(TINY):
        assert loaded[name].tobytes() == weights[name].astype("<f4").tobytes()
    save_weights(tmp_path / "again.zhnn", config, loaded)
    assert (tmp_path / "again.zhnn").read_bytes() == path.read_bytes()


@pytest.mark.parametrize("cut", [0, 3, 10, 30, 1000, -1])
def test_truncated_weights_raise(tmp_path, cut):
    path = tmp_path / "w.zhnn"
    save_weights(path, TINY, NetworkWeights.random(TINY))
    data = path.read_bytes()
    path.write_bytes(data[:cut] if cut >= 0 else data[:-1])
    with pytest.raises(FormatError):
        load_weights(path)


@pytest.mark.parametrize("mutate", ["magic", "version", "blocks0", "trailing"])
def test_corrupt_weights_raise(tmp_path, mutate):
    path = tmp_path / "w.zhnn"
    save_weights(path, TINY, NetworkWeights.random(TINY))
    data = bytearray(path.read_bytes())
    if mutate == "magic":
        data[:4] = b"NOPE"
    elif mutate == "version":
        data[4:8] = (2).to_bytes(4, "little")
    elif mutate == "blocks0":
        data[8:12] = (0).to_bytes(4, "little")
    else:
        data += b"\0"
    path.write_bytes(bytes(data))
    with pytest.raises(FormatError):
        load_weights(path)


def test_shape_mismatch_on_load(tmp_path):
    path = tmp_path / "w.zhnn"
    save_weights(path, TINY, NetworkWeights.random(TINY))
    data = bytearray(path.read_bytes())
    # first layer: rank at 24, dims at 28..44; swap the kernel dims (3, 3) for (1, 9)
    data[36:44] = (1).to_bytes(4, "little") + (9).to_bytes(4, "little")
    path.write_bytes(bytes(data))
    with pytest.raises(ShapeMismatch):
        load_weights(path)


# -- evaluators -----------------------------------------------------------------

def test_uniform_evaluator():
    pos = initial_position()
    out = UniformEvaluator().evaluate(pos)
    mask = legal_move_mask(pos)
    assert np.allclose(out.policy[mask], 1 / 20) and out.policy[~mask].sum() == 0
    assert out.value == 0.5


def test_material_evaluator_prefers_material():
    ahead = parse_fen("4k3/8/8/8/8/8/8/3QK3[] w - - 0 1")
    behind = parse_fen("4k3/8/8/8/8/8/8/3QK3[] b - - 0 1")
    ev = MaterialEvaluator()
    assert ev.evaluate(ahead).value > 0.5 > ev.evaluate(behind).value
    pocket = parse_fen("4k3/8/8/8/8/8/8/4K3[Q] w - - 0 1")
    assert ev.evaluate(pocket).value == pytest.approx(ev.evaluate(ahead).value)


def test_network_evaluator_from_file(tmp_path):
    path = tmp_path / "w.zhnn"
    weights = NetworkWeights.random(TINY, seed=4)
    save_weights(path, TINY, weights)
    ev = NetworkEvaluator.from_file(path)
    pos = initial_position()
    out = ev.evaluate(pos)
    ref = forward(TINY, weights, encode_position(pos))
    assert np.allclose(out.policy, ref.policy, atol=1e-6)


# -- losses -----------------------------------------------------------------------

def test_poisson_nll_perfect_prediction_is_analytic_minimum():
    target = PolicyTarget(17, 1.0)
    pred = np.full(N_ACTIONS, 1e-9)
    pred[17] = 1.0
    expected = ((N_ACTIONS - 1) * 1e-9 + 1.0) / N_ACTIONS
    assert poisson_nll(pred, target) == pytest.approx(expected, rel=1e-12)
    # per entry, pred - t ln pred is minimised at pred = t
    worse = pred.copy()
    worse[17] = 0.8
    assert poisson_nll(worse, target) > poisson_nll(pred, target)


def test_poisson_nll_uniform_prediction():
    target = PolicyTarget(3, 1.0)
    pred = np.full(N_ACTIONS, 1 / N_ACTIONS)
    expected = (1.0 - math.log(1 / N_ACTIONS)) / N_ACTIONS
    assert poisson_nll(pred, target) == pytest.approx(expected, rel=1e-12)


def test_poisson_nll_linear_in_target_scale():
    pred = np.random.default_rng(0).uniform(0.01, 1, N_ACTIONS)
    base = poisson_nll(pred, PolicyTarget(5, 0.0 + 1e-300))
    a = poisson_nll(pred, PolicyTarget(5, 0.5)) - base
    b = poisson_nll(pred, PolicyTarget(5, 1.0)) - base
    assert b == pytest.approx(2 * a, rel=1e-9)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_poisson_nll_rejects_nonpositive(bad):
    pred = np.full(N_ACTIONS, 0.1)
    pred[0] = bad
    with pytest.raises(DomainError):
        poisson_nll(pred, PolicyTarget(1, 1.0))


@pytest.mark.parametrize("pred,target,expected", [(0.5, 0.5, 0.0), (1, 0, 1.0), (0.75, 0.5, 0.0625)])
def test_mse(pred, target, expected):
    assert mse(pred, target) == expected
