"""Residual policy/value network: configuration, parameters and forward pass.

Inference only. Normalization layers use stored running statistics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..encoding import N_ACTIONS, N_PLANES
from ..errors import ShapeMismatch

BN_EPS = 1e-5
BN_PARAMS = ("weight", "bias", "running_mean", "running_var")


@dataclass(frozen=True)
class NetworkConfig:
    blocks: int = 12
    channels: int = 256
    policy_head_planes: int = 16
    value_head_planes: int = 8

    def __post_init__(self):
        for name in ("blocks", "channels", "policy_head_planes", "value_head_planes"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.blocks, self.channels, self.policy_head_planes, self.value_head_planes)


@dataclass(frozen=True)
class EvalResult:
    """A 2308-way move distribution and a win probability for the side to move."""

    policy: np.ndarray
    value: float


def layer_shapes(config: NetworkConfig) -> list[tuple[str, tuple[int, ...]]]:
    """Parameter names and shapes in the fixed serialization order."""
    c, p, v = config.channels, config.policy_head_planes, config.value_head_planes

    def bn(prefix, n):
        return [(f"{prefix}.{name}", (n,)) for name in BN_PARAMS]

    shapes = [("input.conv.weight", (c, N_PLANES, 3, 3))] + bn("input.bn", c)
    for i in range(config.blocks):
        for j in (1, 2):
            shapes.append((f"blocks.{i}.conv{j}.weight", (c, c, 3, 3)))
            shapes += bn(f"blocks.{i}.bn{j}", c)
    shapes.append(("policy.conv.weight", (p, c, 1, 1)))
    shapes += bn("policy.bn", p)
    shapes += [("policy.fc.weight", (N_ACTIONS, p * 64)), ("policy.fc.bias", (N_ACTIONS,))]
    shapes.append(("value.conv.weight", (v, c, 1, 1)))
    shapes += bn("value.bn", v)
    shapes += [("value.fc.weight", (1, v * 64)), ("value.fc.bias", (1,))]
    return shapes


@dataclass
class NetworkWeights:
    tensors: dict[str, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.tensors[name]

    def validate(self, config: NetworkConfig) -> None:
        expected = layer_shapes(config)
        if set(self.tensors) != {name for name, _ in expected}:
            missing = {n for n, _ in expected} - set(self.tensors)
            extra = set(self.tensors) - {n for n, _ in expected}
            raise ShapeMismatch(f"parameter names differ: missing={sorted(missing)[:3]} "
                                f"extra={sorted(extra)[:3]}")
        for name, shape in expected:
            if self.tensors[name].shape != shape:
                raise ShapeMismatch(f"{name}: expected {shape}, got {self.tensors[name].shape}")
            if name.endswith("running_var") and not np.all(self.tensors[name] > 0):
                raise ShapeMismatch(f"{name}: variances must be strictly positive")

    @classmethod
    def zeros(cls, config: NetworkConfig) -> NetworkWeights:
        """All-zero parameters with unit variances."""
        tensors = {}
        for name, shape in layer_shapes(config):
            fill = 1.0 if name.endswith("running_var") else 0.0
            tensors[name] = np.full(shape, fill, dtype=np.float32)
        return cls(tensors)

    @classmethod
    def random(cls, config: NetworkConfig, seed: int = 0, scale: float = 0.1) -> NetworkWeights:
        rng = np.random.default_rng(seed)
        tensors = {}
        for name, shape in layer_shapes(config):
            if name.endswith("running_var") or (".bn" in name and name.endswith(".weight")):
                t = rng.uniform(0.5, 1.5, shape)
            else:
                t = rng.normal(0.0, scale, shape)
            tensors[name] = t.astype(np.float32)
        return cls(tensors)


def _conv(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Same-padded stride-1 convolution; x is (N, Cin, 8, 8), w is (Cout, Cin, k, k)."""
    k = w.shape[-1]
    if k == 1:
        return np.einsum("oi,nihw->nohw", w[:, :, 0, 0], x, optimize=True)
    pad = k // 2
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    h, wd = x.shape[2], x.shape[3]
    out = np.zeros((x.shape[0], w.shape[0], h, wd), dtype=x.dtype)
    for dy in range(k):
        for dx in range(k):
            out += np.einsum("oi,nihw->nohw", w[:, :, dy, dx], xp[:, :, dy:dy + h, dx:dx + wd],
                             optimize=True)
    return out


def _bn(x: np.ndarray, weights: NetworkWeights, prefix: str) -> np.ndarray:
    gamma = weights[f"{prefix}.weight"][None, :, None, None]
    beta = weights[f"{prefix}.bias"][None, :, None, None]
    mean = weights[f"{prefix}.running_mean"][None, :, None, None]
    var = weights[f"{prefix}.running_var"][None, :, None, None]
    return (x - mean) / np.sqrt(var + BN_EPS) * gamma + beta


def residual_block(x: np.ndarray, weights: NetworkWeights, i: int) -> np.ndarray:
    """conv-bn-relu, conv-bn, add the block input, relu."""
    y = np.maximum(_bn(_conv(x, weights[f"blocks.{i}.conv1.weight"]), weights, f"blocks.{i}.bn1"), 0)
    y = _bn(_conv(y, weights[f"blocks.{i}.conv2.weight"]), weights, f"blocks.{i}.bn2")
    return np.maximum(y + x, 0)


def softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def value_squash(z):
    """Map a raw value logit to a win probability via (tanh + 1) / 2."""
    return (np.tanh(z) + 1.0) / 2.0


def forward_batch(config: NetworkConfig, weights: NetworkWeights,
                  inputs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate a batch of (N, 15, 8, 8) inputs; returns (N, 2308) policies and (N,) values."""
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim == 3:
        x = x[None]
    if x.shape[1:] != (N_PLANES, 8, 8):
        raise ShapeMismatch(f"input must be (N, {N_PLANES}, 8, 8), got {x.shape}")
    w = {k: v.astype(np.float64, copy=False) for k, v in weights.tensors.items()}
    weights = NetworkWeights(w)
    h = np.maximum(_bn(_conv(x, w["input.conv.weight"]), weights, "input.bn"), 0)
    for i in range(config.blocks):
        h = residual_block(h, weights, i)
    n = h.shape[0]
    p = np.maximum(_bn(_conv(h, w["policy.conv.weight"]), weights, "policy.bn"), 0)
    logits = p.reshape(n, -1) @ w["policy.fc.weight"].T + w["policy.fc.bias"]
    v = np.maximum(_bn(_conv(h, w["value.conv.weight"]), weights, "value.bn"), 0)
    raw = v.reshape(n, -1) @ w["value.fc.weight"].T + w["value.fc.bias"]
    return softmax(logits), value_squash(raw[:, 0])


def forward(config: NetworkConfig, weights: NetworkWeights, tensor: np.ndarray) -> EvalResult:
    weights.validate(config)
    policy, value = forward_batch(config, weights, np.asarray(tensor)[None])
    return EvalResult(policy[0], float(value[0]))
