from .evaluators import Evaluator, MaterialEvaluator, NetworkEvaluator, UniformEvaluator
from .losses import mse, poisson_nll
from .network import EvalResult, NetworkConfig, NetworkWeights, forward, forward_batch, layer_shapes
from .weights_io import load_weights, save_weights

__all__ = [
    "EvalResult", "Evaluator", "MaterialEvaluator", "NetworkConfig", "NetworkEvaluator",
    "NetworkWeights", "UniformEvaluator", "forward", "forward_batch", "layer_shapes",
    "load_weights", "mse", "poisson_nll", "save_weights",
]
