"""Shared per-point linear maps (kernel-size-1 convolutions) with manual
forward/backward.

Feature matrices are float64 arrays of shape (channels, n_points).
Gradients accumulate into each layer's ``grad_weight``/``grad_bias``
until ``zero_grad``; a layer caches exactly one forward pass, so within
a batch every sample must run forward immediately followed by backward.
"""

import numpy as np

from ..errors import InvalidArgumentError, StateError

ACTIVATIONS = ("relu", "identity")


class SharedLinear:
    """y = act(W @ x + b) applied column-wise."""

    def __init__(self, weight: np.ndarray, bias: np.ndarray, activation: str = "relu"):
        weight = np.ascontiguousarray(weight, dtype=np.float64)
        bias = np.ascontiguousarray(bias, dtype=np.float64)
        if weight.ndim != 2 or bias.shape != (weight.shape[0],):
            raise InvalidArgumentError(
                f"inconsistent layer shapes: weight {weight.shape}, bias {bias.shape}")
        if not (np.isfinite(weight).all() and np.isfinite(bias).all()):
            raise InvalidArgumentError("layer parameters contain non-finite values")
        if activation not in ACTIVATIONS:
            raise InvalidArgumentError(f"unknown activation {activation!r}")
        self.weight = weight
        self.bias = bias
        self.activation = activation
        self.grad_weight = np.zeros_like(weight)
        self.grad_bias = np.zeros_like(bias)
        self._x: np.ndarray | None = None
        self._z: np.ndarray | None = None

    @classmethod
    def create(cls, rng: np.random.Generator, in_dim: int, out_dim: int,
               activation: str = "relu") -> "SharedLinear":
        # Glorot-uniform weights, zero bias.
        limit = np.sqrt(6.0 / (in_dim + out_dim))
        weight = rng.uniform(-limit, limit, size=(out_dim, in_dim))
        return cls(weight, np.zeros(out_dim), activation)

    @property
    def in_dim(self) -> int:
        return self.weight.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weight.shape[0]

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.ndim != 2 or x.shape[0] != self.in_dim:
            raise InvalidArgumentError(
                f"expected ({self.in_dim}, N) input, got {x.shape}")
        z = self.weight @ x + self.bias[:, None]
        self._x = x
        self._z = z
        if self.activation == "relu":
            return np.maximum(z, 0.0)
        return z

    def backward(self, dy: np.ndarray) -> np.ndarray:
        if self._x is None:
            raise StateError("backward called before forward")
        dz = dy * (self._z > 0.0) if self.activation == "relu" else dy
        self.grad_weight += dz @ self._x.T
        self.grad_bias += dz.sum(axis=1)
        return self.weight.T @ dz

    def zero_grad(self) -> None:
        self.grad_weight[:] = 0.0
        self.grad_bias[:] = 0.0


def shared_map_forward(layer: SharedLinear, features: np.ndarray) -> np.ndarray:
    """Stateless application of a shared linear map to (in, N) features."""
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[0] != layer.in_dim:
        raise InvalidArgumentError(
            f"expected ({layer.in_dim}, N) features, got {features.shape}")
    z = layer.weight @ features + layer.bias[:, None]
    return np.maximum(z, 0.0) if layer.activation == "relu" else z


def create_stack(rng: np.random.Generator, dims: list[int],
                 last_activation: str = "relu") -> list[SharedLinear]:
    """Chain of shared linear layers; ReLU throughout except the last."""
    layers = []
    for i in range(len(dims) - 1):
        act = last_activation if i == len(dims) - 2 else "relu"
        layers.append(SharedLinear.create(rng, dims[i], dims[i + 1], act))
    return layers


def stack_forward(layers: list[SharedLinear], x: np.ndarray) -> np.ndarray:
    for layer in layers:
        x = layer.forward(x)
    return x


def stack_backward(layers: list[SharedLinear], dy: np.ndarray) -> np.ndarray:
    for layer in reversed(layers):
        dy = layer.backward(dy)
    return dy
