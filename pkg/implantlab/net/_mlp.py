# -*- coding: utf-8 -*-

"""Implementation of Mlp."""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from implantlab.core import NetStateError, RejectedInputError

DEFAULT_HIDDEN_DIMS: Tuple[int, ...] = (100, 100)


class _ForwardCache:
    """Activations recorded by a forward pass for the matching backward pass."""

    __slots__ = ("x", "layer_inputs", "hidden_tanh", "masks")

    def __init__(
        self,
        x: np.ndarray,
        layer_inputs: List[np.ndarray],
        hidden_tanh: List[np.ndarray],
        masks: List[Optional[np.ndarray]],
    ) -> None:
        self.x = x
        self.layer_inputs = layer_inputs
        self.hidden_tanh = hidden_tanh
        self.masks = masks


class Mlp:
    """A dense network with tanh hidden layers and an identity readout.

    Weights are stored per layer as ``(out, in)`` matrices and biases as length ``out``
    vectors, all float64. :meth:`parameters` returns them interleaved as
    ``[W0, b0, W1, b1, ...]``; the optimizer updates those arrays in place.

    Inputs may be a single vector of length ``layer_dims[0]`` or a batch of shape
    ``(n, layer_dims[0])``; the output has the matching rank.
    """

    def __init__(
        self,
        layer_dims: Sequence[int],
        weights: Optional[Sequence[np.ndarray]] = None,
        biases: Optional[Sequence[np.ndarray]] = None,
        dropout_rate: float = 0.0,
    ) -> None:
        """Initialize a network from explicit parameters, or with zeros.

        Args:
            layer_dims: ``(input, hidden..., output)`` sizes.
            weights: One ``(layer_dims[i+1], layer_dims[i])`` matrix per layer.
            biases: One ``layer_dims[i+1]`` vector per layer.
            dropout_rate: Probability of dropping a hidden unit in train mode.

        Raises:
            ValueError: if the dims, shapes or dropout rate are invalid.
        """
        dims = [int(d) for d in layer_dims]
        if len(dims) < 2 or any(d <= 0 for d in dims):
            raise ValueError("layer_dims needs at least two positive sizes")
        if not 0.0 <= dropout_rate < 1.0:
            raise ValueError("dropout_rate must be in [0, 1)")
        self._layer_dims = tuple(dims)
        self._dropout_rate = float(dropout_rate)

        if weights is None:
            weights = [np.zeros((dims[i + 1], dims[i])) for i in range(len(dims) - 1)]
        if biases is None:
            biases = [np.zeros(dims[i + 1]) for i in range(len(dims) - 1)]
        if len(weights) != len(dims) - 1 or len(biases) != len(dims) - 1:
            raise ValueError("one weight matrix and one bias per layer are required")

        self._weights = [np.array(w, dtype=np.float64) for w in weights]
        self._biases = [np.array(b, dtype=np.float64) for b in biases]
        for i, (w, b) in enumerate(zip(self._weights, self._biases)):
            if w.shape != (dims[i + 1], dims[i]) or b.shape != (dims[i + 1],):
                raise ValueError(f"parameter shapes of layer {i} do not match dims")

        self._cache: Optional[_ForwardCache] = None

    @classmethod
    def initialized(
        cls,
        layer_dims: Sequence[int],
        rng: np.random.Generator,
        dropout_rate: float = 0.0,
        output_scale: float = 1.0,
    ) -> "Mlp":
        """Create a network with Glorot-uniform weights and zero biases.

        Args:
            layer_dims: ``(input, hidden..., output)`` sizes.
            rng: Generator for the weight draws.
            dropout_rate: Probability of dropping a hidden unit in train mode.
            output_scale: Factor applied to the last layer's initial weights.

        Returns:
            The new network.
        """
        dims = [int(d) for d in layer_dims]
        weights = []
        for fan_in, fan_out in zip(dims[:-1], dims[1:]):
            limit = np.sqrt(6.0 / (fan_in + fan_out))
            weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        weights[-1] = weights[-1] * output_scale
        biases = [np.zeros(d) for d in dims[1:]]
        return cls(dims, weights, biases, dropout_rate)

    @property
    def layer_dims(self) -> Tuple[int, ...]:  # noqa: D401
        """The ``(input, hidden..., output)`` sizes."""
        return self._layer_dims

    @property
    def input_dim(self) -> int:  # noqa: D401
        """Length of an input vector."""
        return self._layer_dims[0]

    @property
    def output_dim(self) -> int:  # noqa: D401
        """Length of an output vector."""
        return self._layer_dims[-1]

    @property
    def weights(self) -> List[np.ndarray]:  # noqa: D401
        """Per-layer weight matrices (live arrays)."""
        return self._weights

    @property
    def biases(self) -> List[np.ndarray]:  # noqa: D401
        """Per-layer bias vectors (live arrays)."""
        return self._biases

    @property
    def dropout_rate(self) -> float:  # noqa: D401
        """Probability of dropping a hidden unit in train mode."""
        return self._dropout_rate

    def parameters(self) -> List[np.ndarray]:
        """Return the live parameter arrays as ``[W0, b0, W1, b1, ...]``."""
        params: List[np.ndarray] = []
        for w, b in zip(self._weights, self._biases):
            params.append(w)
            params.append(b)
        return params

    def copy(self) -> "Mlp":
        """Return an independent deep copy without any recorded forward pass."""
        return Mlp(self._layer_dims, self._weights, self._biases, self._dropout_rate)

    def forward(
        self,
        x: np.ndarray,
        train_mode: bool = False,
        rng: Optional[np.random.Generator] = None,
        record: bool = False,
    ) -> np.ndarray:
        """Evaluate the network.

        Eval-mode calls with ``record=False`` never mutate the network, so a single
        instance may be shared between threads.

        Args:
            x: One input vector, or a batch of them stacked as rows.
            train_mode: Apply inverted dropout to hidden activations.
            rng: Generator for dropout masks; required when dropout is active.
            record: Cache activations for a following :meth:`backward` call.

        Returns:
            The output vector, or one output row per input row.

        Raises:
            RejectedInputError: if the input width is not ``layer_dims[0]``.
            ValueError: if dropout is active and no generator is given.
        """
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == 1
        batch = x[np.newaxis, :] if single else x
        if batch.ndim != 2 or batch.shape[1] != self.input_dim:
            raise RejectedInputError(
                f"expected input of width {self.input_dim}, got shape {x.shape}"
            )
        use_dropout = train_mode and self._dropout_rate > 0.0
        if use_dropout and rng is None:
            raise ValueError("a generator is required for train-mode dropout")

        keep = 1.0 - self._dropout_rate
        layer_inputs = [batch]
        hidden_tanh: List[np.ndarray] = []
        masks: List[Optional[np.ndarray]] = []
        h = batch
        last = len(self._weights) - 1
        for i, (w, b) in enumerate(zip(self._weights, self._biases)):
            z = h @ w.T + b
            if i == last:
                h = z
                break
            t = np.tanh(z)
            mask = None
            if use_dropout:
                assert rng is not None
                mask = (rng.random(t.shape) < keep) / keep
                h = t * mask
            else:
                h = t
            hidden_tanh.append(t)
            masks.append(mask)
            layer_inputs.append(h)

        if record:
            self._cache = _ForwardCache(batch.copy(), layer_inputs, hidden_tanh, masks)
        return h[0] if single else h

    def backward(self, x: np.ndarray, upstream_grad: np.ndarray) -> List[np.ndarray]:
        """Back-propagate an output gradient through the recorded forward pass.

        Args:
            x: The input of the recorded forward pass.
            upstream_grad: dLoss/dOutput, shaped like the forward output.

        Returns:
            Gradients laid out like :meth:`parameters`, summed over the batch.

        Raises:
            NetStateError: if no forward pass for ``x`` was recorded.
            RejectedInputError: if the upstream gradient has the wrong shape.
        """
        cache = self._cache
        x = np.asarray(x, dtype=np.float64)
        batch = x[np.newaxis, :] if x.ndim == 1 else x
        if cache is None or cache.x.shape != batch.shape or not np.array_equal(
            cache.x, batch
        ):
            raise NetStateError("backward requires a recorded forward pass for x")
        g = np.asarray(upstream_grad, dtype=np.float64)
        g = g[np.newaxis, :] if g.ndim == 1 else g
        if g.shape != (batch.shape[0], self.output_dim):
            raise RejectedInputError(
                "expected upstream gradient of shape "
                f"{(batch.shape[0], self.output_dim)}"
            )

        grads: List[np.ndarray] = [np.empty(0)] * (2 * len(self._weights))
        for i in range(len(self._weights) - 1, -1, -1):
            grads[2 * i] = g.T @ cache.layer_inputs[i]
            grads[2 * i + 1] = g.sum(axis=0)
            if i > 0:
                g = g @ self._weights[i]
                mask = cache.masks[i - 1]
                if mask is not None:
                    g = g * mask
                t = cache.hidden_tanh[i - 1]
                g = g * (1.0 - t * t)
        return grads

    def clear_cache(self) -> None:
        """Drop the recorded forward pass."""
        self._cache = None
