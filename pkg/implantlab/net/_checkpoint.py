# -*- coding: utf-8 -*-

"""Binary checkpoint format for networks.

Layout, all little-endian:

* magic ``b"IMPLNT01"``
* u32 layer count, then one u32 per layer dim
* u32 head tag (see :class:`CheckpointHead`)
* u32 dropout rate in parts per million
* float64 parameters per layer: weights row-major, then biases
* policy heads: float64 log-std vector of length ``layer_dims[-1]``
* discriminator heads: float64 input mean, then input std, each ``layer_dims[0]`` long
"""

import pathlib
import struct
from enum import Enum
from typing import List, Optional, Union

import numpy as np

from implantlab.core import ConfigurationError, MissingArtifactError

from ._mlp import Mlp

MAGIC = b"IMPLNT01"

_U32 = struct.Struct("<I")
_F64 = np.dtype("<f8")


class CheckpointHead(Enum):
    """What kind of head a checkpoint holds."""

    PLAIN = 0
    """A bare network, e.g. a value function."""

    POLICY = 1
    """A Gaussian policy mean network followed by its log-std vector."""

    DISCRIMINATOR = 2
    """A discriminator network followed by its frozen input normalizer."""


class Checkpoint:
    """The decoded contents of a checkpoint file."""

    def __init__(
        self,
        net: Mlp,
        head: CheckpointHead = CheckpointHead.PLAIN,
        log_std: Optional[np.ndarray] = None,
        input_mean: Optional[np.ndarray] = None,
        input_std: Optional[np.ndarray] = None,
    ) -> None:
        self.net = net
        self.head = head
        self.log_std = log_std
        self.input_mean = input_mean
        self.input_std = input_std


def checkpoint_to_bytes(checkpoint: Checkpoint) -> bytes:
    """Encode a checkpoint.

    Args:
        checkpoint: The checkpoint to encode.

    Returns:
        The encoded bytes.

    Raises:
        ValueError: if the head's extra vectors are missing or mis-sized.
    """
    net = checkpoint.net
    parts: List[bytes] = [MAGIC, _U32.pack(len(net.layer_dims))]
    parts.extend(_U32.pack(d) for d in net.layer_dims)
    parts.append(_U32.pack(checkpoint.head.value))
    parts.append(_U32.pack(int(round(net.dropout_rate * 1_000_000))))
    for w, b in zip(net.weights, net.biases):
        parts.append(np.ascontiguousarray(w, dtype=_F64).tobytes())
        parts.append(np.ascontiguousarray(b, dtype=_F64).tobytes())

    if checkpoint.head is CheckpointHead.POLICY:
        if checkpoint.log_std is None or checkpoint.log_std.shape != (net.output_dim,):
            raise ValueError("a policy checkpoint needs a log-std per action dim")
        parts.append(np.ascontiguousarray(checkpoint.log_std, dtype=_F64).tobytes())
    elif checkpoint.head is CheckpointHead.DISCRIMINATOR:
        for vector in (checkpoint.input_mean, checkpoint.input_std):
            if vector is None or vector.shape != (net.input_dim,):
                raise ValueError("a discriminator checkpoint needs normalizer stats")
            parts.append(np.ascontiguousarray(vector, dtype=_F64).tobytes())
    return b"".join(parts)


def checkpoint_from_bytes(data: bytes) -> Checkpoint:
    """Decode a checkpoint.

    Args:
        data: The encoded bytes.

    Returns:
        The decoded checkpoint.

    Raises:
        ConfigurationError: if the data is not a well-formed checkpoint.
    """
    if data[: len(MAGIC)] != MAGIC:
        raise ConfigurationError("not an implantlab checkpoint (bad magic bytes)")
    offset = len(MAGIC)

    def read_u32() -> int:
        nonlocal offset
        if offset + 4 > len(data):
            raise ConfigurationError("truncated checkpoint header")
        (value,) = _U32.unpack_from(data, offset)
        offset += 4
        return int(value)

    def read_floats(count: int) -> np.ndarray:
        nonlocal offset
        end = offset + 8 * count
        if end > len(data):
            raise ConfigurationError("truncated checkpoint body")
        values = np.frombuffer(data, dtype=_F64, count=count, offset=offset)
        offset = end
        return values.astype(np.float64)

    layer_dims = [read_u32() for _ in range(read_u32())]
    try:
        head = CheckpointHead(read_u32())
    except ValueError as e:
        raise ConfigurationError("unknown checkpoint head tag", inner=e)
    dropout_rate = read_u32() / 1_000_000

    weights, biases = [], []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        weights.append(read_floats(fan_in * fan_out).reshape(fan_out, fan_in))
        biases.append(read_floats(fan_out))
    try:
        net = Mlp(layer_dims, weights, biases, dropout_rate)
    except ValueError as e:
        raise ConfigurationError("checkpoint describes an invalid network", inner=e)

    checkpoint = Checkpoint(net, head)
    if head is CheckpointHead.POLICY:
        checkpoint.log_std = read_floats(net.output_dim)
    elif head is CheckpointHead.DISCRIMINATOR:
        checkpoint.input_mean = read_floats(net.input_dim)
        checkpoint.input_std = read_floats(net.input_dim)
    if offset != len(data):
        raise ConfigurationError("trailing bytes after checkpoint body")
    return checkpoint


def save_checkpoint(path: Union[str, pathlib.Path], checkpoint: Checkpoint) -> None:
    """Write a checkpoint file.

    Args:
        path: Destination file.
        checkpoint: The checkpoint to write.
    """
    pathlib.Path(path).write_bytes(checkpoint_to_bytes(checkpoint))


def load_checkpoint(path: Union[str, pathlib.Path]) -> Checkpoint:
    """Read a checkpoint file.

    Args:
        path: Source file.

    Returns:
        The decoded checkpoint.

    Raises:
        MissingArtifactError: if the file does not exist.
        ConfigurationError: if the file is malformed.
    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise MissingArtifactError.for_path(str(path), "checkpoint")
    return checkpoint_from_bytes(path.read_bytes())
