"""Fully connected suggestion networks, training loop and serialization.

Two topologies:
  baseline: 24 -> 156, no hidden layer (label-only model)
  full:     180 -> 150 -> 156 (previous diagram + label)

Output layer is elementwise sigmoid; training minimizes mean binary
cross-entropy against the 156-value one-hot-per-string target, with Adam
and delta-based early stopping on the validation loss.  Runs are
bit-reproducible given (seed, dataset order, config).
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from chordsuggest.encoding import INPUT_WIDTH, LABEL_WIDTH, DIAGRAM_WIDTH, INPUT_LAYOUT_TAG

BASELINE = "baseline"
FULL = "full"
HIDDEN_SIZE = 150

MAGIC = b"CSGM"
FORMAT_VERSION = 1

_LOG_CLAMP = 1e-12


class ModelError(Exception):
    pass


class WidthMismatch(ModelError):
    pass


class CorruptFile(ModelError):
    pass


class VersionMismatch(ModelError):
    pass


class EmptySplit(ModelError):
    pass


@dataclass
class TrainConfig:
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    early_stop_delta: float = 0.001
    early_stop_patience: int = 2
    batch_size: Optional[int] = None  # None = full batch
    max_epochs: int = 200
    seed: int = 0
    hidden_activation: str = "relu"

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(asdict(self), sort_keys=True).encode()).hexdigest()[:16]


@dataclass
class TrainReport:
    epochs_run: int
    train_losses: list[float]
    val_losses: list[float]
    stopped_early: bool
    config: TrainConfig


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


@dataclass
class SuggestionModel:
    topology: str  # BASELINE or FULL
    weights: list[np.ndarray]  # [W] or [W1, W2]
    biases: list[np.ndarray]
    seed: int = 0
    config_digest: str = ""
    hidden_activation: str = "relu"
    input_layout: str = field(default=INPUT_LAYOUT_TAG)

    @property
    def input_width(self) -> int:
        return LABEL_WIDTH if self.topology == BASELINE else INPUT_WIDTH

    @classmethod
    def initialize(cls, topology: str, cfg: TrainConfig) -> "SuggestionModel":
        rng = np.random.default_rng(cfg.seed)
        if topology == BASELINE:
            weights = [_glorot(rng, LABEL_WIDTH, DIAGRAM_WIDTH)]
            biases = [np.zeros(DIAGRAM_WIDTH)]
        elif topology == FULL:
            weights = [_glorot(rng, INPUT_WIDTH, HIDDEN_SIZE), _glorot(rng, HIDDEN_SIZE, DIAGRAM_WIDTH)]
            biases = [np.zeros(HIDDEN_SIZE), np.zeros(DIAGRAM_WIDTH)]
        else:
            raise ModelError(f"unknown topology {topology!r}")
        return cls(
            topology=topology,
            weights=weights,
            biases=biases,
            seed=cfg.seed,
            config_digest=cfg.digest(),
            hidden_activation=cfg.hidden_activation,
        )


def _hidden(z: np.ndarray, activation: str) -> tuple[np.ndarray, np.ndarray]:
    """Hidden activation and its derivative w.r.t. z."""
    if activation == "relu":
        a = np.maximum(z, 0.0)
        return a, (z > 0).astype(float)
    if activation == "tanh":
        a = np.tanh(z)
        return a, 1.0 - a * a
    raise ModelError(f"unknown hidden activation {activation!r}")


def forward(model: SuggestionModel, inputs: np.ndarray) -> np.ndarray:
    """Sigmoid probabilities, shape (..., 156).  Accepts a single vector or
    a batch of rows."""
    x = np.asarray(inputs, dtype=float)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != model.input_width:
        raise WidthMismatch(f"expected input width {model.input_width}, got {x.shape[1]}")
    if model.topology == FULL:
        h, _ = _hidden(x @ model.weights[0] + model.biases[0], model.hidden_activation)
        z = h @ model.weights[1] + model.biases[1]
    else:
        z = x @ model.weights[0] + model.biases[0]
    out = _sigmoid(z)
    return out[0] if single else out


def loss(pred: np.ndarray, target: np.ndarray) -> float:
    """Mean binary cross-entropy over all slots, with clamped logs."""
    p = np.clip(np.asarray(pred, dtype=float), _LOG_CLAMP, 1.0 - _LOG_CLAMP)
    t = np.asarray(target, dtype=float)
    return float(np.mean(-(t * np.log(p) + (1.0 - t) * np.log(1.0 - p))))


def _forward_backward(model: SuggestionModel, x: np.ndarray, t: np.ndarray):
    """Batch loss and gradients for BCE over sigmoid outputs."""
    n = x.shape[0]
    if model.topology == FULL:
        z1 = x @ model.weights[0] + model.biases[0]
        h, dh = _hidden(z1, model.hidden_activation)
        z2 = h @ model.weights[1] + model.biases[1]
        p = _sigmoid(z2)
        # d(mean BCE)/dz2 = (p - t) / (n * slots)
        delta2 = (p - t) / (n * t.shape[1])
        grads_w = [None, h.T @ delta2]
        grads_b = [None, delta2.sum(axis=0)]
        delta1 = (delta2 @ model.weights[1].T) * dh
        grads_w[0] = x.T @ delta1
        grads_b[0] = delta1.sum(axis=0)
    else:
        z = x @ model.weights[0] + model.biases[0]
        p = _sigmoid(z)
        delta = (p - t) / (n * t.shape[1])
        grads_w = [x.T @ delta]
        grads_b = [delta.sum(axis=0)]
    return loss(p, t), grads_w, grads_b


class _Adam:
    def __init__(self, params: list[np.ndarray], cfg: TrainConfig):
        self.cfg = cfg
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params: list[np.ndarray], grads: list[np.ndarray]) -> None:
        cfg = self.cfg
        self.t += 1
        for i, (p, g) in enumerate(zip(params, grads)):
            self.m[i] = cfg.beta1 * self.m[i] + (1 - cfg.beta1) * g
            self.v[i] = cfg.beta2 * self.v[i] + (1 - cfg.beta2) * g * g
            m_hat = self.m[i] / (1 - cfg.beta1**self.t)
            v_hat = self.v[i] / (1 - cfg.beta2**self.t)
            p -= cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.epsilon)


def train(
    train_pairs: tuple[np.ndarray, np.ndarray],
    val_pairs: tuple[np.ndarray, np.ndarray],
    cfg: TrainConfig,
    topology: str = FULL,
) -> tuple[SuggestionModel, TrainReport]:
    """Train a model on encoded (inputs, targets) arrays.

    Stops when the validation loss fails to improve by at least
    early_stop_delta for early_stop_patience consecutive epochs, or at
    max_epochs.
    """
    x_train, t_train = (np.asarray(a, dtype=float) for a in train_pairs)
    x_val, t_val = (np.asarray(a, dtype=float) for a in val_pairs)
    if x_train.shape[0] == 0 or x_val.shape[0] == 0:
        raise EmptySplit("train and validation sets must be non-empty")

    model = SuggestionModel.initialize(topology, cfg)
    params = model.weights + model.biases
    adam = _Adam(params, cfg)
    rng = np.random.default_rng(cfg.seed + 1)

    n = x_train.shape[0]
    batch = cfg.batch_size or n
    train_losses: list[float] = []
    val_losses: list[float] = []
    bad_epochs = 0
    prev_val = None
    stopped_early = False

    for _ in range(cfg.max_epochs):
        order = rng.permutation(n) if batch < n else np.arange(n)
        epoch_loss = 0.0
        seen = 0
        for start in range(0, n, batch):
            idx = order[start : start + batch]
            batch_loss, grads_w, grads_b = _forward_backward(model, x_train[idx], t_train[idx])
            adam.step(params, grads_w + grads_b)
            epoch_loss += batch_loss * len(idx)
            seen += len(idx)
        train_losses.append(epoch_loss / seen)

        val_loss = loss(forward(model, x_val), t_val)
        val_losses.append(val_loss)
        if prev_val is not None:
            if prev_val - val_loss < cfg.early_stop_delta:
                bad_epochs += 1
            else:
                bad_epochs = 0
            if bad_epochs >= cfg.early_stop_patience:
                stopped_early = True
                prev_val = val_loss
                break
        prev_val = val_loss

    report = TrainReport(
        epochs_run=len(train_losses),
        train_losses=train_losses,
        val_losses=val_losses,
        stopped_early=stopped_early,
        config=cfg,
    )
    return model, report


def save(model: SuggestionModel, path: str) -> None:
    """Write the model to a versioned binary container.

    Layout: magic "CSGM", u8 format version, u32 little-endian header
    length, JSON header (topology, layout tag, seed, config digest, array
    shapes), then the arrays as row-major little-endian float64 in header
    order (weights then biases).
    """
    header = {
        "topology": model.topology,
        "input_layout": model.input_layout,
        "seed": model.seed,
        "config_digest": model.config_digest,
        "hidden_activation": model.hidden_activation,
        "weight_shapes": [list(w.shape) for w in model.weights],
        "bias_shapes": [list(b.shape) for b in model.biases],
    }
    header_bytes = json.dumps(header, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<B", FORMAT_VERSION))
        fh.write(struct.pack("<I", len(header_bytes)))
        fh.write(header_bytes)
        for arr in model.weights + model.biases:
            fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def load(path: str) -> SuggestionModel:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 9 or blob[:4] != MAGIC:
        raise CorruptFile(f"{path}: not a model file")
    version = blob[4]
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {FORMAT_VERSION}")
    (header_len,) = struct.unpack("<I", blob[5:9])
    try:
        header = json.loads(blob[9 : 9 + header_len])
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptFile(f"{path}: bad header") from exc
    offset = 9 + header_len
    arrays = []
    for shape in header["weight_shapes"] + header["bias_shapes"]:
        count = int(np.prod(shape))
        end = offset + count * 8
        if end > len(blob):
            raise CorruptFile(f"{path}: truncated weight data")
        arrays.append(np.frombuffer(blob[offset:end], dtype="<f8").reshape(shape).copy())
        offset = end
    if offset != len(blob):
        raise CorruptFile(f"{path}: trailing bytes")
    n_w = len(header["weight_shapes"])
    return SuggestionModel(
        topology=header["topology"],
        weights=arrays[:n_w],
        biases=arrays[n_w:],
        seed=header["seed"],
        config_digest=header["config_digest"],
        hidden_activation=header["hidden_activation"],
        input_layout=header["input_layout"],
    )
