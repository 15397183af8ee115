"""One-hidden-layer sigmoid MLP trained by per-pattern backpropagation with momentum.

The error of a pattern is ``E = 0.5 * sum_k (t_k - o_k)**2`` against a 1-of-m
target vector (``target_hi`` for the true class, ``target_lo`` elsewhere).
Weights are updated after every pattern with
``delta(t) = eta * (-dE/dw) + alpha * delta(t-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, EmptyTestSet, ParseError, VersionMismatch
from .rng import SplitMix64

FORMAT_TAG = "MLPV1"
INIT_RANGE = 0.5


@dataclass
class TrainConfig:
    eta: float = 0.8
    alpha: float = 0.7
    max_epochs: int = 300
    sse_tol: float = 0.01
    seed: int = 1
    # targets kept off the sigmoid asymptotes so large steps do not stall on flat spots
    target_hi: float = 0.9
    target_lo: float = 0.1

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if not 0 <= self.alpha < 1:
            raise ValueError("alpha must lie in [0, 1)")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")
        if not 0 <= self.target_lo < self.target_hi <= 1:
            raise ValueError("targets must satisfy 0 <= target_lo < target_hi <= 1")

    def targets(self, n_out: int) -> np.ndarray:
        """Row ``k`` is the target vector for class ``k``."""
        t = np.full((n_out, n_out), self.target_lo)
        np.fill_diagonal(t, self.target_hi)
        return t


@dataclass
class MlpModel:
    """Weights are stored ``[fan_out, fan_in]``; the ``d*`` arrays hold the last update."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    dw1: np.ndarray = field(default=None, repr=False)
    db1: np.ndarray = field(default=None, repr=False)
    dw2: np.ndarray = field(default=None, repr=False)
    db2: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        n_hidden, n_in = self.w1.shape
        n_out, n_hidden2 = self.w2.shape
        if self.b1.shape != (n_hidden,) or self.b2.shape != (n_out,) or n_hidden2 != n_hidden:
            raise DimensionMismatch("inconsistent weight and bias shapes")
        for name in ("dw1", "db1", "dw2", "db2"):
            if getattr(self, name) is None:
                setattr(self, name, np.zeros_like(getattr(self, name[1:])))

    @property
    def layer_sizes(self) -> tuple[int, int, int]:
        return self.w1.shape[1], self.w1.shape[0], self.w2.shape[0]

    @property
    def architecture(self) -> str:
        return "-".join(str(n) for n in self.layer_sizes)

    def parameters(self):
        return {"w1": self.w1, "b1": self.b1, "w2": self.w2, "b2": self.b2}

    def copy(self) -> "MlpModel":
        return MlpModel(*(getattr(self, k).copy() for k in
                          ("w1", "b1", "w2", "b2", "dw1", "db1", "dw2", "db2")))


class TrainHistory(NamedTuple):
    sse: list
    epochs_run: int


class LabeledSample(NamedTuple):
    features: np.ndarray
    label: int


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def init_network(n_in: int, n_hidden: int, n_out: int, seed: int) -> MlpModel:
    """Uniform [-0.5, 0.5] weights from SplitMix64.

    Draw order: hidden weights row-major, hidden biases, output weights
    row-major, output biases.
    """
    if min(n_in, n_hidden, n_out) < 1:
        raise ValueError("layer sizes must be positive")
    gen = SplitMix64(seed)

    def draw(*shape):
        n = int(np.prod(shape))
        vals = [gen.uniform(-INIT_RANGE, INIT_RANGE) for _ in range(n)]
        return np.array(vals, dtype=np.float64).reshape(shape)

    w1 = draw(n_hidden, n_in)
    b1 = draw(n_hidden)
    w2 = draw(n_out, n_hidden)
    b2 = draw(n_out)
    return MlpModel(w1, b1, w2, b2)


def _check_input(model, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.w1.shape[1]:
        raise DimensionMismatch(f"expected {model.w1.shape[1]} features, got {x.shape[-1]}")
    return x


def forward(model: MlpModel, x):
    """Hidden and output activations for one input vector (or a batch of rows)."""
    x = _check_input(model, x)
    hidden = sigmoid(x @ model.w1.T + model.b1)
    output = sigmoid(hidden @ model.w2.T + model.b2)
    return hidden, output


def _target(label, n_out, cfg):
    return (cfg or TrainConfig()).targets(n_out)[label]


def sample_error(model: MlpModel, x, label: int, cfg: TrainConfig | None = None) -> float:
    _, o = forward(model, x)
    return float(0.5 * np.sum((_target(label, o.size, cfg) - o) ** 2))


def gradients(model: MlpModel, x, label: int, cfg: TrainConfig | None = None):
    """Backpropagated ``dE/dparam`` for one pattern, keyed like ``model.parameters()``."""
    x = _check_input(model, x)
    h, o = forward(model, x)
    t = _target(label, o.size, cfg)
    delta_out = -(t - o) * o * (1.0 - o)
    delta_hid = (model.w2.T @ delta_out) * h * (1.0 - h)
    return {"w1": np.outer(delta_hid, x), "b1": delta_hid,
            "w2": np.outer(delta_out, h), "b2": delta_out}


def _check_labels(model, y):
    y = np.asarray(y, dtype=np.int64)
    n_out = model.w2.shape[0]
    if y.size and (y.min() < 0 or y.max() >= n_out):
        raise DimensionMismatch(f"labels must lie in [0, {n_out - 1}]")
    return y


def train_epoch(model: MlpModel, X, y, cfg: TrainConfig, epoch_seed: int) -> float:
    """One shuffled pass of per-pattern updates; returns the mean pre-update pattern error."""
    X = _check_input(model, np.atleast_2d(X))
    y = _check_labels(model, y)
    if len(X) != len(y):
        raise DimensionMismatch("feature and label counts differ")
    if len(X) == 0:
        return 0.0
    eta, alpha = cfg.eta, cfg.alpha
    w1, b1, w2, b2 = model.w1, model.b1, model.w2, model.b2
    dw1, db1, dw2, db2 = model.dw1, model.db1, model.dw2, model.db2
    targets = cfg.targets(w2.shape[0])
    order = np.random.default_rng(epoch_seed).permutation(len(X))
    total = 0.0
    for i in order:
        x = X[i]
        h = 1.0 / (1.0 + np.exp(-(w1 @ x + b1)))
        o = 1.0 / (1.0 + np.exp(-(w2 @ h + b2)))
        err = targets[y[i]] - o
        total += 0.5 * (err @ err)
        # -dE/dnet for each layer
        g_out = err * o * (1.0 - o)
        g_hid = (g_out @ w2) * h * (1.0 - h)
        dw2 *= alpha
        dw2 += eta * np.outer(g_out, h)
        db2 *= alpha
        db2 += eta * g_out
        dw1 *= alpha
        dw1 += eta * np.outer(g_hid, x)
        db1 *= alpha
        db1 += eta * g_hid
        w2 += dw2
        b2 += db2
        w1 += dw1
        b1 += db1
    return total / len(X)


def train(model: MlpModel, X, y, cfg: TrainConfig) -> TrainHistory:
    """Epochs until ``max_epochs`` or mean pattern error below ``sse_tol``."""
    seeds = SplitMix64(cfg.seed)
    history = []
    for _ in range(cfg.max_epochs):
        sse = train_epoch(model, X, y, cfg, seeds.next_u64())
        history.append(sse)
        if sse < cfg.sse_tol:
            break
    return TrainHistory(history, len(history))


def classify(model: MlpModel, x):
    """Argmax output neuron; ties go to the lowest index. Works on a batch too."""
    _, o = forward(model, x)
    return np.argmax(o, axis=-1) if o.ndim > 1 else int(np.argmax(o))


def evaluate(model: MlpModel, X, y):
    """Accuracy and confusion matrix ``[true, predicted]``."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    y = _check_labels(model, y)
    if len(y) == 0:
        raise EmptyTestSet("cannot evaluate on an empty test set")
    pred = classify(model, X)
    m = model.w2.shape[0]
    confusion = np.zeros((m, m), dtype=np.int64)
    np.add.at(confusion, (y, pred), 1)
    return float(np.mean(pred == y)), confusion


def _fmt(values) -> str:
    return " ".join(f"{v:.17g}" for v in np.ravel(values))


def save_model(model: MlpModel) -> str:
    n_in, n_hidden, n_out = model.layer_sizes
    lines = [FORMAT_TAG, f"{n_in} {n_hidden} {n_out}"]
    lines += [_fmt(row) for row in model.w1]
    lines.append(_fmt(model.b1))
    lines += [_fmt(row) for row in model.w2]
    lines.append(_fmt(model.b2))
    return "\n".join(lines) + "\n"


def load_model(text: str) -> MlpModel:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty model document", line=1)
    tag = lines[0].strip()
    if tag != FORMAT_TAG:
        if tag.startswith("MLPV"):
            raise VersionMismatch(f"unsupported model format {tag!r}, expected {FORMAT_TAG}")
        raise ParseError(f"bad header {tag!r}", line=1)

    def numbers(lineno, count, kind, cast=float):
        if lineno > len(lines):
            raise ParseError(f"unexpected end of document, expected {kind}", line=lineno)
        fields = lines[lineno - 1].split()
        if len(fields) != count:
            raise ParseError(f"expected {count} values for {kind}, got {len(fields)}", line=lineno)
        try:
            return [cast(f) for f in fields]
        except ValueError as exc:
            raise ParseError(f"bad number in {kind}: {exc}", line=lineno) from None

    sizes = numbers(2, 3, "layer sizes", int)
    if min(sizes) < 1:
        raise ParseError("layer sizes must be positive", line=2)
    n_in, n_hidden, n_out = sizes
    lineno = 3
    w1 = []
    for _ in range(n_hidden):
        w1.append(numbers(lineno, n_in, "hidden weights"))
        lineno += 1
    b1 = numbers(lineno, n_hidden, "hidden biases")
    lineno += 1
    w2 = []
    for _ in range(n_out):
        w2.append(numbers(lineno, n_hidden, "output weights"))
        lineno += 1
    b2 = numbers(lineno, n_out, "output biases")
    if any(line.strip() for line in lines[lineno:]):
        raise ParseError("trailing content after output biases", line=lineno + 1)
    return MlpModel(np.array(w1), np.array(b1), np.array(w2), np.array(b2))
