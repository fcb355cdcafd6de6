"""Learned reordering: a deep BiLSTM encoder with an MLP direction scorer.

Everything is plain numpy (float64) with hand-written backpropagation, so the
analytic gradients can be validated against finite differences.  Per token the
encoder input is (trainable word vector + optional fixed pretrained vector)
concatenated with a POS vector.  For a dependency the scorer sees the encoder
states of modifier and head, a relation vector, a 2-dim vector for the original
direction, and a language-id vector.

Direction probabilities are returned as ``[p(-1), p(+1)]`` (head-left,
head-right).
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field, asdict
from typing import Iterable, Sequence

import numpy as np

from .reorder_data import ReorderInstance
from .reorder_rule import linearize
from .treebank import DepTree, universal_label

UNK = "<unk>"
DIRECTIONS = (-1, 1)  # output index 0, 1

MODEL_MAGIC = b"treeshift-reorder-v1\n"


@dataclass
class Hyperparams:
    word_dim: int = 100
    pos_dim: int = 100
    lstm_dim: int = 400  # BiLSTM output width; each direction gets half
    rel_dim: int = 50
    lang_dim: int = 50
    hidden_dim: int = 200
    layers: int = 3
    minibatch_tokens: int = 1000
    heldout_fraction: float = 0.01
    max_epochs: int = 20
    patience: int = 5
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    clip_norm: float = 5.0

    def __post_init__(self):
        if self.lstm_dim % 2:
            raise ValueError("lstm_dim must be even (two directions)")
        if not 0.0 < self.heldout_fraction < 1.0:
            raise ValueError("heldout_fraction must lie in (0, 1)")
        for name in ("word_dim", "pos_dim", "lstm_dim", "rel_dim", "lang_dim", "hidden_dim", "layers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    @property
    def query_dim(self) -> int:
        return 2 * self.lstm_dim + self.rel_dim + 2 + self.lang_dim


class ClassifierParams:
    """All tensors of the classifier plus its vocabularies.

    ``tensors`` maps names to float64 arrays; ``word_pretrained`` is fixed and
    never receives gradient updates.
    """

    FIXED = ("word_pretrained",)

    def __init__(self, hp: Hyperparams, vocabs: dict[str, dict[str, int]], tensors: dict[str, np.ndarray]):
        self.hp = hp
        self.vocabs = vocabs
        self.tensors = tensors

    def trainable(self) -> dict[str, np.ndarray]:
        return {k: v for k, v in self.tensors.items() if k not in self.FIXED}

    def copy(self) -> "ClassifierParams":
        return ClassifierParams(
            self.hp,
            {name: dict(v) for name, v in self.vocabs.items()},
            {name: t.copy() for name, t in self.tensors.items()},
        )

    def word_index(self, form: str) -> int:
        return self.vocabs["word"].get(form.lower(), 0)

    def pos_index(self, tag: str) -> int:
        return self.vocabs["pos"].get(tag, 0)

    def rel_index(self, label: str) -> int:
        return self.vocabs["rel"].get(universal_label(label) or "", 0)

    def lang_index(self, language: str) -> int:
        return self.vocabs["lang"].get(language, 0)


def build_vocabs(sentences: Iterable[DepTree], instances: Iterable[ReorderInstance]) -> dict[str, dict[str, int]]:
    words: dict[str, int] = {UNK: 0}
    pos: dict[str, int] = {UNK: 0}
    rels: dict[str, int] = {UNK: 0}
    langs: dict[str, int] = {UNK: 0}
    for tree in sentences:
        langs.setdefault(tree.language, len(langs))
        for tok in tree.tokens:
            words.setdefault(tok.form.lower(), len(words))
            pos.setdefault(tok.upos, len(pos))
    for inst in instances:
        rels.setdefault(universal_label(inst.label) or "", len(rels))
        langs.setdefault(inst.language, len(langs))
    return {"word": words, "pos": pos, "rel": rels, "lang": langs}


def _glorot(rng: np.random.RandomState, rows: int, cols: int) -> np.ndarray:
    bound = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-bound, bound, size=(rows, cols))


def init_params(
    hp: Hyperparams,
    vocabs: dict[str, dict[str, int]],
    seed: int = 1,
    pretrained: dict[str, np.ndarray] | None = None,
) -> ClassifierParams:
    """Fresh parameters: small uniform embeddings, scaled-uniform recurrent
    matrices, zero biases apart from forget gates at 1."""
    rng = np.random.RandomState(seed)
    half = hp.lstm_dim // 2
    tensors: dict[str, np.ndarray] = {}

    def emb(name: str, count: int, dim: int):
        tensors[name] = rng.uniform(-0.05, 0.05, size=(count, dim))

    emb("word_emb", len(vocabs["word"]), hp.word_dim)
    emb("pos_emb", len(vocabs["pos"]), hp.pos_dim)
    emb("rel_emb", len(vocabs["rel"]), hp.rel_dim)
    tensors["dir_emb"] = rng.uniform(-0.05, 0.05, size=(2, 2))
    emb("lang_emb", len(vocabs["lang"]), hp.lang_dim)

    pre = np.zeros((len(vocabs["word"]), hp.word_dim))
    if pretrained:
        for form, idx in vocabs["word"].items():
            vec = pretrained.get(form)
            if vec is not None:
                pre[idx] = vec
    tensors["word_pretrained"] = pre

    in_dim = hp.word_dim + hp.pos_dim
    for layer in range(hp.layers):
        for direction in ("f", "b"):
            prefix = f"lstm{layer}_{direction}"
            tensors[f"{prefix}_Wx"] = _glorot(rng, 4 * half, in_dim)
            tensors[f"{prefix}_Wh"] = _glorot(rng, 4 * half, half)
            bias = np.zeros(4 * half)
            bias[half : 2 * half] = 1.0  # forget gate
            tensors[f"{prefix}_b"] = bias
        in_dim = hp.lstm_dim

    tensors["hidden_W"] = _glorot(rng, hp.hidden_dim, hp.query_dim)
    tensors["hidden_b"] = np.zeros(hp.hidden_dim)
    tensors["out_W"] = _glorot(rng, 2, hp.hidden_dim)
    return ClassifierParams(hp, vocabs, tensors)


def load_pretrained(path: str, dim: int) -> dict[str, np.ndarray]:
    """Text embeddings: one ``form v1 .. v_dim`` line per word."""
    table: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if len(parts) != dim + 1:
                raise ValueError(f"{path}:{line_no}: expected {dim} values")
            table[parts[0].lower()] = np.array([float(v) for v in parts[1:]])
    return table


# ---------------------------------------------------------------------------
# LSTM forward/backward


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _lstm_forward(Wx, Wh, b, xs):
    """xs (T, I) -> hs (T, H) plus the cache for backprop."""
    T = xs.shape[0]
    H = Wh.shape[1]
    hs = np.zeros((T, H))
    zx = xs @ Wx.T  # (T, 4H)
    h = np.zeros(H)
    c = np.zeros(H)
    cache = []
    for t in range(T):
        z = zx[t] + Wh @ h + b
        i = _sigmoid(z[:H])
        f = _sigmoid(z[H : 2 * H])
        g = np.tanh(z[2 * H : 3 * H])
        o = _sigmoid(z[3 * H :])
        c_prev = c
        c = f * c_prev + i * g
        tanh_c = np.tanh(c)
        h_prev = h
        h = o * tanh_c
        hs[t] = h
        cache.append((h_prev, c_prev, i, f, g, o, tanh_c))
    return hs, cache


def _lstm_backward(Wx, Wh, xs, cache, dhs):
    """Gradients of sum(dhs * hs) w.r.t. weights and inputs."""
    T, H = dhs.shape
    dz_all = np.zeros((T, 4 * H))
    dWh = np.zeros_like(Wh)
    dh_next = np.zeros(H)
    dc_next = np.zeros(H)
    for t in range(T - 1, -1, -1):
        h_prev, c_prev, i, f, g, o, tanh_c = cache[t]
        dh = dhs[t] + dh_next
        dc = dc_next + dh * o * (1.0 - tanh_c * tanh_c)
        do = dh * tanh_c
        di = dc * g
        df = dc * c_prev
        dg = dc * i
        dz = np.concatenate(
            (
                di * i * (1.0 - i),
                df * f * (1.0 - f),
                dg * (1.0 - g * g),
                do * o * (1.0 - o),
            )
        )
        dz_all[t] = dz
        dWh += np.outer(dz, h_prev)
        dh_next = Wh.T @ dz
        dc_next = dc * f
    dWx = dz_all.T @ xs
    db = dz_all.sum(axis=0)
    dxs = dz_all @ Wx
    return dWx, dWh, db, dxs


# ---------------------------------------------------------------------------
# Encoder


def _encode_with_cache(params: ClassifierParams, forms: Sequence[str], upos: Sequence[str]):
    hp = params.hp
    t = params.tensors
    word_idx = [params.word_index(f) for f in forms]
    pos_idx = [params.pos_index(p) for p in upos]
    x = np.concatenate(
        (
            t["word_emb"][word_idx] + t["word_pretrained"][word_idx],
            t["pos_emb"][pos_idx],
        ),
        axis=1,
    )
    layer_caches = []
    for layer in range(hp.layers):
        fw = f"lstm{layer}_f"
        bw = f"lstm{layer}_b"
        hs_f, cache_f = _lstm_forward(t[f"{fw}_Wx"], t[f"{fw}_Wh"], t[f"{fw}_b"], x)
        hs_b_rev, cache_b = _lstm_forward(t[f"{bw}_Wx"], t[f"{bw}_Wh"], t[f"{bw}_b"], x[::-1])
        out = np.concatenate((hs_f, hs_b_rev[::-1]), axis=1)
        layer_caches.append((x, cache_f, cache_b))
        x = out
    return x, (word_idx, pos_idx, layer_caches)


def encode(params: ClassifierParams, forms: Sequence[str], upos: Sequence[str]) -> np.ndarray:
    """Per-token recurrent representations, shape (len(forms), lstm_dim)."""
    eta, _ = _encode_with_cache(params, forms, upos)
    return eta


def _encoder_backward(params: ClassifierParams, cache, d_eta: np.ndarray, grads: dict[str, np.ndarray]):
    hp = params.hp
    t = params.tensors
    word_idx, pos_idx, layer_caches = cache
    half = hp.lstm_dim // 2
    dout = d_eta
    for layer in range(hp.layers - 1, -1, -1):
        x, cache_f, cache_b = layer_caches[layer]
        fw = f"lstm{layer}_f"
        bw = f"lstm{layer}_b"
        dWx, dWh, db, dx_f = _lstm_backward(t[f"{fw}_Wx"], t[f"{fw}_Wh"], x, cache_f, dout[:, :half])
        grads[f"{fw}_Wx"] += dWx
        grads[f"{fw}_Wh"] += dWh
        grads[f"{fw}_b"] += db
        dWx, dWh, db, dx_b_rev = _lstm_backward(
            t[f"{bw}_Wx"], t[f"{bw}_Wh"], x[::-1], cache_b, dout[:, half:][::-1]
        )
        grads[f"{bw}_Wx"] += dWx
        grads[f"{bw}_Wh"] += dWh
        grads[f"{bw}_b"] += db
        dout = dx_f + dx_b_rev[::-1]
    for pos, (w, p) in enumerate(zip(word_idx, pos_idx)):
        grads["word_emb"][w] += dout[pos, : hp.word_dim]
        grads["pos_emb"][p] += dout[pos, hp.word_dim :]


# ---------------------------------------------------------------------------
# Direction scorer


def _score_with_cache(params: ClassifierParams, eta: np.ndarray, m: int, h: int, label: str, language: str):
    hp = params.hp
    t = params.tensors
    rel = params.rel_index(label)
    lang = params.lang_index(language)
    side = 1 if h > m else 0
    q = np.concatenate((eta[m - 1], eta[h - 1], t["rel_emb"][rel], t["dir_emb"][side], t["lang_emb"][lang]))
    a = t["hidden_W"] @ q + t["hidden_b"]
    phi = np.maximum(a, 0.0)
    logits = t["out_W"] @ phi
    shifted = logits - logits.max()
    logp = shifted - np.log(np.exp(shifted).sum())
    return logp, (q, a, phi, rel, side, lang)


def score_direction(
    params: ClassifierParams,
    eta: np.ndarray,
    m: int,
    h: int,
    label: str,
    language: str,
) -> np.ndarray:
    """Probabilities ``[p(-1), p(+1)]`` for the dependency's new direction."""
    logp, _ = _score_with_cache(params, eta, m, h, label, language)
    return np.exp(logp)


def _zero_grads(params: ClassifierParams) -> dict[str, np.ndarray]:
    return {name: np.zeros_like(tensor) for name, tensor in params.trainable().items()}


def nll_and_grads(
    params: ClassifierParams,
    batch: Sequence[tuple[DepTree, Sequence[ReorderInstance]]],
) -> tuple[float, dict[str, np.ndarray]]:
    """Mean negative log-likelihood over the batch and its gradients."""
    grads = _zero_grads(params)
    hp = params.hp
    total = 0.0
    count = 0
    for tree, instances in batch:
        if not instances:
            continue
        eta, enc_cache = _encode_with_cache(params, tree.forms(), tree.upos_tags())
        d_eta = np.zeros_like(eta)
        for inst in instances:
            logp, (q, a, phi, rel, side, lang) = _score_with_cache(
                params, eta, inst.m, inst.h, inst.label, inst.language
            )
            y = DIRECTIONS.index(inst.gold_direction)
            total += -logp[y]
            count += 1
            dlogits = np.exp(logp)
            dlogits[y] -= 1.0
            grads["out_W"] += np.outer(dlogits, phi)
            dphi = params.tensors["out_W"].T @ dlogits
            da = dphi * (a > 0)
            grads["hidden_W"] += np.outer(da, q)
            grads["hidden_b"] += da
            dq = params.tensors["hidden_W"].T @ da
            w = hp.lstm_dim
            d_eta[inst.m - 1] += dq[:w]
            d_eta[inst.h - 1] += dq[w : 2 * w]
            offset = 2 * w
            grads["rel_emb"][rel] += dq[offset : offset + hp.rel_dim]
            offset += hp.rel_dim
            grads["dir_emb"][side] += dq[offset : offset + 2]
            offset += 2
            grads["lang_emb"][lang] += dq[offset:]
        _encoder_backward(params, enc_cache, d_eta, grads)
    if count == 0:
        raise ValueError("batch contains no instances")
    for name in grads:
        grads[name] /= count
    return total / count, grads


def batch_nll(params: ClassifierParams, batch: Sequence[tuple[DepTree, Sequence[ReorderInstance]]]) -> float:
    """Mean NLL without gradients."""
    total = 0.0
    count = 0
    for tree, instances in batch:
        if not instances:
            continue
        eta = encode(params, tree.forms(), tree.upos_tags())
        for inst in instances:
            logp, _ = _score_with_cache(params, eta, inst.m, inst.h, inst.label, inst.language)
            total += -logp[DIRECTIONS.index(inst.gold_direction)]
            count += 1
    if count == 0:
        raise ValueError("batch contains no instances")
    return total / count


def evaluate(
    params: ClassifierParams,
    batch: Sequence[tuple[DepTree, Sequence[ReorderInstance]]],
) -> tuple[float, float]:
    """(mean NLL, accuracy) over the batch."""
    total = 0.0
    correct = 0
    count = 0
    for tree, instances in batch:
        if not instances:
            continue
        eta = encode(params, tree.forms(), tree.upos_tags())
        for inst in instances:
            logp, _ = _score_with_cache(params, eta, inst.m, inst.h, inst.label, inst.language)
            y = DIRECTIONS.index(inst.gold_direction)
            total += -logp[y]
            if int(np.argmax(logp)) == y:
                correct += 1
            count += 1
    if count == 0:
        raise ValueError("batch contains no instances")
    return total / count, correct / count


# ---------------------------------------------------------------------------
# Gradient check


def grad_check(
    params: ClassifierParams,
    tree: DepTree,
    instances: Sequence[ReorderInstance],
    epsilon: float = 1e-4,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    Walks every entry of every trainable tensor; intended for tiny
    configurations.
    """
    batch = [(tree, list(instances))]
    _, analytic = nll_and_grads(params, batch)
    worst = 0.0
    for name, tensor in params.trainable().items():
        flat = tensor.reshape(-1)
        grad_flat = analytic[name].reshape(-1)
        for pos in range(flat.size):
            original = flat[pos]
            flat[pos] = original + epsilon
            plus = batch_nll(params, batch)
            flat[pos] = original - epsilon
            minus = batch_nll(params, batch)
            flat[pos] = original
            numeric = (plus - minus) / (2.0 * epsilon)
            denom = max(abs(grad_flat[pos]) + abs(numeric), 1e-8)
            worst = max(worst, abs(grad_flat[pos] - numeric) / denom)
    return worst


# ---------------------------------------------------------------------------
# Training


@dataclass
class EpochStats:
    epoch: int
    train_nll: float
    heldout_nll: float
    heldout_acc: float


@dataclass
class TrainResult:
    params: ClassifierParams
    history: list[EpochStats] = field(default_factory=list)

    @property
    def best_heldout_nll(self) -> float:
        return min(row.heldout_nll for row in self.history)

    @property
    def best_heldout_acc(self) -> float:
        return max(row.heldout_acc for row in self.history)


def _group_by_sentence(
    instances: Sequence[ReorderInstance],
    index: dict[tuple[str, str], DepTree],
) -> list[tuple[DepTree, list[ReorderInstance]]]:
    grouped: dict[tuple[str, str], list[ReorderInstance]] = {}
    for inst in instances:
        key = (inst.language, inst.sentence_id)
        if key not in index:
            raise ValueError(f"no sentence for instance {key}")
        grouped.setdefault(key, []).append(inst)
    return [(index[key], group) for key, group in grouped.items()]


def train(
    instances: Sequence[ReorderInstance],
    sentences: Iterable[DepTree],
    hp: Hyperparams | None = None,
    seed: int = 1,
    pretrained: dict[str, np.ndarray] | None = None,
    log_path: str | None = None,
) -> TrainResult:
    """Minibatch Adam on the log-likelihood with a held-out early stop.

    A seeded split reserves ``hp.heldout_fraction`` of the instances; training
    stops when the held-out NLL has not improved for ``hp.patience`` epochs.
    The returned parameters are the best-held-out snapshot.
    """
    hp = hp or Hyperparams()
    if len(instances) < 100:
        raise ValueError(f"need at least 100 instances, got {len(instances)}")
    sentences = list(sentences)
    index = {(tree.language, tree.sentence_id): tree for tree in sentences}

    rng = np.random.RandomState(seed)
    order = rng.permutation(len(instances))
    heldout_n = max(1, int(round(hp.heldout_fraction * len(instances))))
    heldout = [instances[i] for i in order[:heldout_n]]
    training = [instances[i] for i in order[heldout_n:]]
    heldout_batch = _group_by_sentence(heldout, index)

    vocabs = build_vocabs(sentences, instances)
    params = init_params(hp, vocabs, seed=seed, pretrained=pretrained)

    moments = {name: (np.zeros_like(t), np.zeros_like(t)) for name, t in params.trainable().items()}
    step = 0

    def adam_update(grads: dict[str, np.ndarray]):
        nonlocal step
        step += 1
        norm = np.sqrt(sum(float((g * g).sum()) for g in grads.values()))
        scale = hp.clip_norm / norm if norm > hp.clip_norm else 1.0
        for name, grad in grads.items():
            grad = grad * scale
            m, v = moments[name]
            m *= hp.beta1
            m += (1 - hp.beta1) * grad
            v *= hp.beta2
            v += (1 - hp.beta2) * grad * grad
            m_hat = m / (1 - hp.beta1**step)
            v_hat = v / (1 - hp.beta2**step)
            params.tensors[name] -= hp.learning_rate * m_hat / (np.sqrt(v_hat) + hp.adam_epsilon)

    best_nll = float("inf")
    best_params = params.copy()
    since_best = 0
    history: list[EpochStats] = []
    log_handle = open(log_path, "w", encoding="utf-8") if log_path else None
    try:
        if log_handle:
            log_handle.write("epoch\ttrain_nll\theldout_nll\theldout_acc\n")
        for epoch in range(1, hp.max_epochs + 1):
            groups = _group_by_sentence(training, index)
            rng.shuffle(groups)
            batch: list[tuple[DepTree, list[ReorderInstance]]] = []
            tokens = 0
            epoch_nll = 0.0
            epoch_count = 0

            def flush_batch():
                nonlocal batch, tokens, epoch_nll, epoch_count
                if not batch:
                    return
                size = sum(len(group) for _, group in batch)
                nll, grads = nll_and_grads(params, batch)
                adam_update(grads)
                epoch_nll += nll * size
                epoch_count += size
                batch = []
                tokens = 0

            for tree, group in groups:
                batch.append((tree, group))
                tokens += len(tree)
                if tokens >= hp.minibatch_tokens:
                    flush_batch()
            flush_batch()

            heldout_nll, heldout_acc = evaluate(params, heldout_batch)
            row = EpochStats(epoch, epoch_nll / max(epoch_count, 1), heldout_nll, heldout_acc)
            history.append(row)
            if log_handle:
                log_handle.write(
                    f"{row.epoch}\t{row.train_nll:.6f}\t{row.heldout_nll:.6f}\t{row.heldout_acc:.6f}\n"
                )
            if heldout_nll < best_nll:
                best_nll = heldout_nll
                best_params = params.copy()
                since_best = 0
            else:
                since_best += 1
                if since_best >= hp.patience:
                    break
    finally:
        if log_handle:
            log_handle.close()
    return TrainResult(params=best_params, history=history)


# ---------------------------------------------------------------------------
# Application


def classify_reorder(tree: DepTree, params: ClassifierParams) -> DepTree:
    """Reorder a full tree by the classifier's preferred directions."""
    if not tree.is_full:
        raise ValueError(f"{tree.sentence_id}: classifier reordering needs a full tree")
    eta = encode(params, tree.forms(), tree.upos_tags())
    sides: dict[int, int] = {}
    for tok in tree.tokens:
        if tok.head == 0:
            continue
        probs = score_direction(params, eta, tok.index, tok.head, tok.deprel or "", tree.language)
        if probs[1] > probs[0]:
            sides[tok.index] = 1
        elif probs[0] > probs[1]:
            sides[tok.index] = -1
        else:  # exact tie: keep the original side
            sides[tok.index] = 1 if tok.head > tok.index else -1
    return linearize(tree, sides)


# ---------------------------------------------------------------------------
# Model file


def save_model(params: ClassifierParams, path: str):
    """Versioned binary container: magic, JSON header, little-endian float32."""
    manifest = [(name, list(tensor.shape)) for name, tensor in params.tensors.items()]
    header = {
        "hyperparams": asdict(params.hp),
        "vocabs": {
            name: [form for form, _ in sorted(v.items(), key=lambda kv: kv[1])]
            for name, v in params.vocabs.items()
        },
        "tensors": manifest,
    }
    blob = json.dumps(header).encode("utf-8")
    with open(path, "wb") as handle:
        handle.write(MODEL_MAGIC)
        handle.write(struct.pack("<I", len(blob)))
        handle.write(blob)
        for name, _ in manifest:
            handle.write(params.tensors[name].astype("<f4").tobytes(order="C"))


def load_model(path: str) -> ClassifierParams:
    with open(path, "rb") as handle:
        magic = handle.read(len(MODEL_MAGIC))
        if magic != MODEL_MAGIC:
            raise ValueError(f"{path}: not a reordering model file")
        (header_len,) = struct.unpack("<I", handle.read(4))
        header = json.loads(handle.read(header_len).decode("utf-8"))
        hp = Hyperparams(**header["hyperparams"])
        vocabs = {
            name: {form: idx for idx, form in enumerate(forms)}
            for name, forms in header["vocabs"].items()
        }
        tensors = {}
        for name, shape in header["tensors"]:
            count = int(np.prod(shape)) if shape else 1
            raw = handle.read(4 * count)
            if len(raw) != 4 * count:
                raise ValueError(f"{path}: truncated tensor {name}")
            tensors[name] = np.frombuffer(raw, dtype="<f4").astype(np.float64).reshape(shape)
    return ClassifierParams(hp, vocabs, tensors)
