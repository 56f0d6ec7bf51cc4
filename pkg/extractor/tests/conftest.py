"""Session fixture: a tiny local BERT checkpoint, built offline.

The checkpoint is randomly initialized (seeded) and saved to a temp dir, so
tests exercise the real tokenizer/model loading path without network access
or meaningful weights.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

# Must be set before transformers is imported anywhere in the test process.
os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")

import pytest
import torch

from tinymodel import VOCAB


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory) -> Path:
    from transformers import AutoTokenizer, BertConfig, BertModel

    target = tmp_path_factory.mktemp("tiny-bert")
    # Plain vocab.txt plus a config naming the class: the legacy layout every
    # transformers release can load (constructor kwargs shifted across majors).
    (target / "vocab.txt").write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    (target / "tokenizer_config.json").write_text(
        json.dumps({"tokenizer_class": "BertTokenizer", "do_lower_case": True}),
        encoding="utf-8",
    )
    tokenizer = AutoTokenizer.from_pretrained(target)
    assert tokenizer.vocab_size == len(VOCAB), "wordpiece vocab failed to load"

    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=4,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    torch.manual_seed(7)
    model = BertModel(config)
    model.save_pretrained(target)
    return target
