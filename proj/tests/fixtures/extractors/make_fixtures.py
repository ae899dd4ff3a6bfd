#!/usr/bin/env python3
"""Writes the tiny extractor-output fixtures used by test-contract.

Standard library only. The byte layout is produced here with struct, so
the C++ readers are checked against an encoder they do not share code with.
Rerun after changing a fixture:  python3 make_fixtures.py
"""

import json
import math
import os
import struct

HERE = os.path.dirname(os.path.abspath(__file__))


def write_fuf(path, utt_id, rows, frame_hop_ms=None):
    dims = len(rows[0]) if rows else 4
    meta = {"utt_id": utt_id}
    if frame_hop_ms is not None:
        meta["frame_hop_ms"] = frame_hop_ms
    blob = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as f:
        f.write(b"FUF1")
        f.write(struct.pack("<II", len(rows), dims))
        for row in rows:
            f.write(struct.pack("<%df" % dims, *row))
        f.write(struct.pack("<I", len(blob)))
        f.write(blob)


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=1, ensure_ascii=False)
        f.write("\n")


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def f32(x):
    return struct.unpack("<f", struct.pack("<f", x))[0]


def softmax(scores):
    e = [math.exp(s) for s in scores]
    total = sum(e)
    return [f32(v / total) for v in e]


def features():
    os.makedirs(os.path.join(HERE, "features"), exist_ok=True)
    # One second of speech at a 20 ms hop: 50 frames.
    rows = [[math.sin(0.1 * t + d) for d in range(4)] for t in range(50)]
    write_fuf(os.path.join(HERE, "features", "spk1-utt1.fuf"), "spk1-utt1", rows, 20.0)
    rows = [[0.25 * d - 0.01 * t for d in range(4)] for t in range(7)]
    write_fuf(os.path.join(HERE, "features", "spk2-utt1.fuf"), "spk2-utt1", rows, 20.0)
    write_json(os.path.join(HERE, "features", "manifest.json"), {"entries": [
        {"utt_id": "spk1-utt1", "speaker_id": "spk1", "language": "en", "group": "rAE",
         "path": "spk1-utt1.fuf"},
        {"utt_id": "spk2-utt1", "speaker_id": "spk2", "language": "en", "group": "rJE",
         "path": "spk2-utt1.fuf"},
    ]})


def posteriors():
    out = os.path.join(HERE, "posteriors")
    os.makedirs(out, exist_ok=True)
    labels = ["a", "i", "s", "th"]
    intended = ["SIL", "a", "th", "th", "s", "i", "SIL"]
    rows = []
    for k, lab in enumerate(intended):
        scores = [0.3 * ((k + j) % 3) for j in range(len(labels))]
        if lab != "SIL":
            scores[labels.index(lab)] += 2.5
        rows.append(softmax(scores))
    write_fuf(os.path.join(out, "spk1-utt1.post"), "spk1-utt1", rows)
    write_json(os.path.join(out, "spk1-utt1.post.meta.json"),
               {"phoneme_labels": labels, "intended": intended})

    # An utterance the aligner marked as silence throughout.
    rows = [softmax([0.0, 0.1 * k, 0.0, 0.2]) for k in range(3)]
    write_fuf(os.path.join(out, "spk2-sil.post"), "spk2-sil", rows)
    write_json(os.path.join(out, "spk2-sil.post.meta.json"),
               {"phoneme_labels": labels, "intended": ["SIL"] * 3})

    write_json(os.path.join(out, "manifest.json"), {"entries": [
        {"utt_id": "spk1-utt1", "speaker_id": "spk1", "language": "en", "group": "rAE",
         "path": "spk1-utt1.post"},
        {"utt_id": "spk2-sil", "speaker_id": "spk2", "language": "en", "group": "rJE",
         "path": "spk2-sil.post"},
    ]})


def transcripts():
    out = os.path.join(HERE, "transcripts")
    os.makedirs(out, exist_ok=True)
    write_jsonl(os.path.join(out, "words.jsonl"), [
        {"utt_id": "spk1-utt1", "level": "word", "tokens": ["the", "sea"], "speaker_id": "spk1"},
        {"utt_id": "spk2-silent", "level": "word", "tokens": [], "speaker_id": "spk2"},
    ])
    write_jsonl(os.path.join(out, "phones.jsonl"), [
        {"utt_id": "spk1-utt1", "level": "phone", "tokens": ["ð", "ə", "s", "iː"],
         "speaker_id": "spk1"},
        {"utt_id": "spk2-silent", "level": "phone", "tokens": [], "speaker_id": "spk2"},
    ])


if __name__ == "__main__":
    features()
    posteriors()
    transcripts()
