#!/usr/bin/env python3
"""Writes the VQEMB1 reader fixtures and their expected verdicts.

Byte layout, written by hand with struct so the fixtures do not depend on
the C++ writer:

    0-5   b"VQEMB1"
    6     model id   (0 wav2vec2-base, 1 wav2vec2-large, 2 hubert-large)
    7     variant    (0 speech, 1 nsa, 2 speech-qcp, 3 speech-zff, 4 nsa-qcp, 5 nsa-zff)
    8-11  n_layers   uint32 LE
    12-15 dim        uint32 LE
    16-   n_layers * dim float32 LE, row-major by layer

    python3 tests/fixtures/make_vqemb1_fixtures.py tests/fixtures/vqemb1
"""

import json
import math
import os
import struct
import sys

SHAPES = {0: (13, 768), 1: (25, 1024), 2: (25, 1024)}


def payload(n_layers, dim, special=None):
    vals = [math.sin(0.001 * i) * (1 + (i // dim)) for i in range(n_layers * dim)]
    if special:
        for idx, v in special.items():
            vals[idx] = v
    return struct.pack("<%df" % len(vals), *vals)


def header(model, variant, n_layers, dim, magic=b"VQEMB1", endian="<"):
    return magic + bytes([model, variant]) + struct.pack(endian + "II", n_layers, dim)


def conformant(model, variant, special=None):
    n, d = SHAPES[model]
    return header(model, variant, n, d) + payload(n, d, special)


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    base = conformant(0, 0)
    cases = {
        "ok_base_speech.vqemb": (base, "ok"),
        "ok_large_nsa_qcp.vqemb": (conformant(1, 4), "ok"),
        "ok_hubert_nsa.vqemb": (conformant(2, 1), "ok"),
        # Signed zero, subnormal and float32 extremes are all finite.
        "ok_base_speech_zff_edge_values.vqemb":
            (conformant(0, 3, {0: -0.0, 1: 1e-45, 2: 3.4028234e38, 3: -3.4028234e38}), "ok"),
        "bad_magic.vqemb": (b"VQEMB2" + base[6:], "BadMagic"),
        "bad_magic_lowercase.vqemb": (b"vqemb1" + base[6:], "BadMagic"),
        "bad_model_id.vqemb": (header(3, 0, 13, 768) + payload(13, 768), "Parse"),
        "bad_variant.vqemb": (header(0, 6, 13, 768) + payload(13, 768), "Parse"),
        "bad_base_with_25_layers.vqemb":
            (header(0, 0, 25, 768) + payload(25, 768), "LayerDimMismatch"),
        "bad_hubert_dim_768.vqemb":
            (header(2, 2, 25, 768) + payload(25, 768), "LayerDimMismatch"),
        "bad_big_endian_header.vqemb":
            (header(0, 0, 13, 768, endian=">") + payload(13, 768), "LayerDimMismatch"),
        "bad_truncated_payload.vqemb": (base[:-4], "Truncated"),
        "bad_truncated_one_byte.vqemb": (base[:-1], "Truncated"),
        "bad_trailing_byte.vqemb": (base + b"\x00", "Truncated"),
        "bad_short_header.vqemb": (base[:10], "Truncated"),
        "bad_empty.vqemb": (b"", "Truncated"),
        "bad_nan_value.vqemb": (conformant(0, 0, {5000: float("nan")}), "NonFinite"),
        "bad_inf_value.vqemb": (conformant(0, 0, {9983: float("inf")}), "NonFinite"),
    }
    expected = {}
    for name, (data, verdict) in sorted(cases.items()):
        with open(os.path.join(out_dir, name), "wb") as f:
            f.write(data)
        expected[name] = verdict
    with open(os.path.join(out_dir, "expected.json"), "w") as f:
        json.dump(expected, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "vqemb1"))
