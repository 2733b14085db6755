#!/usr/bin/env python3
# Copyright 2026 The Timbre Align Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Converts one study (audio directory + rating matrix) into a manifest.

The matrix file is a square table of averaged ratings, whitespace or comma
separated; empty cells, "nan" and "-" mark unrated pairs. Row k belongs to the
k-th audio file in sorted filename order, or in the order given by --order.

    convert_corpus.py --name grey1977 --matrix grey/dissim.txt \
        --audio-dir grey/audio --out data/corpus

writes data/corpus/grey1977.json with audio paths relative to --out.
Studies that report similarity rather than dissimilarity take --similarity;
values are then mapped to max + min - v so that larger always means more
different.
"""

import argparse
import json
import os
import pathlib
import sys

import numpy as np

AUDIO_SUFFIXES = {".wav", ".wave"}


def read_matrix(path):
    rows = []
    for line in pathlib.Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cells = line.split(",") if "," in line else line.split()
        rows.append([float("nan") if c.strip().lower() in ("", "nan", "-") else float(c)
                     for c in cells])
    m = np.array(rows, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{path}: matrix is {m.shape}, expected square")
    return m


def audio_files(audio_dir, order):
    audio_dir = pathlib.Path(audio_dir)
    if order:
        names = [n.strip() for n in pathlib.Path(order).read_text().splitlines() if n.strip()]
        files = [audio_dir / n for n in names]
        missing = [str(f) for f in files if not f.is_file()]
        if missing:
            raise ValueError(f"missing audio: {', '.join(missing)}")
        return files
    return sorted(p for p in audio_dir.iterdir() if p.suffix.lower() in AUDIO_SUFFIXES)


def ratings_from(m, similarity):
    n = m.shape[0]
    upper = m[np.triu_indices(n, 1)]
    lower = m.T[np.triu_indices(n, 1)]
    both = ~np.isnan(upper) & ~np.isnan(lower)
    if both.any() and not np.allclose(upper[both], lower[both], rtol=1e-6, atol=1e-9):
        raise ValueError("matrix is not symmetric")
    values = np.where(np.isnan(upper), lower, upper)
    if similarity:
        finite = values[~np.isnan(values)]
        values = finite.max() + finite.min() - values
    ratings = []
    for (i, j), v in zip(zip(*np.triu_indices(n, 1)), values):
        if not np.isnan(v):
            ratings.append([int(i), int(j), float(v)])
    return ratings


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--name", required=True)
    parser.add_argument("--matrix", required=True)
    parser.add_argument("--audio-dir", required=True)
    parser.add_argument("--order", help="file listing audio names, one per matrix row")
    parser.add_argument("--pitch")
    parser.add_argument("--similarity", action="store_true")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    try:
        m = read_matrix(args.matrix)
        files = audio_files(args.audio_dir, args.order)
        if len(files) != m.shape[0]:
            raise ValueError(f"{len(files)} audio files for a {m.shape[0]}x{m.shape[0]} matrix")
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        manifest = {
            "name": args.name,
            "audio": [os.path.relpath(f.resolve(), out.resolve()) for f in files],
            "ratings": ratings_from(m, args.similarity),
        }
        if args.pitch:
            manifest["pitch"] = args.pitch
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    (out / f"{args.name}.json").write_text(json.dumps(manifest, indent=1) + "\n")
    print(f"{args.name}: {len(files)} samples, {len(manifest['ratings'])} ratings")
    return 0


if __name__ == "__main__":
    sys.exit(main())
