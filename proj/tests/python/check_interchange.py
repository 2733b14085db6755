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

"""Cross-checks the NPY + manifest.json interchange against numpy."""

import json
import pathlib
import subprocess
import sys
import tempfile

import numpy as np


def run(tool, *args):
    return subprocess.run([tool, *map(str, args)], check=True, capture_output=True, text=True).stdout


def main():
    tool = sys.argv[1]
    failures = []
    rng = np.random.default_rng(3)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)

        for shape in [(), (0,), (5,), (2, 3), (4, 1, 2), (3, 7, 2, 2), (1, 300)]:
            a = rng.standard_normal(shape).astype("<f4")
            src, out = tmp / "src.npy", tmp / "out.npy"
            np.save(src, a)
            run(tool, "copy", src, out)
            if src.read_bytes() != out.read_bytes():
                failures.append(f"copy {shape}: bytes differ from np.save")

            ramp = tmp / "ramp.npy"
            run(tool, "ramp", ramp, *shape)
            want = (0.5 * np.arange(int(np.prod(shape))) - 3.0).astype("<f4").reshape(shape)
            got = np.load(ramp)
            if got.dtype != np.dtype("<f4") or got.shape != shape or not np.array_equal(got, want):
                failures.append(f"ramp {shape}: np.load mismatch")
            np.save(src, want)
            if src.read_bytes() != ramp.read_bytes():
                failures.append(f"ramp {shape}: bytes differ from np.save")

        # Fortran-order input is refused with the field named; version 2.0 headers are read.
        a = rng.standard_normal((3, 4)).astype("<f4")
        fortran = tmp / "f.npy"
        np.save(fortran, np.asfortranarray(a))
        proc = subprocess.run([tool, "copy", str(fortran), str(tmp / "c.npy")],
                              capture_output=True, text=True)
        if proc.returncode == 0 or "fortran_order" not in proc.stderr:
            failures.append("fortran-order input was not refused")
        with open(tmp / "v2.npy", "wb") as f:
            np.lib.format.write_array(f, a, version=(2, 0))
        run(tool, "copy", tmp / "v2.npy", tmp / "c2.npy")
        if not np.array_equal(np.load(tmp / "c2.npy"), a):
            failures.append("version 2.0 input misread")

        # Exporter-style directory.
        emb = tmp / "emb"
        emb.mkdir()
        entries = []
        tensors = {
            ("set0/a.wav", "clap"): (rng.standard_normal(512).astype("<f4"), None, {}),
            ("set0/a.wav", "beats"): (rng.standard_normal((12, 768)).astype("<f4"), 0, {}),
            ("set0/a.wav", "panns"): (
                rng.standard_normal((64, 10, 4)).astype("<f4"),
                1,
                {"layer_id": "conv_block2", "layout": "channels_first"},
            ),
            ("set0/a.wav", "ast"): (
                rng.standard_normal((101, 32)).astype("<f4"),
                0,
                {"layer_id": "block4", "layout": "tokens", "window_seconds": 1.0,
                 "shift_sensitive": True},
            ),
        }
        for k, ((audio, source), (array, axis, extra)) in enumerate(tensors.items()):
            name = f"t{k}.npy"
            np.save(emb / name, array)
            entries.append({"audio": audio, "tensor": name, "time_axis": axis,
                            "source_id": source, "shape": list(array.shape), **extra})
        (emb / "manifest.json").write_text(json.dumps({"version": 1, "entries": entries}))
        lines = run(tool, "manifest", emb / "manifest.json").splitlines()
        if len(lines) != len(tensors):
            failures.append(f"manifest: {len(lines)} entries loaded")
        for line, ((audio, source), (array, axis, _)) in zip(lines, tensors.items()):
            got_audio, got_source, shape, got_axis, total = line.split()
            want_shape = "x".join(map(str, array.shape))
            if (got_audio, got_source, shape) != (audio, source, want_shape):
                failures.append(f"manifest entry {line!r}")
            if got_axis != ("none" if axis is None else str(axis)):
                failures.append(f"manifest time axis {line!r}")
            if abs(float(total) - float(array.astype(np.float64).sum())) > 1e-3 * (1 + abs(float(total))):
                failures.append(f"manifest values {line!r}")

    for f in failures:
        print("FAIL", f)
    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
