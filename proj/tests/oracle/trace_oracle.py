#!/usr/bin/env python3
# Copyright 2026 The qtwsn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Brute-force matrix oracle for the stage-by-stage teleportation trace.

Builds every register-wide operator as an explicit Kronecker product (or a
projector sum for controlled gates), runs both circuit variants on the two
basis payloads, and compares each stage against the printed expressions
transcribed below. Writes one `<variant> <stage> <verdict>` line per stage.

Usage: trace_oracle.py > tests/golden/trace_verdicts.txt
"""

import itertools
import sys

import numpy as np

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)


def kron(*ms):
    out = np.eye(1, dtype=complex)
    for m in ms:
        out = np.kron(out, m)
    return out


def single(n, q, g):
    return kron(*[g if k == q else I2 for k in range(1, n + 1)])


def controlled_x(n, controls, target):
    # sum over control assignments: all-ones branch gets X on target
    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=complex)
    for bits in itertools.product([0, 1], repeat=len(controls)):
        ops = []
        for k in range(1, n + 1):
            if k in controls:
                ops.append(P1 if bits[controls.index(k)] else P0)
            elif k == target:
                ops.append(X if all(bits) else I2)
            else:
                ops.append(I2)
        u += kron(*ops)
    return u


def stages(alpha, beta, variant):
    psi = np.array([alpha, beta], dtype=complex)
    zero = np.array([1, 0], dtype=complex)
    one = np.array([0, 1], dtype=complex)
    if variant == "feynman":
        n = 3
        state = np.kron(np.kron(psi, zero), zero)
        ops = [single(3, 2, H), controlled_x(3, [2], 3),
               controlled_x(3, [1], 2), single(3, 1, H)]
    else:
        n = 4
        state = np.kron(np.kron(np.kron(psi, zero), zero), one)
        ops = [single(4, 2, H), controlled_x(4, [2, 4], 3),
               controlled_x(4, [1, 4], 2), single(4, 1, H)]
    out = [state]
    for u in ops:
        state = u @ state
        out.append(state)
    if n == 4:
        for s in out:
            assert np.allclose(s[0::2], 0, atol=1e-14)
        out = [s[1::2] for s in out]
    return out


R2 = 1 / np.sqrt(2)

# (coefficient on alpha, coefficient on beta, ket) transcribed from the
# printed final line of each stage
PRINTED = {
    "feynman": [
        [(1, 0, "000"), (0, 1, "100")],
        [(R2, 0, "000"), (R2, 0, "010"), (0, R2, "101"), (0, R2, "110")],
        [(R2, 0, "000"), (R2, 0, "011"), (0, R2, "101"), (0, R2, "111")],
        [(R2, 0, "000"), (R2, 0, "011"), (0, R2, "111"), (0, R2, "101")],
        None,
    ],
    "toffoli": [
        [(1, 0, "000"), (0, 1, "100")],
        [(R2, 0, "000"), (R2, 0, "010"), (0, R2, "101"), (0, R2, "110")],
        [(R2, 0, "001"), (R2, 0, "010"), (0, R2, "101"), (0, R2, "110")],
        [(R2, 0, "000"), (R2, 0, "010"), (0, R2, "101"), (0, R2, "110")],
        None,
    ],
}
# final stage: ½|m1 m2> ⊗ branch, branch terms in (alpha, beta) form
FINAL = [
    (0.5, 0, "000"), (0, 0.5, "001"),
    (0, 0.5, "010"), (0.5, 0, "011"),
    (0.5, 0, "100"), (0, -0.5, "101"),
    (0.5, 0, "111"), (0, -0.5, "110"),
]


def printed_vector(terms, alpha, beta):
    v = np.zeros(8, dtype=complex)
    for ca, cb, ket in terms:
        v[int(ket, 2)] += ca * alpha + cb * beta
    return v


def main():
    for variant in ("feynman", "toffoli"):
        basis = [stages(1, 0, variant), stages(0, 1, variant)]
        for k in range(5):
            terms = PRINTED[variant][k] or FINAL
            ok = all(
                np.allclose(basis[j][k], printed_vector(terms, *ab), atol=1e-12)
                for j, ab in enumerate([(1, 0), (0, 1)]))
            sys.stdout.write(
                f"{variant} phi_{k} {'MATCH' if ok else 'MISMATCH'}\n")


if __name__ == "__main__":
    main()
