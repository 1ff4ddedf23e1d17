#!/usr/bin/env python3
# Copyright 2026 The indirect Authors
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

"""Brute-force Lie closure oracle, independent of the C++ library.

Repeatedly adds every pairwise commutator of the current spanning set and
measures the real rank with numpy's SVD until the rank stops growing. Used to
derive the expected dimensions frozen into the C++ tests.
"""
import itertools
import sys

import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def gell_mann(n):
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), complex); m[j, k] = m[k, j] = 1; out.append(m)
            m = np.zeros((n, n), complex); m[j, k] = -1j; m[k, j] = 1j; out.append(m)
    for l in range(1, n):
        d = np.zeros(n); d[:l] = 1; d[l] = -l
        out.append(np.diag(d * np.sqrt(2.0 / (l * (l + 1)))).astype(complex))
    return out


def vec(m):
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def rank(ms):
    if not ms:
        return 0
    return np.linalg.matrix_rank(np.array([vec(m) for m in ms]), tol=1e-8)


def basis_of(ms):
    a = np.array([vec(m) for m in ms])
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    r = int((s > 1e-8 * max(1, s[0])).sum())
    n = int(round(np.sqrt(a.shape[1] // 2)))
    return [(v[: n * n] + 1j * v[n * n:]).reshape(n, n) for v in vt[:r]]


def closure_dim(gens):
    n = gens[0].shape[0]
    gens = [g - np.trace(g) / n * np.eye(n) for g in gens]
    span = basis_of(gens)
    while True:
        cand = span + [a @ b - b @ a for a, b in itertools.combinations(span, 2)]
        nxt = basis_of(cand)
        if len(nxt) == len(span):
            return len(span)
        span = nxt


def indirect(K, L, couplings, control):
    ns, na = K.shape[0], L.shape[0]
    J = np.kron(K, np.eye(na)) + np.kron(np.eye(ns), L)
    for S, s in couplings:
        J = J + 1j * np.kron(S, s)
    return [J] + [np.kron(np.eye(ns), b) for b in control]


def main():
    su2 = [1j * X, 1j * Y, 1j * Z]
    results = {}
    results["su2 from ix,iy"] = closure_dim([1j * X, 1j * Y])
    for n in (2, 3, 4):
        results[f"gell_mann({n})"] = closure_dim([1j * g for g in gell_mann(n)])
    # Two qubits: drift i*sigma_x on S, Ising coupling, full control on A.
    results["two-qubit ix drift + zz"] = closure_dim(
        indirect(1j * X, 0 * I2, [(1j * Z, 1j * Z)], su2))
    # Same coupling with drift i(sigma_x + sigma_z)/sqrt2.
    results["two-qubit i(x+z)/sqrt2 drift + zz"] = closure_dim(
        indirect(1j * (X + Z) / np.sqrt(2), 0 * I2, [(1j * Z, 1j * Z)], su2))
    results["two-qubit no drift zz"] = closure_dim(
        indirect(0 * I2, 0 * I2, [(1j * Z, 1j * Z)], su2))
    results["two-qubit drift iz + zz"] = closure_dim(
        indirect(1j * Z, 0 * I2, [(1j * Z, 1j * Z)], su2))
    gm3 = [1j * g for g in gell_mann(3)]
    results["odd na: xy couplings"] = closure_dim(
        indirect(0 * I2, 0 * np.eye(3), [(1j * X, gm3[0]), (1j * Y, gm3[3])], gm3))
    results["odd na: no drift single coupling"] = closure_dim(
        indirect(0 * I2, 0 * np.eye(3), [(1j * Z, gm3[7])], gm3))
    results["odd na: drift iz + z coupling"] = closure_dim(
        indirect(1j * Z, 0 * np.eye(3), [(1j * Z, gm3[7])], gm3))
    # Symplectic-type example: K = i(sx + sz/2), couplings with symmetric
    # A-factors, control {i sy}.
    results["sp: closure"] = closure_dim(
        indirect(1j * (X + 0.5 * Z), 0 * I2,
                 [(1j * Z, 1j * X), (1j * X, 1j * Z)], [1j * Y]))
    # Nullspace of A -> Omega A + A^T Omega on skew-Hermitian 4x4 matrices.
    omega = np.kron(np.array([[0, 1], [-1, 0]], complex), I2)
    herm = [1j * g for g in gell_mann(4)] + [1j * np.eye(4)]
    cols = [vec(omega @ a + a.T @ omega) for a in herm]
    results["sp: constraint solution dim"] = len(herm) - np.linalg.matrix_rank(
        np.array(cols).T, tol=1e-10)
    for k, v in results.items():
        print(f"{k}: {v}")


if __name__ == "__main__":
    sys.exit(main())
