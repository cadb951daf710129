"""Regenerate the bundled category and group files under src/catdeform/data."""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path

from catdeform.algebra import QQ, CyclotomicField, ExactMatrix, PrimeField, rank_kernel, solve_linear
from catdeform.category import (
    FusionDatum,
    cyclic,
    gen_pointed,
    klein,
    save_category,
    symmetric,
    validate,
)

OUT = Path(__file__).resolve().parents[1] / "src" / "catdeform" / "data"


# -- Rep(S3) from explicit rational representations -----------------------

def s3_irreps():
    g = symmetric(3)
    perms = sorted(itertools.permutations(range(3)))
    triv = {i: [[Fraction(1)]] for i in range(6)}

    def sign(p):
        inv = sum(1 for a, b in itertools.combinations(range(3), 2) if p[a] > p[b])
        return -1 if inv % 2 else 1

    sgn = {i: [[Fraction(sign(p))]] for i, p in enumerate(perms)}
    # standard rep on the sum-zero plane, basis e0 - e1, e1 - e2
    basis = [(1, -1, 0), (0, 1, -1)]
    std = {}
    for i, p in enumerate(perms):
        cols = []
        for v in basis:
            w = [0, 0, 0]
            for x in range(3):
                w[p[x]] += v[x]
            # w = a (e0 - e1) + b (e1 - e2): a = w0, b = w0 + w1
            cols.append((Fraction(w[0]), Fraction(w[0] + w[1])))
        std[i] = [[cols[c][r] for c in range(2)] for r in range(2)]
    return g, [triv, sgn, std]


def kron(A, B):
    return [[A[i][j] * B[k][l] for j in range(len(A[0])) for l in range(len(B[0]))]
            for i in range(len(A)) for k in range(len(B))]


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def intertwiners(reps, g, a, b, c):
    """Basis of Hom(V_c, V_a (x) V_b) as dense matrices."""
    da, db, dc = len(reps[a][0]), len(reps[b][0]), len(reps[c][0])
    D = da * db
    rows = []
    for h in range(g.order):
        T = kron(reps[a][h], reps[b][h])
        S = reps[c][h]
        # T E - E S = 0, E is D x dc, unknown index (i, j) -> i * dc + j
        for i, j in itertools.product(range(D), range(dc)):
            row = [Fraction(0)] * (D * dc)
            for k in range(D):
                row[k * dc + j] += T[i][k]
            for k in range(dc):
                row[i * dc + k] -= S[k][j]
            rows.append(row)
    _, ker = rank_kernel(ExactMatrix.from_dense(QQ, rows))
    return [[[v[i * dc + j] for j in range(dc)] for i in range(D)] for v in ker]


def rep_s3():
    g, reps = s3_irreps()
    n = 3
    E = {}
    fusion = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a, b, c in itertools.product(range(n), repeat=3):
        E[(a, b, c)] = intertwiners(reps, g, a, b, c)
        fusion[a][b][c] = len(E[(a, b, c)])
    dims = [1, 1, 2]
    probe = FusionDatum(QQ, ["1", "sgn", "std"], 0, fusion)
    F = {}
    for key in probe.F_keys():
        i, j, k, l = key
        left = []
        for m, mu, nu in probe.F_left(*key):
            left.append(matmul(kron(E[(i, j, m)][mu], eye(dims[k])), E[(m, k, l)][nu]))
        right = []
        for m, rho, sig in probe.F_right(*key):
            right.append(matmul(kron(eye(dims[i]), E[(j, k, m)][rho]), E[(i, m, l)][sig]))
        flat_r = [[x for row in R for x in row] for R in right]
        A = ExactMatrix.from_dense(QQ, [list(col) for col in zip(*flat_r)])
        block = []
        for L in left:
            x = solve_linear(A, [x for row in L for x in row])
            assert x is not None, key
            block.append(x)
        F[key] = block
    return FusionDatum(QQ, ["1", "sgn", "std"], 0, fusion, F, name="rep_s3")


# -- Fibonacci over Q(zeta_5) -------------------------------------------

def fibonacci():
    K = CyclotomicField(5)
    phi_inv = K.add(K.zeta(1), K.zeta(4))
    one = K.one()
    fusion = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    candidates = [
        [[phi_inv, one], [phi_inv, K.neg(phi_inv)]],
        [[phi_inv, phi_inv], [one, K.neg(phi_inv)]],
    ]
    for block in candidates:
        d = FusionDatum(K, ["1", "tau"], 0, fusion, {(1, 1, 1, 1): block}, name="fibonacci")
        if validate(d)["ok"]:
            return d
    raise RuntimeError("no Fibonacci gauge passed the pentagon")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    save_category(gen_pointed(cyclic(2), QQ, name="vec_z2_trivial"), OUT / "vec_z2_trivial.json")
    omega = lambda a, b, c: Fraction(-1 if a * b * c else 1)
    save_category(gen_pointed(cyclic(2), QQ, omega, name="vec_z2_omega"), OUT / "vec_z2_omega.json")
    save_category(gen_pointed(cyclic(3), QQ, name="vec_z3"), OUT / "vec_z3.json")
    save_category(gen_pointed(klein(), PrimeField(2), name="vec_klein"), OUT / "vec_klein.json")
    d = rep_s3()
    assert validate(d)["ok"]
    save_category(d, OUT / "rep_s3.json")
    save_category(fibonacci(), OUT / "fibonacci.json")
    groups = {"z1": cyclic(1), "z2": cyclic(2), "z3": cyclic(3), "klein": klein(), "s3": symmetric(3)}
    for name, g in groups.items():
        data = {"name": name, "order": g.order, "mul": [list(r) for r in g.mul]}
        (OUT / f"group_{name}.json").write_text(json.dumps(data) + "\n", encoding="utf-8")
    (OUT / "omega_z2.json").write_text(
        json.dumps({"group_order": 2, "values": [
            {"g": a, "h": b, "k": c, "value": "-1" if a * b * c else "1"}
            for a, b, c in itertools.product(range(2), repeat=3)
        ]}, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
