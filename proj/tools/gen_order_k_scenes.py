"""Writes scenes/order_k<k>_n<n>.json: the module of vector fields vanishing to order k at 0."""
import itertools
import json
import math
import pathlib

NAMES = ["x", "y", "z"]


def monomials(n, k):
    for exps in itertools.product(range(k + 1), repeat=n):
        if sum(exps) == k:
            yield "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(NAMES, exps) if e) or "1"


def scene(n, k):
    coords = NAMES[:n]
    gens = []
    for m in monomials(n, k):
        for i in range(n):
            gens.append([m if j == i else "0" for j in range(n)])
    return {
        "name": f"order-{k}-on-r{n}",
        "chart": {"coordinates": coords},
        "foliation": gens,
        "points": [[0] * n, [1] + [0] * (n - 1)],
        # reference count at the origin; compared against the computed value, never trusted
        "reference_fiber_dims": [math.comb(k + n - 1, n - 1), None],
        "notes": [
            f"reference_fiber_dims[0] = C({k + n - 1}, {n - 1}) is the reference value; "
            f"the generator count suggests n*C({k + n - 1}, {n - 1}) = {n * math.comb(k + n - 1, n - 1)}"
        ],
    }


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "scenes"
    for n in (1, 2, 3):
        for k in (1, 2, 3):
            path = out / f"order_k{k}_n{n}.json"
            path.write_text(json.dumps(scene(n, k), indent=2) + "\n")


if __name__ == "__main__":
    main()
