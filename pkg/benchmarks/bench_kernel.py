"""Compare the compiled and pure-Python elimination kernels.

Structured cases feed the ideal generators and standard monomial images of one
graded piece to a lattice-mode echelon; random cases are sparse integer
matrices with fill-in, eliminated over Q and over Z.

    python benchmarks/bench_kernel.py [--repeat 3]
"""
import argparse
import random
import time

from pfarc import _kernel_py
from pfarc.linalg import Echelon
from pfarc.quotient import _piece, ideal_span
from pfarc.standard import enumerate_standard

try:
    from pfarc import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

CASES = [(4, 2, 3, 3), (5, 2, 3, 2), (5, 4, 3, 3), (6, 2, 3, 1)]


def rows_for(p, h, d, w):
    piece = _piece(p, d, w)
    ideal = [piece.vector(f) for f in ideal_span(p, h + 2, d, w)]
    std = [piece.vector(sp.value(p)) for sp in enumerate_standard(p, h, d, w)]
    return ideal, std


def run(kernel, ideal, std):
    e = Echelon(lattice=True, backend=kernel)
    for r in ideal:
        e.add(r)
    for idx, r in enumerate(std):
        e.add(r, ([idx], [1]))
    return e.rank


def random_rows(n, density, seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(n):
        cols = sorted(rng.sample(range(n), max(1, int(n * density))))
        rows.append((cols, [rng.randint(-9, 9) or 1 for _ in cols]))
    return rows


def run_random(kernel, rows, lattice):
    e = Echelon(lattice=lattice, backend=kernel)
    for r in rows:
        e.add(r)
    return e.rank


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'cell':<16}{'rows':>7}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for cell in CASES:
        ideal, std = rows_for(*cell)
        tp, rp = best_of(lambda: run(_kernel_py, ideal, std), args.repeat)
        if _kernel_c is None:
            print(f"{str(cell):<16}{len(ideal) + len(std):>7}{tp:>11.4f}{'n/a':>11}{'':>9}")
            continue
        tc, rc = best_of(lambda: run(_kernel_c, ideal, std), args.repeat)
        assert rp == rc, "backends disagree"
        print(f"{str(cell):<16}{len(ideal) + len(std):>7}{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.2f}x")
    for n, density, lattice in ((40, 0.1, True), (80, 0.06, False), (120, 0.04, False)):
        rows = random_rows(n, density, seed=n)
        label = f"rand{n}-{'Z' if lattice else 'Q'}"
        tp, rp = best_of(lambda: run_random(_kernel_py, rows, lattice), args.repeat)
        if _kernel_c is None:
            print(f"{label:<16}{n:>7}{tp:>11.4f}{'n/a':>11}")
            continue
        tc, rc = best_of(lambda: run_random(_kernel_c, rows, lattice), args.repeat)
        assert rp == rc, "backends disagree"
        print(f"{label:<16}{n:>7}{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.2f}x")


if __name__ == "__main__":
    main()
