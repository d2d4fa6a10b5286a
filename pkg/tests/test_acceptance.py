"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line.  Run the module
directly (``python tests/test_acceptance.py``) to get the same lines without
pytest.
"""
from __future__ import annotations

import random
import sys
import time
from itertools import combinations, product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (brute_domination, classical_count, dense_rank, determinant,  # noqa: E402
                     domination_cases)
from pfarc.jet import (invariant_dimension, qh, verify_injectivity, verify_invariance,  # noqa: E402
                       verify_leading)
from pfarc.linalg import Echelon  # noqa: E402
from pfarc.order import is_greater, largest_dominating, norm  # noqa: E402
from pfarc.pfaffian import pfaffian, pfaffian_derivative  # noqa: E402
from pfarc.quotient import (RELATION_SUITE, NonIntegralError, _piece, check_relation,  # noqa: E402
                            ideal_span, straightener, verify_standard_basis)
from pfarc.ring import Poly, binom, dbar, xvar  # noqa: E402
from pfarc.standard import enumerate_standard, is_standard  # noqa: E402

GRID = [(p, h, d, w) for p in (2, 3, 4, 5) for h in (0, 2, 4) for d in range(4) for w in range(4)]


def _line(n: int, ok: bool, text: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"


# -- the checks --------------------------------------------------------------

def criterion_1():
    t = time.perf_counter()
    bad = [c for c in GRID if not verify_standard_basis(*c).passed]
    dt = time.perf_counter() - t
    ok = not bad and dt < 600
    return ok, f"basis certificate on {len(GRID)} cells, {len(bad)} failing, {dt:.1f}s (< 600s)"


def criterion_2():
    c = verify_standard_basis(4, 2, 2, 0)
    piece = _piece(4, 2, 0)
    rows = []
    for f in ideal_span(4, 4, 2, 0):
        r = [0] * piece.dim
        for col, v in zip(*piece.vector(f)):
            r[col] = v
        rows.append(r)
    slice_ok = (c.dim_ambient, c.rank_ideal, c.n_standard) == (21, dense_rank(rows), 20) == (21, 1, 20)
    mismatched = [(p, h, d) for p, h, d, w in GRID if w == 0
                  and verify_standard_basis(p, h, d, 0).n_standard != classical_count(p, h, d)]
    ok = slice_ok and not mismatched
    return ok, (f"p4 h2 d2 w0 -> ({c.dim_ambient}, {c.rank_ideal}, {c.n_standard}); "
                f"weight-0 counts vs tableau enumerator: {len(mismatched)} mismatches")


def criterion_3():
    total = failed = 0
    for p, d, w in product((2, 3), range(4), range(3)):
        for sp in enumerate_standard(p, 2, d, w):
            total += 1
            ok, _ = verify_leading(sp, p, 2)
            failed += not ok
    return failed == 0 and total > 0, f"leading tableau with coefficient +-1 on {total} products, {failed} failing"


def criterion_4():
    cells = [c for c in GRID if c[1] <= c[0]]
    bad = [c for c in cells if verify_injectivity(*c)["verdict"] != "pass"]
    return not bad, f"injectivity on {len(cells)} cells with h <= p, {len(bad)} failing"


def criterion_5():
    inv = [verify_invariance(p, h, 2, 2) for p in (1, 2, 3) for h in (2, 4)]
    inv_ok = all(r["verdict"] == "pass" for r in inv)
    checked = sum(r["checked"] for r in inv)
    killed = minors = 0
    for h in (2, 4):
        for p in (h + 2, h + 3):
            for rows in combinations(range(1, p + 1), h + 2):
                for n in range(4):
                    minors += 1
                    killed += not qh(p, h, pfaffian_derivative(rows, n, p))
    dims = [invariant_dimension(2, 2, d, w) for d in range(4) for w in range(3)]
    dims_ok = all(k == i for k, i in dims)
    ok = inv_ok and killed == minors and dims_ok
    return ok, (f"{checked} derivation checks exact zero; {killed}/{minors} minor derivatives killed; "
                f"kernel = image on {sum(k == i for k, i in dims)}/{len(dims)} pieces")


def _random_poly(rng, p, terms=3, deg=3, kmax=2):
    f = Poly("X", p)
    for _ in range(rng.randint(1, terms)):
        t = Poly.const(rng.randint(-4, 4), "X", p)
        for _ in range(rng.randint(0, deg)):
            u, v = rng.sample(range(1, p + 1), 2)
            t = t * xvar(u, v, rng.randint(0, kmax), p)
        f = f + t
    return f


def criterion_6():
    rng = random.Random(20260601)
    leib = comp = 0
    for _ in range(200):
        f, g = _random_poly(rng, 4), _random_poly(rng, 4)
        l = rng.randint(0, 3)
        rhs = Poly("X", 4)
        for i in range(l + 1):
            rhs = rhs + dbar(i, f) * dbar(l - i, g)
        leib += dbar(l, f * g) == rhs
        a, b = rng.randint(0, 4), rng.randint(0, 4)
        comp += dbar(a, dbar(b, f)) == dbar(a + b, f).scale(binom(a + b, a))
    deriv = sq = total = 0
    for h in (2, 4, 6):
        for rows in combinations(range(1, 8), h):
            total += 1
            pf = pfaffian(rows, 7)
            deriv += all(pfaffian_derivative(rows, n, 7) == dbar(n, pf) for n in range(4))
            sq += pf * pf == determinant(rows, 7)
    ok = leib == comp == 200 and deriv == sq == total
    return ok, (f"Leibniz {leib}/200, composition {comp}/200, direct derivative {deriv}/{total}, "
                f"Pf^2 = det {sq}/{total}")


def criterion_7():
    cache: dict = {}
    n = bad = 0
    for e, j in domination_cases(5, (1, 2, 3, 4), 3):
        found, best = brute_domination(e, j, cache)
        n += 1
        bad += is_greater(j, e) != found or largest_dominating(e, j) != best
    m = cbad = 0
    for e, j in domination_cases(5, (2, 4), 3):
        m += 1
        cbad += is_greater(j, e) != is_standard([norm(e), j])
    ok = n >= 10_000 and bad == 0 and cbad == 0
    return ok, f"{n} (E, J') pairs vs exhaustive lifts, {bad} mismatches; two-factor standardness {m} pairs, {cbad} mismatches"


def criterion_8():
    hs = {len(c[0]) for c in RELATION_SUITE}
    ms = {c[5] for c in RELATION_SUITE}
    results = [check_relation(*c) for c in RELATION_SUITE]
    bad = sum(not r.in_ideal for r in results)
    ok = len(RELATION_SUITE) >= 20 and hs == {2, 4} and max(ms) <= 3 and bad == 0
    nonzero = sum(not r.identically_zero for r in results)
    return ok, f"{len(results)} relations ({nonzero} nonzero, h in {sorted(hs)}, m <= {max(ms)}), {bad} outside the ideal"


def criterion_9():
    rng = random.Random(9)
    cells = done = bad = 0
    for p, h, d, w in GRID:
        st = straightener(p, h, d, w)
        piece = st.piece
        if piece.dim == 0:
            continue
        cells += 1
        ideal = Echelon(lattice=True)
        for f in ideal_span(p, h + 2, d, w):
            ideal.add(piece.vector(f))
        values = [dict(zip(*piece.vector(sp.value(p)))) for sp in st.standard]
        index = {sp: i for i, sp in enumerate(st.standard)}
        for _ in range(50):
            f = Poly("X", p)
            for _ in range(rng.randint(1, 6)):
                m = piece.basis[rng.randrange(piece.dim)]
                f = f + Poly("X", p, 0, {m: rng.randint(-5, 5)})
            if not f:
                f = Poly("X", p, 0, {piece.basis[0]: 1})
            done += 1
            try:
                combo = st.straighten(f)
            except NonIntegralError:
                bad += 1
                continue
            resid = dict(zip(*piece.vector(f)))
            for sp, c in combo.items():
                if not isinstance(c, int):
                    bad += 1
                for col, v in values[index[sp]].items():
                    resid[col] = resid.get(col, 0) - c * v
            cols = sorted(k for k, v in resid.items() if v)
            bad += not ideal.contains((cols, [resid[k] for k in cols]))
    return bad == 0, f"{done} random polynomials over {cells} nonempty cells, {bad} failures (integer coefficients, exact Z-membership)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    ok, text = CRITERIA[n - 1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, text))
    assert ok, text


if __name__ == "__main__":
    results = []
    for n, fn in enumerate(CRITERIA, start=1):
        ok, text = fn()
        print(_line(n, ok, text), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
