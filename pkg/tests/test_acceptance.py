"""End-to-end acceptance checks, one test per criterion.

Each test records a single ``ACCEPTANCE #k PASS|FAIL: ...`` line, shown in
the terminal summary (and printed directly when run with ``-s`` or as a
script).
"""

import itertools
import math
import time

import numpy as np

from boolsens.constructions import constant_f, e3_tree, or_f, parity_f, rubinstein
from boolsens.core import from_int, from_truth_table, relevant_variables
from boolsens.hypercube import chung_log_bound, max_degree_many
from boolsens.measures import (
    approx_degree,
    approx_error,
    block_sensitivity_at,
    degree,
    fourier,
    influences,
    sensitivity,
)
from boolsens.spectral import full_spectrum, huang_matrix, square_check
from boolsens.verifier import (
    verify_chain,
    verify_chung,
    verify_gl_equivalence,
    verify_huang,
    verify_interlacing,
)

from conftest import ACCEPTANCE_LINES


def record(k, ok, detail):
    line = f"ACCEPTANCE #{k} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_huang_square():
    results, t10 = {}, None
    for n in range(1, 11):
        t0 = time.perf_counter()
        results[n] = square_check(huang_matrix(n), n)
        if n == 10:
            t10 = time.perf_counter() - t0
    ok = all(results.values()) and t10 < 10.0
    record(1, ok, f"A^2 = nI for n=1..10 {all(results.values())}; n=10 in {t10:.2f}s (< 10s)")


def test_02_huang_spectrum():
    worst = 0.0
    ok = True
    for n in range(1, 7):
        ev = full_spectrum(huang_matrix(n))
        N = 1 << n
        r = math.sqrt(n)
        plus = int(np.sum(np.abs(ev - r) <= 1e-9))
        minus = int(np.sum(np.abs(ev + r) <= 1e-9))
        worst = max(worst, abs(float(ev.sum())))
        ok &= plus == minus == N // 2
    ok &= worst <= 1e-9
    record(2, ok, f"eigenvalues +-sqrt(n) with equal multiplicity for n<=6; max |trace| {worst:.1e}")


def test_03_half_plus_one_degree_bound():
    expected = {2: 4, 3: 56, 4: 11440}
    parts, ok = [], True
    for n in (2, 3, 4):
        rep = verify_huang(n)
        ok &= rep.ok and rep.checked == expected[n] == math.comb(1 << n, (1 << (n - 1)) + 1)
        parts.append(f"n={n}: {rep.checked} subsets, {len(rep.violations)} violations")
    for n in (5, 6):
        rep = verify_huang(n, samples=1000, seed=0)
        ok &= rep.ok and rep.checked == 1000
        parts.append(f"n={n}: {rep.checked} sampled, {len(rep.violations)} violations")
    record(3, ok, "; ".join(parts))


def test_04_chung_tightness():
    parts, ok = [], True
    for n in (4, 9, 16):
        rep = verify_chung(n)
        w = rep.witnesses
        larger = max(w["size_X"], w["size_complement"])
        good = (rep.ok and larger == (1 << (n - 1)) + 1 and w["delta_larger"] == math.isqrt(n)
                and w["size_X"] == (1 << (n - 1)) + (-1) ** (n + rep.params["k"] + 1))
        ok &= good
        parts.append(f"n={n}: |X|={w['size_X']}, larger side {larger}, delta {w['delta_larger']}")
    record(4, ok, "; ".join(parts))


def test_05_inequality_chain():
    parts, ok = [], True
    for n in (2, 3, 4):
        t0 = time.perf_counter()
        rep = verify_chain(n)
        dt = time.perf_counter() - t0
        ok &= rep.ok and rep.checked == 1 << (1 << n)
        if n == 4:
            ok &= dt < 600
        parts.append(f"n={n}: {rep.checked} functions, {len(rep.violations)} violations ({dt:.1f}s)")
    record(5, ok, "; ".join(parts))


def test_06_rubinstein():
    f = rubinstein(4)
    t0 = time.perf_counter()
    s = sensitivity(f)
    dt = time.perf_counter() - t0
    bs0 = block_sensitivity_at(f, 0)
    ok = s == 4 and bs0 == 8 and bs0 == s * s / 2 and dt < 5.0
    record(6, ok, f"s={s}, bs(f, 0)={bs0}, s^2/2={s * s / 2:g}; sensitivity scan {dt:.2f}s (< 5s)")


def test_07_fourier_identities():
    small = [from_truth_table(n, bits) for n in range(4) for bits in itertools.product((0, 1), repeat=1 << n)]
    rng = np.random.default_rng(0)
    random8 = [from_truth_table(8, rng.integers(0, 2, 256)) for _ in range(100)]
    parseval = max(abs(fourier(f).weight() - 1.0) for f in small + random8)
    ident = 0.0
    for f in small:
        fh = fourier(f)
        levels = np.array([bin(S).count("1") for S in range(f.size)])
        ident = max(ident, abs(float(influences(f).sum()) - float(np.sum(levels * fh.coeffs ** 2))))
    infl_bad = 0
    for n in range(5):
        for code in range(1 << (1 << n)):
            f = from_int(n, code)
            infl_bad += influences(f).sum() > degree(f) + 1e-12
    ok = parseval <= 1e-12 and ident <= 1e-12 and infl_bad == 0
    record(7, ok, f"Parseval max err {parseval:.1e}; influence identity max err {ident:.1e}; "
                  f"total influence <= deg violations {infl_bad} (n<=4)")


def test_08_gl_identities():
    parts, ok = [], True
    for n in range(1, 5):
        rep = verify_gl_equivalence(n)
        ok &= rep.ok
        ok &= rep.witnesses["max_error_coeff_flip"] <= 1e-12 and rep.witnesses["max_error_mean"] <= 1e-12
        parts.append(f"n={n}: {rep.checked} functions, {len(rep.violations)} violations")
    record(8, ok, "; ".join(parts))


def test_09_approx_degree():
    eps_or = approx_error(or_f(2), 1)
    const = approx_degree(constant_f(2, 1))
    ador = approx_degree(or_f(2))
    apar = approx_degree(parity_f(2))
    bad = 0
    for n in range(4):
        for bits in itertools.product((0, 1), repeat=1 << n):
            f = from_truth_table(n, bits)
            bad += approx_degree(f) > degree(f)
    ok = const == 0 and ador == 1 and abs(eps_or - 0.25) <= 1e-6 and apar == 2 and bad == 0
    record(9, ok, f"const {const}, OR_2 {ador} (eps {eps_or:.9f}), parity_2 {apar}; approx > deg cases {bad}")


def test_10_e3_tree():
    parts, ok = [], True
    for t, want in ((1, 2), (2, 4)):
        f = e3_tree(t)
        d = degree(f)
        units = all(f(1 << i) == 1 for i in range(f.n))
        ok &= d == want and f(0) == 0 and units
        parts.append(f"depth {t}: deg {d}, f(0)={f(0)}, f(e_i)=1 for all i {units}")
    record(10, ok, "; ".join(parts))


def test_11_interlacing():
    # dimension-4 and dimension-8 Huang matrices are the cubes n=2 and n=3
    a4 = verify_interlacing(2)
    a8 = verify_interlacing(3, samples=100, seed=0)
    q4 = verify_interlacing(4)
    ok = a4.ok and a4.checked == 15 and a8.ok and a8.checked == 100 and q4.ok and q4.checked == (1 << 16) - 1
    record(11, ok, f"A_4 all {a4.checked} submatrices, A_8 {a8.checked} random, "
                   f"n=4 all {q4.checked}; violations {len(a4.violations) + len(a8.violations) + len(q4.violations)}")


def test_12_finite_restatements():
    rel_bad = 0
    for n in range(5):
        for code in range(1 << (1 << n)):
            f = from_int(n, code)
            d = degree(f)
            rel_bad += len(relevant_variables(f)) > d * 2 ** d
    log_bad = 0
    for n in range(2, 5):
        N = 1 << n
        rows = np.array(list(itertools.combinations(range(N), N // 2 + 1)))
        masks = np.zeros((len(rows), N), dtype=bool)
        masks[np.arange(len(rows))[:, None], rows] = True
        log_bad += int(np.sum(max_degree_many(n, masks) <= chung_log_bound(n)))
    ok = rel_bad == 0 and log_bad == 0
    record(12, ok, f"|relevant| <= deg*2^deg violations {rel_bad} (n<=4); "
                   f"log-bound sanity violations {log_bad} (n<=4, bound <= 1 here so weak)")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
