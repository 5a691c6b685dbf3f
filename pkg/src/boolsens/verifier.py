"""Verification campaigns: exhaustive at small n, seeded sampling above.

Every campaign returns a :class:`CampaignReport`.  Violations are collected,
never raised, so a failing run still reports everything it saw.  Reports are
deterministic in ``(n, seed, samples)``; with ``jobs > 1`` the function space
is split into contiguous code ranges whose partial results are merged in code
order, so parallel and serial runs serialise identically.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import hypercube as hc
from .core import BooleanFunction, from_int, from_truth_table, popcounts
from .formats import dumps
from .measures import (
    approx_degree,
    block_sensitivity,
    certificate_complexity,
    decision_tree_depth,
    degree,
    fourier,
    influences,
    sensitivities,
)
from .spectral import (
    cube_adjacency,
    huang_matrix,
    interlaces,
    jacobi_eigenvalues,
    submatrix_stack,
)

EXHAUSTIVE_MAX_N = 4
FOURIER_TOL = 1e-12


@dataclass
class CampaignReport:
    name: str
    n: int
    params: dict = field(default_factory=dict)
    checked: int = 0
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    duration: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "campaign": self.name,
            "n": self.n,
            "params": self.params,
            "checked": self.checked,
            "counts": self.counts,
            "violations": self.violations,
            "witnesses": self.witnesses,
            "ok": self.ok,
        }
        if include_timing:
            d["duration_s"] = self.duration
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return dumps(self.to_dict(include_timing))

    def summary(self) -> str:
        """Plain-text table mirroring the JSON report."""
        rows = [("campaign", self.name), ("n", self.n), ("checked", self.checked),
                ("violations", len(self.violations)), ("status", "PASS" if self.ok else "FAIL")]
        rows += [(f"params.{k}", v) for k, v in sorted(self.params.items())]
        rows += [(f"counts.{k}", v) for k, v in sorted(self.counts.items())]
        for k, v in sorted(self.witnesses.items()):
            rows.append((f"witness.{k}", v if not isinstance(v, float) else f"{v:.12g}"))
        width = max(len(str(r[0])) for r in rows)
        return "\n".join(f"{str(k):<{width}}  {v}" for k, v in rows) + "\n"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.duration = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def function_codes(n: int, samples: int | None = None, seed: int = 0) -> list[int]:
    """Every table code for ``n <= 4``; otherwise ``samples`` seeded random codes."""
    if n <= EXHAUSTIVE_MAX_N and samples is None:
        return list(range(1 << (1 << n)))
    if samples is None:
        raise ValueError(f"n={n} is beyond exhaustive range; give a sample count")
    rng = np.random.default_rng(seed)
    tables = rng.integers(0, 2, size=(samples, 1 << n), dtype=np.uint8)
    return [from_truth_table(n, t).to_int() for t in tables]


def _map_chunks(worker: Callable, n: int, codes: list[int], jobs: int) -> list:
    if jobs <= 1 or len(codes) < 2 * jobs:
        return worker(n, codes)
    size = math.ceil(len(codes) / jobs)
    chunks = [codes[i:i + size] for i in range(0, len(codes), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(worker, [n] * len(chunks), chunks))
    return [row for part in parts for row in part]


def _hex(n: int, code: int) -> str:
    return f"{code:0{max(1, (1 << n) // 4)}x}"


# ------------------------------------------------------------ measure chain

def measure_rows(n: int, codes: list[int]) -> list[tuple[int, int, int, int, int, int]]:
    """``(code, s, bs, C, D, deg)`` for each code; decision-tree memo shared across the batch."""
    memo: dict = {}
    rows = []
    for code in codes:
        f = from_int(n, code)
        s = int(sensitivities(f).max())
        rows.append((code, s, block_sensitivity(f), certificate_complexity(f),
                     decision_tree_depth(f, memo=memo), degree(f)))
    return rows


CHAIN_CHECKS: dict[str, Callable[[int, int, int, int, int], bool]] = {
    "bs <= 2 deg^2": lambda s, bs, c, d, deg: bs <= 2 * deg ** 2,
    "deg <= s^2": lambda s, bs, c, d, deg: deg <= s ** 2,
    "s >= sqrt(deg)": lambda s, bs, c, d, deg: s * s >= deg,
    "bs <= D": lambda s, bs, c, d, deg: bs <= d,
    "D <= bs^4": lambda s, bs, c, d, deg: d <= bs ** 4,
    "deg <= D": lambda s, bs, c, d, deg: deg <= d,
    "D <= 16 deg^8": lambda s, bs, c, d, deg: d <= 16 * deg ** 8,
    "bs <= 2 s^4": lambda s, bs, c, d, deg: bs <= 2 * s ** 4,
    "deg >= sqrt(bs/2)": lambda s, bs, c, d, deg: 2 * deg * deg >= bs,
    "s <= bs": lambda s, bs, c, d, deg: s <= bs,
    "bs <= C": lambda s, bs, c, d, deg: bs <= c,
    "C <= D": lambda s, bs, c, d, deg: c <= d,
}


@_timed
def verify_chain(n: int, samples: int | None = None, seed: int = 0, jobs: int = 1) -> CampaignReport:
    """Check the polynomial relations between s, bs, C, D and deg on every scanned function."""
    codes = function_codes(n, samples, seed)
    rows = _map_chunks(measure_rows, n, codes, jobs)
    rep = CampaignReport("chain", n, {"samples": samples, "seed": seed if samples else None})
    rep.checked = len(rows)
    rep.counts = {name: 0 for name in CHAIN_CHECKS}
    max_bs_over_s2 = (0.0, None)
    max_deg_over_s2 = (0.0, None)
    for code, s, bs, c, d, deg in rows:
        for name, check in CHAIN_CHECKS.items():
            if check(s, bs, c, d, deg):
                rep.counts[name] += 1
            else:
                rep.violations.append({"table": _hex(n, code), "check": name,
                                       "s": s, "bs": bs, "c": c, "d": d, "deg": deg})
        if s:
            if bs / s ** 2 > max_bs_over_s2[0]:
                max_bs_over_s2 = (bs / s ** 2, code)
            if deg / s ** 2 > max_deg_over_s2[0]:
                max_deg_over_s2 = (deg / s ** 2, code)
    rep.witnesses = {
        "max_bs_over_s2": max_bs_over_s2[0],
        "max_bs_over_s2_table": None if max_bs_over_s2[1] is None else _hex(n, max_bs_over_s2[1]),
        "max_deg_over_s2": max_deg_over_s2[0],
        "max_deg_over_s2_table": None if max_deg_over_s2[1] is None else _hex(n, max_deg_over_s2[1]),
    }
    return rep


def _sb_rows(n: int, codes: list[int]) -> list[tuple[int, int, int]]:
    return [(code, int(sensitivities(f).max()), block_sensitivity(f))
            for code in codes for f in [from_int(n, code)]]


@_timed
def extremal_ratio(n: int, samples: int | None = None, seed: int = 0, jobs: int = 1,
                   extra: Iterable[BooleanFunction] = ()) -> CampaignReport:
    """Largest ``bs(f) / s(f)^2`` over the scanned functions (constants skipped).

    Descriptive only: the report never records violations.  Functions in
    ``extra`` (any ``n``) are scored individually under ``witnesses.extra``.
    """
    codes = function_codes(n, samples, seed)
    rows = _map_chunks(_sb_rows, n, codes, jobs)
    rep = CampaignReport("ratio", n, {"samples": samples, "seed": seed if samples else None})
    best = (-1.0, None, 0, 0)
    skipped = 0
    for code, s, bs in rows:
        if s == 0:
            skipped += 1
            continue
        r = bs / s ** 2
        if r > best[0]:
            best = (r, code, s, bs)
    rep.checked = len(rows) - skipped
    rep.counts = {"constant_skipped": skipped}
    rep.witnesses = {"max_ratio": best[0] if best[1] is not None else None,
                     "table": None if best[1] is None else _hex(n, best[1]),
                     "s": best[2], "bs": best[3]}
    extras = []
    for f in extra:
        s, bs = int(sensitivities(f).max()), block_sensitivity(f)
        extras.append({"n": f.n, "table": _hex(f.n, f.to_int()), "s": s, "bs": bs,
                       "ratio": bs / s ** 2 if s else None})
    if extras:
        rep.witnesses["extra"] = extras
    return rep


# ------------------------------------------------------------ Fourier side

@_timed
def verify_fourier(n: int, samples: int | None = None, seed: int = 0) -> CampaignReport:
    """Parseval, total influence as spectral level sum, and total influence <= deg."""
    rep = CampaignReport("fourier", n, {"samples": samples, "seed": seed if samples else None})
    rep.counts = {"parseval": 0, "influence_identity": 0, "influence_le_degree": 0}
    level = popcounts(n)
    worst = {"parseval": 0.0, "influence_identity": 0.0}
    for code in function_codes(n, samples, seed):
        f = from_int(n, code)
        fh = fourier(f)
        err = abs(fh.weight() - 1.0)
        worst["parseval"] = max(worst["parseval"], err)
        if err <= FOURIER_TOL:
            rep.counts["parseval"] += 1
        else:
            rep.violations.append({"table": _hex(n, code), "check": "parseval", "error": err})
        total = float(influences(f).sum())
        spectral = float(np.sum(level * fh.coeffs ** 2))
        err = abs(total - spectral)
        worst["influence_identity"] = max(worst["influence_identity"], err)
        if err <= FOURIER_TOL:
            rep.counts["influence_identity"] += 1
        else:
            rep.violations.append({"table": _hex(n, code), "check": "influence_identity", "error": err})
        if total <= degree(f) + FOURIER_TOL:
            rep.counts["influence_le_degree"] += 1
        else:
            rep.violations.append({"table": _hex(n, code), "check": "influence_le_degree",
                                   "total_influence": total, "deg": degree(f)})
        rep.checked += 1
    rep.witnesses = {f"max_error_{k}": v for k, v in worst.items()}
    return rep


@_timed
def verify_approx(n: int) -> CampaignReport:
    """``approx_deg(f) <= deg(f)`` for every function on ``n <= 3`` variables."""
    rep = CampaignReport("approx", n)
    hist: dict[str, int] = {}
    for code in function_codes(n):
        f = from_int(n, code)
        a, d = approx_degree(f), degree(f)
        hist[f"{a}<={d}"] = hist.get(f"{a}<={d}", 0) + 1
        if a > d:
            rep.violations.append({"table": _hex(n, code), "approx_deg": a, "deg": d})
        rep.checked += 1
    rep.counts = dict(sorted(hist.items()))
    return rep


# ------------------------------------------------------- Gotsman-Linial

def _gl_rows(n: int, codes: list[int]) -> list[dict]:
    out = []
    comp = (1 << n) - 1
    idx = np.arange(1 << n)
    huang_need = math.sqrt(n)
    log_need = hc.chung_log_bound(n)
    for code in codes:
        f = from_int(n, code)
        g = hc.gl_twist(f)
        sf, sg = sensitivities(f), sensitivities(g)
        fh, gh = fourier(f), fourier(g)
        res = {"code": code, "sens_flip": bool(np.all(sg == n - sf)),
               "coeff_flip": float(np.max(np.abs(gh.coeffs - fh.coeffs[comp ^ idx]))),
               "mean_top": abs(float(np.mean(1.0 - 2.0 * g.table)) - fh.coeffs[comp])}
        # degree inside own level set equals n - s(g, x) at every x
        deg_own = np.where(g.table == 1, hc.from_function(g, 1).degrees(), hc.from_function(g, 0).degrees())
        res["link"] = bool(np.all(deg_own == n - sg))
        unbalanced = abs(gh.coeffs[0]) > 1e-12
        res["unbalanced"] = unbalanced
        if unbalanced:
            res["huang"] = bool(np.any(sg <= n - huang_need + 1e-12))
            res["log"] = bool(np.any(sg < n - log_need))
        out.append(res)
    return out


@_timed
def verify_gl_equivalence(n: int, samples: int | None = None, seed: int = 0, jobs: int = 1) -> CampaignReport:
    """Twist identities and the low-sensitivity point for every unbalanced twist."""
    codes = function_codes(n, samples, seed)
    rows = _map_chunks(_gl_rows, n, codes, jobs)
    rep = CampaignReport("gl", n, {"samples": samples, "seed": seed if samples else None})
    rep.checked = len(rows)
    keys = ("sens_flip", "coeff_flip", "mean_top", "link", "huang", "log")
    rep.counts = {k: 0 for k in keys} | {"unbalanced": 0}
    worst_coeff = worst_mean = 0.0
    for r in rows:
        ok = {"sens_flip": r["sens_flip"], "coeff_flip": r["coeff_flip"] <= FOURIER_TOL, "mean_top": r["mean_top"] <= FOURIER_TOL,
              "link": r["link"]}
        worst_coeff, worst_mean = max(worst_coeff, r["coeff_flip"]), max(worst_mean, r["mean_top"])
        if r["unbalanced"]:
            rep.counts["unbalanced"] += 1
            ok["huang"] = r["huang"]
            ok["log"] = r["log"]
        for k, v in ok.items():
            if v:
                rep.counts[k] += 1
            else:
                rep.violations.append({"table": _hex(n, r["code"]), "check": k})
    rep.witnesses = {"max_error_coeff_flip": worst_coeff, "max_error_mean": worst_mean,
                     "huang_threshold": n - math.sqrt(n), "log_threshold": n - hc.chung_log_bound(n)}
    return rep


# ---------------------------------------------------------------- subgraphs

def _all_vertex_masks(n: int) -> np.ndarray:
    """Membership rows for all ``2**(2**n)`` vertex subsets of ``Q_n``."""
    N = 1 << n
    codes = np.arange(1 << N, dtype=np.int64)
    return ((codes[:, None] >> np.arange(N)[None, :]) & 1).astype(bool)


def compute_g(n: int, k: float) -> int | None:
    """Least ``t`` such that every ``t``-vertex induced subgraph of ``Q_n`` has max degree >= ``k``.

    ``None`` when no such ``t`` exists (``k`` larger than ``n``).
    """
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"compute_g sweeps all vertex subsets; n={n} exceeds {EXHAUSTIVE_MAX_N}")
    if k > n:
        return None
    masks = _all_vertex_masks(n)
    deltas = hc.max_degree_many(n, masks)
    sizes = masks.sum(axis=1)
    below = sizes[deltas < k]
    return int(below.max()) + 1 if below.size else 1


@_timed
def verify_g(n: int) -> CampaignReport:
    """``g(n, k)`` for ``k = 1..n`` and the check ``g(n, sqrt n) = 2**(n-1) + 1``."""
    rep = CampaignReport("g", n)
    values = {str(k): compute_g(n, k) for k in range(1, n + 1)}
    g_sqrt = compute_g(n, math.sqrt(n))
    rep.checked = n + 1
    rep.witnesses = {"g": values, "g_sqrt_n": g_sqrt, "half_plus_one": (1 << (n - 1)) + 1}
    if g_sqrt != (1 << (n - 1)) + 1:
        rep.violations.append({"check": "g(n, sqrt n) = 2^(n-1)+1", "g": g_sqrt})
    return rep


def _subset_rows(n: int, size: int, samples: int | None, seed: int) -> np.ndarray:
    N = 1 << n
    if samples is None:
        return np.array(list(itertools.combinations(range(N), size)), dtype=np.int64).reshape(-1, size)
    rng = np.random.default_rng(seed)
    return np.array([np.sort(rng.choice(N, size=size, replace=False)) for _ in range(samples)], dtype=np.int64)


def _members(n: int, subsets: np.ndarray) -> np.ndarray:
    m = np.zeros((subsets.shape[0], 1 << n), dtype=bool)
    m[np.arange(subsets.shape[0])[:, None], subsets] = True
    return m


def _top_eigs(A: np.ndarray, subsets: np.ndarray, chunk: int = 4096) -> np.ndarray:
    out = []
    for i in range(0, subsets.shape[0], chunk):
        out.append(jacobi_eigenvalues(submatrix_stack(A, subsets[i:i + chunk]))[:, 0])
    return np.concatenate(out) if out else np.zeros(0)


@_timed
def verify_huang(n: int, samples: int | None = None, seed: int = 0) -> CampaignReport:
    """Every (or ``samples`` random) ``(2**(n-1)+1)``-vertex subgraph: degree and eigenvalue bounds.

    Checks ``Delta >= ceil(sqrt n)``, ``lambda_1 >= sqrt(n) - 1e-6`` for the
    Huang submatrix, and ``Delta >= lambda_1 - 1e-9``.
    """
    if samples is None and n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"n={n} needs a sample count")
    size = (1 << (n - 1)) + 1
    subsets = _subset_rows(n, size, samples, seed)
    deltas = hc.max_degree_many(n, _members(n, subsets)).astype(np.int64)
    lams = _top_eigs(huang_matrix(n).entries, subsets)
    need = math.ceil(math.sqrt(n) - 1e-12)
    rep = CampaignReport("huang", n, {"samples": samples, "seed": seed if samples else None,
                                      "subset_size": size})
    rep.checked = int(subsets.shape[0])
    checks = {"delta >= ceil(sqrt n)": deltas >= need,
              "lambda1 >= sqrt n": lams >= math.sqrt(n) - 1e-6,
              "delta >= lambda1": deltas >= lams - 1e-9}
    rep.counts = {k: int(v.sum()) for k, v in checks.items()}
    for k, v in checks.items():
        for row in np.flatnonzero(~v)[:50]:
            rep.violations.append({"check": k, "vertices": subsets[row].tolist(),
                                   "delta": int(deltas[row]), "lambda1": float(lams[row])})
    rep.witnesses = {"min_delta": int(deltas.min()), "min_lambda1": float(lams.min()),
                     "sqrt_n": math.sqrt(n)}
    return rep


@_timed
def verify_degree_eigen(n: int, samples: int | None = None, seed: int = 0) -> CampaignReport:
    """``Delta(H) >= lambda_1`` for induced subgraphs of every size.

    Exhaustive over all nonempty vertex subsets for ``n <= 3``; otherwise
    ``samples`` random subsets, the size drawn uniformly from ``1..2**n``.
    """
    A = huang_matrix(n).entries
    N = 1 << n
    rep = CampaignReport("degree_eigen", n, {"samples": samples, "seed": seed if samples else None})
    if samples is None:
        groups = {k: np.array(list(itertools.combinations(range(N), k)), dtype=np.int64) for k in range(1, N + 1)}
    else:
        rng = np.random.default_rng(seed)
        groups: dict[int, list] = {}
        for _ in range(samples):
            k = int(rng.integers(1, N + 1))
            groups.setdefault(k, []).append(np.sort(rng.choice(N, size=k, replace=False)))
        groups = {k: np.array(v, dtype=np.int64) for k, v in sorted(groups.items())}
    for k, subsets in groups.items():
        deltas = hc.max_degree_many(n, _members(n, subsets))
        lams = _top_eigs(A, subsets)
        bad = np.flatnonzero(deltas < lams - 1e-9)
        rep.checked += int(subsets.shape[0])
        for row in bad[:50]:
            rep.violations.append({"vertices": subsets[row].tolist(), "delta": int(deltas[row]),
                                   "lambda1": float(lams[row])})
    rep.counts = {"subsets": rep.checked}
    return rep


@_timed
def verify_interlacing(n: int, samples: int | None = None, seed: int = 0, signed: bool = True) -> CampaignReport:
    """Cauchy interlacing between the Huang (or plain cube) matrix and its principal submatrices.

    All ``2**(2**n) - 1`` submatrices when ``samples`` is None, else random
    vertex subsets with uniformly drawn sizes.
    """
    A = huang_matrix(n).entries if signed else cube_adjacency(n)
    N = 1 << n
    big = jacobi_eigenvalues(A)
    rep = CampaignReport("interlacing", n, {"samples": samples, "seed": seed if samples else None,
                                            "signed": signed})
    if samples is None:
        groups = {k: np.array(list(itertools.combinations(range(N), k)), dtype=np.int64) for k in range(1, N + 1)}
    else:
        rng = np.random.default_rng(seed)
        raw: dict[int, list] = {}
        for _ in range(samples):
            k = int(rng.integers(1, N + 1))
            raw.setdefault(k, []).append(np.sort(rng.choice(N, size=k, replace=False)))
        groups = {k: np.array(v, dtype=np.int64) for k, v in sorted(raw.items())}
    for k, subsets in groups.items():
        for i in range(0, subsets.shape[0], 4096):
            part = subsets[i:i + 4096]
            mus = jacobi_eigenvalues(submatrix_stack(A, part))
            for row, mu in enumerate(mus):
                rep.checked += 1
                if not interlaces(big, mu):
                    rep.violations.append({"vertices": part[row].tolist()})
    rep.counts = {"submatrices": rep.checked}
    rep.witnesses = {"spectrum": big.tolist()}
    return rep


@_timed
def verify_chung(n: int) -> CampaignReport:
    """Chung's partition family: cardinality closed form and degree bounds on both sides."""
    F = hc.chung_partition(n)
    X = hc.chung_subgraph(F)
    Y = X.complement()
    k = len(F)
    larger = X if len(X) > len(Y) else Y
    r, t = hc.family_rank(F), hc.family_t(F)
    dX, dY, dL = hc.max_degree(X), hc.max_degree(Y), hc.max_degree(larger)
    rep = CampaignReport("chung", n, {"k": k, "part_sizes": [len(m) for m in F.members]})
    rep.witnesses = {"size_X": len(X), "size_complement": len(Y), "expected_size_X": hc.chung_expected_size(n, k),
                     "delta_X": dX, "delta_complement": dY, "delta_larger": dL, "rank": r, "t": t,
                     "sqrt_n": math.sqrt(n)}
    checks = {
        "size closed form": len(X) == hc.chung_expected_size(n, k),
        "larger side is 2^(n-1)+1": len(larger) == (1 << (n - 1)) + 1,
        "delta X <= max(r,t)": dX <= max(r, t),
        "delta complement <= max(r,t)": dY <= max(r, t),
        "delta larger < sqrt(n)+1": dL < math.sqrt(n) + 1,
    }
    root = math.isqrt(n)
    if root * root == n:
        checks["delta larger = sqrt n"] = dL == root
    rep.checked = len(checks)
    rep.counts = {k_: int(v) for k_, v in checks.items()}
    rep.violations = [{"check": k_} for k_, v in checks.items() if not v]
    return rep


CAMPAIGNS = {
    "chain": verify_chain,
    "ratio": extremal_ratio,
    "fourier": verify_fourier,
    "approx": verify_approx,
    "gl": verify_gl_equivalence,
    "g": verify_g,
    "huang": verify_huang,
    "degree-eigen": verify_degree_eigen,
    "interlacing": verify_interlacing,
    "chung": verify_chung,
}
