"""Randomized verification suites and their JSON reports.

Each suite is a sequence of independent trials.  Trial t of suite s
under master seed m draws from a dedicated generator keyed by
(m, crc32(s), t), so results are identical whether trials run serially
or on a thread pool, and any single trial can be replayed from a saved
report.  Violations never abort a suite; every comparison becomes a
record and the report carries them all.
"""

from __future__ import annotations

import json
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from ._version import __version__
from .basis import (
    SymplecticBasis,
    _coords_subspace,
    _sharp_std,
    dual_chain_construct,
    prime_coords,
    same_span_trace_check,
)
from .core import (
    apply_form,
    condition_number,
    random_pd,
    random_symplectic,
    symplectic_eigenvalues,
    symplectic_form,
    symplectic_gram,
    williamson,
)
from .errors import ConstructionError, ValidationError
from .extremal import (
    det_product_check,
    maxmin_check,
    phi_extremal_check,
    random_orthogonal,
    wielandt_certify,
)
from .functionals import SHIPPED
from .inequalities import (
    additive_trial_records,
    majorize,
    multiplicative_trial_records,
    random_dominated_pair,
    random_majorization_pair,
    random_supermajorization_pair,
    schur_concave_monotone_check,
    supermajorize,
)
from .linalg import fnorm, max_principal_angle, span_residual

SUITE_IDS = (
    "williamson",
    "maxmin",
    "wielandt",
    "construction",
    "lidskii-add",
    "lidskii-mult",
    "phi-extremal",
    "det-product",
    "majorization",
)

DEFAULT_TRIALS = {
    "williamson": 60,
    "maxmin": 25,
    "wielandt": 12,
    "construction": 40,
    "lidskii-add": 150,
    "lidskii-mult": 80,
    "phi-extremal": 12,
    "det-product": 20,
    "majorization": 40,
}


@dataclass
class SuiteConfig:
    suite: str = "all"
    trials: Optional[int] = None
    n_min: int = 2
    n_max: int = 5
    master_seed: int = 0
    tol: float = 1e-9
    report_path: Optional[str] = "sympspec_report.json"
    jobs: int = 1

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITE_IDS:
            raise ValidationError(
                f"unknown suite {self.suite!r}; choose from {('all',) + SUITE_IDS}"
            )
        if self.trials is not None and self.trials < 1:
            raise ValidationError(f"trials must be positive, got {self.trials}")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValidationError(
                f"size range [{self.n_min}, {self.n_max}] is invalid"
            )
        if not self.tol > 0.0:
            raise ValidationError(f"tolerance must be positive, got {self.tol}")
        if self.jobs < 1:
            raise ValidationError(f"jobs must be positive, got {self.jobs}")


def trial_rng(master_seed, suite_id, trial):
    """Deterministic per-trial generator, independent of execution order."""
    seq = np.random.SeedSequence(
        [int(master_seed) % 2**64, zlib.crc32(suite_id.encode("utf-8")), int(trial)]
    )
    return np.random.default_rng(seq)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    return obj


def _rec(trial, n, name, lhs, rhs, direction, tol, instance=None):
    lhs, rhs, tol = float(lhs), float(rhs), float(tol)
    if direction == "ge":
        slack = lhs - rhs
    elif direction == "le":
        slack = rhs - lhs
    else:
        slack = tol - abs(lhs - rhs)
        tol = 0.0
    return {
        "trial": int(trial),
        "n": int(n),
        "name": name,
        "lhs": lhs,
        "rhs": rhs,
        "direction": direction,
        "slack": float(slack),
        "tol": tol,
        "passed": bool(slack >= -tol),
        "instance": _jsonable(instance or {}),
    }


def _from_inequality(trial, n, rec):
    return {
        "trial": int(trial),
        "n": int(n),
        "name": rec.name,
        "lhs": rec.lhs,
        "rhs": rec.rhs,
        "direction": rec.direction,
        "slack": rec.slack,
        "tol": rec.tol,
        "passed": rec.passed,
        "instance": _jsonable(rec.instance),
    }


def _from_certificate(trial, n, cert):
    return _rec(
        trial, n, cert.name, cert.slack, 0.0, "ge", 0.0,
        instance={
            "claimed": cert.claimed_value,
            "sampled_min": cert.sampled_min,
            "witness_max": cert.witness_max,
            "equality_gap": cert.equality_gap,
            "n_skipped": cert.n_skipped,
        },
    )


def _draw_n(cfg, rng):
    return int(rng.integers(cfg.n_min, cfg.n_max + 1))


def _draw_index_set(n, rng, cap=None):
    k_max = n if cap is None else min(n, cap)
    k = int(rng.integers(1, k_max + 1))
    return np.sort(rng.choice(np.arange(1, n + 1), size=k, replace=False))


def _trial_williamson(t, cfg, rng):
    n = _draw_n(cfg, rng)
    if t % 3 == 2:
        target = np.sort(rng.uniform(0.2, 3.0, size=n))
        a = random_pd(n, rng, spectrum=target)
    else:
        target = None
        a = random_pd(n, rng)
    cond = condition_number(a)
    inst = {"cond": cond}
    if cond > 1e12:
        inst["condition_warning"] = True
    dec = williamson(a)
    records = [
        _rec(t, n, "williamson-residual-A", dec.residual_a, 1e-8 * fnorm(a), "le", 0.0, inst),
        _rec(t, n, "williamson-residual-J", dec.residual_j, 1e-9, "le", 0.0, inst),
        _rec(
            t, n, "williamson-transform-symplectic",
            fnorm(dec.m.T @ apply_form(dec.m) - symplectic_form(n)),
            1e-8, "le", 0.0, inst,
        ),
    ]
    spectra = np.stack([
        dec.d,
        symplectic_eigenvalues(a, method="skew-canonical"),
        symplectic_eigenvalues(a, method="ja-eigen"),
    ])
    spread = float(np.max(spectra.max(axis=0) - spectra.min(axis=0)))
    records.append(
        _rec(
            t, n, "method-agreement", spread,
            1e-8 * max(1.0, float(np.max(spectra))), "le", 0.0, inst,
        )
    )
    if target is not None:
        records.append(
            _rec(
                t, n, "prescribed-recovery",
                float(np.max(np.abs(dec.d - target))),
                1e-9 * max(1.0, float(np.max(target))), "le", 0.0, inst,
            )
        )
    return records


def _trial_maxmin(t, cfg, rng):
    n = _draw_n(cfg, rng)
    a = random_pd(n, rng)
    k = int(rng.integers(1, n + 1))
    cert = maxmin_check(a, k, samples=6, n_subspaces=4, rng=rng, tol=cfg.tol)
    return [_from_certificate(t, n, cert)]


def _trial_wielandt(t, cfg, rng):
    n = _draw_n(cfg, rng)
    a = random_pd(n, rng)
    idx = _draw_index_set(n, rng, cap=4)
    cert = wielandt_certify(a, idx, n_chains=3, samples=6, rng=rng, tol=cfg.tol)
    return [_from_certificate(t, n, cert)]


def _trial_construction(t, cfg, rng):
    n = _draw_n(cfg, rng)
    a = random_pd(n, rng)
    basis = SymplecticBasis(random_symplectic(n, rng))
    idx = _draw_index_set(n, rng, cap=4)
    vq = random_orthogonal(2 * n, rng)
    wq = random_orthogonal(2 * n, rng)
    vchain = [vq[:, : n + int(i)] for i in idx]
    wchain = [wq[:, : 2 * n - int(i) + 1] for i in idx]
    inst = {"index_set": idx.tolist()}
    try:
        vs, ws = dual_chain_construct(vchain, wchain, basis, rng)
    except ConstructionError as exc:
        inst["skipped"] = str(exc)
        return [_rec(t, n, "construction-skipped", 0.0, 0.0, "eq", 1.0, inst)]
    vc = basis.coords(vs)
    wc = basis.coords(ws)
    vf = np.hstack([vc, prime_coords(vc)])
    wf = np.hstack([wc, prime_coords(wc)])
    k2 = vf.shape[1]
    form = symplectic_form(k2 // 2)
    defect = max(
        fnorm(vf.T @ vf - np.eye(k2)),
        fnorm(wf.T @ wf - np.eye(k2)),
        fnorm(symplectic_gram(vf, vf) - form),
        fnorm(symplectic_gram(wf, wf) - form),
    )
    angle = max_principal_angle(vf, wf)
    member = 0.0
    for cols, chain in ((vc, vchain), (wc, wchain)):
        for j in range(cols.shape[1]):
            sharp = _sharp_std(_coords_subspace(chain[j], basis))
            member = max(member, span_residual(sharp, cols[:, j]))
    lhs, rhs = same_span_trace_check(a, ws, vs, basis, check=False)
    return [
        _rec(t, n, "construction-orthosymplectic", defect, 1e-8, "le", 0.0, inst),
        _rec(t, n, "construction-span-angle", angle, 1e-8, "le", 0.0, inst),
        _rec(t, n, "construction-sharp-membership", member, 1e-8, "le", 0.0, inst),
        _rec(
            t, n, "construction-trace-equality", abs(lhs - rhs),
            1e-9 * max(1.0, abs(lhs)), "le", 0.0,
            {**inst, "lhs": lhs, "rhs": rhs},
        ),
    ]


def _trial_lidskii_add(t, cfg, rng):
    n = _draw_n(cfg, rng)
    return [_from_inequality(t, n, r) for r in additive_trial_records(t, n, rng, tol=cfg.tol)]


def _trial_lidskii_mult(t, cfg, rng):
    n = _draw_n(cfg, rng)
    return [_from_inequality(t, n, r) for r in multiplicative_trial_records(t, n, rng, tol=cfg.tol)]


def _trial_phi(t, cfg, rng):
    n = _draw_n(cfg, rng)
    a = random_pd(n, rng)
    idx = _draw_index_set(n, rng, cap=4)
    phi = SHIPPED[t % len(SHIPPED)]
    cert = phi_extremal_check(
        a, idx, phi, n_chains=3, rng=rng, tol=cfg.tol, phi_trials=40
    )
    rec = _from_certificate(t, n, cert)
    rec["instance"]["functional"] = phi.name
    return [rec]


def _trial_det_product(t, cfg, rng):
    n = _draw_n(cfg, rng)
    a = random_pd(n, rng)
    idx = _draw_index_set(n, rng, cap=4)
    cert = det_product_check(a, idx, samples=3, rng=rng)
    return [_from_certificate(t, n, cert)]


def _brute_supermajorize(a, b, atol=0.0):
    """Reference comparison by explicit sequential partial sums."""
    a_s = sorted(float(x) for x in a)
    b_s = sorted(float(x) for x in b)
    ca = cb = 0.0
    for x, y in zip(a_s, b_s):
        ca += x
        cb += y
        if not ca >= cb - atol:
            return False
    return True


def _brute_majorize(a, b, atol=0.0):
    if not _brute_supermajorize(a, b, atol=atol):
        return False
    total_a = 0.0
    for x in sorted(float(v) for v in a):
        total_a += x
    total_b = 0.0
    for x in sorted(float(v) for v in b):
        total_b += x
    return abs(total_a - total_b) <= max(atol, 1e-12 * max(1.0, abs(total_a)))


def _trial_majorization(t, cfg, rng):
    n = int(rng.integers(2, 8))
    records = []
    x = rng.uniform(0.0, 3.0, size=n)
    y = rng.uniform(0.0, 3.0, size=n)
    atol = 1e-12 * max(1.0, float(np.max(np.abs(x))) + float(np.max(np.abs(y))))
    records.append(
        _rec(
            t, n, "supermajorize-oracle-agreement",
            float(supermajorize(x, y, atol=atol)),
            float(_brute_supermajorize(x, y, atol=atol)),
            "eq", 0.0, {"x": x.tolist(), "y": y.tolist()},
        )
    )
    records.append(
        _rec(
            t, n, "majorize-oracle-agreement",
            float(majorize(x, y, atol=atol)),
            float(_brute_majorize(x, y, atol=atol)),
            "eq", 0.0, {},
        )
    )
    am, bm = random_majorization_pair(n, rng)
    scale = 1e-12 * max(1.0, float(np.max(np.abs(bm))) * n)
    records.append(
        _rec(t, n, "majorization-pair-valid", float(majorize(am, bm, atol=scale)), 1.0, "eq", 0.0, {})
    )
    up, down = random_supermajorization_pair(n, rng)
    records.append(
        _rec(
            t, n, "supermajorization-pair-valid",
            float(supermajorize(up, down, atol=scale)), 1.0, "eq", 0.0, {},
        )
    )
    hi, lo = random_dominated_pair(n, rng)
    records.append(
        _rec(
            t, n, "domination-implies-supermajorization",
            float(supermajorize(hi, lo, atol=scale)), 1.0, "eq", 0.0, {},
        )
    )
    if t == 0:
        for phi in SHIPPED:
            audit = schur_concave_monotone_check(phi, trials=150, rng=rng)
            records.append(
                _rec(
                    t, n, f"functional-audit-{phi.name}",
                    float(audit.ok), 1.0, "eq", 0.0,
                    {"counterexamples": audit.counterexamples[:3]},
                )
            )
    return records


_TRIAL_FUNCS = {
    "williamson": _trial_williamson,
    "maxmin": _trial_maxmin,
    "wielandt": _trial_wielandt,
    "construction": _trial_construction,
    "lidskii-add": _trial_lidskii_add,
    "lidskii-mult": _trial_lidskii_mult,
    "phi-extremal": _trial_phi,
    "det-product": _trial_det_product,
    "majorization": _trial_majorization,
}


def run_suite(suite_id, config):
    """All records and the aggregate for one suite."""
    trials = config.trials if config.trials is not None else DEFAULT_TRIALS[suite_id]
    fn = _TRIAL_FUNCS[suite_id]

    def one(t):
        return fn(t, config, trial_rng(config.master_seed, suite_id, t))

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            per_trial = list(pool.map(one, range(trials)))
    else:
        per_trial = [one(t) for t in range(trials)]
    records = [r for chunk in per_trial for r in chunk]
    failed = [r for r in records if not r["passed"]]
    aggregate = {
        "n_trials": int(trials),
        "n_records": len(records),
        "n_failed": len(failed),
        "min_slack": float(min((r["slack"] for r in records), default=0.0)),
        "passed": not failed,
    }
    return {"records": records, "aggregate": aggregate}


def run_all(config):
    """Full report for the configured suites, plus the exit code."""
    suites = list(SUITE_IDS) if config.suite == "all" else [config.suite]
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()
    out = {}
    per_suite_s = {}
    for sid in suites:
        s0 = time.perf_counter()
        out[sid] = run_suite(sid, config)
        per_suite_s[sid] = round(time.perf_counter() - s0, 6)
    n_failed = sum(out[sid]["aggregate"]["n_failed"] for sid in suites)
    report = {
        "version": __version__,
        "config": {
            "suite": config.suite,
            "trials": config.trials,
            "n_min": config.n_min,
            "n_max": config.n_max,
            "master_seed": config.master_seed,
            "tol": config.tol,
        },
        "timing": {
            "started_utc": started,
            "elapsed_s": round(time.perf_counter() - t0, 6),
            "jobs": config.jobs,
            "suites": per_suite_s,
        },
        "suites": out,
        "overall": {
            "passed": n_failed == 0,
            "n_failed": n_failed,
            "suites_run": suites,
        },
    }
    return report, 0 if n_failed == 0 else 1


def write_report(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def strip_timing(report):
    """Copy of a report with the timing section removed, for comparisons."""
    out = json.loads(json.dumps(report))
    out.pop("timing", None)
    return out


def reports_match(r1, r2):
    """True when two reports agree on everything except timing."""
    return strip_timing(r1) == strip_timing(r2)


def replay(report_path, suite_id, trial):
    """Re-run one recorded trial and compare against the saved report.

    Returns (fresh_records, stored_records, match).
    """
    try:
        with open(report_path, "r", encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot load report {report_path}: {exc}") from None
    if suite_id not in report.get("suites", {}):
        raise ValidationError(f"suite {suite_id!r} is not in the report")
    cfg_src = report.get("config", {})
    config = SuiteConfig(
        suite=suite_id,
        trials=cfg_src.get("trials"),
        n_min=cfg_src.get("n_min", 2),
        n_max=cfg_src.get("n_max", 5),
        master_seed=cfg_src.get("master_seed", 0),
        tol=cfg_src.get("tol", 1e-9),
        report_path=None,
        jobs=1,
    )
    n_trials = report["suites"][suite_id]["aggregate"]["n_trials"]
    if not 0 <= trial < n_trials:
        raise ValidationError(f"trial {trial} outside recorded range 0..{n_trials - 1}")
    fn = _TRIAL_FUNCS[suite_id]
    fresh = fn(trial, config, trial_rng(config.master_seed, suite_id, trial))
    fresh = json.loads(json.dumps(fresh))
    stored = [
        r for r in report["suites"][suite_id]["records"] if r["trial"] == trial
    ]
    return fresh, stored, fresh == stored
