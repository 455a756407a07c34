"""Command-line runner: verification suites, single quantities, parameter scans.

Three subcommands:

    gffads verify <suite>  [--config cfg.json] [--seed N] [--format json|csv]
    gffads compute <name>  [--param k=v ...]
    gffads scan <name> --axis param:start:stop:steps [--param k=v ...]

Suites bundle the fast invariant checks of each module; compute evaluates one
public quantity; scan tabulates it along one numeric parameter (CSV output).
Exit codes: 0 all checks pass, 1 a tolerance failed, 2 bad usage or config.

Output is deterministic for a fixed config and seed.  Wall-clock timings are
recorded but only emitted with --timings so that default output is
byte-identical across runs.
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from . import adsboundary as adsb
from . import correlators as corr
from . import fock
from . import stress
from .errors import GffadsError
from .quadrature import FINE_SCHEDULE, hankel_transform
from .spacetime import AdSPoint, MinkVector, chordal_distance
from .specfun import Order, bessel_j, bessel_k, gamma, j_even

__all__ = ["main"]


class ConfigError(Exception):
    """Malformed configuration or unknown selector (exit code 2)."""


# ---------------------------------------------------------------------------
# configuration

def _parse_value(text):
    if "," in text:
        return tuple(float(p) for p in text.split(","))
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def load_config(args):
    cfg = {"seed": 0, "format": "json", "timings": False, "params": {}}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
        params = doc.pop("params", {})
        if not isinstance(params, dict):
            raise ConfigError("config 'params' must be an object")
        for key in ("seed", "format", "timings"):
            if key in doc:
                cfg[key] = doc.pop(key)
        cfg["params"].update(doc)   # stray top-level keys act as parameters
        cfg["params"].update(params)
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    if getattr(args, "format", None) is not None:
        cfg["format"] = args.format
    if getattr(args, "timings", False):
        cfg["timings"] = True
    for item in getattr(args, "param", None) or []:
        if "=" not in item:
            raise ConfigError(f"--param expects k=v, got {item!r}")
        key, _, val = item.partition("=")
        cfg["params"][key.strip()] = _parse_value(val.strip())
    if not isinstance(cfg["seed"], int):
        raise ConfigError("seed must be an integer")
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError(f"unknown output format {cfg['format']!r}")
    return cfg


# ---------------------------------------------------------------------------
# report records

def _record(name, value, error=0.0, reference=None, tolerance=None,
            passed=None, runtime=0.0, inputs=None):
    if hasattr(value, "error_estimate"):   # Correlator / QuadratureResult
        error = max(float(error), float(value.error_estimate))
        value = value.value
    if hasattr(reference, "error_estimate"):
        reference = reference.value
    return {"name": name, "value": complex(value), "error_estimate": float(error),
            "reference": None if reference is None else complex(reference),
            "tolerance": None if tolerance is None else float(tolerance),
            "passed": None if passed is None else bool(passed),
            "runtime": float(runtime), "inputs": inputs or {}}


def _check(name, value, reference, tolerance, relative=True, error=0.0,
           inputs=None):
    if hasattr(value, "error_estimate"):
        error = max(float(error), float(value.error_estimate))
        value = value.value
    if hasattr(reference, "error_estimate"):
        reference = reference.value
    value = complex(value)
    reference = complex(reference)
    scale = abs(reference) if relative and reference != 0 else 1.0
    passed = abs(value - reference) <= tolerance * scale
    return _record(name, value, error=error, reference=reference,
                   tolerance=tolerance, passed=passed, inputs=inputs)


def _bound(name, value, tolerance, error=0.0, inputs=None):
    return _record(name, complex(value), error=error, reference=0.0,
                   tolerance=tolerance, passed=abs(value) <= tolerance,
                   inputs=inputs)


def _flag(name, condition, value=0.0, inputs=None):
    return _record(name, complex(value), passed=bool(condition), tolerance=0.0,
                   inputs=inputs)


def _fmt17(x):
    return f"{float(x):.16e}"


def _emit(records, cfg):
    records = sorted(records, key=lambda r: r["name"])
    ok = all(r["passed"] is not False for r in records)
    if cfg["format"] == "csv":
        cols = ["name", "value_re", "value_im", "error_estimate",
                "reference_re", "reference_im", "tolerance", "status"]
        if cfg["timings"]:
            cols.append("runtime_s")
        lines = [",".join(cols)]
        for r in records:
            row = [r["name"], _fmt17(r["value"].real), _fmt17(r["value"].imag),
                   _fmt17(r["error_estimate"])]
            row += ([_fmt17(r["reference"].real), _fmt17(r["reference"].imag)]
                    if r["reference"] is not None else ["", ""])
            row.append("" if r["tolerance"] is None else _fmt17(r["tolerance"]))
            row.append({True: "pass", False: "fail", None: "info"}[r["passed"]])
            if cfg["timings"]:
                row.append(f"{r['runtime']:.3f}")
            lines.append(",".join(row))
        text = "\n".join(lines)
    else:
        out = []
        for r in records:
            item = {"name": r["name"],
                    "value": {"re": r["value"].real, "im": r["value"].imag},
                    "error_estimate": r["error_estimate"],
                    "tolerance": r["tolerance"],
                    "status": {True: "pass", False: "fail",
                               None: "info"}[r["passed"]],
                    "inputs": r["inputs"]}
            if r["reference"] is not None:
                item["reference"] = {"re": r["reference"].real,
                                     "im": r["reference"].imag}
            if cfg["timings"]:
                item["runtime_s"] = round(r["runtime"], 3)
            out.append(item)
        text = json.dumps({"status": "pass" if ok else "fail",
                           "records": out}, indent=2)
    return text, ok


def _timed(records):
    """Decorator-style helper: run fn, attach wall time to its records."""
    def wrap(fn, *args, **kwargs):
        t0 = time.perf_counter()
        recs = fn(*args, **kwargs)
        dt = time.perf_counter() - t0
        for r in recs:
            r["runtime"] = dt / max(len(recs), 1)
        records.extend(recs)
    return wrap


# ---------------------------------------------------------------------------
# verification suites

def _suite_specfun(cfg, rng):
    recs = []
    x = 0.3
    val = gamma(x) * gamma(1.0 - x)
    recs.append(_check("specfun.gamma_reflection", val,
                       np.pi / np.sin(np.pi * x), 1e-12,
                       inputs={"x": x}))
    u = np.linspace(0.5, 20.0, 64)
    h = 1e-3
    for nu in (0.0, 0.5, 1.3):
        jm, j0, jp = (bessel_j(nu, u - h), bessel_j(nu, u),
                      bessel_j(nu, u + h))
        d1 = (jp - jm) / (2.0 * h)
        d2 = (jp - 2.0 * j0 + jm) / h ** 2
        res = (u ** 2 * d2 + u * d1 + (u ** 2 - nu ** 2) * j0) / (1.0 + u ** 2)
        recs.append(_bound(f"specfun.bessel_ode_residual_nu{nu}",
                           float(np.max(np.abs(res))), 1e-6,
                           inputs={"nu": nu, "fd_step": h}))
        u0 = 1.3
        ht = hankel_transform(nu, lambda t: t ** nu * np.exp(-t * t / 2.0), u0,
                              schedule=FINE_SCHEDULE)
        recs.append(_check(f"specfun.hankel_self_reciprocal_nu{nu}",
                           ht.value, u0 ** nu * np.exp(-u0 * u0 / 2.0), 1e-8,
                           error=ht.error_estimate,
                           inputs={"nu": nu, "u": u0}))
    nu, u0 = 1.3, 2.3
    recs.append(_check("specfun.even_series_matches_besselj",
                       j_even(nu, u0 ** 2) * u0 ** nu, bessel_j(nu, u0),
                       1e-12, inputs={"nu": nu, "u": u0}))
    return recs


def _suite_correlators(cfg, rng):
    recs = []
    x = MinkVector((0.4, 2.0))
    m = 1.3
    a = corr.wightman_kg(m, x, epsilon=1e-3)
    b = corr.wightman_kg_momentum_oracle(m, x, epsilon=1e-3)
    recs.append(_check("correlators.wightman_closed_vs_momentum", a, b, 1e-6,
                       inputs={"m": m, "x": list(x.components)}))
    h = corr.Power(0.5)
    s = np.geomspace(0.5, 50.0, 7)
    vals = [corr.gff2pt(h, h, MinkVector((0.0, math.sqrt(si)))).value.real
            for si in s]
    slope = np.polyfit(np.log(s), np.log(np.abs(vals)), 1)[0]
    recs.append(_check("correlators.power_weight_loglog_slope", slope, -1.5,
                       0.01, inputs={"nu": 0.5, "s_range": [0.5, 50.0]}))
    sc = corr.scaling_covariance_check(h, 1.6, x)
    recs.append(_record("correlators.scaling_covariance",
                        sc["discrepancy"], error=sc["combined_error"],
                        reference=0.0,
                        tolerance=max(sc["combined_error"], 1e-10),
                        passed=sc["pass"], inputs={"lambda": 1.6}))
    cv = corr.gff_commutator(h, h, x)
    recs.append(_bound("correlators.spacelike_commutator_zero", cv.value,
                       1e-8, error=cv.error_estimate,
                       inputs={"x": list(x.components)}))
    return recs


def _suite_fock(cfg, rng):
    recs = []
    import sympy as sym
    grid = fock.LightconeGrid()
    f = fock.gaussian_mode(grid, center=(3.0, 2.0), width=0.9,
                           phase=(0.3, -0.2))
    kp, km = sym.symbols("kp km", positive=True)
    expr = sym.exp(-((kp - 3.0) ** 2 + (km - 2.0) ** 2) / (2.0 * 0.9 ** 2)
                   + sym.I * (0.3 * kp - 0.2 * km))
    G = fock.GeneratorKind
    pairs = [("P0_M01", G("P", mu=0), G("M", mu=0, nu_idx=1)),
             ("D_P1", G("D"), G("P", mu=1)),
             ("M01_K0", G("M", mu=0, nu_idx=1), G("K", mu=0, delta=1.5)),
             ("D_K1", G("D"), G("K", mu=1, delta=1.5))]
    for label, g1, g2 in pairs:
        r = fock.algebra_closure_check(g1, g2, f, expr=expr)
        recs.append(_bound(f"fock.algebra_closure_{label}",
                           r["relative_discrepancy"], 1e-4,
                           inputs={"fd_drift": r["fd_drift"]}))
    packet = corr.GaussianPacket(MinkVector((0.1, -0.3)), 1.1,
                                 MinkVector((2.2, 0.4)))
    law = fock.special_conformal_field_law(packet, 0, 1.5)
    recs.append(_bound("fock.special_conformal_field_law",
                       law["relative_l2"], 1e-4, inputs={"delta": 1.5}))
    h = corr.Power(0.5)
    packs = [corr.GaussianPacket(MinkVector((0.2 * i, 0.1 * i)), 1.0 + 0.1 * i,
                                 MinkVector((1.5 + 0.2 * i, 0.1)))
             for i in range(4)]
    odd = fock.npoint([h] * 3, packs[:3])
    recs.append(_bound("fock.npoint_odd_vanishes", odd, 1e-14))
    full = fock.npoint([h] * 4, packs)
    w = {}
    for i in range(4):
        for j in range(i + 1, 4):
            w[i, j] = fock.npoint([h, h], [packs[i], packs[j]])
    paired = w[0, 1] * w[2, 3] + w[0, 2] * w[1, 3] + w[0, 3] * w[1, 2]
    recs.append(_check("fock.npoint_truncated_vanishes", full, paired, 1e-12))
    return recs


def _suite_holography(cfg, rng):
    recs = []
    spec = adsb.AdSFieldSpec(Order(0.5))
    dx = MinkVector((0.0, 4.0))
    bl = adsb.boundary_limit_check(spec, (0.04, 0.02), dx)
    recs.append(_bound("holography.boundary_limit_deviation",
                       bl["relative_deviations"][-1], 1e-2,
                       inputs={"z": 0.02, "dx": list(dx.components)}))
    recs.append(_flag("holography.boundary_limit_monotone", bl["monotone"]))
    lam = 1.5
    eps = 1e-3
    a = adsb.ads2pt(spec, 0.6, 0.9, MinkVector((0.2, 3.0)), epsilon=eps)
    # the i-epsilon regulator carries dimension and scales with the point
    b = adsb.ads2pt(spec, lam * 0.6, lam * 0.9, MinkVector((0.3, 4.5)),
                    epsilon=lam * eps)
    tol = max(3.0 * (a.error_estimate + b.error_estimate),
              1e-8 * abs(a.value))
    recs.append(_record("holography.ads2pt_dilation_invariance",
                        a.value - b.value,
                        error=a.error_estimate + b.error_estimate,
                        reference=0.0, tolerance=tol,
                        passed=abs(a.value - b.value) <= tol,
                        inputs={"lambda": lam}))
    mk = adsb.mass_change_kernel_check(0.5, 1.5, 0.7, 1.2)
    recs.append(_bound("holography.mass_change_kernel",
                       mk["relative_deviation"], 5e-3,
                       inputs={"nu": 0.5, "nu_prime": 1.5, "z": 0.7, "m": 1.2}))
    return recs


def _suite_locality(cfg, rng):
    p = cfg["params"]
    a = float(p.get("a", 0.3))
    b = float(p.get("b", 1.0))
    c = float(p.get("c", 1.4))
    nu = float(p.get("nu", 0.5))
    band = (b - c) ** 2
    if abs(a * a - band) < 0.05 * band:
        raise ConfigError(
            f"(a,b,c)=({a},{b},{c}) lies in the light-cone guard band")
    recs = []
    inner = adsb.bonus_locality(0.0, nu, a, b, c, schedule=FINE_SCHEDULE)
    ref = adsb.bonus_locality(0.0, nu, 0.5 * (b + c), b, c)
    recs.append(_bound("locality.bonus_locality_ratio",
                       abs(inner.value) / abs(ref.value), 1e-5,
                       error=inner.error_estimate / abs(ref.value),
                       inputs={"a": a, "b": b, "c": c, "nu": nu}))
    if abs(nu - 0.5) < 1e-12:
        ai = 0.5 * (b + c)
        oracle = 1.0 / (np.pi * math.sqrt(b * c)
                        * math.sqrt(ai * ai - (b - c) ** 2))
        recs.append(_check("locality.bonus_locality_interior_oracle",
                           ref.value, oracle, 1e-4,
                           error=ref.error_estimate,
                           inputs={"a": ai, "b": b, "c": c}))
    spec = adsb.AdSFieldSpec(Order(nu))
    for z, zp, t in ((0.5, 1.5, 0.6), (0.8, 2.0, 0.9)):
        cv = adsb.ads_commutator(spec, z, zp, MinkVector((t, 0.0)))
        recs.append(_bound(f"locality.ads_commutator_z{z}_zp{zp}",
                           cv.value, 1e-5, error=cv.error_estimate,
                           inputs={"z": z, "z_prime": zp, "dt": t}))
    h1 = corr.Power(0.5)
    f1 = corr.GaussianPacket(MinkVector((0.0, 0.0)), 1.0,
                             MinkVector((-2.0, -0.5)))
    fa = corr.GaussianPacket(MinkVector((0.0, -3.0)), 0.5,
                             MinkVector((0.0, 0.0)))
    gb = corr.GaussianPacket(MinkVector((0.0, 3.0)), 0.5,
                             MinkVector((1.5, -0.3)))
    loc = stress.commutator_locality_check(fa, gb, h1, h1, f1, 0, 0,
                                           n_nodes=120)
    recs.append(_bound("locality.set_commutator_spacelike", loc["commutator"],
                       1e-6, error=loc["error_estimate"],
                       inputs={"separation": 6.0, "widths": 0.5}))
    return recs


def _default_set_args():
    h = corr.Power(0.5)
    f1 = corr.GaussianPacket(MinkVector((0.0, 0.0)), 1.0,
                             MinkVector((-2.0, -0.5)))
    f2 = corr.GaussianPacket(MinkVector((0.3, -0.2)), 1.2,
                             MinkVector((1.8, -0.4)))
    f = corr.GaussianPacket(MinkVector((0.0, 0.0)), 0.8,
                            MinkVector((0.0, 0.0)))
    return h, f1, f2, f


def _suite_set(cfg, rng):
    recs = []
    n = 1000
    k1p = rng.uniform(0.2, 2.0, n)
    k1m = rng.uniform(0.2, 2.0, n)
    k2p = rng.uniform(0.2, 2.0, n)
    worst_cons = 0.0
    worst_sym = 0.0
    for i in range(n):
        m2 = k1p[i] * k1m[i]
        k1 = MinkVector((0.5 * (k1p[i] + k1m[i]), 0.5 * (k1p[i] - k1m[i])))
        k2m = m2 / k2p[i]
        k2 = MinkVector((0.5 * (k2p[i] + k2m), 0.5 * (k2p[i] - k2m)))
        q1 = np.array([k1.components[0], -k1.components[1]])
        q2 = np.array([-k2.components[0], k2.components[1]])
        Q = q1 + q2
        for nu_i in (0, 1):
            con = (Q[0] * stress.set_kernel(k1, k2, (1, -1), 0, nu_i)
                   - Q[1] * stress.set_kernel(k1, k2, (1, -1), 1, nu_i))
            worst_cons = max(worst_cons, abs(con))
        sym = abs(stress.set_kernel(k1, k2, (1, -1), 0, 1)
                  - stress.set_kernel(k1, k2, (1, -1), 1, 0))
        worst_sym = max(worst_sym, sym)
    recs.append(_bound("set.kernel_onshell_conservation", worst_cons, 1e-12,
                       inputs={"pairs": n, "seed": cfg["seed"]}))
    recs.append(_bound("set.kernel_symmetry", worst_sym, 1e-14))
    k = MinkVector((1.3, 0.6))
    for nu_i in (0, 1):
        want = 2.0 * 1.3 * (1.3 if nu_i == 0 else -0.6)
        recs.append(_check(f"set.kernel_coincidence_0{nu_i}",
                           stress.set_kernel(k, k, (1, -1), 0, nu_i), want,
                           1e-12, inputs={"k": list(k.components)}))

    h, f1, f2, f = _default_set_args()
    freal = corr.GaussianPacket(MinkVector((0.0, 0.0)), 0.8,
                                MinkVector((0.0, 0.0)))
    herm = stress.set_matrix_element(freal, h, f1, h, f1, 0, 0)
    recs.append(_bound("set.hermiticity_imag_part",
                       herm.value.imag / abs(herm.value), 1e-10,
                       error=herm.error_estimate))
    for nu_i in (0, 1):
        cons = stress.conservation_check(h, f1, h, f2, f, nu_i)
        recs.append(_bound(f"set.conservation_nu{nu_i}", cons["relative"],
                           1e-8, error=cons["error_estimate"]))
    tr = stress.trace_check(h, f1, h, f2, f)
    recs.append(_flag("set.trace_significant", tr["significant"], tr["trace"]))
    md = stress.momentum_density_check(h, f1, h, f2, 0, (2.0, 4.0, 8.0))
    recs.append(_bound("set.momentum_density_deviation",
                       md["relative_deviations"][-1], 1e-2,
                       inputs={"largest_s": 8.0}))
    recs.append(_flag("set.momentum_density_monotone", md["monotone"]))

    m1, m2 = 1.1, 0.7
    Z = 40.0
    w = stress.z_integral_weight(0.5, Z, m1 * m1, m2 * m2)
    aa, bb = m1 - m2, m1 + m2
    sine = 0.5 * (np.sin(aa * Z) / aa - np.sin(bb * Z) / bb) \
        / (np.pi * math.sqrt(m1 * m2))
    recs.append(_check("set.z_weight_sine_oracle", w, sine, 1e-10,
                       inputs={"nu": 0.5, "Z": Z}))
    dc = stress.z_integral_weight_delta_check(0.5, 200.0, 1.0)
    recs.append(_bound("set.z_weight_delta_smearing",
                       dc["relative_deviation"], 1e-2,
                       inputs={"Z": 200.0, "m1sq": 1.0, "g_width": 0.2}))
    red = stress.ads_set_reduction(0.5, (2.0, 4.0, 8.0), f, h, f1, h, f2,
                                   0, 0, n_outer=32, n_inner=600)
    recs.append(_bound("set.ads_reduction_deviation",
                       red["final_relative_deviation"], 1e-2,
                       inputs={"Z": 8.0, "nu": 0.5}))
    sig = [0.4 * 0.5 ** i for i in range(6)]
    div = stress.vacuum_fluctuation_divergence(f, sig)
    recs.append(_flag("set.vacuum_fluctuation_diverges",
                      div["strictly_increasing"], div["growth_exponent"]))
    ctrl = stress.vacuum_fluctuation_divergence(f, sig, fixed_width=0.3)
    spread = (max(ctrl["values"]) - min(ctrl["values"])) \
        / max(abs(v) for v in ctrl["values"])
    recs.append(_bound("set.vacuum_fluctuation_smooth_control", spread, 1e-10))
    return recs


SUITES = {"specfun": _suite_specfun, "correlators": _suite_correlators,
          "fock": _suite_fock, "holography": _suite_holography,
          "locality": _suite_locality, "set": _suite_set}


def run_verify(suite, cfg):
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from "
                          f"{sorted(SUITES)} or 'all'")
    names = sorted(SUITES) if suite == "all" else [suite]
    rng = np.random.default_rng(cfg["seed"])
    records = []
    add = _timed(records)
    for name in names:
        add(SUITES[name], cfg, rng)
    return records


# ---------------------------------------------------------------------------
# single quantities

def _vector(p, tkey="t", xkey="x", default=(0.0, 2.0)):
    return MinkVector((float(p.get(tkey, default[0])),
                       float(p.get(xkey, default[1]))))


def _q_gamma(p):
    return _record("gamma", gamma(float(p.get("x", 5.0))),
                   inputs={"x": p.get("x", 5.0)})


def _q_besselj(p):
    nu, u = float(p.get("nu", 0.5)), float(p.get("u", 1.0))
    return _record("besselj", bessel_j(nu, u), inputs={"nu": nu, "u": u})


def _q_besselk(p):
    nu, u = float(p.get("nu", 0.5)), float(p.get("u", 1.0))
    return _record("besselk", bessel_k(nu, u), inputs={"nu": nu, "u": u})


def _q_wightman(p):
    m = float(p.get("m", 1.0))
    x = _vector(p)
    v = corr.wightman_kg(m, x, epsilon=float(p.get("epsilon", 1e-3)))
    return _record("wightman", v, inputs={"m": m, "x": list(x.components)})


def _q_gff2pt(p):
    inputs = {"x": None}
    if "hfile" in p:
        try:
            h = corr.Tabulated.from_file(str(p["hfile"]))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read weight table {p['hfile']!r}: {exc}")
        inputs["hfile"] = str(p["hfile"])
    else:
        h = corr.Power(float(p.get("nu", 0.5)))
        inputs["nu"] = p.get("nu", 0.5)
    if "s" in p:
        x = MinkVector((0.0, math.sqrt(float(p["s"]))))
    else:
        x = _vector(p)
    inputs["x"] = list(x.components)
    res = corr.gff2pt(h, h, x)
    return _record("gff2pt", res.value, error=res.error_estimate,
                   inputs=inputs)


def _q_ads2pt(p):
    spec = adsb.AdSFieldSpec(Order(float(p.get("nu", 0.5))))
    z, zp = float(p.get("z", 0.5)), float(p.get("zp", 0.8))
    x = _vector(p)
    res = adsb.ads2pt(spec, z, zp, x)
    return _record("ads2pt", res.value, error=res.error_estimate,
                   inputs={"nu": p.get("nu", 0.5), "z": z, "zp": zp,
                           "dx": list(x.components)})


def _q_bonus_locality(p):
    nu = float(p.get("nu", 0.5))
    d = int(p.get("d", 2))
    a, b, c = (float(p.get(k, v)) for k, v in
               (("a", 0.3), ("b", 1.0), ("c", 1.4)))
    res = adsb.bonus_locality(0.5 * d - 1.0, nu, a, b, c)
    return _record("bonusLocality", res.value, error=res.error_estimate,
                   inputs={"a": a, "b": b, "c": c, "nu": nu, "d": d})


def _q_ads_commutator(p):
    spec = adsb.AdSFieldSpec(Order(float(p.get("nu", 0.5))))
    z, zp = float(p.get("z", 0.5)), float(p.get("zp", 1.5))
    x = _vector(p, default=(0.6, 0.0))
    res = adsb.ads_commutator(spec, z, zp, x)
    return _record("adsCommutator", res.value, error=res.error_estimate,
                   inputs={"z": z, "zp": zp, "dx": list(x.components)})


def _q_chordal(p):
    z, zp = float(p.get("z", 0.5)), float(p.get("zp", 0.8))
    x = _vector(p)
    val = chordal_distance(AdSPoint(z, MinkVector((0.0, 0.0))),
                           AdSPoint(zp, x))
    return _record("chordalDistance", val,
                   inputs={"z": z, "zp": zp, "dx": list(x.components)})


def _q_boundary_limit_const(p):
    nu = float(p.get("nu", 0.5))
    return _record("boundaryLimitConst", adsb.boundary_limit_const(nu),
                   inputs={"nu": nu})


def _q_boundary_limit_check(p):
    nu = float(p.get("nu", 0.5))
    z = float(p.get("z", 0.02))
    x = _vector(p, default=(0.0, 4.0))
    spec = adsb.AdSFieldSpec(Order(nu))
    r = adsb.boundary_limit_check(spec, (z,), x)
    return _record("boundaryLimitCheck", r["relative_deviations"][0],
                   inputs={"nu": nu, "z": z, "dx": list(x.components)})


def _q_z_integral_weight(p):
    nu = float(p.get("nu", 0.5))
    Z = float(p.get("Z", p.get("cutoff", 20.0)))
    m1sq = float(p.get("m1sq", 1.0))
    m2sq = float(p.get("m2sq", 1.2))
    return _record("zIntegralWeight",
                   stress.z_integral_weight(nu, Z, m1sq, m2sq),
                   inputs={"nu": nu, "Z": Z, "m1sq": m1sq, "m2sq": m2sq})


def _q_set_kernel(p):
    k1 = MinkVector(tuple(p.get("k1", (1.3, 0.4))))
    k2 = MinkVector(tuple(p.get("k2", (1.1, -0.2))))
    signs = (int(p.get("eps1", 1)), int(p.get("eps2", -1)))
    mu, nu = int(p.get("mu", 0)), int(p.get("nu_idx", 0))
    val = stress.set_kernel(k1, k2, signs, mu, nu,
                            improvement=float(p.get("improvement", 0.0)))
    return _record("setKernel", val,
                   inputs={"k1": list(k1.components),
                           "k2": list(k2.components),
                           "signs": list(signs), "mu": mu, "nu": nu})


def _q_set_matrix_element(p):
    h, f1, f2, f = _default_set_args()
    h = corr.Power(float(p.get("hnu", 0.5)))
    mu, nu = int(p.get("mu", 0)), int(p.get("nu_idx", 0))
    res = stress.set_matrix_element(
        f, h, f1, h, f2, mu, nu,
        ordering=str(p.get("ordering", "middle")),
        n_nodes=int(p.get("n", 72)))
    return _record("setMatrixElement", res.value, error=res.error_estimate,
                   inputs={"mu": mu, "nu": nu,
                           "ordering": p.get("ordering", "middle"),
                           "n": p.get("n", 72)})


QUANTITIES = {
    "gamma": _q_gamma, "besselj": _q_besselj, "besselk": _q_besselk,
    "wightman": _q_wightman, "gff2pt": _q_gff2pt, "ads2pt": _q_ads2pt,
    "bonuslocality": _q_bonus_locality, "adscommutator": _q_ads_commutator,
    "chordaldistance": _q_chordal,
    "boundarylimitconst": _q_boundary_limit_const,
    "boundarylimitcheck": _q_boundary_limit_check,
    "zintegralweight": _q_z_integral_weight,
    "setkernel": _q_set_kernel, "setmatrixelement": _q_set_matrix_element,
}


def _lookup_quantity(name):
    key = name.lower().replace("_", "").replace("-", "")
    if key not in QUANTITIES:
        raise ConfigError(f"unknown quantity {name!r}; choose from "
                          f"{sorted(QUANTITIES)}")
    return QUANTITIES[key]


def run_compute(name, cfg):
    fn = _lookup_quantity(name)
    t0 = time.perf_counter()
    rec = fn(cfg["params"])
    rec["runtime"] = time.perf_counter() - t0
    return [rec]


def run_scan(name, axis, cfg):
    fn = _lookup_quantity(name)
    try:
        param, start, stop, steps = axis.split(":")
        start, stop, steps = float(start), float(stop), int(steps)
    except ValueError:
        raise ConfigError("--axis expects param:start:stop:steps")
    if steps < 0:
        raise ConfigError("steps must be >= 0")
    lines = [",".join([param, "value_re", "value_im", "error_estimate"])]
    for v in np.linspace(start, stop, steps):
        params = dict(cfg["params"])
        params[param] = float(v)
        rec = fn(params)
        lines.append(",".join([_fmt17(v), _fmt17(rec["value"].real),
                               _fmt17(rec["value"].imag),
                               _fmt17(rec["error_estimate"])]))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point

def build_parser():
    parser = argparse.ArgumentParser(
        prog="gffads",
        description="Generalized free fields, AdS lift and stress tensor: "
                    "verification suites, single quantities, parameter scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON configuration file")
        sp.add_argument("--seed", type=int, help="RNG seed (default 0)")
        sp.add_argument("--format", choices=("json", "csv"))
        sp.add_argument("--param", action="append", metavar="K=V",
                        help="parameter override (repeatable)")
        sp.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the output")

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", help="one of %s or 'all'" % ", ".join(
        sorted(SUITES)))
    common(sp)

    sp = sub.add_parser("compute", help="evaluate a single quantity")
    sp.add_argument("quantity")
    common(sp)

    sp = sub.add_parser("scan", help="tabulate a quantity along one parameter")
    sp.add_argument("quantity")
    sp.add_argument("--axis", required=True, metavar="PARAM:START:STOP:STEPS")
    common(sp)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "verify":
            records = run_verify(args.suite, cfg)
            text, ok = _emit(records, cfg)
        elif args.command == "compute":
            records = run_compute(args.quantity, cfg)
            text, ok = _emit(records, cfg)
        else:
            text, ok = run_scan(args.quantity, args.axis, cfg), True
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GffadsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
