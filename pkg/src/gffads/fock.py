"""Mode-space Fock structure on the d = 2 forward cone.

One-particle wavefunctions live on the lightcone quadrant k+- > 0 with
measure d^2k = (1/2) dk+ dk-.  Wavefunctions are carried as callables
(vectorized over lightcone coordinates) together with a quadrature grid;
derivatives are taken by centred differences with Richardson step
extrapolation, so that generator applications can be nested.

Generator conventions (wavefunction operators, lower Minkowski indices):
    P_mu   : multiplication by k_mu
    M_01   : i (k_1 d/dk^0 - k_0 d/dk^1)
    D      : i ((k . d/dk) + d/2)
    K_mu   : d/dk^mu + k_mu box_k - (k . d/dk) d/dk^mu
             - d/dk^mu ((k . d/dk) + d) + nu^2 k_mu / k^2
with box_k = (d/dk^0)^2 - (d/dk^1)^2 = 4 d/dk+ d/dk- and
(k . d/dk) = k+ d/dk+ + k- d/dk-.  All relative signs are fixed by the
symbolic-commutator oracle (see symbolic_generator / tests).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError
from .correlators import norm_const, smeared2pt

__all__ = ["LightconeGrid", "ModeFunction", "GeneratorKind", "inner_product",
           "apply_generator", "algebra_closure_check", "symbolic_generator",
           "special_conformal_field_law", "npoint", "gaussian_mode",
           "position_wavefunction"]


@dataclass(frozen=True)
class LightconeGrid:
    """Log-uniform tensor grid on (kmin, kmax)^2 with Gauss-Legendre weights."""

    n: int = 72
    kmin: float = 0.02
    kmax: float = 30.0

    def __post_init__(self):
        if not (0 < self.kmin < self.kmax) or self.n < 8:
            raise DomainError("invalid lightcone grid parameters")

    def axis(self):
        t, w = np.polynomial.legendre.leggauss(self.n)
        a, b = math.log(self.kmin), math.log(self.kmax)
        s = 0.5 * (b - a) * (t + 1.0) + a
        ws = 0.5 * (b - a) * w
        k = np.exp(s)
        return k, ws * k  # dk = k ds

    def mesh(self):
        k, wk = self.axis()
        return k[:, None], k[None, :], wk[:, None] * wk[None, :]


@dataclass(frozen=True)
class ModeFunction:
    """One-particle wavefunction: callable of (k+, k-) plus its grid."""

    grid: LightconeGrid
    func: object

    def __call__(self, kp, km):
        return self.func(kp, km)

    @property
    def samples(self):
        kp, km, _ = self.grid.mesh()
        return np.asarray(self.func(kp, km), dtype=complex)

    def norm(self):
        return math.sqrt(abs(inner_product(self, self)))

    def __add__(self, other):
        _same_grid(self, other)
        return ModeFunction(self.grid,
                            lambda kp, km: self.func(kp, km) + other.func(kp, km))

    def __sub__(self, other):
        _same_grid(self, other)
        return ModeFunction(self.grid,
                            lambda kp, km: self.func(kp, km) - other.func(kp, km))

    def scale(self, c):
        return ModeFunction(self.grid, lambda kp, km: c * self.func(kp, km))


def _same_grid(f, g):
    if f.grid != g.grid:
        raise DomainError("mode functions live on different grids")


def inner_product(f, g):
    """Grid approximation of int_{V+} conj(f) g d^2k."""
    _same_grid(f, g)
    kp, km, w = f.grid.mesh()
    return complex(0.5 * np.sum(w * np.conj(f(kp, km)) * g(kp, km)))


def gaussian_mode(grid, center=(3.0, 3.0), width=1.0, phase=None):
    """Gaussian bump in lightcone coordinates, optionally with a plane phase."""
    cp, cm = center

    def func(kp, km):
        val = np.exp(-((kp - cp) ** 2 + (km - cm) ** 2) / (2.0 * width ** 2))
        if phase is not None:
            val = val * np.exp(1j * (phase[0] * kp + phase[1] * km))
        return val + 0j

    return ModeFunction(grid, func)


def position_wavefunction(packet, weight=None, grid=None):
    """Wavefunction (2 pi)^(-1/2) h(k^2) fhat(k) of phi_h(f) Omega, d = 2."""
    grid = grid or LightconeGrid()

    def func(kp, km):
        val = packet.fourier_lc(kp, km) * math.sqrt(norm_const(2))
        if weight is not None:
            val = val * np.asarray(weight(kp * km))
        return val

    return ModeFunction(grid, func)


# ---------------------------------------------------------------------------
# derivatives and generators

def _d_plus(func, rel_step=1e-2):
    def deriv(kp, km):
        h = rel_step * kp
        d1 = (func(kp + h, km) - func(kp - h, km)) / (2.0 * h)
        h2 = 0.5 * h
        d2 = (func(kp + h2, km) - func(kp - h2, km)) / (2.0 * h2)
        return (4.0 * d2 - d1) / 3.0
    return deriv


def _d_minus(func, rel_step=1e-2):
    def deriv(kp, km):
        h = rel_step * km
        d1 = (func(kp, km + h) - func(kp, km - h)) / (2.0 * h)
        h2 = 0.5 * h
        d2 = (func(kp, km + h2) - func(kp, km - h2)) / (2.0 * h2)
        return (4.0 * d2 - d1) / 3.0
    return deriv


@dataclass(frozen=True)
class GeneratorKind:
    """One of P(mu), M(mu,nu), D, K(mu, Delta) for d = 2."""

    kind: str
    mu: int = 0
    nu_idx: int = 1
    delta: float = 0.0

    def __post_init__(self):
        if self.kind not in ("P", "M", "D", "K"):
            raise DomainError(f"unknown generator kind {self.kind!r}")
        if self.mu not in (0, 1) or self.nu_idx not in (0, 1):
            raise DomainError("index out of range for d = 2")


def _k_lower(mu, kp, km):
    # k_0 = k^0 = (k+ + k-)/2,  k_1 = -k^1 = -(k+ - k-)/2
    return 0.5 * (kp + km) if mu == 0 else -0.5 * (kp - km)


def _d_upper(mu, func, rel_step):
    # d/dk^0 = d/dk+ + d/dk-,  d/dk^1 = d/dk+ - d/dk-
    dp, dm = _d_plus(func, rel_step), _d_minus(func, rel_step)
    sign = 1.0 if mu == 0 else -1.0
    return lambda kp, km: dp(kp, km) + sign * dm(kp, km)


def _scaling(func, rel_step):
    dp, dm = _d_plus(func, rel_step), _d_minus(func, rel_step)
    return lambda kp, km: kp * dp(kp, km) + km * dm(kp, km)


def apply_generator(G, f, rel_step=1e-2, d=2):
    """Apply a generator to a mode function, returning a new mode function."""
    func = f.func
    if G.kind == "P":
        out = lambda kp, km: _k_lower(G.mu, kp, km) * func(kp, km)
    elif G.kind == "M":
        if G.mu == G.nu_idx:
            out = lambda kp, km: np.zeros_like(np.asarray(func(kp, km)))
        else:
            mu, nu = G.mu, G.nu_idx
            sgn = 1.0 if (mu, nu) == (0, 1) else -1.0
            dmu = _d_upper(0, func, rel_step)
            dnu = _d_upper(1, func, rel_step)
            out = lambda kp, km: sgn * 1j * (
                _k_lower(1, kp, km) * dmu(kp, km)
                - _k_lower(0, kp, km) * dnu(kp, km))
    elif G.kind == "D":
        sc = _scaling(func, rel_step)
        out = lambda kp, km: 1j * (sc(kp, km) + 0.5 * d * func(kp, km))
    elif G.kind == "K":
        nu_par = G.delta - 0.5 * d
        mu = G.mu
        d_mu = _d_upper(mu, func, rel_step)
        box = _d_minus(_d_plus(func, rel_step), 2.0 * rel_step)
        sc_dmu = _scaling(d_mu, 2.0 * rel_step)
        sc = _scaling(func, rel_step)
        dmu_sc = _d_upper(mu, sc, 2.0 * rel_step)
        dmu_f = d_mu

        def out(kp, km):
            klow = _k_lower(mu, kp, km)
            k2 = kp * km
            return (dmu_f(kp, km) + klow * 4.0 * box(kp, km)
                    - sc_dmu(kp, km) - dmu_sc(kp, km) - d * dmu_f(kp, km)
                    + nu_par ** 2 * klow / k2 * func(kp, km))
    return ModeFunction(f.grid, out)


# ---------------------------------------------------------------------------
# symbolic oracle

def symbolic_generator(G, expr, kp, km, d=2):
    """Apply the defining differential operator of G to a sympy expression.

    This is the independent route used to pin signs and to build the exact
    commutator oracle; it shares no code with apply_generator.
    """
    import sympy as sym
    k_0 = (kp + km) / 2
    k_1 = -(kp - km) / 2

    def d_up(mu, e):
        return sym.diff(e, kp) + (1 if mu == 0 else -1) * sym.diff(e, km)

    if G.kind == "P":
        return (k_0 if G.mu == 0 else k_1) * expr
    if G.kind == "M":
        if G.mu == G.nu_idx:
            return sym.Integer(0)
        sgn = 1 if (G.mu, G.nu_idx) == (0, 1) else -1
        return sgn * sym.I * (k_1 * d_up(0, expr) - k_0 * d_up(1, expr))
    if G.kind == "D":
        scal = kp * sym.diff(expr, kp) + km * sym.diff(expr, km)
        return sym.I * (scal + sym.Rational(d, 2) * expr)
    # K(mu, Delta)
    nu_par = sym.nsimplify(G.delta - d / 2, rational=False)
    klow = k_0 if G.mu == 0 else k_1
    box = 4 * sym.diff(expr, kp, km)
    scal = lambda e: kp * sym.diff(e, kp) + km * sym.diff(e, km)
    dmu = lambda e: d_up(G.mu, e)
    return (dmu(expr) + klow * box - scal(dmu(expr))
            - dmu(scal(expr)) - d * dmu(expr)
            + nu_par ** 2 * klow / (kp * km) * expr)


def algebra_closure_check(G1, G2, f, expr=None, rel_step=1e-2, d=2):
    """Compare the grid commutator [G1, G2] f with the exact symbolic one.

    expr must be the sympy expression (in symbols kp, km) matching f; the
    symbolic commutator is evaluated exactly and the grid result must agree
    in relative L2 norm.
    """
    import sympy as sym
    if expr is None:
        raise DomainError("algebra_closure_check needs the symbolic form of f")
    g12 = apply_generator(G1, apply_generator(G2, f, rel_step, d), rel_step, d)
    g21 = apply_generator(G2, apply_generator(G1, f, rel_step, d), rel_step, d)
    comm = g12 - g21

    names = {s.name: s for s in expr.free_symbols}
    if set(names) != {"kp", "km"}:
        raise DomainError("expr must use exactly the symbols kp and km")
    kp, km = names["kp"], names["km"]
    e12 = symbolic_generator(G1, symbolic_generator(G2, expr, kp, km, d),
                             kp, km, d)
    e21 = symbolic_generator(G2, symbolic_generator(G1, expr, kp, km, d),
                             kp, km, d)
    oracle = sym.lambdify((kp, km), sym.expand(e12 - e21), "numpy")

    kpg, kmg, w = f.grid.mesh()
    got = np.asarray(comm(kpg, kmg), dtype=complex)
    want = np.asarray(oracle(kpg, kmg), dtype=complex) * np.ones_like(got)
    scale_ops = max(apply_generator(G2, apply_generator(G1, f, rel_step, d),
                                    rel_step, d).norm(), 1e-300)
    num = math.sqrt(abs(0.5 * np.sum(w * np.abs(got - want) ** 2)))
    den = math.sqrt(abs(0.5 * np.sum(w * np.abs(want) ** 2)))
    rel = num / den if den > 1e-12 * scale_ops else num / scale_ops
    # stencil sanity: a refined step must not change the answer materially
    got2 = np.asarray(apply_generator(
        G1, apply_generator(G2, f, rel_step / 2, d), rel_step / 2, d)(kpg, kmg)
        - np.asarray(apply_generator(
            G2, apply_generator(G1, f, rel_step / 2, d), rel_step / 2, d)(kpg, kmg)),
        dtype=complex)
    drift = math.sqrt(abs(0.5 * np.sum(w * np.abs(got - got2) ** 2))) \
        / max(den, scale_ops)
    if drift > 0.1 and num / max(den, scale_ops) > 0.1:
        raise ResolutionError("finite-difference commutator has not converged")
    return {"relative_discrepancy": rel, "numerator": num, "denominator": den,
            "fd_drift": drift, "vanishes": den <= 1e-12 * scale_ops}


# ---------------------------------------------------------------------------
# special conformal transformation law at the field level

def special_conformal_field_law(f_position, mu, delta, d=2, grid=None,
                                rel_step=5e-3):
    """One-particle check of the position-space special conformal law.

    Left side: the momentum generator K(mu, delta) applied (by finite
    differences) to the wavefunction (k^2)^(nu/2) fhat(k) of the
    dimension-delta field smeared with f.  Right side: the wavefunction of
    the field smeared with the position-space transform of f,
        g = -i (-2 x_mu (x . grad f) + x^2 grad_mu f + (2 delta - 2 d) x_mu f),
    whose Fourier transform is computed exactly with sympy.  Returns the
    relative L2 discrepancy.
    """
    import sympy as sym
    if d != 2:
        raise DomainError("implemented for d = 2")
    grid = grid or LightconeGrid()
    nu_par = delta - 0.5 * d

    def h_pow(m2):
        return np.asarray(m2) ** (nu_par / 2.0)

    psi = position_wavefunction(f_position, h_pow, grid)
    left = apply_generator(GeneratorKind("K", mu=mu, delta=delta), psi,
                           rel_step, d)

    # exact Fourier transform of the transformed test function
    k0s, k1s = sym.symbols("k0 k1", real=True)
    sig = f_position.width
    c = f_position.center.components
    q0 = k0s - f_position.carrier.components[0]
    q1 = k1s - f_position.carrier.components[1]
    fhat = (2 * sym.pi) * sig ** 2 * sym.exp(
        sym.I * (q0 * c[0] - q1 * c[1])
        - sig ** 2 * (q0 ** 2 + q1 ** 2) / 2)

    # momentum-space images: x^nu -> -i d/dk_nu, d/dx^nu -> -i k_nu
    def x_op(nu_i, e):  # multiplication by x^nu_i
        return -sym.I * (sym.diff(e, k0s) if nu_i == 0 else -sym.diff(e, k1s))

    # Operator order matters: multiplications by x sit outside the x-space
    # derivatives, so their momentum images are applied outermost.
    # x . grad f = x^0 d_0 f + x^1 d_1 f; FT(d/dx^nu f) = -i k_nu fhat
    # with the lower-index component k_nu (k_0 = k0, k_1 = -k1).
    d0f = -sym.I * k0s * fhat
    d1f = -sym.I * (-k1s) * fhat
    xdotgrad = x_op(0, d0f) + x_op(1, d1f)
    klow_mu = k0s if mu == 0 else -k1s
    dmu_f = -sym.I * klow_mu * fhat  # FT of d f / d x^mu (index lowered)
    # x^2 (d_mu f): image of x.x = (x^0)^2 - (x^1)^2 applied to FT(d_mu f)
    x2dmu = x_op(0, x_op(0, dmu_f)) - x_op(1, x_op(1, dmu_f))
    xmu = lambda e: (x_op(0, e) if mu == 0 else -x_op(1, e))  # x_mu = eta x^nu

    ghat = -sym.I * (-2 * xmu(xdotgrad) + x2dmu
                     + (2 * delta - 2 * d) * xmu(fhat))
    ghat_fn = sym.lambdify((k0s, k1s), sym.expand(ghat), "numpy")

    def right_func(kp, km):
        k0 = 0.5 * (kp + km)
        k1 = 0.5 * (kp - km)
        return math.sqrt(norm_const(2)) * h_pow(kp * km) * ghat_fn(k0, k1)

    right = ModeFunction(grid, right_func)
    diff = left - right
    denom = right.norm()
    return {"relative_l2": diff.norm() / denom, "right_norm": denom,
            "left_norm": left.norm()}


# ---------------------------------------------------------------------------
# Wick pairing combinatorics

def _pairings(indices):
    """All perfect matchings of the index list as tuples of (i, j), i < j."""
    if not indices:
        yield ()
        return
    first, rest = indices[0], indices[1:]
    for pos, j in enumerate(rest):
        pair = (first, j)
        remaining = rest[:pos] + rest[pos + 1:]
        for sub in _pairings(remaining):
            yield (pair,) + sub


def npoint(weights, packets, d=2, n_nodes=120):
    """Gaussian n-point function: sum over pairings of smeared 2-point values.

    Pairs (i, j) with i < j contribute smeared2pt(h_i, f_i, h_j, f_j); odd n
    gives exactly zero.
    """
    if len(weights) != len(packets):
        raise DomainError("weights and packets must have equal length")
    n = len(weights)
    if n % 2 == 1:
        return 0.0 + 0.0j
    cache = {}

    def pair_value(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = smeared2pt(weights[i], packets[i],
                                       weights[j], packets[j],
                                       d=d, n_nodes=n_nodes).value
        return cache[(i, j)]

    total = 0.0 + 0.0j
    for matching in _pairings(tuple(range(n))):
        prod = 1.0 + 0.0j
        for i, j in matching:
            prod *= pair_value(i, j)
        total += prod
    return total
