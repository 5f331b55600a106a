"""Smooth energy-window function with almost-exponential decay.

The window f is built from a Fourier-side bump supported in (0, 1):

    ghat(tau) = N_rho * exp(-(4 tau (1 - tau))^(-rho)),   rho = (1+alpha)/(1-alpha),

normalized to integrate to 1, and

    f(t) = (2 pi)^(-1) * Int_0^pi  Re g(t / cos s) ds,    g(t) = Int_0^1 ghat(tau) e^{i t tau} dtau.

The inner s-integral has a closed form: with F(x) = (1/pi) Int_0^{pi/2}
cos(x / cos s) ds = (1 - IJ0(|x|)) / 2 and IJ0 the antiderivative of the
Bessel function J0, the window reduces to the single integral

    f(t) = Int_0^1 ghat(tau) F(t tau) dtau,

evaluated by panel Gauss-Legendre with panel width <= 2 pi / (4 |t|) so each
panel sees at most a quarter oscillation.  IJ0 comes from the Struve-function
identity IJ0(x) = x J0(x) + (pi x / 2)(J1(x) H0(x) - J0(x) H1(x)); the direct
nested quadrature is kept as `eval_f_reference` and cross-checked in tests.

Guaranteed facts, all verified against the construction: f is real and even,
f(0) = 1/2, |f(t)| <= 1/2, and |f(t)| e^{|t|^alpha} stays bounded because the
bump's Gevrey order gives decay exponent rho/(rho+1) = (1+alpha)/2 > alpha.

Beyond the certification range [0, T0] the evaluator returns a conservative
envelope K e^{-c |t|^{beta'}} fitted on the scan grid and flags the value as
an overestimate; every bound formula consumes |f|, so overestimates keep the
inequalities valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicHermiteSpline
from scipy.special import j0, j1, struve

from .errors import ConstructionError


def integral_j0(x: np.ndarray | float) -> np.ndarray:
    """Int_0^x J0(y) dy for x >= 0, via the Struve identity.

    scipy.special.itj0y0 returns garbage for x >~ 25, so it is not used.
    Accuracy checked against high-precision quadrature: <= ~2e-14 relative
    up to x = 1500.
    """
    x = np.asarray(x, dtype=float)
    return x * j0(x) + 0.5 * np.pi * x * (j1(x) * struve(0, x) - j0(x) * struve(1, x))


_TABLE_STEP = 0.002
_TABLE_TOL = 2e-13


@lru_cache(maxsize=4)
def _ij0_spline(upper: float) -> CubicHermiteSpline:
    """Fast evaluator of Int_0^x J0 on [0, upper], certified on build.

    scipy's Struve functions cost microseconds per point, which makes the
    certification grid (millions of arguments) the dominant build cost.
    Tabulating instead: step integrals of J0 by 8-point Gauss-Legendre
    (error per step far below eps at step 0.002), accumulated in extended
    precision, then a cubic Hermite spline with the exact derivative
    IJ0' = J0.  The table is checked against the independent Struve-identity
    route before use; probe points include interval midpoints, where the
    Hermite error peaks.
    """
    n_steps = int(math.ceil(upper / _TABLE_STEP))
    xs = np.linspace(0.0, n_steps * _TABLE_STEP, n_steps + 1)
    gx, gw = leggauss(8)
    mids = xs[:-1, None] + 0.5 * _TABLE_STEP * (1.0 + gx[None, :])
    steps = (0.5 * _TABLE_STEP) * (j0(mids) @ gw)
    ys = np.concatenate(([0.0], np.cumsum(steps.astype(np.longdouble)))).astype(float)
    spline = CubicHermiteSpline(xs, ys, j0(xs))
    top = float(xs[-1])
    probe = np.concatenate([
        np.linspace(0.0, top, 2001),
        (np.arange(2000) + 0.5) * (top / 2000.0),   # lands on table midpoints
    ])
    diff = np.abs(spline(probe) - integral_j0(probe))
    # scipy's Struve functions lose ~1e-12 near their method switch around
    # x ~ 25.5 (the table route is clean there, checked to 7e-16 against
    # 40-digit quadrature), so that window gets a looser comparison
    blip = (probe > 20.0) & (probe < 30.0)
    err_out = float(np.max(diff[~blip]))
    err_in = float(np.max(diff[blip]))
    if err_out > _TABLE_TOL or err_in > 3e-12:
        raise ConstructionError(
            f"integral-J0 table disagrees with the Struve route by "
            f"{max(err_out, err_in):.3e} (tolerances {_TABLE_TOL:.1e} outside "
            f"x in (20, 30), 3e-12 inside)"
        )
    return spline


def _ij0_fast(ax: np.ndarray) -> np.ndarray:
    """Table-backed Int_0^x J0 for a nonnegative array; direct route fallback."""
    hi = float(np.max(ax)) if ax.size else 0.0
    if hi > 4000.0:
        # no table for extreme arguments; cost there is the caller's problem
        return integral_j0(ax)
    upper = 100.0 * math.ceil(max(hi, 1.0) / 100.0)
    return _ij0_spline(upper)(ax)


def _ghat_raw(tau: np.ndarray, rho: float) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    out = np.zeros_like(tau)
    inside = (tau > 0.0) & (tau < 1.0)
    q = 4.0 * tau[inside] * (1.0 - tau[inside])
    out[inside] = np.exp(-(q ** (-rho)))
    return out


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel Gauss-Legendre settings for the tau-integral."""

    points_per_panel: int = 16
    panels_per_osc: int = 4        # panel width <= 2*pi / (panels_per_osc * |t|)
    # doubled-density self-checks sit near 2e-15; 1e-12 keeps a wide margin
    abs_tol: float = 1e-12         # certified absolute tolerance of eval_f on [0, T0]
    t_cap: float = 200.0           # T0: quadrature range; envelope beyond
    grid_points: int = 1601        # certification grid resolution on [0, T0]


@dataclass
class EnergyFunction:
    """Window f for one alpha, with certified supremum and envelope data.

    Fields are filled by build_energy_function.  The memo cache maps
    (delta, N) to the signed value at t = delta*N with its envelope flag;
    inserts are plain dict writes (atomic under the GIL), so concurrent
    readers see an as-if-sequential table.
    """

    alpha: float
    rho: float
    beta_prime: float              # envelope decay exponent (1+alpha)/2
    quad: QuadratureConfig
    nodes: np.ndarray              # tau quadrature nodes
    coeffs: np.ndarray             # weight * ghat(node) / normalization
    sup_f: float                   # certified sup_t |f(t)| (grid max + tol)
    sup_eta: float                 # certified sup_t eta(|f(t)|/2)
    sup_abs_flog: float            # certified sup_t |f(t) log |f(t)||  (literal reading)
    weighted_sup: float            # max over grid of |f(t)| e^{|t|^alpha}
    envelope_K: float
    envelope_c: float
    cache: dict = field(default_factory=dict)

    def envelope(self, t: float | np.ndarray) -> np.ndarray | float:
        """Conservative decay envelope K e^{-c |t|^{beta'}}."""
        at = np.abs(np.asarray(t, dtype=float))
        return self.envelope_K * np.exp(-self.envelope_c * at ** self.beta_prime)


def _tau_rule(t_cap: float, quad: QuadratureConfig) -> tuple[np.ndarray, np.ndarray]:
    # enough panels that the largest argument sweeps <= 2pi/panels_per_osc of
    # phase per panel; a floor of 24 panels resolves the bump itself
    n_panels = max(24, int(math.ceil(abs(t_cap) * quad.panels_per_osc / (2.0 * math.pi))) + 1)
    xg, wg = leggauss(quad.points_per_panel)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * np.diff(edges)
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def _f_on_rule(ts: np.ndarray, nodes: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """f at |ts| using a fixed tau rule; vectorized, chunked to bound memory."""
    ts = np.abs(np.asarray(ts, dtype=float))
    out = np.empty_like(ts)
    chunk = max(1, int(4_000_000 // max(len(nodes), 1)))
    for lo in range(0, len(ts), chunk):
        block = ts[lo : lo + chunk]
        x = block[:, None] * nodes[None, :]
        F = 0.5 * (1.0 - _ij0_fast(x.ravel()).reshape(x.shape))
        out[lo : lo + chunk] = F @ coeffs
    return out


def build_energy_function(alpha: float, quad: QuadratureConfig | None = None) -> EnergyFunction:
    """Construct the window for one decay target alpha in (0, 1).

    Runs a panel-refinement self-check (doubled panel density must agree
    within quad.abs_tol on a probe grid) and certifies on [0, T0]: the
    suprema of |f|, eta(|f|/2) and |f log |f||, the weighted sup
    |f| e^{|t|^alpha}, and an envelope K e^{-c t^{beta'}} dominating every
    sampled |f| + tol.  Raises ConstructionError if the self-check fails.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    quad = quad or QuadratureConfig()
    rho = (1.0 + alpha) / (1.0 - alpha)
    beta_prime = 0.5 * (1.0 + alpha)

    nodes, weights = _tau_rule(quad.t_cap, quad)
    gh = _ghat_raw(nodes, rho)
    norm = float(weights @ gh)
    if not (norm > 0.0):
        raise ConstructionError("bump normalization integral vanished")
    coeffs = weights * gh / norm

    # self-check: doubled panel density on a probe grid
    fine = QuadratureConfig(
        points_per_panel=quad.points_per_panel,
        panels_per_osc=2 * quad.panels_per_osc,
        abs_tol=quad.abs_tol,
        t_cap=quad.t_cap,
        grid_points=quad.grid_points,
    )
    fnodes, fweights = _tau_rule(quad.t_cap, fine)
    fgh = _ghat_raw(fnodes, rho)
    fcoeffs = fweights * fgh / float(fweights @ fgh)
    probe = np.linspace(0.0, quad.t_cap, 41)
    resid = float(np.max(np.abs(_f_on_rule(probe, nodes, coeffs) - _f_on_rule(probe, fnodes, fcoeffs))))
    if resid > quad.abs_tol:
        raise ConstructionError("tau quadrature did not converge at the configured density", resid)

    grid = np.linspace(0.0, quad.t_cap, quad.grid_points)
    fg = _f_on_rule(grid, nodes, coeffs)
    absf = np.abs(fg)
    tol = quad.abs_tol

    sup_f = float(np.max(absf)) + tol
    half = np.clip(absf / 2.0, 1e-300, None)
    sup_eta = float(np.max(-half * np.log(half))) + tol
    fl = np.clip(absf, 1e-300, None)
    sup_abs_flog = float(np.max(np.abs(fl * np.log(fl)))) + tol
    weighted_sup = float(np.max(absf * np.exp(grid ** alpha)))

    # envelope: K e^{-c t^{beta'}} >= |f|+tol at every positive grid point;
    # 0.75 safety factor guards the extrapolation beyond T0
    pos = grid > 0.0
    ratios = -np.log(np.minimum(absf[pos] + tol, 0.5)) / grid[pos] ** beta_prime
    env_c = 0.75 * float(np.min(ratios))
    if env_c <= 0.0:
        raise ConstructionError("envelope fit produced a nonpositive decay constant")

    return EnergyFunction(
        alpha=alpha,
        rho=rho,
        beta_prime=beta_prime,
        quad=quad,
        nodes=nodes,
        coeffs=coeffs,
        sup_f=sup_f,
        sup_eta=sup_eta,
        sup_abs_flog=sup_abs_flog,
        weighted_sup=weighted_sup,
        envelope_K=1.0,
        envelope_c=env_c,
    )


def eval_f_flagged(ef: EnergyFunction, t: float) -> tuple[float, bool]:
    """f(t) with an envelope flag.

    |t| <= T0: quadrature value, flag False.  |t| > T0: the conservative
    envelope magnitude, flag True (an overestimate of |f|; the sign is not
    resolved out there, which every upper-bound consumer tolerates).
    """
    at = abs(float(t))
    if at <= ef.quad.t_cap:
        return float(_f_on_rule(np.array([at]), ef.nodes, ef.coeffs)[0]), False
    return float(ef.envelope(at)), True


def eval_f(ef: EnergyFunction, t: float) -> float:
    """f(t); see eval_f_flagged for the envelope regime beyond T0."""
    return eval_f_flagged(ef, t)[0]


def eval_f_many(ef: EnergyFunction, ts: np.ndarray) -> np.ndarray:
    """Vectorized f over arguments with |t| <= T0 (raises beyond)."""
    ts = np.asarray(ts, dtype=float)
    if np.any(np.abs(ts) > ef.quad.t_cap):
        raise ValueError(f"arguments exceed the quadrature range [0, {ef.quad.t_cap}]")
    return _f_on_rule(ts, ef.nodes, ef.coeffs)


def eval_f_delta(ef: EnergyFunction, delta: float, t: float) -> float:
    """f_delta(t) = f(delta * t)."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return eval_f(ef, delta * t)


def f_delta_int(ef: EnergyFunction, delta: float, n: int) -> tuple[float, bool]:
    """Memoized signed window value at t = delta*n with envelope flag."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    key = (float(delta), int(n))
    hit = ef.cache.get(key)
    if hit is None:
        hit = eval_f_flagged(ef, delta * n)
        ef.cache[key] = hit
    return hit


def f_delta_batch(ef: EnergyFunction, delta: float, n_hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Signed/overestimate window values at delta*N for N = 0..n_hi.

    Returns (values, is_envelope).  Quadrature-range entries are signed exact
    values; beyond T0 the positive envelope magnitude is substituted and
    flagged.  Fills the (delta, N) memo cache as a side effect.
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    ns = np.arange(n_hi + 1)
    ts = delta * ns
    inside = ts <= ef.quad.t_cap
    vals = np.empty(n_hi + 1)
    missing = [n for n in ns[inside] if (float(delta), int(n)) not in ef.cache]
    if missing:
        computed = _f_on_rule(delta * np.asarray(missing, dtype=float), ef.nodes, ef.coeffs)
        for n, v in zip(missing, computed):
            ef.cache[(float(delta), int(n))] = (float(v), False)
    for n in ns[inside]:
        vals[n] = ef.cache[(float(delta), int(n))][0]
    vals[~inside] = ef.envelope(ts[~inside])
    return vals, ~inside


def abs_upper(ef: EnergyFunction, t: float) -> tuple[float, bool]:
    """Certified upper bound on |f(t)|: min(|quadrature|+tol, envelope) on
    [0, T0], the envelope beyond.  Flag marks envelope use."""
    at = abs(float(t))
    env = float(ef.envelope(at))
    if at <= ef.quad.t_cap:
        v = abs(float(_f_on_rule(np.array([at]), ef.nodes, ef.coeffs)[0])) + ef.quad.abs_tol
        return (min(v, env), False)
    return (env, True)


def eval_f_reference(ef: EnergyFunction, t: float, u_cut: float = 300.0) -> float:
    """Nested double quadrature for f(t): the literal s x tau layout.

    Slow reference route used by tests to cross-check the closed-form inner
    integral.  The s-integral runs to s* = arccos(|t|/u_cut); the remaining
    wedge contributes at most (pi/2 - s*) * sup_{u >= u_cut} |g(u)|, far
    below double precision for the default cut.
    """
    at = abs(float(t))
    if at >= u_cut:
        raise ValueError("reference route needs |t| < u_cut")
    rule_cfg = QuadratureConfig(
        points_per_panel=ef.quad.points_per_panel,
        panels_per_osc=ef.quad.panels_per_osc,
        abs_tol=ef.quad.abs_tol,
        t_cap=u_cut,
        grid_points=ef.quad.grid_points,
    )
    nodes, weights = _tau_rule(u_cut, rule_cfg)
    gh = _ghat_raw(nodes, ef.rho)
    coeffs = weights * gh / float(weights @ gh)

    def re_g(u: np.ndarray) -> np.ndarray:
        return np.cos(u[:, None] * nodes[None, :]) @ coeffs

    if at == 0.0:
        s_break = np.linspace(0.0, 0.5 * np.pi, 60)
    else:
        u_break = np.append(np.arange(at, u_cut, 2.0), u_cut)
        s_break = np.arccos(np.clip(at / u_break, -1.0, 1.0))
    xg, wg = leggauss(16)
    total = 0.0
    for i in range(len(s_break) - 1):
        mid = 0.5 * (s_break[i] + s_break[i + 1])
        half = 0.5 * (s_break[i + 1] - s_break[i])
        ss = mid + half * xg
        u = at / np.cos(ss) if at > 0.0 else np.zeros_like(ss)
        total += half * float(wg @ re_g(u))
    return total / np.pi


# ---------------------------------------------------------------------------
# synthetic boundary pairs and the window's defining sum rule
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SyntheticPair:
    """Coefficient pair (a_N, b_N), N = 0..freq_cut, built so that
    A(t) = sum a_N e^{iNt} and B(t) = sum b_N e^{-iNt} agree on (-delta, delta).

    gap_certificate samples max |A - B| on the agreement interval;
    tail_mass bounds the Fourier mass discarded at freq_cut.
    """

    delta: float
    freq_cut: int
    seed: int
    a: np.ndarray
    b: np.ndarray
    gap_certificate: float
    tail_mass: float
    n_bumps: int


def _smooth_bump(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    m = np.abs(y) < 1.0
    out[m] = np.exp(-1.0 / (1.0 - y[m] ** 2))
    return out


def make_synthetic_pair(
    delta: float,
    freq_cut: int = 128,
    seed: int = 0,
    n_samples: int = 8192,
    tail_tol: float = 1e-4,
) -> SyntheticPair:
    """Seeded pair whose difference is a smooth 2pi-periodic G supported in
    delta <= |t| <= pi.

    G is a sum of 2-4 scaled C-infinity bumps placed in the middle of the
    support band (centers at 0.38-0.62 of the span, widths 0.65-0.85 of the
    available room) so its Fourier coefficients die well before freq_cut.
    Coefficients are taken by FFT on n_samples points (spectrally accurate
    for smooth G).  Raises ConstructionError when the discarded tail mass
    exceeds tail_tol, i.e. freq_cut is too small for the requested delta.
    """
    if not (0.0 < delta < math.pi):
        raise ValueError("delta must lie in (0, pi)")
    if freq_cut < 8:
        raise ValueError("freq_cut must be >= 8")
    rng = np.random.default_rng(seed)
    t = 2.0 * np.pi * np.arange(n_samples) / n_samples
    ts = np.where(t > np.pi, t - 2.0 * np.pi, t)

    span = math.pi - delta
    g_vals = np.zeros(n_samples)
    n_bumps = int(rng.integers(2, 5))
    for _ in range(n_bumps):
        side = 1.0 if rng.random() < 0.5 else -1.0
        center = delta + span * rng.uniform(0.38, 0.62)
        width = rng.uniform(0.65, 0.85) * min(center - delta, math.pi - center)
        amp = rng.normal()
        g_vals += amp * _smooth_bump((ts - side * center) / width)

    ghat = np.fft.fft(g_vals) / n_samples     # ghat[k] = (2pi)^-1 Int G e^{-ikt}
    tail_mass = float(np.max(np.abs(ghat[freq_cut - 11 : freq_cut + 1])))
    if tail_mass > tail_tol:
        raise ConstructionError(
            f"freq_cut={freq_cut} too small for delta={delta}", tail_mass
        )

    a = np.zeros(freq_cut + 1, dtype=complex)
    b = np.zeros(freq_cut + 1, dtype=complex)
    a[0] = ghat[0] + 1.0
    b[0] = 1.0
    a[1:] = ghat[1 : freq_cut + 1]
    b[1:] = -ghat[-1 : -freq_cut - 1 : -1]    # -ghat[-N]

    gap_grid = np.linspace(-delta, delta, 501)
    n_idx = np.arange(freq_cut + 1)
    a_side = np.exp(1j * np.outer(gap_grid, n_idx)) @ a
    b_side = np.exp(-1j * np.outer(gap_grid, n_idx)) @ b
    gap = float(np.max(np.abs(a_side - b_side)))

    return SyntheticPair(
        delta=delta,
        freq_cut=freq_cut,
        seed=seed,
        a=a,
        b=b,
        gap_certificate=gap,
        tail_mass=tail_mass,
        n_bumps=n_bumps,
    )


@dataclass(frozen=True)
class SpectralIdentityResult:
    residual: float                # |sum (a_N + b_N) f(delta N) - sum a_N|
    relative: float                # residual / (sum |a| + sum |b|)
    scale: float
    sum_a: complex
    sum_b: complex


def verify_spectral_identity(ef: EnergyFunction, pair: SyntheticPair) -> SpectralIdentityResult:
    """Check the window's defining sum rule on one synthetic pair.

    For admissible pairs (positive-frequency both sides, boundary values
    agreeing on (-delta, delta)) the window satisfies
    sum_N (a_N + b_N) f(delta N) = sum_N a_N; the residual scales linearly
    with the pair (and with the gap certificate for imperfect pairs).
    """
    n_hi = pair.freq_cut
    if pair.delta * n_hi > ef.quad.t_cap:
        raise ValueError("delta * freq_cut exceeds the quadrature range")
    fv = eval_f_many(ef, pair.delta * np.arange(n_hi + 1))
    lhs = np.sum((pair.a + pair.b) * fv)
    sum_a = complex(np.sum(pair.a))
    sum_b = complex(np.sum(pair.b))
    residual = abs(lhs - sum_a)
    scale = float(np.sum(np.abs(pair.a)) + np.sum(np.abs(pair.b)))
    return SpectralIdentityResult(
        residual=float(residual),
        relative=float(residual / scale) if scale > 0 else 0.0,
        scale=scale,
        sum_a=sum_a,
        sum_b=sum_b,
    )
