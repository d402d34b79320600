"""Model parameters, grids, sampled wavefunctions and finite-difference
stencils shared by every other module.

Coordinates
-----------
X       physical position x > -1/gamma
XGAMMA  deformed position x_gamma = ln(1 + gamma x) / gamma
Z       z = 2 s (1 + gamma x), s = 1 / (gamma sigma0)^2

The deformed derivative (1 + gamma x) d/dx is exactly d/dx_gamma, so a
grid uniform in x_gamma turns every operator in the model into an
ordinary constant-spacing stencil.
"""
import enum
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import BoundStateError, DomainError, GridError

MIN_STENCIL_POINTS = 16
DEFAULT_GRID_POINTS = 4001
GRID_ENV_VAR = "PDM_OSC_GRID_POINTS"


@dataclass(frozen=True)
class ModelParams:
    m0: float = 1.0
    omega0: float = 1.0
    hbar: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("m0", "omega0", "hbar"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0")
        if not self.gamma >= 0:
            # x < -1/gamma conventions for gamma < 0 are left undefined
            raise DomainError("gamma must be >= 0")

    @classmethod
    def from_gtilde(cls, gtilde, m0=1.0, omega0=1.0, hbar=1.0):
        """Build parameters from the dimensionless deformation gamma*sigma0."""
        sigma0 = math.sqrt(hbar / (m0 * omega0))
        return cls(m0=m0, omega0=omega0, hbar=hbar, gamma=gtilde / sigma0)

    @property
    def sigma0(self):
        return math.sqrt(self.hbar / (self.m0 * self.omega0))

    @property
    def gtilde(self):
        return self.gamma * self.sigma0

    @property
    def s(self):
        if self.gamma == 0:
            raise DomainError("s = 1/(gamma sigma0)^2 is undefined at gamma = 0")
        return 1.0 / self.gtilde ** 2

    @property
    def x_min(self):
        """Left edge of the physical domain (-inf when gamma = 0)."""
        return -math.inf if self.gamma == 0 else -1.0 / self.gamma

    def energy_unit(self):
        return self.hbar * self.omega0

    def require_level(self, n, shift=1):
        """Check the bound-state condition 2s - 2n - shift > 0."""
        if n < 0 or int(n) != n:
            raise BoundStateError(f"level index must be a nonnegative integer, got {n}")
        if self.gamma > 0 and not 2 * self.s - 2 * n - shift > 0:
            raise BoundStateError(
                f"level n={n} violates 2s - 2n - {shift} > 0 (s={self.s:.6g})")

    # coordinate maps
    def xgamma_of_x(self, x):
        x = np.asarray(x, dtype=float)
        if self.gamma == 0:
            return x
        if np.any(x <= self.x_min):
            raise DomainError("x must be > -1/gamma")
        return np.log1p(self.gamma * x) / self.gamma

    def x_of_xgamma(self, xg):
        xg = np.asarray(xg, dtype=float)
        if self.gamma == 0:
            return xg
        return np.expm1(self.gamma * xg) / self.gamma

    def z_of_x(self, x):
        return 2.0 * self.s * (1.0 + self.gamma * np.asarray(x, dtype=float))

    def x_of_z(self, z):
        return (np.asarray(z, dtype=float) / (2.0 * self.s) - 1.0) / self.gamma


class Coordinate(enum.Enum):
    X = "x"
    XGAMMA = "x_gamma"
    Z = "z"


class Convention(enum.Enum):
    PSI = "psi"   # plain measure dx
    PHI = "phi"   # deformed measure d_gamma x = dx / (1 + gamma x)


@dataclass(frozen=True)
class Grid:
    coordinate: Coordinate
    points: np.ndarray
    params: ModelParams

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise GridError("grid needs a 1-D array of at least two points")
        if np.any(np.diff(pts) <= 0):
            raise GridError("grid points must be strictly increasing")
        if self.coordinate is Coordinate.X and np.any(pts <= self.params.x_min):
            raise GridError("X grid points must lie above -1/gamma")
        if self.coordinate is Coordinate.Z:
            if self.params.gamma == 0:
                raise GridError("Z coordinate needs gamma > 0")
            if np.any(pts <= 0):
                raise GridError("Z grid points must be positive")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    @property
    def x(self):
        c = self.coordinate
        if c is Coordinate.X:
            return self.points
        if c is Coordinate.XGAMMA:
            return self.params.x_of_xgamma(self.points)
        return self.params.x_of_z(self.points)

    @property
    def weight(self):
        """1 + gamma x on the grid (computed without cancellation)."""
        c = self.coordinate
        if c is Coordinate.XGAMMA:
            return np.exp(self.params.gamma * self.points)
        if c is Coordinate.Z:
            return self.points / (2.0 * self.params.s)
        return 1.0 + self.params.gamma * self.points

    @property
    def z(self):
        if self.coordinate is Coordinate.Z:
            return self.points
        return 2.0 * self.params.s * self.weight

    @property
    def spacing(self):
        h = np.diff(self.points)
        if not np.allclose(h, h[0], rtol=1e-9, atol=0):
            raise GridError("finite-difference stencils need a uniform grid")
        return float(self.points[-1] - self.points[0]) / (self.points.size - 1)

    def require_stencil(self):
        if len(self) < MIN_STENCIL_POINTS:
            raise GridError(
                f"grid has {len(self)} points; stencils need >= {MIN_STENCIL_POINTS}")

    def measure(self):
        """Trapezoid weights w_i such that sum(w_i f_i) ~ integral of f dx."""
        pts = self.points
        w = np.empty_like(pts)
        d = np.diff(pts)
        w[0], w[-1] = d[0] / 2, d[-1] / 2
        w[1:-1] = (d[:-1] + d[1:]) / 2
        c = self.coordinate
        if c is Coordinate.XGAMMA:
            w = w * self.weight
        elif c is Coordinate.Z:
            w = w / (2.0 * self.params.s * self.params.gamma)
        return w

    def same_as(self, other):
        return (self.coordinate is other.coordinate and self.params == other.params
                and self.points.shape == other.points.shape
                and np.array_equal(self.points, other.points))


@dataclass(frozen=True)
class WaveFn:
    grid: Grid
    values: np.ndarray
    convention: Convention = Convention.PSI

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.shape != self.grid.points.shape:
            raise GridError("values must match the grid length")
        if not np.iscomplexobj(vals):
            vals = vals.astype(float)
        object.__setattr__(self, "values", vals)

    def _check(self, other):
        if not self.grid.same_as(other.grid):
            raise GridError("wavefunctions live on different grids")
        if self.convention is not other.convention:
            raise DomainError("wavefunctions use different density conventions")

    def __add__(self, other):
        self._check(other)
        return WaveFn(self.grid, self.values + other.values, self.convention)

    def __sub__(self, other):
        self._check(other)
        return WaveFn(self.grid, self.values - other.values, self.convention)

    def __mul__(self, c):
        return WaveFn(self.grid, self.values * c, self.convention)

    __rmul__ = __mul__

    def with_values(self, values):
        return WaveFn(self.grid, values, self.convention)

    def to_phi(self):
        if self.convention is Convention.PHI:
            return self
        return WaveFn(self.grid, self.values * np.sqrt(self.grid.weight), Convention.PHI)

    def to_psi(self):
        if self.convention is Convention.PSI:
            return self
        return WaveFn(self.grid, self.values / np.sqrt(self.grid.weight), Convention.PSI)

    def norm(self):
        return math.sqrt(integrate(self.grid, np.abs(self.values) ** 2, self.convention).real)


class Source(enum.Enum):
    ANALYTIC = "analytic"
    ORACLE = "oracle"


@dataclass
class SpectrumResult:
    entries: list = field(default_factory=list)   # (n, energy, Source)
    metadata: dict = field(default_factory=dict)
    vectors: object = None

    def energies(self):
        return np.array([e for _, e, _ in self.entries])


def integrate(grid, values, convention=Convention.PSI):
    """Trapezoid integral of sampled values. PSI integrates in dx, PHI in
    the deformed measure dx / (1 + gamma x)."""
    w = grid.measure()
    if convention is Convention.PHI:
        w = w / grid.weight
    total = np.sum(w * values)
    return complex(total) if np.iscomplexobj(total) else float(total)


# Stencils. Interior rows are 5-point central, the two rows at each edge
# use one-sided 4th-order formulas.
_D1_EDGE = np.array([[-25, 48, -36, 16, -3, 0], [-3, -10, 18, -6, 1, 0]]) / 12.0
_D2_EDGE = np.array([[45, -154, 214, -156, 61, -10], [10, -15, -4, 14, -6, 1]]) / 12.0


def d_dgrid(f, h):
    """First derivative along a uniform grid (4th order everywhere)."""
    f = np.asarray(f)
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    for i in range(2):
        out[i] = _D1_EDGE[i] @ f[:6] / h
        out[-1 - i] = -(_D1_EDGE[i] @ f[::-1][:6]) / h
    return out


def d2_dgrid(f, h):
    """Second derivative along a uniform grid (4th order everywhere)."""
    f = np.asarray(f)
    out = np.empty_like(f)
    out[2:-2] = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)
    for i in range(2):
        out[i] = _D2_EDGE[i] @ f[:6] / (h * h)
        out[-1 - i] = _D2_EDGE[i] @ f[::-1][:6] / (h * h)
    return out


def deformed_derivative(grid, f):
    """(1 + gamma x) df/dx sampled on the grid, i.e. df/dx_gamma."""
    grid.require_stencil()
    h = grid.spacing
    df = d_dgrid(f, h)
    c = grid.coordinate
    if c is Coordinate.X:
        return grid.weight * df
    if c is Coordinate.XGAMMA:
        return df
    return grid.params.gamma * grid.points * df


def deformed_second_derivative(grid, f):
    """D_gamma^2 f with D_gamma = (1 + gamma x) d/dx."""
    grid.require_stencil()
    if grid.coordinate is Coordinate.XGAMMA:
        return d2_dgrid(f, grid.spacing)
    return deformed_derivative(grid, deformed_derivative(grid, f))


def grid_points():
    """Default point count, overridable through PDM_OSC_GRID_POINTS."""
    raw = os.environ.get(GRID_ENV_VAR)
    if raw is None:
        return DEFAULT_GRID_POINTS
    n = int(raw)
    if n < MIN_STENCIL_POINTS:
        raise GridError(f"{GRID_ENV_VAR}={n} is below {MIN_STENCIL_POINTS}")
    return n


def default_grid(params, min_shape=None, max_shape=None, n_points=None,
                 tail=1e-16, max_spacing=0.01):
    """Uniform x_gamma grid wide enough for the states of interest.

    In z every density used here is bounded by a Gamma shape,
    |psi|^2 dx ~ z**(k-1) exp(-z) dz, with k between `min_shape` and
    `max_shape`; the bounds are the Gamma(k) quantiles at probability
    `tail`. Defaults cover bound states n <= 5 and coherent labels with
    |Re alpha| <= 2. The point count is at least `n_points` (default 4001)
    and high enough that the spacing stays below `max_spacing` sigma0.
    """
    sigma0 = params.sigma0
    if params.gamma == 0:
        lo, hi = -14.0 * sigma0, 14.0 * sigma0
    else:
        s = params.s
        if min_shape is None:
            n_top = min(5, max(0, math.ceil(s - 0.5) - 1))
            min_shape = 2 * s - 2 * n_top - 1
        if max_shape is None:
            max_shape = 2 * s * (1 + 6 * params.gtilde)
        if min_shape <= 0:
            raise DomainError("min_shape must be > 0 for a normalizable density")
        z_lo = stats.gamma.ppf(tail, min_shape)
        z_hi = stats.gamma.isf(tail, max_shape)
        lo = math.log(z_lo / (2 * s)) / params.gamma - 2 * sigma0
        hi = math.log(z_hi / (2 * s)) / params.gamma + 2 * sigma0
    n = n_points if n_points is not None else grid_points()
    n = max(n, int(math.ceil((hi - lo) / (max_spacing * sigma0))) + 1)
    return Grid(Coordinate.XGAMMA, np.linspace(lo, hi, n), params)


def sample(grid, func, convention=Convention.PSI):
    """Evaluate a closed-form psi(x) on a grid as a WaveFn."""
    wf = WaveFn(grid, func(grid.x), Convention.PSI)
    return wf.to_phi() if convention is Convention.PHI else wf
