"""Eigenvalue multiplicity models for nonnegative integer spectra.

A spectrum model lists the multiplicity d_N of each integer eigenvalue N of a
nonnegative Hamiltonian with a unique ground state (d_0 = 1).  Built-in kinds:

``u1``
    d_N = p(N), the number of integer partitions of N.
``virasoro``
    d_N = number of partitions of N with no part equal to 1, which equals
    p(N) - p(N-1) for N >= 1.  Dimension sequence 1, 0, 1, 1, 2, 2, 4, ...
``tensor power``
    m-fold convolution of a base sequence (independent copies of the model).
``custom``
    read from a text file of "N d_N" lines.

Partition numbers come from the Euler pentagonal-number recurrence in exact
integer arithmetic; growth fits d_N <= C * exp(N^kappa) are certified by a
direct scan of the requested range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import SpectrumFileError

_BUILTIN_KINDS = ("u1", "virasoro")


def partition_numbers(n_max: int) -> list[int]:
    """Exact partition numbers p(0..n_max) via the pentagonal recurrence.

    p(n) = sum_{k>=1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
    Exact ints throughout; p(n) overflows double for n >~ 76000 so callers
    that need floats should go through math.log.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 == 1 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


@dataclass
class SpectrumModel:
    """Multiplicity sequence dims[N] for N = 0..n_max with dims[0] == 1."""

    kind: str                      # "u1" | "virasoro" | "custom"
    dims: list[int]
    power: int = 1                 # tensor power applied on top of `kind`
    source: str | None = None      # file path for custom models
    label: str = ""

    def __post_init__(self) -> None:
        if not self.dims:
            raise ValueError("dims must be nonempty")
        if self.dims[0] != 1:
            raise ValueError(f"dims[0] must be 1 (unique ground state), got {self.dims[0]}")
        if any(d < 0 for d in self.dims):
            raise ValueError("multiplicities must be nonnegative")
        if not self.label:
            self.label = self.kind if self.power == 1 else f"{self.kind}^{self.power}"

    @property
    def n_max(self) -> int:
        return len(self.dims) - 1

    def dim(self, n: int) -> int:
        """d_n, treating indices beyond the stored range of a custom model as 0."""
        if n < 0:
            raise ValueError("n must be >= 0")
        if n >= len(self.dims):
            if self.kind == "custom":
                return 0
            raise IndexError(f"model holds dims up to N={self.n_max}; extend it first")
        return self.dims[n]


def _convolve_power(base: list[int], m: int) -> list[int]:
    # m-fold convolution truncated to len(base); exact ints.
    out = base[:]
    for _ in range(m - 1):
        nxt = [0] * len(base)
        for i, a in enumerate(out):
            if a == 0:
                continue
            for j, b in enumerate(base[: len(base) - i]):
                if b:
                    nxt[i + j] += a * b
        out = nxt
    return out


def model_dims(kind: str, n_max: int, power: int = 1, path: str | None = None) -> SpectrumModel:
    """Build a spectrum model of the given kind up to eigenvalue n_max.

    Parameters
    ----------
    kind : "u1", "virasoro", or "custom"
    n_max : largest eigenvalue to tabulate (custom files may end earlier)
    power : tensor power >= 1 (independent copies; multiplicities convolve)
    path : required for kind="custom"
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if power < 1:
        raise ValueError("power must be >= 1")
    if kind == "u1":
        dims = partition_numbers(n_max)
    elif kind == "virasoro":
        p = partition_numbers(n_max)
        dims = [1] + [p[n] - p[n - 1] for n in range(1, n_max + 1)]
    elif kind == "custom":
        if path is None:
            raise ValueError("custom models need a file path")
        dims = parse_spectrum_file(path)
        if n_max < len(dims) - 1:
            dims = dims[: n_max + 1]
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    if power > 1:
        dims = _convolve_power(dims, power)
    return SpectrumModel(kind=kind, dims=dims, power=power, source=path)


def extend_model(model: SpectrumModel, n_max: int) -> SpectrumModel:
    """Return a model of the same kind tabulated at least up to n_max.

    Custom models are finitely supported and are returned unchanged (their
    `dim` accessor yields 0 beyond the file range).
    """
    if model.n_max >= n_max or model.kind == "custom":
        return model
    return model_dims(model.kind, n_max, power=model.power, path=model.source)


def parse_spectrum_file(path: str) -> list[int]:
    """Parse "N d_N" lines into a dense multiplicity list.

    Rules: UTF-8 text, '#' starts a comment, blank lines ignored, N strictly
    increasing, missing N filled with d_N = 0, dims[0] must be 1.  Any
    violation raises SpectrumFileError naming the line.
    """
    entries: list[tuple[int, int]] = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise SpectrumFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    with fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise SpectrumFileError(f"expected 'N d_N', got {raw.strip()!r}", line_no)
            try:
                n, d = int(parts[0], 10), int(parts[1], 10)
            except ValueError:
                raise SpectrumFileError(f"non-integer field in {raw.strip()!r}", line_no) from None
            if n < 0 or d < 0:
                raise SpectrumFileError("N and d_N must be nonnegative", line_no)
            if entries and n <= entries[-1][0]:
                raise SpectrumFileError(
                    f"N must be strictly increasing (got {n} after {entries[-1][0]})", line_no
                )
            entries.append((n, d))
    if not entries:
        raise SpectrumFileError("no spectrum rows found")
    dims = [0] * (entries[-1][0] + 1)
    for n, d in entries:
        dims[n] = d
    if dims[0] != 1:
        raise SpectrumFileError(f"d_0 must be 1 (unique ground state), got {dims[0]}")
    return dims


@dataclass(frozen=True)
class GrowthFit:
    """Certified constant C with dims[N] <= C * exp(N^kappa) on a scanned range.

    C is the exact maximum of dims[N] / exp(N^kappa) over the range, so the
    inequality holds there by construction.  `plateau` records whether the
    maximizing N sits in the interior of the range; a maximizer at the end
    means the ratio was still growing and kappa undershoots the empirical
    growth exponent.
    """

    kappa: float
    C: float
    log_C: float
    certified_range: tuple[int, int]
    argmax_n: int
    plateau: bool
    model_label: str = ""


def fit_growth_constants(model: SpectrumModel, kappa: float, n_max: int | None = None) -> GrowthFit:
    """Smallest C with dims[N] <= C e^{N^kappa} for all N in the scanned range."""
    if not (0.0 < kappa < 1.0):
        raise ValueError(f"kappa must lie in (0, 1), got {kappa}")
    hi = model.n_max if n_max is None else min(n_max, model.n_max)
    best = -math.inf
    best_n = 0
    for n in range(hi + 1):
        d = model.dims[n]
        if d == 0:
            continue
        h = math.log(d) - float(n) ** kappa
        if h > best:
            best, best_n = h, n
    # interior maximizer = ratio turned over inside the range
    plateau = best_n < int(0.9 * hi) if hi > 0 else True
    return GrowthFit(
        kappa=kappa,
        C=math.exp(best),
        log_C=best,
        certified_range=(0, hi),
        argmax_n=best_n,
        plateau=plateau,
        model_label=model.label,
    )


def exponential_cap(model: SpectrumModel, n_max: int | None = None) -> float:
    """Smallest c with dims[N] <= c * e^N on the scanned range (kappa = 1 edge)."""
    hi = model.n_max if n_max is None else min(n_max, model.n_max)
    best = -math.inf
    for n in range(hi + 1):
        d = model.dims[n]
        if d:
            best = max(best, math.log(d) - float(n))
    return math.exp(best)


def log_dim(model: SpectrumModel, n: int) -> float:
    """log d_n as a float (-inf for d_n = 0); exact-int safe for huge dims."""
    d = model.dim(n)
    return math.log(d) if d > 0 else -math.inf


def partition_log_asymptotic(n: int) -> float:
    """log of the leading Hardy-Ramanujan term p(n) ~ e^{pi sqrt(2n/3)}/(4 sqrt(3) n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.pi * math.sqrt(2.0 * n / 3.0) - math.log(4.0 * math.sqrt(3.0) * n)
