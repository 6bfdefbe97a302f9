from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # sigma_min(chi(M)) <= singular_rtol * sigma_max(chi(M)) means "not invertible"
    singular_rtol: float = 1e-12
    # eigenvalue pairs closer than this (relative) belong to the same sphere
    sphere_rtol: float = 1e-9
    # |Im| below real_tol * (1 + |Re|) is a real S-spectral point
    real_tol: float = 1e-10
    # the commuted form of the resolvent is only checked when the pencil is this well conditioned
    conditioning_floor: float = 1e-6


@dataclass(frozen=True)
class SeriesSettings:
    max_terms: int = 500
    tail_rtol: float = 1e-14


@dataclass(frozen=True)
class ContourSettings:
    # radius_min = radius_min_factor * (1 + ||T||), also used as the margin to the spectrum
    radius_min_factor: float = 1e-3
    default_radius_factor: float = 0.25
    # share of the gap to the nearest other cluster or exclusion; below 0.5 neighbouring circles stay disjoint
    gap_fraction: float = 0.45
    # a fixed radius for every circle, overriding the automatic choice
    radius: float | None = None


@dataclass(frozen=True)
class QuadratureSettings:
    initial_nodes: int = 64
    max_nodes: int = 16384
    factor: int = 2
    rtol: float = 1e-10
    # error estimates never drop below roundoff_factor * eps * sum_j |w_j| |f(s_j)| ||S^-1(s_j, T)||
    roundoff_factor: float = 1000.0


@dataclass(frozen=True)
class InverseSeriesSettings:
    n_max: int = 40
    axis_radius: float = 100.0
    nodes: int = 4096
    # the segment is clamped to |y| <= expansion_fraction / ||T^-1|| unless clamp is off
    expansion_fraction: float = 0.5
    clamp: bool = True


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_SERIES = SeriesSettings()
DEFAULT_CONTOUR = ContourSettings()
DEFAULT_QUADRATURE = QuadratureSettings()
DEFAULT_INVERSE_SERIES = InverseSeriesSettings()
