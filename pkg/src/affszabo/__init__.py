"""Exact symbolic analysis of affine connections: curvature, Szabó operators,
locally homogeneous surfaces and twisted Riemannian extensions."""

__version__ = "0.1.0"
