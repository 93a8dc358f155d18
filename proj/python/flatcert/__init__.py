"""Certification of polyhedral surfaces: manifoldness, homology, flatness and immersion."""

from ._core import (
    CellComplex,
    ComplexError,
    MeshIoError,
    __version__,
    angle_defects,
    check,
    edge_count,
    euler_characteristic,
    generate,
    homology,
    read_mesh,
    self_intersections,
    subdivide,
    triangulate,
    write_mesh,
)

__all__ = [
    "CellComplex",
    "ComplexError",
    "MeshIoError",
    "__version__",
    "angle_defects",
    "check",
    "edge_count",
    "euler_characteristic",
    "generate",
    "homology",
    "read_mesh",
    "self_intersections",
    "subdivide",
    "triangulate",
    "write_mesh",
]
