"""Flasque resolutions, Tate-Shafarevich groups and Brauer-group invariants of integral G-lattices."""

from ._core import (
    ConsistencyError,
    Error,
    InputError,
    Lattice,
    PreconditionError,
    SizeLimitError,
    brauer_homspace,
    brauer_torus,
    catalog_json,
    catalog_names,
    chain_check,
    coflasque_resolution,
    cohomology,
    fingerprint,
    flasque_resolution,
    is_coflasque,
    is_flasque,
    sha_omega,
    split_check,
)

__all__ = [
    "ConsistencyError",
    "Error",
    "InputError",
    "Lattice",
    "PreconditionError",
    "SizeLimitError",
    "brauer_homspace",
    "brauer_torus",
    "catalog_json",
    "catalog_names",
    "chain_check",
    "coflasque_resolution",
    "cohomology",
    "fingerprint",
    "flasque_resolution",
    "is_coflasque",
    "is_flasque",
    "sha_omega",
    "split_check",
]
