"""Kantorovich-Rubinstein norms and Hölder-Lipschitz analysis on finite metric spaces."""

from ._krlip import (
    KrlipError,
    MeasureSpace,
    MetricSpace,
    besov_norm,
    besov_seminorm,
    build_net_hierarchy,
    decompose,
    dist_to_little_lip,
    dump_space,
    estimate_doubling_constant,
    extend_lipschitz,
    fit_lower_mass_bound,
    generate_space,
    hajlasz_seminorm,
    holder_norm,
    holder_seminorm,
    kr0_norm,
    kr_norm,
    lip_modulus,
    load_space,
    operator_sup,
    restricted_lipschitz_constant,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
