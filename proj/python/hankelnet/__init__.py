"""Digital-net toolkit: Hankel random designs, scrambling, and estimators."""

from ._core import (
    NetDesign,
    c_alpha_p,
    default_precision,
    draw_design,
    dual_contains,
    exp_weights,
    greedy_select,
    inverse_normal_cdf,
    joint_dual_prob_exact,
    kappa,
    marginal_dual_prob_exact,
    mc_dual_prob,
    median_of_means,
    mu_alpha,
    omega2,
    omega3,
    omega_series,
    points_gray,
    points_naive,
    product_power,
    qmc_mean,
    r_schedule,
    sobol_table_checksum,
    t_exp,
    t_parameter,
    t_u_parameter,
    w_linf_bound,
    walsh,
    wce_bound,
)

__all__ = [
    "NetDesign",
    "c_alpha_p",
    "default_precision",
    "draw_design",
    "dual_contains",
    "exp_weights",
    "greedy_select",
    "inverse_normal_cdf",
    "joint_dual_prob_exact",
    "kappa",
    "marginal_dual_prob_exact",
    "mc_dual_prob",
    "median_of_means",
    "mu_alpha",
    "omega2",
    "omega3",
    "omega_series",
    "points_gray",
    "points_naive",
    "product_power",
    "qmc_mean",
    "r_schedule",
    "sobol_table_checksum",
    "t_exp",
    "t_parameter",
    "t_u_parameter",
    "w_linf_bound",
    "walsh",
    "wce_bound",
]
