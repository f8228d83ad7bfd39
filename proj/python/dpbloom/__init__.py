"""Differentially private Bloom filters."""

from ._core import (
    BloomFilter,
    DomainError,
    FilterParams,
    IoError,
    NumericalError,
    PrivacyBudget,
    PrivateBloomFilter,
    WDistribution,
    YDistribution,
    ZConditional,
    accuracy_bound_private,
    accuracy_bound_standard,
    bloom_init,
    derive_budget,
    dist_w,
    dist_y,
    dist_z_given_y,
    enumerate_y,
    fpr_exact,
    fpr_forms,
    load_filter,
    mc_w_pmf,
    privatize,
    quantile_n,
    random_guess_rate,
)

__all__ = [
    "BloomFilter",
    "DomainError",
    "FilterParams",
    "IoError",
    "NumericalError",
    "PrivacyBudget",
    "PrivateBloomFilter",
    "WDistribution",
    "YDistribution",
    "ZConditional",
    "accuracy_bound_private",
    "accuracy_bound_standard",
    "bloom_init",
    "derive_budget",
    "dist_w",
    "dist_y",
    "dist_z_given_y",
    "enumerate_y",
    "fpr_exact",
    "fpr_forms",
    "load_filter",
    "mc_w_pmf",
    "privatize",
    "quantile_n",
    "random_guess_rate",
]
