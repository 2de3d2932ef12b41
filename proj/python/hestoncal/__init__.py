"""Heston and Black-Scholes call pricing by Fourier inversion, plus Heston calibration."""

from ._core import (
    BsmParams,
    CalibrationConfig,
    CalibrationResult,
    HestonError,
    HestonParams,
    MarketQuote,
    OptionFit,
    OptionSpec,
    OptVector,
    PriceBreakdown,
    QuadratureConfig,
    acceptance_check,
    builtin_dataset,
    calibrate_global,
    calibrate_local,
    cdf_from_cf,
    cf_bsm,
    cf_heston,
    cf_heston_gatheral_exponent,
    objective,
    params_from_optvector,
    parse_quotes,
    pi1,
    pi2,
    price_call_bsm,
    price_call_heston,
    serialize_quotes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
