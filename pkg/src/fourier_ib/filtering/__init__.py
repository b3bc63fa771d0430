from fourier_ib.filtering.helmholtz import FilterSpec, alpha_from_c_alpha, filter_field, helmholtz_filter

__all__ = ["FilterSpec", "alpha_from_c_alpha", "filter_field", "helmholtz_filter"]
