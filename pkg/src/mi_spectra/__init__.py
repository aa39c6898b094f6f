"""Modulational-instability spectra of generalized KdV waves."""
