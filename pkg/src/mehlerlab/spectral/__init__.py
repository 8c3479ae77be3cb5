"""Spectral truncation of diagonal infinite-dimensional models."""

from mehlerlab.spectral.truncation import ca_membership, dimension_sweep, galerkin_project, in_domain_of_A

__all__ = ["ca_membership", "dimension_sweep", "galerkin_project", "in_domain_of_A"]
