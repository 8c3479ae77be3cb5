"""Cross-cutting plumbing: constants, errors, logging, config, storage, RNG, quadrature."""
