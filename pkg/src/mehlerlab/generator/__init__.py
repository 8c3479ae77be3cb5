"""The non-local OU generator on trig polynomials and generic C²_b functions."""

from mehlerlab.generator.engine import apply_L0, apply_L0_batch, apply_L0_pullback, apply_L0_trig, apply_L1

__all__ = ["apply_L0", "apply_L0_batch", "apply_L0_pullback", "apply_L0_trig", "apply_L1"]
