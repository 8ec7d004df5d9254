"""Telescoping mult/deg chains and their thresholds in M."""

from .engine import (
    ChainSpec,
    ChainThreshold,
    Telescope,
    chain_closed_form,
    chain_names,
    chain_value,
    codim_nonreg,
    load_chain,
    parse_chain,
    threshold_M,
)

__all__ = [
    "ChainSpec",
    "ChainThreshold",
    "Telescope",
    "chain_closed_form",
    "chain_names",
    "chain_value",
    "codim_nonreg",
    "load_chain",
    "parse_chain",
    "threshold_M",
]
