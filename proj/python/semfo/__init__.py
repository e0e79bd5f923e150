# Copyright 2026 The semfo Authors.
# SPDX-License-Identifier: Apache-2.0

"""Semiring semantics of first-order logic."""

from semfo._core import (
    Error,
    Interpretation,
    ParseError,
    Semiring,
    canonical_polynomial,
    check_preservation,
    eval,
    eventual_triviality,
    fo_to_foneq,
    foneq_to_fo,
    free_vars,
    is_trivial_at,
    metrics,
    optimal,
    psi_n,
    render,
    rewrite,
    strategy_count,
)

__all__ = [
    "Error",
    "Interpretation",
    "ParseError",
    "Semiring",
    "canonical_polynomial",
    "check_preservation",
    "eval",
    "eventual_triviality",
    "fo_to_foneq",
    "foneq_to_fo",
    "free_vars",
    "is_trivial_at",
    "metrics",
    "optimal",
    "psi_n",
    "render",
    "rewrite",
    "strategy_count",
]
