#!/usr/bin/env python3
"""Empirical success-probability estimates for the twelve paradoxes.

For every contextual pure state of the bundled scenario and every one of
its paradoxes, draw the witness event ``shots`` times and compare the
empirical frequency against the exact 1/9, reporting the deviation in
units of the binomial standard error.  Deterministic for a fixed seed.

Usage: python scripts/estimate_success_probability.py [--shots N] [--seed N]
"""

from __future__ import annotations

import argparse
from math import sqrt

from ctxkit import (
    ExactMatrix,
    QuantumState,
    derive_paradoxes,
    enumerate_assignments,
    find_contextual_pure_states,
    load_bundled,
    rank1_projector,
    simulate_measurement,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shots", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    scenario = load_bundled("yu-oh")
    assignments = enumerate_assignments(scenario)
    search = find_contextual_pure_states(scenario, assignments)
    identity = ExactMatrix.identity(scenario.dim)

    print(f"shots={args.shots} seed={args.seed} prng=xoshiro256**")
    print(f"{'state':>12} {'witness':>8} {'exact':>8} {'empirical':>10} {'dev/sigma':>10}")
    seed = args.seed
    for witnessed in search.states:
        state = QuantumState.pure(witnessed.state)
        for paradox in derive_paradoxes(scenario, state, assignments).paradoxes:
            witness = rank1_projector(scenario.rays[paradox.witness].vector)
            result = simulate_measurement(state, [witness, identity - witness], args.shots, seed)
            seed += 1
            p = float(paradox.sp)
            freq = result.frequencies[0]
            sigma = sqrt(p * (1 - p) / args.shots) if args.shots else float("nan")
            dev = (freq - p) / sigma if args.shots else float("nan")
            print(
                f"{str(witnessed.state):>12} {scenario.rays[paradox.witness].label:>8}"
                f" {str(paradox.sp):>8} {freq:>10.5f} {dev:>10.2f}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
