#!/usr/bin/env python3
# stakesim: Proof-of-Stake consensus and cryptoeconomics simulator
# Copyright 2026 The stakesim Authors.
# SPDX-License-Identifier: Apache-2.0
"""Derive the default reward coefficients R and W.

Per-epoch issuance for n validators holding 32 ETH is sqrt(32 n) (R + 32 W)
Gwei, so each validator earns 4 sqrt(2 n) (R + 32 W) / n Gwei per epoch.
Fixing the annual rate at a calibration size gives R + 32 W, and w_share
splits it between attestations (R) and proposals plus sync duties (32 W).
"""

import argparse
import json
import math

GWEI_PER_ETH = 10**9
EPOCHS_PER_YEAR = 365 * 24 * 3600 // (12 * 32)


def calibrate(target_apr: float, n: float, w_share: float) -> tuple[float, float]:
    per_validator = target_apr * 32 * GWEI_PER_ETH / EPOCHS_PER_YEAR
    total = per_validator * n / (4.0 * math.sqrt(2.0 * n))
    return (1.0 - w_share) * total, w_share * total / 32.0


def apr(n: float, r: float, w: float) -> float:
    per_epoch = 4.0 * math.sqrt(2.0 * n) * (r + 32.0 * w) / n
    return per_epoch / (32 * GWEI_PER_ETH) * EPOCHS_PER_YEAR


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--apr", type=float, default=0.04, help="target annual issuance rate")
    parser.add_argument("--n", type=float, default=1e4, help="registry size at which the target holds")
    parser.add_argument("--w-share", type=float, default=10 / 64, help="share of issuance for proposals and sync")
    args = parser.parse_args()

    r, w = calibrate(args.apr, args.n, args.w_share)
    print(json.dumps({"econ": {"R": r, "W": w}}, indent=2))
    print("\n       n      APR")
    for n in (1e3, 1e4, 1e5, 1e6):
        print(f"{n:>8.0f}  {apr(n, r, w) * 100:6.2f}%")


if __name__ == "__main__":
    main()
