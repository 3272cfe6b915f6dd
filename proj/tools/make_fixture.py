#!/usr/bin/env python3
# Copyright 2026 The qmetro Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes synthetic Jena-climate-style CSV fixtures (10-minute cadence).

The series is synthetic: temperature and relative humidity follow seasonal
and diurnal cycles plus AR(1) noise, and H2OC is derived from them through
the Magnus saturation-pressure formula. Output is deterministic.
"""
import argparse
import datetime as dt
import math
import random


def generate(rows, seed):
    rng = random.Random(seed)
    start = dt.datetime(2009, 1, 1, 0, 10)
    t_noise = 0.0
    rh_noise = 0.0
    p_noise = 0.0
    out = []
    for k in range(rows):
        stamp = start + dt.timedelta(minutes=10 * k)
        day = k / 144.0
        season = math.sin(2 * math.pi * (day - 110) / 365.25)
        diurnal = math.sin(2 * math.pi * (day - 0.375))
        t_noise = 0.995 * t_noise + rng.gauss(0, 0.25)
        rh_noise = 0.99 * rh_noise + rng.gauss(0, 0.8)
        p_noise = 0.999 * p_noise + rng.gauss(0, 0.15)
        temp = 9.5 + 9.0 * season + 4.0 * diurnal + t_noise
        rh = min(100.0, max(20.0, 76.0 - 12.0 * diurnal + rh_noise))
        p = 989.0 + p_noise
        es = 6.112 * math.exp(17.67 * temp / (temp + 243.5))
        h2oc = 1000.0 * (rh / 100.0) * es / p
        out.append((stamp.strftime("%d.%m.%Y %H:%M:%S"), p, temp, rh, h2oc))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=2009)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write('"Date Time","p (mbar)","T (degC)","rh (%)","H2OC (mmol/mol)"\n')
        for stamp, p, temp, rh, h2oc in generate(args.rows, args.seed):
            f.write(f"{stamp},{p:.2f},{temp:.2f},{rh:.1f},{h2oc:.2f}\n")


if __name__ == "__main__":
    main()
