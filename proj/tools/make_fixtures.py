#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/.

Every file is deterministic (fixed numpy seeds). Values are written with
repr() so the C++ parser sees the exact doubles generated here.
"""

import math
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
FIX = DATA / "fixtures"

HEADER = "id,reservoir,toc_pct,ro_pct,temp_c,porosity_pct,pl_mpa,vl_m3t"

PL_COEF = (-0.136, 0.715, 1.666)
VL_COEF = (0.421, -0.067, 0.563)


def pl_of(toc, ro, temp):
    a, b, c = PL_COEF
    return math.exp(a * toc / 4.0 + b * math.log((temp / 48.0) / (ro / 1.75)) + c)


def vl_of(toc, temp):
    a, b, c = VL_COEF
    return math.exp(a * toc / 4.0 + b * (temp / 48.0) ** 3 + c)


def fmt(v):
    return "" if v is None else repr(float(v))


def write(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(HEADER + "\n")
        for r in rows:
            f.write(",".join([r[0], r[1]] + [fmt(v) for v in r[2:]]) + "\n")


def draw_geology(rng, n, pl_bounds):
    """Rows (toc, ro, temp) inside the cleaning ranges, PL inside its bounds."""
    out = []
    while len(out) < n:
        toc = round(float(rng.uniform(1.2, 12.0)), 2)
        ro = round(float(rng.uniform(0.6, 3.6)), 2)
        temp = round(float(rng.uniform(22.0, 88.0)), 2)
        pl = pl_of(toc, ro, temp)
        if pl_bounds[0] < pl < pl_bounds[1]:
            out.append((toc, ro, temp))
    return out


def noiseless():
    rng = np.random.default_rng(11)
    geo = draw_geology(rng, 40, (1.6, 11.5))
    write(FIX / "pl_noiseless.csv",
          [(f"p{i+1}", "synthetic", t, r, T, None, pl_of(t, r, T), None)
           for i, (t, r, T) in enumerate(geo)])
    write(FIX / "vl_noiseless.csv",
          [(f"v{i+1}", "synthetic", t, None, T, None, None, vl_of(t, T))
           for i, (t, r, T) in enumerate(geo)])


def planted():
    rng = np.random.default_rng(23)
    geo = draw_geology(rng, 40, (1.6, 3.8))
    rows = [[f"p{i+1}", "synthetic", t, r, T, None, pl_of(t, r, T), None]
            for i, (t, r, T) in enumerate(geo)]
    rows[17][0] = "planted"
    rows[17][6] = rows[17][6] * 3.0
    write(FIX / "pl_planted_outlier.csv", rows)


def compare(kind, n, seed, noise):
    rng = np.random.default_rng(seed)
    geo = draw_geology(rng, n, (1.8, 10.0))
    rows = []
    for i, (t, r, T) in enumerate(geo):
        eps = float(rng.normal(0.0, noise))
        if kind == "pl":
            rows.append((f"c{i+1}", "synthetic", t, r, T, None, pl_of(t, r, T) * math.exp(eps), None))
        else:
            rows.append((f"c{i+1}", "synthetic", t, r, T, None, None, vl_of(t, T) * math.exp(eps)))
    write(FIX / f"{kind}_compare.csv", rows)


def cleaning():
    rows = [
        ("k1", "Barnett", 4.0, 1.5, 48.0, None, 5.0, 2.0),
        ("k2", "Barnett", 6.9, 1.2, 83.2, 5.1, 3.2, 2.6),
        ("k3", "Sichuan", 2.6, 3.0, 65.0, None, 4.4, 1.4),
        ("k4", "Sichuan", 3.5, 2.4, 57.5, 3.9, 2.7, 1.9),
        ("k5", "Marcellus", 1.0, 2.1, 30.0, None, 6.0, 1.2),
        ("k6", "Marcellus", 17.0, 1.1, 35.0, None, 1.6, 6.5),
        ("k7", "Posidonia", 8.1, 0.9, 22.7, 8.0, 2.1, 3.3),
        ("r1", "Tarim", 4.6, 1.6, 96.0, None, 5.0, 2.0),    # temp >= 90
        ("r2", "Songliao", 0.5, 1.0, 40.0, None, 4.0, 1.5),  # toc < 1
        ("r3", "Ordos", 4.7, 1.5, 50.0, None, 13.0, 0.9),    # pl >= 12, vl <= 1
    ]
    write(FIX / "clean_10.csv", rows)


def reservoirs():
    reservoirs = [
        ("Sichuan Basin", 3230, 2.58, 3.03, 86.98),
        ("Yangtze Platform", 1737, 3.53, 2.37, 57.48),
        ("Songliao Basin", 1731, 2.93, 1.03, 90.46),
        ("Ordos Basin", 2730, 4.69, 1.53, 86.93),
        ("Tarim Basin", 4023, 4.65, 1.57, 95.99),
        ("Northern Jiangsu Basin", 2872, 2.05, 1.54, 106.19),
        ("Marcellus Shale", 2057, 3.12, 2.10, 87.26),
        ("Barnett Shale", 2286, 6.90, 1.20, 83.23),
        ("Posidonia Shale", 53, 8.14, 0.96, 22.66),
    ]
    with open(DATA / "reservoirs.conf", "w", newline="\n") as f:
        f.write("# Nine shale reservoirs. Temperatures are the IDW-derived reservoir\n")
        f.write("# averages; pressure follows from depth with alpha = 1.\n")
        for name, depth, toc, ro, temp in reservoirs:
            f.write(f"\nname={name}\ndepth_m={depth}\ntoc_pct={toc}\nro_pct={ro}\n")
            f.write(f"alpha=1\nsurface_temp_c=20\ntemp_c={temp}\n")


def heatflow():
    rng = np.random.default_rng(5)
    with open(DATA / "heatflow_sample.csv", "w", newline="\n") as f:
        f.write("lon_deg,lat_deg,section_depth_m,gradt_c_per_km\n")
        for _ in range(60):
            lon = float(rng.uniform(100.0, 112.0))
            lat = float(rng.uniform(26.0, 34.0))
            depth = float(rng.uniform(100.0, 4000.0))
            grad = 18.0 + 0.8 * (lon - 100.0) + float(rng.normal(0.0, 2.0))
            if depth < 500.0:
                grad += float(rng.normal(0.0, 12.0))
            f.write(f"{lon:.4f},{lat:.4f},{depth:.1f},{grad:.3f}\n")


if __name__ == "__main__":
    noiseless()
    planted()
    compare("pl", 120, 31, 0.05)
    compare("vl", 150, 37, 0.05)
    cleaning()
    reservoirs()
    heatflow()
