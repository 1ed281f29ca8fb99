#!/usr/bin/env python3
"""Regenerates the synthetic 7-day traces under fixtures/.

Everything is closed-form, so reruns produce identical bytes.
"""
import json
import math
import pathlib

HOURS = 168
OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

SITES = {
    # name: (CI mean, CI phase hour of minimum, dry-bulb mean, swing, RH mean, RH swing)
    "ny": (350.0, 13, 24.0, 5.0, 65.0, 15.0),
    "az": (420.0, 12, 33.0, 7.0, 20.0, 8.0),
}


def workload(h):
    hour = h % 24
    day = h // 24
    base = 0.45 + 0.2 * math.sin(2 * math.pi * (hour - 8) / 24)
    weekend = -0.08 if day % 7 in (5, 6) else 0.0
    return round(min(0.95, max(0.05, base + weekend + 0.03 * math.sin(0.7 * h))), 3)


def ci(h, mean, trough_hour):
    # ±50% diurnal swing: minimum at trough_hour, maximum 12 h later.
    return round(mean * (1.0 - 0.5 * math.cos(2 * math.pi * (h % 24 - trough_hour) / 24)), 3)


def write_workload(path):
    with open(path, "w", newline="\n") as f:
        f.write(",cpu_load\n")
        for h in range(HOURS):
            f.write(f"{h + 1},{workload(h)}\n")


def write_ci(path, mean, trough_hour):
    cols = ["WND", "SUN", "WAT", "OIL", "NG", "COL", "NUC", "OTH"]
    with open(path, "w", newline="\n") as f:
        f.write("timestamp," + ",".join(cols) + ",avg_CI\n")
        for h in range(HOURS):
            day = 1 + h // 24
            sun = max(0.0, math.sin(2 * math.pi * (h % 24 - 6) / 24))
            mix = [0.10, round(0.25 * sun, 4), 0.05, 0.01, 0.0, 0.08, 0.20, 0.01]
            mix[4] = round(1.0 - sum(mix), 4)
            stamp = f"2021-07-{day:02d} {h % 24:02d}:00:00+00:00"
            f.write(stamp + "," + ",".join(str(m) for m in mix) + f",{ci(h, mean, trough_hour)}\n")


def write_epw(path, name, t_mean, t_swing, rh_mean, rh_swing):
    header = [
        f"LOCATION,{name.upper()} SYNTHETIC,XX,USA,synthetic,000000,40.0,-74.0,-5.0,10.0",
        "DESIGN CONDITIONS,0",
        "TYPICAL/EXTREME PERIODS,0",
        "GROUND TEMPERATURES,0",
        "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0",
        "COMMENTS 1,synthetic fixture",
        "COMMENTS 2,",
        "DATA PERIODS,1,1,Data,Sunday, 7/ 1,7/ 7",
    ]
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(header) + "\n")
        for h in range(HOURS):
            hour = h % 24
            phase = 2 * math.pi * (hour - 9) / 24
            t = round(t_mean + t_swing * math.sin(phase), 1)
            rh = round(rh_mean - rh_swing * math.sin(phase), 0)
            dew = round(t - (100 - rh) / 5, 1)
            fields = [2021, 7, 1 + h // 24, hour + 1, 0, "?9?9?9?9E0?9?9?9?9?9?9?9?9?9?9?9?9?9?9*9*9?9?9?9",
                      t, dew, int(rh), 101325, 0, 0, 350, 0, 0, 0, 0, 0, 0, 0, 180, 2.0, 5, 5,
                      16.0, 77777, 9, 999999999, 20, 0.1, 0, 88, 0.0, 0.0, 0.0]
            f.write(",".join(str(x) for x in fields) + "\n")


def write_config(path, site):
    doc = {
        "experiment": {
            "workload_path": "workload_7day.csv",
            "ci_path": f"{site}_ci_7day.csv",
            "weather_path": f"{site}_7day.epw",
            "steps_per_hour": 4,
            "trace_hours": HOURS,
            "horizon_steps": HOURS * 4,
            "start_step": 0,
            "seed": 7,
        }
    }
    with open(path, "w", newline="\n") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


def main():
    OUT.mkdir(exist_ok=True)
    write_workload(OUT / "workload_7day.csv")
    for site, (ci_mean, trough, t_mean, t_swing, rh_mean, rh_swing) in SITES.items():
        write_ci(OUT / f"{site}_ci_7day.csv", ci_mean, trough)
        write_epw(OUT / f"{site}_7day.epw", site, t_mean, t_swing, rh_mean, rh_swing)
        write_config(OUT / f"{site}_7day.json", site)


if __name__ == "__main__":
    main()
