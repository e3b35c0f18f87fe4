"""Writes data/antenna/{isotropic,half_wave_dipole}.csv.

Half-wave dipole mounted vertically, elevation angle measured from the
horizon: G = 1.64 * (cos(pi/2 sin t) / cos t)^2, floored at -30 dBi.
"""
import math
import pathlib

out = pathlib.Path(__file__).resolve().parents[2] / "data" / "antenna"
out.mkdir(parents=True, exist_ok=True)

with open(out / "isotropic.csv", "w") as f:
    f.write("angle_deg,gain_dbi\n-90,0\n90,0\n")

with open(out / "half_wave_dipole.csv", "w") as f:
    f.write("angle_deg,gain_dbi\n")
    for a in range(-90, 91):
        t = math.radians(a)
        c = math.cos(t)
        if abs(c) < 1e-12:
            g = -30.0
        else:
            lin = 1.64 * (math.cos(math.pi / 2 * math.sin(t)) / c) ** 2
            g = max(-30.0, 10 * math.log10(lin)) if lin > 0 else -30.0
        f.write(f"{a},{g:.10g}\n")
