"""Effective collision-free window: from yield curves to 1000-qubit forecasts.

The Monte Carlo yield of a whole lattice tracks Phi(delta_f/sigma_f)**N
remarkably well — as if each of the N qubits independently had to land in a
fixed window of half-width delta_f.  This script fits that width for the
three heavy-hexagon sizes, fits the linear-in-log-N shrink, and projects
yield out to sizes nobody has built yet.
"""
import numpy as np

from freqcrowd import lattice, mc, window

SEED = 1

sizes, widths = [], []
for distance in (3, 5, 7):
    lat = lattice.build_lattice("heavy_hexagon", distance)
    pts = mc.sweep_sigma(lat, lattice.FrequencyPattern(), master_seed=SEED)
    fit = window.fit_window([(p.sigma_mhz, p.yield_fraction) for p in pts], lat.n_qubits)
    sizes.append(lat.n_qubits)
    widths.append(fit.delta_f_mhz)
    print(f"d={distance} (N={lat.n_qubits:>3}): delta_f = {fit.delta_f_mhz:5.2f} MHz "
          f"from {fit.n_points_used} informative points, rms {fit.rms_residual:.3f}")

trend = window.fit_trend(sizes, widths)
print(f"\ndelta_f(N) = {trend.coeff_a:.2f} {trend.coeff_b_ln:+.3f} ln N   "
      f"({trend.coeff_b_log10:+.2f} per decade)")

for n in (300, 1000):
    df = window.predict_delta_f(trend, n)
    y14 = window.window_yield(df, 14.0, n)
    y6 = window.window_yield(df, 6.0, n)
    print(f"N={n:>4}: delta_f = {df:.2f} MHz, yield {100 * y14:.2f}% at 14 MHz "
          f"scatter, {100 * y6:.1f}% at 6 MHz")

# how precise does tuning have to get for a 10% yield at N=1000?
df1000 = window.predict_delta_f(trend, 1000)
print(f"\nscatter for 10% yield at N=1000: "
      f"{window.required_sigma(df1000, 1000, 0.1):.2f} MHz")

# sanity: the analytic model round-trips through its own curve
probe = [(s, window.window_yield(29.91, s, 65)) for s in np.arange(4.0, 50.0, 2.0)]
print(f"round-trip check: {window.fit_window(probe, 65).delta_f_mhz:.3f} MHz "
      f"(seeded at 29.91)")
