"""From a measured junction to a qubit frequency, end to end.

Walks the single-device chain: normal-state resistance -> critical current
(BCS gap 180 ueV) -> Josephson energy -> 01 transition frequency, then fits
the resistance-frequency power law on a synthetic 31-device wafer the way
one would on measured data, and pools the per-group frequency scatter.
"""
import numpy as np

from freqcrowd import physics

# one junction, by hand
r_n = 8800.0
ic = physics.critical_current_na(r_n, gap_uev=180.0)
f01 = physics.transmon_f01_ghz(10.76, 0.33)
print(f"R_n = {r_n:.0f} ohm -> I_c = {ic:.2f} nA")
print(f"EJ/EC = 10.76/0.33 GHz -> f01 = {f01:.4f} GHz")
print()

# a synthetic wafer: ideal square-root law plus 14.5 MHz of device scatter
rng = np.random.default_rng(7)
r = np.sort(rng.uniform(7000.0, 9500.0, 31))
f = 5.7046 * np.sqrt(7984.0 / r) + rng.normal(0.0, 0.0145, r.size)

free = physics.fit_power_law(r, f)
print(f"free fit:  f = {free.prefactor:.2f} * R^{free.exponent:.4f}  "
      f"residual {free.residual_std_mhz:.1f} MHz")

locked = physics.fit_power_law(r, f, fix_exponent=-0.5)
print(f"locked -1/2: prefactor {locked.prefactor:.2f}, "
      f"residual {locked.residual_std_mhz:.1f} MHz")

target_f = 5.60
print(f"\nresistance for a {target_f} GHz target: "
      f"{physics.target_resistance_ohm(locked, target_f):.0f} ohm")

# two trim groups around distinct medians; pooled scatter ignores the split
f_groups = np.concatenate([rng.normal(5.71, 0.016, 16), rng.normal(5.44, 0.016, 15)])
groups = np.array([0] * 16 + [1] * 15)
gs = physics.grouped_sigma(f_groups, groups)
print(f"two-group pooled sigma_f = {gs.pooled_sigma_mhz:.1f} MHz "
      f"(medians {gs.group_medians_ghz[0]:.3f} / {gs.group_medians_ghz[1]:.3f} GHz)")
