# Isolating the zero-point phase by suppressing one circular mode.
#
# In a gyrotropic medium the circular polarizations see different indices,
# n2_pm = (eps1 +- eps2)(mu1 +- mu2).  Choosing n2_+ > 0 > n2_- makes the
# minus mode evanescent, zero-point field included, so only the +W/2 phase
# of the right-handed mode remains.  Alternatively, nearly degenerate
# tensors push n_- (and with it k_-) toward zero, and a finite chamber of
# size a expels zero-point modes with k < pi/a: the same isolation through
# the mode-structure route.

import numpy as np

from fiberphase import (
    GyrotropicMedium,
    casimir_cutoff,
    effective_wave_vector,
    helix_path,
    mode_status,
    net_vacuum_phase,
    spherical_angles,
)

angles = spherical_angles(helix_path(np.pi / 3, 1.0, 1.0, 1.0, 1024))
half_cycle_phase = np.pi * (1.0 - np.cos(np.pi / 3))  # W/2 per full turn

print("--- route 1: evanescent minus mode ---")
medium = GyrotropicMedium(eps1=2.0, eps2=3.0, mu1=2.0, mu2=1.0)
status = mode_status(medium)
print(f"n2_+ = {status.n2_plus}, n2_- = {status.n2_minus}")
print(f"plus propagates: {status.plus_propagates}, minus propagates: {status.minus_propagates}")
net = net_vacuum_phase(medium, k0=1.0, angles=angles)
print(f"net zero-point phase per cycle: {net.phase:+.6f} rad  (+W/2 = {half_cycle_phase:+.6f})")
assert abs(net.phase - half_cycle_phase) < 1e-12

print("\n--- route 2: near-degenerate tensors + finite chamber ---")
medium = GyrotropicMedium(eps1=2.0, eps2=2.0 * (1 - 1e-6), mu1=2.0, mu2=2.0 * (1 - 1e-6))
k_plus = effective_wave_vector(medium, 1.0, +1)
k_minus = effective_wave_vector(medium, 1.0, -1)
print(f"k_+ = {k_plus:.4f}, k_- = {k_minus:.3e}  (minus index collapses)")
chamber = 1.0
print(f"chamber a = {chamber}: cutoff pi/a = {np.pi / chamber:.4f}")
print(f"  minus mode expelled: {casimir_cutoff(k_minus, chamber)}")
print(f"  plus mode expelled:  {casimir_cutoff(k_plus, chamber)}")
net = net_vacuum_phase(medium, 1.0, angles, chamber_length=chamber)
print(f"net zero-point phase per cycle: {net.phase:+.6f} rad")
assert net.plus_survives and not net.minus_survives

print("\n--- control: free space, large chamber ---")
free = GyrotropicMedium(eps1=1.0, eps2=0.0, mu1=1.0, mu2=0.0)
net = net_vacuum_phase(free, 1.0, angles, chamber_length=1e9)
print(f"both modes survive, net phase = {net.phase:+.1f} (the halves cancel exactly)")
assert net.phase == 0.0
