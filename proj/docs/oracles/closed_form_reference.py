#!/usr/bin/env python3
"""High-precision reference values for the closed-form quantities pinned in
the C++ test suite.

Everything here is computed with mpmath at 50 significant digits, straight
from the defining formulas, with no shared code with the C++ library.  The
numbers printed by this script are frozen into tests/ as oracle constants;
rerun it to audit them.

Requires: mpmath (pip install mpmath).
"""

import mpmath as mp

mp.mp.dps = 50

# SI defining constants (2019 redefinition, exact) and CODATA-2018 values.
E_CHARGE = mp.mpf("1.602176634e-19")      # C, exact
PLANCK = mp.mpf("6.62607015e-34")         # J s, exact
C_LIGHT = mp.mpf("299792458")             # m/s, exact
EPS0 = mp.mpf("8.8541878128e-12")         # F/m, CODATA 2018
HBAR = PLANCK / (2 * mp.pi)               # J s
HBAR_EV_S = HBAR / E_CHARGE               # eV s


def show(name, value, digits=17):
    print(f"{name:40s} {mp.nstr(mp.mpf(value), digits, strip_zeros=False)}")


print("# unit conversions")
show("hbar (eV s)", HBAR_EV_S)
show("1 eV as angular frequency (rad/s)", 1 / HBAR_EV_S)
show("internal time unit (s)", HBAR_EV_S)

print()
print("# dipole moment from radiative lifetime")
print("# |M| = sqrt(3 eps0 c^3 hbar / (tau * 8 pi^2 * nu0^3 * n)), nu0 = E/h")


def dipole_e_nm(tau_s, energy_eV, n):
    nu0 = energy_eV * E_CHARGE / PLANCK       # ordinary frequency, Hz
    m2 = 3 * EPS0 * C_LIGHT**3 * HBAR / (tau_s * 8 * mp.pi**2 * nu0**3 * n)
    return mp.sqrt(m2) / (E_CHARGE * mp.mpf("1e-9"))   # C m -> e nm


def lifetime_s(dipole, energy_eV, n):
    nu0 = energy_eV * E_CHARGE / PLANCK
    m = dipole * E_CHARGE * mp.mpf("1e-9")
    return 3 * EPS0 * C_LIGHT**3 * HBAR / (m**2 * 8 * mp.pi**2 * nu0**3 * n)


d250 = dipole_e_nm(mp.mpf("250e-12"), mp.mpf("2.61"), mp.mpf("2.4"))
d440 = dipole_e_nm(mp.mpf("440e-12"), mp.mpf("2.61"), mp.mpf("2.4"))
show("dipole(250 ps, 2.61 eV, n=2.4) (e nm)", d250)
show("dipole(440 ps, 2.61 eV, n=2.4) (e nm)", d440)
show("lifetime(0.5 e nm, 2.61 eV, 2.4) (s)", lifetime_s(mp.mpf("0.5"), mp.mpf("2.61"), mp.mpf("2.4")))
show("roundtrip lifetime(dipole(250ps)) (s)", lifetime_s(d250, mp.mpf("2.61"), mp.mpf("2.4")))

print()
print("# peak field from averaged intensity: E0 = sqrt(2 I / (c eps0 f dt))")
e0 = mp.sqrt(2 * mp.mpf("2.83e9") / (C_LIGHT * EPS0 * mp.mpf("80e6") * mp.mpf("100e-15")))
show("field(2.83e9 W/m^2, 80 MHz, 100 fs) (V/m)", e0)

print()
print("# drive coupling: b = M E0 / (2 hbar)")
b = mp.mpf("0.5") * E_CHARGE * mp.mpf("1e-9") * mp.mpf("2.2e8") / (2 * HBAR)
show("b(0.5 e nm, 2.2e8 V/m) (rad/s)", b)

print()
print("# classical polarization ratio chi2 / (chi3 E)")
ratio = mp.mpf("1.3e-11") / (mp.mpf("5.3e-19") * mp.mpf("2.2e8"))
show("ratio(1.3e-11, 5.3e-19, 2.2e8)", ratio)

print()
print("# erfcx(x) = exp(x^2) erfc(x), branch coverage for the in-repo series")
for x in ["-6", "-2", "-1", "-0.5", "0", "0.25", "0.5", "1", "2", "5", "10", "26.5", "100"]:
    show(f"erfcx({x})", mp.exp(mp.mpf(x) ** 2) * mp.erfc(mp.mpf(x)))

print()
print("# EMG density g(t; mu, sigma, tau) =")
print("#   1/(2 tau) exp(sigma^2/(2 tau^2) - (t-mu)/tau)")
print("#       * erfc((sigma/tau - (t-mu)/sigma)/sqrt(2))")


def emg(t, mu, sigma, tau):
    z = (sigma / tau - (t - mu) / sigma) / mp.sqrt(2)
    return mp.exp(sigma**2 / (2 * tau**2) - (t - mu) / tau) * mp.erfc(z) / (2 * tau)


cases = [
    ("emg(500; 500, 80, 260)", emg(mp.mpf(500), mp.mpf(500), mp.mpf(80), mp.mpf(260))),
    ("emg(620; 500, 80, 260)", emg(mp.mpf(620), mp.mpf(500), mp.mpf(80), mp.mpf(260))),
    ("emg(1800; 500, 80, 260)", emg(mp.mpf(1800), mp.mpf(500), mp.mpf(80), mp.mpf(260))),
    ("emg(100; 500, 80, 260)", emg(mp.mpf(100), mp.mpf(500), mp.mpf(80), mp.mpf(260))),
    ("emg(0; 500, 80, 440)", emg(mp.mpf(0), mp.mpf(500), mp.mpf(80), mp.mpf(440))),
    ("emg(3000; 500, 80, 440)", emg(mp.mpf(3000), mp.mpf(500), mp.mpf(80), mp.mpf(440))),
    # Naive-overflow regime: sigma^2/(2 tau^2) alone is ~5000.
    ("emg(1.0; 0, 100, 1)", emg(mp.mpf(1), mp.mpf(0), mp.mpf(100), mp.mpf(1))),
    ("emg(-400; 0, 100, 1)", emg(mp.mpf(-400), mp.mpf(0), mp.mpf(100), mp.mpf(1))),
]
for name, value in cases:
    show(name, value)

print()
print("# EMG density integrates to 1 (here: over +-60 tau around the peak)")
total = mp.quad(lambda t: emg(t, mp.mpf(500), mp.mpf(80), mp.mpf(260)),
                [mp.mpf(-20000), mp.mpf(500), mp.mpf(20000)])
show("integral of emg(.; 500, 80, 260)", total)

print()
print("# Malus model I(theta) = A cos^2(theta - theta0) + B and DOLP = A/(A+2B)")
A, B, th0 = mp.mpf(900), mp.mpf("67.241379310344827586"), mp.radians(mp.mpf(37))
for deg in [0, 37, 90, 127, 200]:
    th = mp.radians(mp.mpf(deg))
    show(f"malus({deg} deg)", A * mp.cos(th - th0) ** 2 + B)
show("DOLP A/(A+2B)", A / (A + 2 * B))
show("(Imax-Imin)/(Imax+Imin)", ((A + B) - B) / ((A + B) + B))
