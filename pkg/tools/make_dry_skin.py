"""Regenerate src/skinsar/data/tissues/dry-skin.toml.

Evaluates the four-term Cole-Cole parametric model of Gabriel, Lau & Gabriel
(Phys. Med. Biol. 41, 1996) with the published dry-skin coefficients at a
fixed list of frequencies. Run once; the output is committed as data.
"""

import numpy as np

EPS0 = 8.854e-12

# ef, (delta_eps, tau, alpha) x 4, sigma_ionic  -- dry skin
EF = 4.0
TERMS = [
    (32.0, 7.234e-12, 0.0),
    (1100.0, 32.481e-9, 0.20),
    (0.0, 159.155e-6, 0.20),
    (0.0, 15.915e-3, 0.20),
]
SIGMA_IONIC = 0.0002

FREQS_GHZ = [0.6, 0.7, 0.8, 0.9, 1.8, 2.0, 2.1, 2.3, 2.45, 2.6, 3.5, 5.8, 10.0, 24.0, 28.0, 39.0, 60.0]
DENSITY = 1000.0  # kg/m^3, 1 g/cm^3


def cole_cole(f):
    w = 2 * np.pi * f
    eps = EF + SIGMA_IONIC / (1j * w * EPS0)
    for d, tau, a in TERMS:
        eps = eps + d / (1 + (1j * w * tau) ** (1 - a))
    return eps.real, -eps.imag * w * EPS0


def main():
    out = [
        "# Dry skin, relative permittivity and conductivity from the Gabriel et al.",
        "# (1996) four-term Cole-Cole model, dry-skin coefficients",
        "# (ef=4, d1=32 tau1=7.234 ps, d2=1100 tau2=32.481 ns alpha2=0.2, sigma=2e-4 S/m),",
        "# evaluated by tools/make_dry_skin.py. Density fixed at 1 g/cm^3.",
        "",
        "[tissue]",
        'name = "dry-skin"',
    ]
    for fg in FREQS_GHZ:
        er, s = cole_cole(fg * 1e9)
        out += [
            "",
            "[[tissue.row]]",
            f"frequency_hz = {fg * 1e9:.1f}",
            f"eps_real = {er:.4f}",
            f"sigma_s_per_m = {s:.5g}",
            f"density_kg_per_m3 = {DENSITY:.1f}",
        ]
    print("\n".join(out))


if __name__ == "__main__":
    main()
