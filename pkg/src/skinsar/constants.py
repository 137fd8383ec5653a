"""Physical constants used throughout the package.

Values are fixed to four or five significant figures so that every
computation (and every golden file) sees the same numbers.
"""

SPEED_OF_LIGHT = 2.998e8  # m/s
VACUUM_PERMITTIVITY = 8.854e-12  # F/m
FREE_SPACE_IMPEDANCE = 376.73  # ohm

CONSTANTS = {
    "c_m_per_s": SPEED_OF_LIGHT,
    "eps0_f_per_m": VACUUM_PERMITTIVITY,
    "eta0_ohm": FREE_SPACE_IMPEDANCE,
}
