"""Braid conventions; generated by ``python -m andreadakis.braid.calibrate``."""

# A_rs = y sigma_r^2 y^-1 with y built from sigma_{s-1}..sigma_{r+1}
# raised to CONJUGATOR_CROSSING, in CONJUGATOR_ORDER.
# ACTION_SIDE 'right': the first letter of a braid word acts first.
# KERNEL_ACTION 'direct': l^-1 A_in l is the Artin image of x_i under l.
CONJUGATOR_CROSSING = 1
CONJUGATOR_ORDER = 'descending'
ACTION_SIDE = 'right'
KERNEL_ACTION = 'direct'
TABLE_ORIENTATION = {'outside': ('trivial',),
 's=i': ('s=i', -1, -1),
 'r=i': ('r=i', -1, 1),
 'r<i<s': ('r<i<s', 'rs', -1, -1, -1)}
TABLE_AS_STATED = {'outside': True, 's=i': True, 'r=i': True, 'r<i<s': False}
