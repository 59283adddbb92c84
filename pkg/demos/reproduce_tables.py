"""
Dispersion and L2 discrepancy tables
====================================

Scaled dispersion (F_m - 1) disp of the starred sets, then the L2
discrepancies of the plain and modified lattices and their mirrored
versions. Same output as ``golden-disp table1`` and ``golden-disp table3``.
"""

from golden_disp.cli import cmd_table1, cmd_table3

print(cmd_table1(range(5, 13)))
print(cmd_table3(range(6, 15)))
