"""Opcodes for compiled word programs.

A word over variables is compiled to a postfix program: two parallel int32
arrays ``ops`` and ``args``. The evaluator keeps a stack of element indices.

========  ====  =======================================================
constant  arg   effect
========  ====  =======================================================
OP_VAR    v     push the value assigned to variable v (0-based)
OP_INV    -     pop a, push a^-1
OP_MUL    -     pop b, pop a, push a*b
OP_COMM   -     pop b, pop a, push a^-1 * b^-1 * a * b
OP_POW    m     pop a, push a**m (m may be negative or zero)
========  ====  =======================================================

Both kernel backends interpret this encoding; enumeration order over
assignments is the odometer with variable 0 as the most significant digit.
"""

OP_VAR = 0
OP_INV = 1
OP_MUL = 2
OP_COMM = 3
OP_POW = 4
