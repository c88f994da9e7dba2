"""Exact arithmetic for effective Shafarevich-type finiteness over Q.

Subpackages and modules:

* :mod:`shafbound.bounds` -- closed-form height and field-invariant bounds
* :mod:`shafbound.sunit` -- S-units of Q and the unit equation
* :mod:`shafbound.geomkernel` -- exact linear algebra, ternary forms, predicates
* :mod:`shafbound.delpezzo` -- split del Pezzo blow-up configurations
* :mod:`shafbound.quartic` -- plane quartics, discriminants, branch curves
"""

__version__ = "0.1.0"
