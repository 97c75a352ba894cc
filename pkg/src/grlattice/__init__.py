"""Gabriel-Roiter measures and submodule-closed subcategories over prime fields.

Modules: measures (2^N under the lexicographic order), linalg (F_p),
quiver (algebras, representations, homs), submod (submodule lattices),
grm (the measure), subcat (finite models of closed sets), kronecker
(closed forms for the Kronecker algebra), io and cli.
"""

__version__ = "0.1.0"
