"""Exact computations with bi-octonion algebras, their Albert forms and cohomological invariants."""
