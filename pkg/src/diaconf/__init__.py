"""Dialgebras, conformal algebras and the constructions linking them."""

__version__ = "0.1.0"
