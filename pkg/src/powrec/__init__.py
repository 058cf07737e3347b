"""Power constructions for finite semigroups, regular languages and finite Boolean spaces."""

__version__ = "0.1.0"
