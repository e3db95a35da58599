"""Exact local-field arithmetic and lifting of subgroups of PSL2(K) to SL2(K)."""

from .local_field import (ExtElement, ExtField, FieldElement, LaurentField,
                          PAdicField, make_field, with_i)

__version__ = "0.1.0"
