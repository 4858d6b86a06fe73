"""Character tables: exact cyclotomic values, structure constants, Thompson triples."""

from .cyclotomic import Cyc
from .table import (
    CharacterTable, CoprimeTriple, TableError, load_table, shipped_table, structure_constant,
    thompson_nonsolvable,
)
from .dixon import character_table
