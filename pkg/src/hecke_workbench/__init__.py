"""Exact arithmetic in generalized affine Hecke algebras and their small modules."""

from .affine_weyl import AffineWeylGroup, ExtWeylElt
from .hecke import AlgebraDatum, HeckeAlgebra, HeckeElt, make_datum
from .laurent import HalfLaurent, ModC, ModP, Real, specialize
from .modules import (
    FinHeckeModule, HCharacter, b3_reflection_module, enumerate_characters_generic,
    enumerate_characters_mod_p, induce_character, is_discrete, is_supersingular,
    reduce_mod_p, reflection_module, verify_module_relations,
)
from .root_data import CartanType, build_root_system, parse_cartan

__version__ = "0.1.0"
