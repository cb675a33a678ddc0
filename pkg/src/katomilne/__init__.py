"""Witt vector symbols over GF(p)(t_1..t_k): arithmetic, certified symbol-length reductions."""

from .certificate import Certificate, Step, Verdict, verify
from .decompose import (ChainProvider, ChainWitness, PlantedProvider, SearchProvider, T4Witness,
                        telescope, theorem3, theorem4, theorem5)
from .errors import InvalidWitness, PDependent, ProviderFailure, SearchCapExceeded
from .field import FieldElem, ParseError, Signature, SignatureMismatch
from .oracle import SearchBounds, gen_t3, gen_t4, gen_t5, search_as_witness
from .pdep import p_independence, universal_representation
from .rewriting import antisymmetry_swap, expand_slot, rewrite_first_slot
from .symbol import ASWitness, Symbol, SymbolSum, Term, check_as_witness, lift, project, residue, unlift, witness_from_dependence
from .witt import WittVector, generate_table, table

__all__ = [
    "ASWitness", "Certificate", "ChainProvider", "ChainWitness", "FieldElem", "InvalidWitness",
    "PDependent", "ParseError", "PlantedProvider", "ProviderFailure", "SearchBounds",
    "SearchCapExceeded", "SearchProvider", "Signature", "SignatureMismatch", "Step", "Symbol",
    "SymbolSum", "T4Witness", "Term", "Verdict", "WittVector", "antisymmetry_swap",
    "check_as_witness", "expand_slot", "gen_t3", "gen_t4", "gen_t5", "generate_table", "lift",
    "p_independence", "project", "residue", "rewrite_first_slot", "search_as_witness", "table",
    "telescope", "theorem3", "theorem4", "theorem5", "universal_representation", "unlift", "verify",
    "witness_from_dependence",
]
