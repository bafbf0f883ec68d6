"""Column twisted Reed-Solomon codes over small finite fields."""

from .galois import FieldElement, FieldSpec, field_new, subgroup
from .gfmatrix import GFMatrix
from .construct import TwistedCodeSpec, corollary_construct, five_step, gen_rs, generator, make_spec
from .certify import criterion, min_distance, oracle_mds, parity_closed_form, schur_square
from .codec import Codeword, encode, erasure_decode

__version__ = "0.1.0"
