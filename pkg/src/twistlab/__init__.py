"""Subgroups of SL(2, Z) generated by powers of Dehn twists on the torus."""

from ._backend import BACKEND
from .classify import (
    GroupType,
    classify,
    classify_pair_collection,
    classify_three_uniform,
    classify_two,
    express_twist_in_squares,
    h_membership,
)
from .congruence import (
    FareyStats,
    farey_quotient,
    n_s_structure,
    relation_search,
    sl2_mod_order,
)
from .criteria import TwistCollection, is_comparable, is_proportional, ob1_exception
from .errors import BudgetExceeded, InvalidInput, TwistlabError
from .euclid import Transcript, euclid_reduce, reduce_step
from .homology import (
    IOTA,
    Curve,
    Mat2,
    TwistPower,
    curve_from_vector,
    intersection,
    normalize_pair,
    twist_apply,
    twist_matrix,
)
from .pingpong import FreenessCertificate, pingpong_certificate, procedure_run, slide_expand
from .words import WordLetter, word_to_matrix

__version__ = "0.1.0"
