"""Roofs of n-bounded integer sets, affine crystals and Demazure crystals."""

from .sets import (
    IntegerSet,
    bruhat_leq,
    canonicalize,
    format_set,
    from_partition,
    half_line,
    height,
    is_n_bounded,
    is_n_stable,
    lex_compare,
    loose_ends,
    order,
    parse_set,
    seams,
    simple_reflection,
    tight_ends,
    to_partition,
    weyl_apply,
)
from .roof import (
    demazure_bottom_up,
    enumerate_stable_below,
    member,
    reduced_word_from_extremal,
    roof,
    roof_set,
    up,
    up_closure,
    up_inverse,
)
from .crystal import (
    ceiling,
    character,
    check_word,
    demazure_contains,
    demazure_top_down,
    e,
    e_max,
    enumerate_crystal,
    f,
    f_max,
    signature,
    weight,
)
from .fock import (
    FockVector,
    divided_vector,
    e_hat_apply,
    e_prime_apply,
    leading_coefficient_formula,
    mod_p_reduce,
    standard_coefficient,
    standard_vector,
)
