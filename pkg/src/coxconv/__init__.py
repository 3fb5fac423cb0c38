"""Convolution sets, Bruhat order and Demazure products in Coxeter groups."""

from .bruhat import bruhat_interval, bruhat_leq, bruhat_leq_oracle, lower_ideal
from .convolution import (
    ConvolutionReport,
    arrow,
    check_cor1,
    check_lemma3,
    check_lifting,
    convolve,
    convolve_step,
    convolve_via_word,
    demazure,
    exhaustion_report,
    max_of,
    min_of,
)
from .coxeter import (
    INF,
    CoxeterMatrix,
    CoxeterSystem,
    Element,
    ElementSet,
    Reflection,
    format_word,
    is_reflection,
    parse_word,
    reduced_words,
)
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
