from .core import (DEFAULT_BUDGET, Dfa, Dfao, Nfa, Peak, ResourceError, TrackError, accepted_words,
                   column_to_symbol, complement, cylindrify, determinize, enumerate_values,
                   enumerate_words, exists, forall, format_column, from_table, intersect,
                   is_empty, is_pad_closed, language_equal, minimize, minimize_dfao, pad_closure,
                   product, project, rename, reorder, restrict_valid, singleton_word, state_budget,
                   strip_zero_prefix, symbol_to_column, track_peak, validity, values_up_to)
from .regex import RegexSyntaxError, regex_nfa, regex_to_dfa
from .textio import dumps, loads, to_dot
