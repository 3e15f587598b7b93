"""First-order queries over automatic sequences."""
from .syntax import (Add, And, Atom, BoolConst, Call, Const, Exists, Forall, Iff, Implies, Index,
                     Mul, Not, Or, QuerySyntaxError, Sub, Var, free_vars, parse, parse_term,
                     free_var_order, sequences_of, show)
from .compile import CompiledPredicate, CompileError, Compiler, LogEntry, compile_formula
