"""Catalogue of properties of the Tribonacci word checked by automata and by brute force."""
from .addition import AdditionCheck, accepted_sums, check_addition
from .cases import (CASES, CASES_BY_ID, CaseContext, CheckResult, Custom, DecodedEquals, IsEmpty,
                    IsUniversal, MatchesRegex, NumericLimit, OracleReport, StateCount, TheoremCase,
                    abelian_formulas, format_table, run_all, run_case)
from .oracles import oracle_scan
