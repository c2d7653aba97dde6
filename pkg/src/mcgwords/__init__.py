"""Word calculus for Dehn-twist relators with homology-level verification."""
from .words import (DefinitionTable, Letter, WordSyntaxError, cyclic_rotate, expand_definitions,
                    free_reduce, invert, is_positive, letter_count, parse_word, render_word)
from .homology import (CurveTable, act_on_homology, intersection, matrix_order, solve_classes,
                       transvection, validate_table)
from .relations import (Kind, RelationInstance, Registry, builtin_kinds, check_instance, registry_for,
                        relation)
from .rewrite import Derivation, Move, apply_move, ledger_total, run_derivation
from .invariants import (AbelianGroup, FibrationInvariants, closed_form_sigma, euler_characteristic,
                         h1_of_fibration, invariants_report, smith_normal_form)

__version__ = "0.1.0"
