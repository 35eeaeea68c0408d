"""
fgdist - distribution algebras of formal groups over prime fields.
"""

__version__ = "1.0.0"
__author__ = "Formal Group Algebra Team"
__email__ = "dev@fgdist.org"
__license__ = "MIT"

from .errors import FgDistError, InputError, MathematicalRefusal, AxiomViolation
from .config import Settings, get_settings
from .formal_group import FormalGroupLaw, builtin_law, load_custom, validate
from .dist_algebra import DistLevel, Distribution, MultMonomial, dist_mul, dist_comul, antipode
from .splay_poisson import SplayDescription, PoissonTable, extract_pi, check_table
from .pbw_rewrite import RewriteSystem, s_polynomial_report, enumerate_pbw_basis
from .reconstruct import ReconstructedAlgebra, build_U, dvps_verify, compare_with_oracle, swap_order_equivalence

__all__ = [
    'FgDistError',
    'InputError',
    'MathematicalRefusal',
    'AxiomViolation',
    'Settings',
    'get_settings',
    'FormalGroupLaw',
    'builtin_law',
    'load_custom',
    'validate',
    'DistLevel',
    'Distribution',
    'MultMonomial',
    'dist_mul',
    'dist_comul',
    'antipode',
    'SplayDescription',
    'PoissonTable',
    'extract_pi',
    'check_table',
    'RewriteSystem',
    's_polynomial_report',
    'enumerate_pbw_basis',
    'ReconstructedAlgebra',
    'build_U',
    'dvps_verify',
    'compare_with_oracle',
    'swap_order_equivalence'
]
