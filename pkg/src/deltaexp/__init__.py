"""p-adic delta-characters of elliptic curves and the q-expansions they reciprocate with."""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .padic import (UnramifiedRing, PAdicElement, frobenius, fermat_quotient, teichmuller,
                    hensel_root, cp_polynomial, find_irreducible, is_prime, valuation)
from .qseries import (ExactRational, PrimeField, ModPrimePower, QExpansion, NewformCoefficients,
                      op_U, op_V, op_T, op_theta, twist_f0, twist_fminus1, resum, eisenstein)
from .deltaring import (DeltaSeries, twisted_phi, delta_op, sub_natural, sub_star, cp_series,
                        f1_expansion, flambda_mod_p, default_caps)
from .ellcurve import (EllipticCurve, CurvePoint, classify_prime, count_points, find_good_primes,
                       fixture_primes, rational_torsion, unit_root, newform_coefficients,
                       builtin_curves, load_curves, parse_curve_spec, tate)
from .formalgroup import FormalLog, formal_log, formal_eval, formal_add, weierstrass_expansion, required_truncation
from .deltachar import (DeltaCharacter, ORDER2, ORDER1_CL, build_psi, psi_eval_formal, psi_eval_point,
                        pdiv_test, rank_p_estimate)
from .reciprocity import (ReciprocityReport, IDENTITIES, run_identity, verify_floare, verify_fruct4,
                          verify_eigen, verify_theta_congruence, verify_floarenoua, verify_f1_shadow,
                          fsharp_natural, fsharp_delta, finiteness_bound, level_invariants)
