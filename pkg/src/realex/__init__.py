"""Exact reals with moduli, certified analysis routines, Cantor-space
functionals and zero-search extraction."""
from .analysis import (Fuel, Partition, TotallyBoundedSet, dyadic_net, evt_ef, finite_set,
                       grid_term, integrate_ef, ivt_ef, mesh, riemann_jump_demo, riemann_sum,
                       sup_tb)
from .cantor import (Associate, BinaryTree, ThetaResult, associate_of, eval_associate,
                     fan_modulus, scf_check, sep_with_fuel, theta_from_fan, tof_check,
                     wkl_leftmost)
from .dsl import compile_expr, derive_modulus, parse_expr
from .errors import (DepthTooSmall, DomainError, FuelExhausted, GuardViolation,
                     IncompatibleDomains, ModulusError, ParseError, RealexError,
                     SignPrecondition)
from .extract import (MuResult, mu_check, mu_from_dif, mu_from_mpc, mu_from_rie, omega_ca,
                      oracle_moduli)
from .functions import (FnWithModulus, Interval, RealFn, UniformModulus, make_f0, make_f1,
                        make_f2)
from .reals import (Ordering, Real, approx, binary_expansion, compare, exp_real,
                    from_rational, hat_regularize, real_from_bits, recip_guarded,
                    sqrt_nonneg)

__version__ = "0.1.0"
