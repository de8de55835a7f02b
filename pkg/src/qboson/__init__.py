"""
Exact eigenfunctions of the multi-species q-Boson system.

Two constructions of the same eigenfunction are provided and compared over
exact rationals: a Hecke-algebra formula (``hecke.eigenfunction_h``) and a
vacuum matrix element of monodromy entries on q-boson Fock space
(``fock.psi``).  ``integrability`` holds the R-matrix, Yang-Baxter and
transfer-matrix checks, ``recurrence`` the colour-peeling recurrence, and
``verify`` the seeded suites behind the ``qboson`` command.
"""

from .scalars import (ParamError, PoleError, SpectralParams, check_params, f_factor,
                      format_rational, g_factor, parse_rational, random_params,
                      validate_params)
from .process import (Configuration, apply_generator, extract_component, hop_rate,
                      inversion_number, outgoing_moves)
from .hecke import (SingularYError, TensorVector, apply_R, apply_Y, apply_Z,
                    bcps_closed_form, eigenfunction_h, phi_apply, recurrence_check_h)
from .fock import (IntervalError, Operator, SparseKet, apply_L_entry, apply_monodromy_entry,
                   check_congruence, eigenfunction_E, matrix_element, psi,
                   recurrence_check_psi, vacuum_pairing)
from .integrability import (PeriodicSector, SectorLeakError, apply_Rcheck, check_commutativity,
                            check_H1_vs_rates, check_YBE, extract_Hn, transfer_apply)
from .report import Check, Report

__version__ = "0.1.0"
