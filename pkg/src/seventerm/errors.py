"""Exception hierarchy with machine-readable error codes."""

from __future__ import annotations


class SevenTermError(Exception):
    """Base class; ``code`` is the machine-readable identifier used in reports."""

    code = "error"


class InputError(SevenTermError):
    """Malformed or inconsistent input data (CLI exit code 2)."""

    code = "input"


class NotNormal(InputError):
    code = "not_normal"


class ActionNotHomomorphic(InputError):
    code = "action_not_homomorphic"


class ActionInconsistent(InputError):
    code = "action_inconsistent"


class NotACocycle(InputError):
    code = "not_a_cocycle"


class InfiniteModule(InputError):
    code = "infinite_module"


class SectionInvalid(InputError):
    code = "section_invalid"


class NotInKernelOfRestriction(InputError):
    code = "not_in_kernel_of_restriction"


class NotModuleMorphism(InputError):
    code = "not_module_morphism"


class NotPartiallySplit(InputError):
    code = "not_partially_split"


class NotInvariant(InputError):
    code = "not_invariant"


class InvariantViolation(InputError):
    code = "invariant_violation"


class ModuleNotNInvariant(InputError):
    code = "module_not_n_invariant"


class NotAMorphismOfExtensions(InputError):
    code = "not_a_morphism_of_extensions"


class UnknownPreset(InputError):
    code = "unknown_preset"


class BadParams(InputError):
    code = "bad_params"


class DegreeOverflow(InputError):
    code = "degree_overflow"


class SizeBudgetExceeded(SevenTermError):
    """Requested computation exceeds the configured size budget (CLI exit code 3)."""

    code = "budget"


class InternalCheckFailed(SevenTermError):
    """A condition that is provably impossible for valid input failed anyway.

    Raised by the solvers behind the transgression and obstruction maps
    (``EtaUnsolvable`` / ``FPrimeUnsolvable`` situations); seeing this means a
    precondition check upstream has a bug.
    """

    code = "internal"
