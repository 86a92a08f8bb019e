"""Exception hierarchy.

Every exception carries a short machine-readable ``code`` so the command line
front end can report distinct error codes.
"""


class GirthlabError(Exception):
    code = "error"


class UnknownSymbol(GirthlabError):
    code = "unknown_symbol"


class NotMember(GirthlabError):
    code = "not_member"


class Unsupported(GirthlabError):
    code = "unsupported"


class PhiInverseUnavailable(GirthlabError):
    code = "phi_inverse_unavailable"


class NotAscending(GirthlabError):
    code = "not_ascending"


class PreconditionViolated(GirthlabError):
    code = "precondition_violated"


class GeneratorInSubgroup(PreconditionViolated):
    code = "generator_in_subgroup"


class IdentityGenerator(PreconditionViolated):
    code = "identity_generator"


class DuplicateElement(GirthlabError):
    code = "duplicate_element"


class SubgroupNotProper(GirthlabError):
    code = "subgroup_not_proper"


class SearchExhausted(GirthlabError):
    code = "search_exhausted"


class NoPairFound(GirthlabError):
    code = "no_pair_found"


class SubstitutionCollapsed(GirthlabError):
    code = "substitution_collapsed"


class ValidationError(GirthlabError):
    code = "validation_error"


class CorpusMissing(GirthlabError):
    code = "corpus_missing"


class ParseError(GirthlabError):
    code = "parse_error"

    def __init__(self, message, line=1, column=1, expected=None):
        self.line = line
        self.column = column
        self.expected = expected
        where = f"line {line}, column {column}"
        if expected:
            message = f"{message} (expected {expected})"
        super().__init__(f"{where}: {message}")


class UsageError(GirthlabError):
    code = "usage_error"
