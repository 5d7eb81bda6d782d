from src.validation.models import SuiteResult, VerificationReport

__all__ = [
    "SuiteResult",
    "VerificationReport",
]
