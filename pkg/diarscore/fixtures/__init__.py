from .verify import (
    Fixture,
    FixtureResult,
    load_fixtures,
    verify_fixture,
    verify_fixtures,
)

__all__ = (
    "Fixture",
    "FixtureResult",
    "load_fixtures",
    "verify_fixture",
    "verify_fixtures",
)
