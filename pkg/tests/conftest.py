import pytest
from _pytest.logging import LogCaptureFixture
from loguru import logger


@pytest.fixture
def caplog(caplog: LogCaptureFixture):
    """Route loguru records into pytest's caplog for the duration of a test."""

    logger.enable("diarscore")
    handler_id = logger.add(caplog.handler, format="{message}", level=0)
    yield caplog

    try:
        logger.remove(handler_id)
    except ValueError:
        pass
    logger.disable("diarscore")
