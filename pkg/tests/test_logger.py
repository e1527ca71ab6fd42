import logging

import pytest
from click.testing import CliRunner

from magnosqueeze.logger import LOG
from magnosqueeze.main import main


@pytest.fixture(autouse=True)
def info_level():
    LOG.set_level("INFO")
    yield
    LOG.set_level("INFO")


def messages(caplog) -> list[str]:
    return [record.getMessage() for record in caplog.records if record.name == "magnosqueeze"]


def test_phase_tags_messages_inside_the_block(caplog):
    with LOG.phase("model"):
        LOG.info("building")
    LOG.info("done")

    tagged, plain = messages(caplog)
    assert "[model]" in tagged
    assert tagged.endswith("building")
    assert plain == "done"


def test_nested_phase_restores_outer_tag(caplog):
    with LOG.phase("dynamics"):
        with LOG.phase("artifacts"):
            LOG.warning("inner")
        LOG.error("outer")

    inner, outer = messages(caplog)
    assert "[artifacts]" in inner
    assert "[dynamics]" in outer
    assert LOG.current_phase is None


def test_set_level_accepts_names_and_numbers(caplog):
    LOG.set_level(logging.WARNING)
    LOG.info("hidden")
    LOG.set_level("debug")
    LOG.debug("shown")

    assert messages(caplog) == ["shown"]
    assert LOG.level == "DEBUG"


def test_verbose_flag_enables_debug_diagnostics(caplog, tmp_path):
    args = ["steady", "--preset", "fig4", "--param", "g=0.001", "--param", "G=0.001"]
    runner = CliRunner(env={"LOG_LEVEL": "INFO"})

    quiet = runner.invoke(main, [*args, "--out", str(tmp_path / "quiet")])
    assert quiet.exit_code == 0
    assert not [r for r in caplog.records if r.name == "magnosqueeze" and r.levelno == logging.DEBUG]

    verbose = runner.invoke(main, [*args, "--out", str(tmp_path / "verbose"), "--verbose"])
    assert verbose.exit_code == 0
    debug = [r.getMessage() for r in caplog.records if r.levelno == logging.DEBUG]
    assert any("[artifacts]" in message and "Wrote" in message for message in debug)
