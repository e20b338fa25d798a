import pytest
from datetime import datetime
from src.progress import SearchProgress
from unittest.mock import patch


@pytest.fixture
def progress():
    return SearchProgress("gr_exact")


def test_progress_initialization(progress):
    """Test initial state of progress tracker."""
    assert progress.nodes == 0
    assert progress.pruned == 0
    assert progress.decisions == {}
    assert isinstance(progress.start_time, datetime)


def test_update_phase(progress):
    """Test phase tracking."""
    progress.update(phase="N=2")
    assert progress.current_phase == "N=2"


def test_update_counters(progress):
    """Test node and prune counting."""
    progress.update(nodes=5)
    progress.update(nodes=3, pruned=2)
    assert progress.nodes == 8
    assert progress.pruned == 2


def test_update_decisions_and_certificates(progress):
    """Test per-N decisions and certificate tallies."""
    progress.update(decided=(1, "avoider"), certificate="witness_grid")
    progress.update(decided=(2, "no_avoider"))
    progress.update(certificate="witness_grid")
    assert progress.decisions == {"1": "avoider", "2": "no_avoider"}
    assert progress.certificates == {"witness_grid": 2}


def test_get_status(progress):
    """Test status report generation."""
    progress.update(phase="N=1", nodes=4, decided=(1, "avoider"))

    status = progress.get_status()
    assert status["label"] == "gr_exact"
    assert status["nodes"] == 4
    assert status["current_phase"] == "N=1"
    assert status["decisions"] == {"1": "avoider"}
    assert "duration" in status
    assert "timestamp" in status


def test_get_status_without_timing(progress):
    """Test reproducible status leaves out wall-clock values."""
    status = progress.get_status(include_timing=False)
    assert "duration" not in status
    assert "timestamp" not in status


@patch('src.progress.logger')
def test_progress_logging(mock_logger):
    """Test progress logging functionality."""
    with patch('src.progress.datetime') as mock_datetime:
        mock_datetime.now.side_effect = [
            datetime(2024, 1, 1, 12, 0, 0),  # start_time
            datetime(2024, 1, 1, 12, 0, 0),  # last update
            datetime(2024, 1, 1, 12, 0, 30),  # first update
            datetime(2024, 1, 1, 12, 1, 1),  # second update (>60s later)
            datetime(2024, 1, 1, 12, 1, 1),  # duration in the log line
        ]
        progress = SearchProgress("gr_exact")

        progress.update(phase="N=1")
        progress.update(phase="N=2")  # Should trigger logging

        assert mock_logger.info.call_count == 3
