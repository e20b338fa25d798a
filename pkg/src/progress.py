from datetime import datetime
from typing import Dict
import logging

logger = logging.getLogger(__name__)


class SearchProgress:
    """
    Tracks progress of long exhaustive searches.
    Counts expanded nodes, prunes and per-N decisions and logs a status line
    at most once a minute.
    """
    def __init__(self, label: str = "search"):
        self.label = label
        self.start_time = datetime.now()
        self.nodes = 0
        self.pruned = 0
        self.current_phase = ""
        self.decisions: Dict[str, str] = {}
        self.certificates: Dict[str, int] = {}
        self._last_update = datetime.now()

    def update(self, **kwargs) -> None:
        """
        Update progress metrics.

        Args:
            **kwargs: Supported keys:
                - phase: Name of the phase now running
                - nodes: Number of newly expanded nodes
                - pruned: Number of newly pruned branches
                - decided: (N, outcome) pair for a finished size
                - certificate: Kind of certificate produced
        """
        now = datetime.now()

        if 'phase' in kwargs:
            self.current_phase = kwargs['phase']
            logger.info(f"{self.label}: {self.current_phase}")

        if 'nodes' in kwargs:
            self.nodes += kwargs['nodes']

        if 'pruned' in kwargs:
            self.pruned += kwargs['pruned']

        if 'decided' in kwargs:
            n, outcome = kwargs['decided']
            self.decisions[str(n)] = outcome
            logger.info(f"{self.label}: N={n} {outcome}")

        if 'certificate' in kwargs:
            kind = kwargs['certificate']
            self.certificates[kind] = self.certificates.get(kind, 0) + 1

        if (now - self._last_update).total_seconds() > 60:
            self._log_progress()
            self._last_update = now

    def _log_progress(self) -> None:
        duration = datetime.now() - self.start_time
        logger.info(
            f"Progress ({self.label}): {self.nodes} nodes, "
            f"{self.pruned} pruned, "
            f"{len(self.decisions)} sizes decided, "
            f"Duration: {str(duration).split('.')[0]}"
        )

    def get_status(self, include_timing: bool = True) -> Dict:
        """
        Get current progress status.

        Args:
            include_timing: Add timestamp and duration (leave out for
                reproducible artifacts)

        Returns:
            Dict containing current progress metrics
        """
        status = {
            "label": self.label,
            "nodes": self.nodes,
            "pruned": self.pruned,
            "current_phase": self.current_phase,
            "decisions": dict(self.decisions),
            "certificates": dict(self.certificates),
        }
        if include_timing:
            duration = datetime.now() - self.start_time
            status["timestamp"] = datetime.now().isoformat()
            status["duration"] = str(duration).split('.')[0]
        return status
