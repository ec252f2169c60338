"""Per-stage timing and counts for pipeline runs"""

import json
import logging
import time
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

logger = logging.getLogger(__name__)


class RunTracker:
    """Track pipeline stages: wall time and the counts each stage produced"""

    def __init__(self, metrics_file: Optional[str] = None):
        self.metrics_file = metrics_file
        self.run_start = datetime.now()
        self._t0 = time.perf_counter()
        self.metrics = {
            'run_start': self.run_start.isoformat(),
            'stages': {},
            'counts': {},
        }

    @contextmanager
    def stage(self, name: str):
        """Time a stage; nested names are recorded independently"""
        start = time.perf_counter()
        logger.debug(f"Stage {name} started")
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.metrics['stages'][name] = round(elapsed, 3)
            logger.info(f"Stage {name} finished in {elapsed:.2f}s")

    def count(self, name: str, value: int):
        self.metrics['counts'][name] = value

    @property
    def wall_time(self) -> float:
        return time.perf_counter() - self._t0

    def get_run_stats(self) -> Dict:
        return {
            'wall_time_seconds': round(self.wall_time, 3),
            'stages': dict(self.metrics['stages']),
            'counts': dict(self.metrics['counts']),
        }

    def print_run_report(self):
        """Print a summary of the run"""
        stats = self.get_run_stats()
        print("\n" + "=" * 60)
        print("RUN SUMMARY")
        print("=" * 60)
        print(f"Started: {self.run_start.strftime('%Y-%m-%d %H:%M:%S')}")
        print(f"Wall time: {stats['wall_time_seconds']:.2f}s")
        print("\nStages:")
        for name, seconds in stats['stages'].items():
            print(f"  {name:<20} {seconds:>10.2f}s")
        print("\nCounts:")
        for name, value in stats['counts'].items():
            print(f"  {name:<20} {value:>10}")
        print("=" * 60 + "\n")

    def save_metrics(self, path: Optional[str] = None):
        """Write the metrics JSON file"""
        target = path or self.metrics_file
        if not target:
            return
        self.metrics['wall_time_seconds'] = round(self.wall_time, 3)
        try:
            Path(target).parent.mkdir(parents=True, exist_ok=True)
            with open(target, 'w') as f:
                json.dump(self.metrics, f, indent=2)
        except OSError as e:
            logger.error(f"Error saving metrics: {e}")
