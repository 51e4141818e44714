"""
Progress display for the verification suite
"""

import sys
import threading
import time
from typing import Optional

from tqdm import tqdm

from .config import get_logger

logger = get_logger(__name__)


class TerminalProgressBar:
    """Terminal-based progress bar using tqdm, safe to update from worker threads"""

    def __init__(self, total_steps: int = 100, description: str = "Verifying", enabled: Optional[bool] = None):
        if enabled is None:
            enabled = sys.stderr.isatty()
        self._lock = threading.Lock()
        self.total_steps = total_steps
        self.done = 0
        self.failed = 0
        self.start_time = time.time()
        self.pbar = tqdm(
            total=total_steps,
            desc=description,
            bar_format='{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}, {rate_fmt}]',
            ncols=80,
            disable=not enabled,
        )

    def update(self, step: int = 1, message: str = None, failed: int = 0):
        """Update progress"""
        with self._lock:
            self.done += step
            self.failed += failed
            self.pbar.update(step)
            if message:
                self.pbar.set_description(message)

    def set_description(self, desc: str):
        with self._lock:
            self.pbar.set_description(desc)

    def close(self):
        elapsed = time.time() - self.start_time
        self.pbar.close()
        logger.info(f"Hoàn thành {self.done}/{self.total_steps} claim trong {elapsed:.2f}s, {self.failed} báo cáo lỗi")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
