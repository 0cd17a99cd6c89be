import threading

from src.errors import SearchCancelled


class CancellationToken:
    """Cooperative cancellation flag checked by long-running searches."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self):
        if self._event.is_set():
            raise SearchCancelled("Search cancelled by caller")
