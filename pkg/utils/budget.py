"""Budget tracker for probability mass lost to truncation."""

from typing import Dict, List
import logging

logger = logging.getLogger(__name__)


class TruncationBudget:
    """Accumulates and enforces a limit on discarded probability mass."""

    def __init__(self, limit: float = 1e-10):
        """Initialize truncation budget.

        Args:
            limit: Maximum total probability mass that may be discarded
        """
        self.limit = limit
        self.spent = 0.0
        self.by_source: Dict[str, List[float]] = {}

    def can_spend(self, amount: float) -> bool:
        """Check if discarding another amount stays within budget.

        Args:
            amount: Probability mass about to be discarded

        Returns:
            True if the total stays below the limit, False otherwise
        """
        if self.spent + amount >= self.limit:
            logger.warning(
                f"Truncation budget exceeded: {self.spent + amount:.3e} >= {self.limit:.3e}"
            )
            return False
        return True

    def record(self, source: str, amount: float):
        """Record discarded mass.

        Args:
            source: Where the mass was lost (e.g., 'poisson_tail', 'sector_12')
            amount: Probability mass discarded
        """
        amount = max(float(amount), 0.0)
        self.spent += amount
        self.by_source.setdefault(source, []).append(amount)
        logger.debug(f"Truncation recorded: {source} {amount:.3e} (total {self.spent:.3e})")

    def get_remaining(self) -> float:
        """Get remaining budget.

        Returns:
            Mass that can still be discarded
        """
        return max(0.0, self.limit - self.spent)

    @property
    def exceeded(self) -> bool:
        return self.spent >= self.limit

    def get_stats(self) -> dict:
        """Get budget statistics.

        Returns:
            Dictionary with budget stats
        """
        return {
            "limit": self.limit,
            "spent": self.spent,
            "remaining": self.get_remaining(),
            "by_source": {key: sum(values) for key, values in self.by_source.items()},
        }

    def reset(self):
        """Reset the budget counter."""
        self.spent = 0.0
        self.by_source = {}
