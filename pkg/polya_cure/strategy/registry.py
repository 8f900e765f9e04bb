"""
Strategy registry.

Maps the strategy ids used in configuration files to strategy classes, so
that a run can be assembled from names and keyword parameters.
"""

import inspect
import logging
from typing import Any, Dict, List, Type

from ..exceptions import InvalidInputError, UnknownStrategyError
from .base import CuringStrategy
from .strategies import (
    CentralityStrategy,
    GradientStrategy,
    SuperUrnSupermartingaleStrategy,
    UniformStrategy,
    UrnMartingaleStrategy,
)

logger = logging.getLogger(__name__)


class StrategyRegistry:
    """Registry of curing strategy implementations keyed by id."""

    def __init__(self) -> None:
        self._strategies: Dict[str, Type[CuringStrategy]] = {}

    def register_strategy(self, strategy_class: Type[CuringStrategy]) -> None:
        name = strategy_class.name
        if not name:
            raise InvalidInputError(f"{strategy_class.__name__} has no name")
        if name in self._strategies:
            logger.warning(f"Overriding existing strategy '{name}'")
        self._strategies[name] = strategy_class
        logger.debug(f"Registered strategy '{name}'")

    def unregister_strategy(self, name: str) -> bool:
        if name in self._strategies:
            del self._strategies[name]
            logger.debug(f"Unregistered strategy '{name}'")
            return True
        return False

    def get_strategy_class(self, name: str) -> Type[CuringStrategy]:
        try:
            return self._strategies[name]
        except KeyError:
            raise UnknownStrategyError(name, self.list_strategies()) from None

    def create(self, name: str, **params: Any) -> CuringStrategy:
        """
        Instantiate a strategy, dropping parameters it does not take.

        Raises:
            UnknownStrategyError: If ``name`` is not registered
        """
        strategy_class = self.get_strategy_class(name)
        accepted = inspect.signature(strategy_class.__init__).parameters
        kwargs = {k: v for k, v in params.items() if k in accepted}
        ignored = sorted(set(params) - set(kwargs))
        if ignored:
            logger.debug(f"Strategy '{name}' ignores parameters {ignored}")
        return strategy_class(**kwargs)

    def list_strategies(self) -> List[str]:
        return sorted(self._strategies)

    def is_strategy_supported(self, name: str) -> bool:
        return name in self._strategies


def _build_default_registry() -> StrategyRegistry:
    registry = StrategyRegistry()
    for strategy_class in (
        UrnMartingaleStrategy,
        SuperUrnSupermartingaleStrategy,
        GradientStrategy,
        CentralityStrategy,
        UniformStrategy,
    ):
        registry.register_strategy(strategy_class)
    return registry


default_registry = _build_default_registry()
