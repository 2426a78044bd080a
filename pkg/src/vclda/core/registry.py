from typing import TYPE_CHECKING, Callable, Dict, List

if TYPE_CHECKING:
    from vclda.core.methods import MethodOutcome, TrialContext

MethodFn = Callable[["TrialContext"], "MethodOutcome"]


class MethodRegistry:
    """Classification methods available to the benchmark, keyed by name."""

    _methods: Dict[str, MethodFn] = {}

    @classmethod
    def register(cls, name: str) -> Callable[[MethodFn], MethodFn]:
        """Decorator registering ``fn`` under ``name``; re-registering replaces it."""

        def decorator(fn: MethodFn) -> MethodFn:
            cls._methods[name] = fn
            return fn

        return decorator

    @classmethod
    def get(cls, name: str) -> MethodFn:
        if name not in cls._methods:
            known = ", ".join(sorted(cls._methods))
            raise KeyError(f"Unknown method '{name}' (known: {known})")
        return cls._methods[name]

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls._methods)

    @classmethod
    def clear(cls):
        cls._methods = {}
