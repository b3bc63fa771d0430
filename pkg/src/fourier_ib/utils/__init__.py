from .log import setup_logging
from .timing import StepTimer

__all__ = ["setup_logging", "StepTimer"]
