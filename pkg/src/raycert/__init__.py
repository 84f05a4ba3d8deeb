"""raycert: exact-arithmetic base-point certificates on generalized Raynaud surfaces."""

__version__ = "1.0.0"

from . import errors  # noqa: F401
from .curve import curve_init  # noqa: F401
from .surface import certify_point, check_gates, require_params  # noqa: F401
