"""Capacity and simple schedules for half-duplex relay line networks."""

from .ext import INF, ext, fmt, hm
from .line_model import (
    LineNetwork,
    Schedule,
    closed_form_capacity,
    cut_value,
    distributed_capacity_fold,
    fd_capacity,
    from_channel_gains,
    schedule_rate_fundamental,
    state_activates_link,
)
from .scheduler import build_simple_schedule, rationalize_real, trace_schedule

__version__ = "0.1.0"
