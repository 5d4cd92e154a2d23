from .protocol import EngineConfig, ProtocolSession, make_evaluator, protocol_loop
from .timecontrol import ClockState, choose_move, depth_for_time, time_allocation, top_policy_move

__all__ = [
    "ClockState", "EngineConfig", "ProtocolSession", "choose_move", "depth_for_time",
    "make_evaluator", "protocol_loop", "time_allocation", "top_policy_move",
]
