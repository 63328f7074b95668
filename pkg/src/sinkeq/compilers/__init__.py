from .common import CompiledReduction, SymbolTable, closures_isomorphic
from .weighted import compile_tm_weighted, compile_tm_player_specific
from .market import compile_sat_market, compile_tm_market, market_base
from .anonymous import (
    compile_tm_anonymous,
    anonymous_round_start,
    decode_anonymous_config,
)
from .tm_gadget import decode_config, round_start_profile
from .rounds import RoundReport, verify_round_anonymous, verify_round_weighted

__all__ = [
    "CompiledReduction", "SymbolTable", "closures_isomorphic",
    "compile_tm_weighted", "compile_tm_player_specific",
    "compile_sat_market", "compile_tm_market", "market_base",
    "compile_tm_anonymous", "anonymous_round_start", "decode_anonymous_config",
    "decode_config", "round_start_profile",
    "RoundReport", "verify_round_weighted", "verify_round_anonymous",
]
