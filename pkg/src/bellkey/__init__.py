"""Bell-inequality violation as a detector of efficient secret-key extraction."""

from bellkey.attack import AttackParams, EveEnsemble, alice_bob_state, attack_state
from bellkey.chsh import CorrelationMatrix, attack_correlation_matrix, chsh_max, chsh_optimize, correlation_matrix
from bellkey.secrecy import InfoTriple, SecurityReport, binary_mutual_info, security_report

__all__ = [
    "AttackParams",
    "CorrelationMatrix",
    "EveEnsemble",
    "InfoTriple",
    "SecurityReport",
    "alice_bob_state",
    "attack_correlation_matrix",
    "attack_state",
    "binary_mutual_info",
    "chsh_max",
    "chsh_optimize",
    "correlation_matrix",
    "security_report",
]
