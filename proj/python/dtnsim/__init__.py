"""Social-network-aware DTN routing simulator (C++ core)."""

from ._core import (
    MAX_LINK_WEIGHT,
    Arena,
    ContactWindow,
    DtnError,
    MetricsReport,
    Protocol,
    ReplicateReport,
    SimConfig,
    SocialGraph,
    Trace,
    betweenness,
    endpoint_betweenness,
    expanded_ego_betweenness,
    extract_expanded_ego,
    generate_trace,
    load_trace,
    replicate,
    run,
    save_trace,
)

__all__ = [
    "MAX_LINK_WEIGHT",
    "Arena",
    "ContactWindow",
    "DtnError",
    "MetricsReport",
    "Protocol",
    "ReplicateReport",
    "SimConfig",
    "SocialGraph",
    "Trace",
    "betweenness",
    "endpoint_betweenness",
    "expanded_ego_betweenness",
    "extract_expanded_ego",
    "generate_trace",
    "load_trace",
    "replicate",
    "run",
    "save_trace",
]
