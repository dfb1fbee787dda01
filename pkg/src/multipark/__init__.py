"""Multiparking functions, Dirichlet configurations and descending R-traversals
on simple graphs, with the bijections between them."""

from .dirichlet import (
    Avalanche,
    Configuration,
    Firing,
    FiringError,
    avalanche_from_certificate,
    certificate_for,
    chi,
    classify,
    enumerate_dc,
    fire,
    fire_all_roots,
    is_certificate,
    is_dirichlet,
    omega,
    omega_inv,
    parse_configuration,
    replay_order,
    stabilize,
)
from .errors import NotInFamily
from .graph import (
    Graph,
    GraphError,
    RootSetError,
    build_graph,
    components,
    degree_stats,
    format_graph,
    gamma,
    parse_graph,
    validate_roots,
)
from .infinity import INF, NEG_INF
from .multiparking import (
    BurningCertificate,
    BurningFailure,
    VertexFunction,
    burning_sequence,
    enumerate_mp,
    is_mp_definition,
    parse_values,
    poset_leq,
)
from .traversal import (
    STD,
    Item,
    Traversal,
    enumerate_dt,
    fibers,
    frontier,
    parse_traversal,
    phi,
    psi,
    validate_traversal,
)

__version__ = "0.1.0"
