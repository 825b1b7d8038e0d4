"""Power graphs of finite nilpotent groups: construction, connectivity, degree formulas."""

__version__ = "0.1.0"

from .connectivity import (  # noqa: E402
    ConnectivityReport,
    brute_force_vertex_connectivity,
    connectivity_report,
    edge_connectivity,
    max_flow_unit,
    vertex_connectivity,
)
from .graph import PowerGraph, build_power_graph, connected_components, min_degree, proper_power_graph  # noqa: E402
from .groups import (  # noqa: E402
    GroupTable,
    NilpotentSpec,
    PGroupSpec,
    build_cyclic,
    build_dicyclic,
    build_p_group,
    component_decompose,
    cyclic_subgroup,
    direct_product,
    element_order,
    import_cayley_table,
    is_nilpotent,
    maximal_cyclic_subgroups,
    parse_descriptor,
)
from .numtheory import euler_phi  # noqa: E402
