"""Resistance-distance graph layout: RDMDS embedding plus Omega SGD."""

from ._core import (
    Graph,
    InputError,
    LimitError,
    NumericalError,
    SpectralEmbedding,
    agglomerative_clustering,
    clustering_quality,
    compute_embedding,
    exact_resistance,
    fowlkes_mallows,
    generate,
    generators,
    greedy_modularity,
    largest_component,
    layout,
    load_graph,
    modularity,
    neighborhood_preservation,
    render_svg,
    shortest_paths,
    stress,
)

__all__ = [
    "Graph",
    "InputError",
    "LimitError",
    "NumericalError",
    "SpectralEmbedding",
    "agglomerative_clustering",
    "clustering_quality",
    "compute_embedding",
    "exact_resistance",
    "fowlkes_mallows",
    "generate",
    "generators",
    "greedy_modularity",
    "largest_component",
    "layout",
    "load_graph",
    "modularity",
    "neighborhood_preservation",
    "render_svg",
    "shortest_paths",
    "stress",
]
