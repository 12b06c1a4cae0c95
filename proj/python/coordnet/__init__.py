"""Coordinated-activity detection from behavioral similarity networks.

The heavy lifting lives in the C++ extension module; this package
re-exports its public surface.
"""

from ._core import (  # noqa: F401
    Corpus,
    DetectionResult,
    EmbeddingMatrix,
    LabelRecord,
    RetweetInfo,
    SimilarityNetwork,
    TweetRecord,
    __version__,
    backbone_filter,
    build_network,
    clean_text,
    coverage,
    cross_validate_embedding,
    edge_filter,
    eigenvector_centrality,
    embed_network,
    extract_events,
    fuse,
    generate_scenario,
    load_corpus,
    load_labels,
    nmi,
    node_prune,
    precision_recall_f1,
    roc_auc,
    standard_scenario_json,
    temporal_forecast,
    write_corpus,
    write_labels,
)

__all__ = [name for name in dir() if not name.startswith("_")]
