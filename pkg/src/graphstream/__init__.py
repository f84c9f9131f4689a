"""Streaming graph classification with prototype embeddings and drift detection."""

from graphstream.graph import AttributedGraph, EdgeRecord, NodeRecord, adjacency, validate
from graphstream.ged import GedCostModel, GedPolicy, GedResult, approx_ged, distance, exact_ged
from graphstream.prototypes import PrototypeEmbedding
from graphstream.classifier import IncrementalMLPClassifier
from graphstream.drift import BinomialDriftDetector
from graphstream.evaluation import GraphFeatureExtractor, PrequentialTracker, gmean
from graphstream.pipeline import GraphStreamClassifier, run_stream

__version__ = "0.1.0"

__all__ = [
    "AttributedGraph",
    "NodeRecord",
    "EdgeRecord",
    "adjacency",
    "validate",
    "GedCostModel",
    "GedPolicy",
    "GedResult",
    "exact_ged",
    "approx_ged",
    "distance",
    "PrototypeEmbedding",
    "IncrementalMLPClassifier",
    "BinomialDriftDetector",
    "GraphFeatureExtractor",
    "PrequentialTracker",
    "gmean",
    "GraphStreamClassifier",
    "run_stream",
]
