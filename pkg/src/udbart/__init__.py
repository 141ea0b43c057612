"""Convert UD trees to enhanced dependency graphs (EUD and BART) and compare
representations with pattern-based relation extraction."""
from .conllu import (
    ROOT, UD, ConlluError, EdgeInfo, Sentence, Token, TokenId,
    decode_extra, encode_extra, normalize_v2_labels, parse_conllu, serialize_conllu,
)
from .graph import DepGraph, Edge, GraphError, NodeRef, from_sentence
from .lexicons import Lexicons
from .pipeline import (
    MODES, REGISTRY, RULE_IDS, ConversionConfig, ConversionRule,
    convert, convert_sentence, run_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "ROOT", "UD", "ConlluError", "EdgeInfo", "Sentence", "Token", "TokenId",
    "decode_extra", "encode_extra", "normalize_v2_labels", "parse_conllu", "serialize_conllu",
    "DepGraph", "Edge", "GraphError", "NodeRef", "from_sentence", "Lexicons",
    "MODES", "REGISTRY", "RULE_IDS", "ConversionConfig", "ConversionRule",
    "convert", "convert_sentence", "run_pipeline",
]
