"""Dataset input/output: IAM GXL/CXL parsing, stream files, synthetic streams, result CSVs."""

from graphstream.io.gxl import AttributeSchema, corpus_to_stream, load_corpus, parse_cxl, parse_gxl
from graphstream.io.records import StreamRecord
from graphstream.io.results import write_results_csv
from graphstream.io.streamfile import read_stream, write_stream
from graphstream.io.synthetic import SyntheticStreamSpec, generate_synthetic

__all__ = [
    "AttributeSchema",
    "StreamRecord",
    "SyntheticStreamSpec",
    "corpus_to_stream",
    "generate_synthetic",
    "load_corpus",
    "parse_cxl",
    "parse_gxl",
    "read_stream",
    "write_results_csv",
    "write_stream",
]
