from .core import (Dataset, Sample, SplitPair, generate_synthetic, load_manifest,
                   load_manifest_file, normalize_image, parse_manifest, read_image, split)
from .netpbm import parse_pbm, parse_pgm, write_pbm
from .synthetic import NUM_CLASSES, TEMPLATES, render_template, synthesize

__all__ = [
    "Dataset", "NUM_CLASSES", "Sample", "SplitPair", "TEMPLATES", "generate_synthetic",
    "load_manifest", "load_manifest_file", "normalize_image", "parse_manifest", "parse_pbm",
    "parse_pgm", "read_image", "render_template", "split", "synthesize", "write_pbm",
]
