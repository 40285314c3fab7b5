"""Numerical toolkit for skeletal modular fusion categories.

Layers, bottom to top: category data and validation (`category`), fusion-tree
Hom-space calculus (`engine`), mapping class group representations (`mcg`),
Frobenius algebra predicates and correlators (`algebra`), full centre
construction (`centre`), grading / structure-constant normalization pipeline
(`morita`, `cohomology`), and the command line front end (`cli`).
"""

from .category import (
    CategoryData,
    FusionRing,
    ValidationError,
    bundled_names,
    data_dir,
    deligne_product,
    is_pseudo_unitary,
    load_bundled,
    load_category,
    s_matrix,
    validate_hexagon,
    validate_pentagon,
)

__version__ = "0.1.0"
