import os
import sys

sys.path.insert(0, os.path.abspath(".."))

# --------------------------------------------------------------------------------------

project = "implantlab"
copyright = "2026, implantlab developers"
author = "implantlab developers"

# The short X.Y version
version = "0.1"
# The full version, including alpha/beta/rc tags
release = "0.1.0"

# --------------------------------------------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx_autodoc_typehints",
    "sphinxcontrib.autodoc_pydantic",
    "docs.cleanup",
]
master_doc = "index"

html_theme = "sphinx_rtd_theme"
nitpicky = True
nitpick_ignore = [
    ("py:class", "numpy.ndarray"),
    ("py:class", "numpy.random._generator.Generator"),
    ("py:class", "pandas.core.frame.DataFrame"),
    ("py:class", "pathlib.Path"),
    ("py:class", "concurrent.futures._base.Executor"),
    ("py:data", "typing.Any"),
    ("py:data", "typing.Callable"),
    ("py:data", "typing.Dict"),
    ("py:data", "typing.List"),
    ("py:data", "typing.Mapping"),
    ("py:data", "typing.Optional"),
    ("py:data", "typing.Sequence"),
    ("py:data", "typing.Tuple"),
    ("py:data", "typing.Union"),
]
autodoc_default_options = {
    "special-members": "__init__",
    "no-private-members": True,
}
# Method inclusion is left to autodoc flags and docs.cleanup.
napoleon_include_init_with_doc = False
napoleon_include_private_with_doc = False
napoleon_include_special_with_doc = False

# Configuration for https://autodoc-pydantic.readthedocs.io
autodoc_pydantic_model_show_config_summary = False
autodoc_pydantic_field_show_alias = False
