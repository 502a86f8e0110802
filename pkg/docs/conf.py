# Sphinx configuration for the matchstream documentation.
import doctest
import os
import re

DIR = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(DIR, "..", "setup.py")) as f:
    setup_version = re.search(r"version=['\"]([^'\"]+)['\"]", f.read()).group(1)

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinxarg.ext",
]

source_suffix = ".rst"
master_doc = "index"

project = "matchstream"
copyright = "2020, The matchstream developers"

release = setup_version
version = ".".join(release.split(".")[:2])

exclude_patterns = ["_build", "modules.rst"]
pygments_style = "sphinx"

html_theme = "sphinx_rtd_theme"
htmlhelp_basename = "matchstreamdoc"

man_pages = [("index", "matchstream", "matchstream Documentation", ["The matchstream developers"], 1)]

intersphinx_mapping = {"python": ("https://docs.python.org/3.8", None)}

# Exact weights print as Fraction(...) in the algorithm pages.
doctest_default_flags = (
    doctest.ELLIPSIS | doctest.IGNORE_EXCEPTION_DETAIL | doctest.NORMALIZE_WHITESPACE
)
