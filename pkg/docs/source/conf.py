# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))


# -- Project information -----------------------------------------------------

project = 'Monogenic quartic certificates (monoquartic)'
copyright = '2026, monoquartic developers'
author = 'monoquartic developers'

# The full version, including alpha/beta/rc tags
release = '0.1'

autodoc_mock_imports = ["gmpy2"]

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon']

templates_path = ['_templates']

exclude_patterns = []

# If false, no module index is generated.
html_domain_indices = False

# If true, links to the reST sources are added to the pages.
html_show_sourcelink = True


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
