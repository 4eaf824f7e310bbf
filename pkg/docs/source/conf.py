# Sphinx configuration for the crookedtiles documentation.
import os
import re
import sys

sys.path.insert(0, os.path.abspath('../../src'))

PROJECT_ROOT = os.path.dirname(__file__)
version_regex = r'__version__ = ["\']([^"\']*)["\']'
with open(os.path.join(PROJECT_ROOT, '../../', 'src/crookedtiles/__init__.py')) as file_:
    match = re.search(version_regex, file_.read())
    version = match.group(1)

project = 'crookedtiles'
copyright = '2024, crookedtiles contributors'
author = 'crookedtiles contributors'
release = version

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]
autodoc_member_order = 'bysource'

templates_path = ['_templates']
exclude_patterns = []
master_doc = 'index'

intersphinx_mapping = {
    'python': ('https://docs.python.org/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'matplotlib': ('https://matplotlib.org/stable/', None),
}

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
