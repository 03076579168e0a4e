# -*- coding: utf-8 -*-
#
# django-shuffles documentation build configuration file.
#

import os
import sys

sys.path.insert(0, os.path.abspath(".."))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "django_shuffles.settings")

import django
django.setup()

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.todo', 'sphinx.ext.intersphinx']

todo_include_todos = True

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'django-shuffles'
copyright = u'django-shuffles contributors'

version = '0.1'
release = '0.1'

today_fmt = '%B %d, %Y'

exclude_patterns = ['_build']

add_function_parentheses = True

pygments_style = 'sphinx'

modindex_common_prefix = ["shuffles."]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
}

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'

html_static_path = []

htmlhelp_basename = 'django-shufflesdoc'

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'django-shuffles', u'django-shuffles Documentation',
     [u'django-shuffles contributors'], 1)
]
