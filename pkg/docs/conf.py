# See https://www.sphinx-doc.org/en/master/usage/configuration.html for all options

# Project information
project = "rdcnn"
copyright = "2024, Alex Hadley"
author = "Alex Hadley"
release = "0.1.0"

# Extensions
extensions = [
    "myst_parser",
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx_copybutton",
]

# HTML output options
html_theme = "furo"
html_static_path = ["_static"]

# MyST options
myst_heading_anchors = 3

# Autodoc options
# See https://www.sphinx-doc.org/en/master/usage/extensions/autodoc.html#configuration
autodoc_default_options = {
    "members": True,
    "member-order": "bysource",
}
autodoc_type_aliases = {
    "datetime": "datetime.datetime",
    "ArrayLike": "numpy.typing.ArrayLike",
    "npt.ArrayLike": "numpy.typing.ArrayLike",
    "xr.Dataset": "xarray.Dataset",
    "pd.DataFrame": "pandas.DataFrame",
}
add_module_names = False
