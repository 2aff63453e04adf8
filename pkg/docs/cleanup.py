# -*- coding: utf-8 -*-

"""Sphinx hooks that show implantlab names under the packages that export them."""

import re

import docutils.nodes as nodes

_PRIVATE_SEGMENT = re.compile(r"(?<=[a-z])\._[a-z]\w*(?=\.)")


def public_path(text: str) -> str:
    """Drop private module segments from every dotted path in ``text``.

    Examples:
        >>> public_path("implantlab.net._mlp.Mlp")
        'implantlab.net.Mlp'

        >>> public_path("implantlab.harness.models._eval_report.ResultRow")
        'implantlab.harness.models.ResultRow'

        >>> public_path("reads implantlab.envs._demos.DemoSet, not numpy.ndarray")
        'reads implantlab.envs.DemoSet, not numpy.ndarray'

        >>> public_path("implantlab.imitation.IrlTrainer.__init__")
        'implantlab.imitation.IrlTrainer.__init__'
    """
    return _PRIVATE_SEGMENT.sub("", text)


def _skip_member(app, what, name, obj, skip, options):
    # Constructors are documented on the class unless they carry their own docstring.
    if name == "__init__" and (obj is object.__init__ or not obj.__doc__):
        return True
    return None


def _process_docstring(app, what, name, obj, options, lines):
    lines[:] = [public_path(line) for line in lines]


def _missing_reference(app, env, node, contnode):
    target = node["reftarget"]
    if not target.startswith("implantlab."):
        return None
    refid = public_path(target)
    if refid == target:
        return None
    return nodes.reference(contnode.rawsource, target.rsplit(".", 1)[1], refid=refid)


def setup(app):
    """Entry point for Sphinx extensions."""
    app.connect("autodoc-skip-member", _skip_member)
    app.connect("autodoc-process-docstring", _process_docstring)
    app.connect("missing-reference", _missing_reference, priority=1000)
