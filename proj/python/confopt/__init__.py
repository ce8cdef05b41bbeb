"""Conformal symplectic and relativistic optimizers.

Thin re-export of the compiled extension. The extension lives inside the
package in installed wheels and next to it on PYTHONPATH in dev builds.
"""

try:
    from ._confopt import *  # noqa: F401,F403
    from ._confopt import __doc__  # noqa: F401
except ImportError:  # in-tree build: extension on sys.path, not in the package
    from _confopt import *  # noqa: F401,F403
    from _confopt import __doc__  # noqa: F401
