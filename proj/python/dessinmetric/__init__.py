"""Python interface to the dessinmetric C++ library.

Sphere points are plain complex numbers, with ``None`` standing for infinity.
Group types use the tags ``Cn``, ``Dn``, ``A4``, ``S4`` and ``A5``.
"""

from ._dessinmetric import *  # noqa: F401,F403
from ._dessinmetric import DessinMetricError, __doc__  # noqa: F401
