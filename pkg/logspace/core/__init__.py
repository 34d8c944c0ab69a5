from .classify import Bounded, Unbounded, ess_sup_classify, invert_density  # noqa
from .forms import Affine, Const, ExpInv, Power  # noqa
from .functions import Interval, PiecewiseFn  # noqa
from .integrands import CallableFn, Integrand  # noqa
from .quadrature import (  # noqa
    AnalyticRule,
    Divergent,
    Finite,
    RefinementGrowth,
    integrate,
)
from .spaces import MeasureSpace  # noqa


def evaluate(f, x):
    """Value of the piecewise function ``f`` at ``x``."""
    return f.evaluate(x)
