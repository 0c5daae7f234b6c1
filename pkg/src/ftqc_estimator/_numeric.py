import math

# relative slack for ceilings of quotients whose exact value is an integer
# but whose float evaluation lands a few ulps above it
_REL_TOL = 1e-9


def ceil_tol(x):
    nearest = round(x)
    if abs(x - nearest) <= _REL_TOL * max(1.0, abs(x)):
        return int(nearest)
    return math.ceil(x)
