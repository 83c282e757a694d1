"""Exception types shared across the package."""


class WeakInterferenceError(ValueError):
    pass


class OrthogonalPostSelection(WeakInterferenceError):
    """Pre- and post-selected states are orthogonal; the weak value diverges."""


class UnsupportedPreSelection(WeakInterferenceError):
    """A closed form was asked for with a pre-selection other than (|H> + |V>)/sqrt(2)."""


class DarkPort(WeakInterferenceError):
    """Post-selected power is numerically zero, so the mean pointer position is undefined."""


class ZeroPower(WeakInterferenceError):
    pass


class OutOfRange(WeakInterferenceError):
    """A measured or requested loss lies outside what the interference model can produce."""


class NonInvertible(WeakInterferenceError):
    """sin(2 alpha) cos(theta) <= 0: the loss carries no usable interference term."""
