"""Exception hierarchy shared by every module of the package."""


class CartanHartogsError(Exception):
    """Base class for all errors raised by this package."""


class ParameterDomainError(CartanHartogsError, ValueError):
    """Domain parameters violate the constraints of their kind."""


class UnsupportedKindError(CartanHartogsError, ValueError):
    """The operation needs data the domain kind does not carry (e.g. an explicit norm)."""


class MembershipError(CartanHartogsError, ValueError):
    """A point lies outside the open Cartan-Hartogs domain."""


class ArityError(CartanHartogsError, ValueError):
    """A closed form was requested below the dimension where it is defined."""


class PreconditionError(CartanHartogsError, ValueError):
    """A verification oracle was called outside its supported regime."""
