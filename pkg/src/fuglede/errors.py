class FugledeError(ValueError):
    """Invalid input to one of the decision procedures."""


class DimensionMismatch(FugledeError):
    pass


class EnumerationCapError(FugledeError):
    pass


class InstanceTooLarge(FugledeError):
    pass
