class NotInFamily(ValueError):
    """The input is not a member of the expected family.

    ``witness`` carries whatever the verifier found: a stuck vertex set, an
    unstable vertex, the configuration stabilization actually reached, or a
    stuck traversal prefix.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
