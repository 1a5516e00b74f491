"""Error taxonomy shared by the library, the service and the CLI.

InputError    -> the caller supplied something invalid (CLI exit 2, HTTP 422).
CapacityError -> the request is well-formed but exceeds a work/size budget
                 (CLI exit 3, HTTP 413).

Anything else escaping the service layer is treated as an internal bug
(CLI exit 1, HTTP 500).
"""


class InputError(ValueError):
    pass


class CapacityError(RuntimeError):
    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget
