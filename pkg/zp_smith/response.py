"""
ZP-Smith Response Utilities

Coded outcome objects shared by the library and the command line.

Features:
- Outcome codes with default messages
- Exit-status mapping for the command line
- JSON-ready dictionaries with a machine-parsable error field
"""

import json


class SmithResponse:
    """
    Outcome of a zp-smith operation.

    Success or failure is carried by the code; the command line turns the
    code into its exit status.

    Example:
        >>> response = SmithResponse.ok(index=3)
        >>> response.to_dict()
        {'index': 3}

        >>> response = SmithResponse.error("INVALID_COMPLEX", "vertex 2 is fixed by t^1")
        >>> response.exit_status
        1
    """

    # Map outcome codes to process exit statuses
    STATUS_MAP = {
        "OK": 0,
        "INCONCLUSIVE": 0,
        "INVALID_COMPLEX": 1,
        "DOMAIN_ERROR": 1,
        "PARSE_ERROR": 2,
        "IO_ERROR": 2,
        "MEMORY_CAP_EXCEEDED": 3,
        "THEOREM_VIOLATION": 4,
    }

    # Messages for outcome codes
    MSG_MAP = {
        "OK": "Success",
        "INCONCLUSIVE": "Computation finished without a decision",
        "INVALID_COMPLEX": "Invalid Z_p-complex",
        "DOMAIN_ERROR": "Invalid input for this operation",
        "PARSE_ERROR": "Could not parse input file",
        "IO_ERROR": "Could not read or write file",
        "MEMORY_CAP_EXCEEDED": "Estimated matrix storage exceeds the memory cap",
        "THEOREM_VIOLATION": "A computed result contradicts a structural theorem",
    }

    def __init__(self, code="OK", warning=False, error_message=None, **data):
        """
        Initialize a SmithResponse.

        Args:
            code: Outcome code key (e.g., "OK", "INVALID_COMPLEX")
            warning: Whether this is a warning response
            error_message: Optional error message for error responses
            **data: Additional data to include in the response
        """
        self.code = code
        self.warning = warning
        self.error_message = error_message
        self.data = data

    @property
    def success(self):
        """Whether the response indicates success."""
        return self.STATUS_MAP.get(self.code, 1) == 0

    @property
    def exit_status(self):
        """Process exit status for this response."""
        return self.STATUS_MAP.get(self.code, 1)

    @classmethod
    def ok(cls, **data):
        """Create a successful response."""
        return cls(code="OK", **data)

    @classmethod
    def error(cls, code, message=None, **data):
        """Create an error response."""
        return cls(code=code, error_message=message, **data)

    @classmethod
    def warning_response(cls, code, **data):
        """Create a warning response (success with warning flag)."""
        return cls(code=code, warning=True, **data)

    def to_dict(self, include_status=False):
        """
        Convert response to dictionary for JSON serialization.

        Args:
            include_status: If True, include code, exit status and message fields
        """
        result = {}

        if include_status:
            result["code"] = self.code
            result["exit_status"] = self.exit_status
            result["success"] = self.success
            if not self.success:
                result["error"] = self.error_message or self.MSG_MAP.get(
                    self.code, "An error occurred"
                )
            if self.warning:
                result["warning"] = self.MSG_MAP.get(self.code, "Warning")
        else:
            if self.warning:
                result["warning"] = True
                result["warning_code"] = self.code
            if self.error_message:
                result["error"] = self.error_message

        result.update(self.data)
        return result

    def to_json(self, include_status=False, indent=None):
        """Serialize to a JSON string; integers stay exact decimals."""
        return json.dumps(self.to_dict(include_status), indent=indent, sort_keys=False)

    def __bool__(self):
        return self.success

    def __repr__(self):
        return f"SmithResponse(code={self.code!r}, error_message={self.error_message!r})"
