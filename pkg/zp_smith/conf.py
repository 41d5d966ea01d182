"""
ZP-Smith Settings

Configuration is read from Django settings under the ZP_SMITH key.
All settings have sensible defaults, and plain library use without
configured Django settings runs on the defaults.

Example:
    # settings.py
    ZP_SMITH = {
        'MAX_MODULUS_EXPONENT': 64,
        'MEMORY_CAP': 4 * 1024 ** 3,
        'DUAL_MODULI': [4, 8],
    }
"""

from django.conf import settings

DEFAULTS = {
    # Modulus scan
    "MAX_MODULUS_EXPONENT": 64,
    # Linear algebra
    "MEMORY_CAP": None,  # bytes of estimated matrix storage, None = unlimited
    # Reports
    "ATTACH_CERTIFICATES": True,
    "VALIDATE_RESOLUTIONS": True,
    "AUDIT_COMPUTATIONS": False,
    # Embeddability
    "DUAL_MODULI": [4],  # q values searched for boundary-equivariant duals
    "CROSS_CHECK_DELETED_PRODUCT": False,
}


class SmithSettings:
    """
    A settings object that allows zp-smith settings to be accessed as
    properties. For example:

        from zp_smith.conf import smith_settings
        print(smith_settings.MAX_MODULUS_EXPONENT)

    Settings can be overridden in Django settings.py under ZP_SMITH key.
    """

    def __init__(self, defaults=None):
        self.defaults = defaults or DEFAULTS
        self._cached_attrs = set()

    @property
    def user_settings(self):
        if not hasattr(self, "_user_settings"):
            if settings.configured:
                self._user_settings = getattr(settings, "ZP_SMITH", {})
            else:
                self._user_settings = {}
        return self._user_settings

    def __getattr__(self, attr):
        if attr not in self.defaults:
            raise AttributeError(f"Invalid zp-smith setting: '{attr}'")

        try:
            val = self.user_settings[attr]
        except KeyError:
            val = self.defaults[attr]

        self._cached_attrs.add(attr)
        setattr(self, attr, val)
        return val

    def reload(self):
        """Reload settings (useful for testing)."""
        for attr in self._cached_attrs:
            try:
                delattr(self, attr)
            except AttributeError:
                pass
        self._cached_attrs.clear()
        if hasattr(self, "_user_settings"):
            delattr(self, "_user_settings")


smith_settings = SmithSettings(DEFAULTS)
