"""Figure and CSV output for ``multiseg report``."""
