class ExtractionError(Exception):
    """Raised for any failure the CLI should report instead of traceback."""
