MAJOR, MINOR, PATCH = 0, 1, 0
__version__ = f"{MAJOR}.{MINOR}.{PATCH}"
