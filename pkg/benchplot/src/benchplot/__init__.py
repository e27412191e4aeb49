from .cli import SchemaError, load_rows, plot

__version__ = "0.1.0"
