"""quatsel: quaternion orders over Q, optimal embeddings, spinor selectivity."""

__version__ = "0.1.0"
