"""The Ree unital R(3) from the hyperoval of PG(2,8): construction, symmetry and embeddings."""

__version__ = "0.1.0"
