"""Algebra file format: JSON schema, parsing and serialization."""
