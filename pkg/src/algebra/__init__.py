"""Exact algebra behind invariant connections on reductive spaces."""
