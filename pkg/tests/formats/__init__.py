"""Tests for the algebra file format."""
