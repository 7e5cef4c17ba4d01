"""Shared helpers: errors, truncation budget, formatting."""
