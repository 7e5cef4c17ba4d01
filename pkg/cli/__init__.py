"""Command-line plumbing: run configuration, command implementations and output rendering."""
