"""Test package for star-forge."""
