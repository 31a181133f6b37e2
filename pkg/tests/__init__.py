"""Tests for qlattice."""
