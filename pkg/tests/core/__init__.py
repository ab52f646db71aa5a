"""Tests for the core numerical modules."""
