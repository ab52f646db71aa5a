"""Test suite for zeta_large_gaps."""
