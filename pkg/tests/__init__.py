"""Tests for FaultLCA."""
