"""Test package for RingDiag."""
