"""
Settings module for the RingDiag application.
"""
