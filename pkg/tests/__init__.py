"""
Test suite for the ant-mill analyses.
"""
