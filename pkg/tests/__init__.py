"""
Test suites for forestcount
"""
