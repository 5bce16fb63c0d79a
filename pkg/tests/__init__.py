"""
fillcheck test suite
"""
