"""
CLI verb modules
"""
